#include "qqfusion/cartan.hpp"

#include <boost/rational.hpp>

#include <algorithm>
#include <string>

#include "qqfusion/error.hpp"

namespace qqfusion {

namespace {

using Rat = boost::rational<Int>;

// Edge list of the Dynkin diagram in Bourbaki numbering, nodes 1-based.
std::vector<std::pair<int, int>> dynkin_edges(char label, int r) {
    std::vector<std::pair<int, int>> edges;
    switch (label) {
        case 'A':
            for (int i = 1; i < r; ++i) edges.emplace_back(i, i + 1);
            break;
        case 'D':
            for (int i = 1; i <= r - 3; ++i) edges.emplace_back(i, i + 1);
            edges.emplace_back(r - 2, r - 1);
            edges.emplace_back(r - 2, r);
            break;
        case 'E':
            edges.emplace_back(1, 3);
            for (int i = 3; i < r; ++i) edges.emplace_back(i, i + 1);
            edges.emplace_back(2, 4);
            break;
        default:
            break;
    }
    return edges;
}

long long family_determinant(char label, int r) {
    if (label == 'A') return r + 1;
    if (label == 'D') return 4;
    return r == 6 ? 3 : (r == 7 ? 2 : 1);  // E6, E7, E8
}

// Exact Gauss-Jordan inverse over the rationals. The matrices are tiny
// (rank-many rows), so no pivot-growth tricks are needed beyond exactness.
std::vector<std::vector<Rat>> rational_inverse(const IMatrix& mat) {
    const size_t n = mat.size();
    std::vector<std::vector<Rat>> aug(n, std::vector<Rat>(2 * n, Rat(0)));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug[i][j] = Rat(mat[i][j]);
        aug[i][n + i] = Rat(1);
    }
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && aug[piv][col] == Rat(0)) ++piv;
        if (piv == n) throw invalid_input("cartan: singular matrix");
        std::swap(aug[piv], aug[col]);
        const Rat inv_p = Rat(1) / aug[col][col];
        for (size_t j = 0; j < 2 * n; ++j) aug[col][j] *= inv_p;
        for (size_t row = 0; row < n; ++row) {
            if (row == col || aug[row][col] == Rat(0)) continue;
            const Rat f = aug[row][col];
            for (size_t j = 0; j < 2 * n; ++j) aug[row][j] -= f * aug[col][j];
        }
    }
    std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

Int integer_determinant(const IMatrix& mat) {
    // Fraction-free is overkill at these sizes; rational elimination is exact.
    const size_t n = mat.size();
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a[i][j] = Rat(mat[i][j]);
    Rat det(1);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col] == Rat(0)) ++piv;
        if (piv == n) return Int(0);
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        const Rat inv_p = Rat(1) / a[col][col];
        for (size_t row = col + 1; row < n; ++row) {
            if (a[row][col] == Rat(0)) continue;
            const Rat f = a[row][col] * inv_p;
            for (size_t j = col; j < n; ++j) a[row][j] -= f * a[col][j];
        }
    }
    if (det.denominator() != 1)
        throw theorem_violation("cartan: non-integer determinant");
    return det.numerator();
}

}  // namespace

std::vector<int> CartanData::neighbors(int alpha) const {
    std::vector<int> out;
    for (int beta = 1; beta <= rank; ++beta)
        if (beta != alpha && C[static_cast<size_t>(alpha - 1)][static_cast<size_t>(beta - 1)] != 0)
            out.push_back(beta);
    return out;
}

CartanData build_cartan(char label, int rank) {
    const bool supported = (label == 'A' && rank >= 1) ||
                           (label == 'D' && rank >= 4) ||
                           (label == 'E' && (rank == 6 || rank == 7 || rank == 8));
    if (!supported)
        throw invalid_input(std::string("unsupported algebra ") + label +
                            std::to_string(rank) +
                            " (need A_r r>=1, D_r r>=4, or E_6/E_7/E_8)");

    CartanData cd;
    cd.label = label;
    cd.rank = rank;
    cd.C.assign(static_cast<size_t>(rank), IVector(static_cast<size_t>(rank), 0));
    for (int i = 0; i < rank; ++i) cd.C[static_cast<size_t>(i)][static_cast<size_t>(i)] = 2;
    for (const auto& [u, v] : dynkin_edges(label, rank)) {
        cd.C[static_cast<size_t>(u - 1)][static_cast<size_t>(v - 1)] = -1;
        cd.C[static_cast<size_t>(v - 1)][static_cast<size_t>(u - 1)] = -1;
    }

    const Int det = integer_determinant(cd.C);
    if (det != family_determinant(label, rank))
        throw theorem_violation("cartan: determinant mismatch for " +
                                std::string(1, label) + std::to_string(rank));
    cd.delta = static_cast<long long>(det);

    const auto inv = rational_inverse(cd.C);
    cd.lambda.assign(static_cast<size_t>(rank), IVector(static_cast<size_t>(rank), 0));
    for (int i = 0; i < rank; ++i) {
        for (int j = 0; j < rank; ++j) {
            const Rat entry = Rat(cd.delta) * inv[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (entry.denominator() != 1)
                throw theorem_violation("cartan: lambda = delta*C^{-1} not integral");
            cd.lambda[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                static_cast<long long>(entry.numerator());
        }
    }

    // C * lambda = delta * I, lambda symmetric positive: checked here once so
    // every consumer can rely on it.
    for (int i = 0; i < rank; ++i) {
        for (int j = 0; j < rank; ++j) {
            long long acc = 0;
            for (int l = 0; l < rank; ++l)
                acc += cd.C[static_cast<size_t>(i)][static_cast<size_t>(l)] *
                       cd.lambda[static_cast<size_t>(l)][static_cast<size_t>(j)];
            if (acc != (i == j ? cd.delta : 0))
                throw theorem_violation("cartan: C*lambda != delta*I");
            if (cd.lambda[static_cast<size_t>(i)][static_cast<size_t>(j)] !=
                cd.lambda[static_cast<size_t>(j)][static_cast<size_t>(i)])
                throw theorem_violation("cartan: lambda not symmetric");
            if (cd.lambda[static_cast<size_t>(i)][static_cast<size_t>(j)] <= 0)
                throw theorem_violation("cartan: lambda entry not positive");
        }
    }
    return cd;
}

IMatrix min_matrix(int k) {
    if (k < 1) throw invalid_input("min_matrix: k must be >= 1");
    IMatrix a(static_cast<size_t>(k), IVector(static_cast<size_t>(k), 0));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            a[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::min(i, j) + 1;
    return a;
}

// ============================================================================
// FusionInput
// ============================================================================

int FusionInput::max_level() const {
    int lv = 0;
    for (const auto& [key, cnt] : n)
        if (cnt > 0) lv = std::max(lv, key.second);
    return lv;
}

long long FusionInput::total_i_n() const {
    long long s = 0;
    for (const auto& [key, cnt] : n) s += key.second * cnt;
    return s;
}

IMatrix FusionInput::n_matrix(int levels) const {
    IMatrix mat(static_cast<size_t>(cartan.rank), IVector(static_cast<size_t>(levels), 0));
    for (const auto& [key, cnt] : n) {
        if (cnt == 0) continue;
        mat[static_cast<size_t>(key.first - 1)][static_cast<size_t>(key.second - 1)] += cnt;
    }
    return mat;
}

IVector FusionInput::level_weighted_sums() const {
    IVector s(static_cast<size_t>(cartan.rank), 0);
    for (const auto& [key, cnt] : n) s[static_cast<size_t>(key.first - 1)] += key.second * cnt;
    return s;
}

void FusionInput::validate() const {
    for (const auto& [key, cnt] : n) {
        if (key.first < 1 || key.first > cartan.rank)
            throw invalid_input("fusion input: node index out of range");
        if (key.second < 1) throw invalid_input("fusion input: KR level must be >= 1");
        if (cnt < 0) throw invalid_input("fusion input: negative KR count");
    }
    if (k < 1) throw invalid_input("fusion input: k must be >= 1");
    if (k < max_level())
        throw invalid_input("fusion input: k below the largest KR level");
    if (lambda_weight) {
        if (static_cast<int>(lambda_weight->size()) != cartan.rank)
            throw invalid_input("fusion input: weight has wrong length");
        for (long long l : *lambda_weight)
            if (l < 0) throw invalid_input("fusion input: weight must be dominant (>= 0)");
    }
}

// ============================================================================
// p / q vectors and the quadratic form
// ============================================================================

QVectors q_vectors(const FusionInput& in, const IMatrix& m, const IVector& ell) {
    const int r = in.cartan.rank;
    const int k = in.k;
    if (static_cast<int>(m.size()) != r)
        throw invalid_input("q_vectors: m has wrong row count");
    for (const auto& row : m)
        if (static_cast<int>(row.size()) != k)
            throw invalid_input("q_vectors: m has wrong column count");
    if (static_cast<int>(ell.size()) != r)
        throw invalid_input("q_vectors: weight has wrong length");

    const IMatrix A = min_matrix(k);
    const IMatrix nm = in.n_matrix(k);

    // (A v)_j for the level-index rows of n and m.
    auto a_apply = [&](const IVector& row) {
        IVector out(static_cast<size_t>(k), 0);
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < k; ++i)
                out[static_cast<size_t>(j)] +=
                    A[static_cast<size_t>(j)][static_cast<size_t>(i)] * row[static_cast<size_t>(i)];
        return out;
    };

    std::vector<IVector> Am(static_cast<size_t>(r));
    for (int b = 0; b < r; ++b) Am[static_cast<size_t>(b)] = a_apply(m[static_cast<size_t>(b)]);

    QVectors qv;
    qv.p.assign(static_cast<size_t>(r), IVector(static_cast<size_t>(k), 0));
    qv.q = qv.p;
    qv.q0.assign(static_cast<size_t>(r), 0);

    for (int a = 0; a < r; ++a) {
        const IVector An = a_apply(nm[static_cast<size_t>(a)]);
        for (int j = 0; j < k; ++j) {
            long long v = An[static_cast<size_t>(j)];
            for (int b = 0; b < r; ++b)
                v -= in.cartan.C[static_cast<size_t>(a)][static_cast<size_t>(b)] *
                     Am[static_cast<size_t>(b)][static_cast<size_t>(j)];
            qv.p[static_cast<size_t>(a)][static_cast<size_t>(j)] = v;
        }
        qv.q0[static_cast<size_t>(a)] =
            ell[static_cast<size_t>(a)] - qv.p[static_cast<size_t>(a)][static_cast<size_t>(k - 1)];
        for (int j = 0; j < k; ++j)
            qv.q[static_cast<size_t>(a)][static_cast<size_t>(j)] =
                qv.q0[static_cast<size_t>(a)] + qv.p[static_cast<size_t>(a)][static_cast<size_t>(j)];
    }
    return qv;
}

QVectors q_vectors(const FusionInput& in, const IMatrix& m) {
    IVector ell = in.lambda_weight
                      ? *in.lambda_weight
                      : IVector(static_cast<size_t>(in.cartan.rank), 0);
    return q_vectors(in, m, ell);
}

long long quadratic_form_x2(const FusionInput& in, const IMatrix& m) {
    const int r = in.cartan.rank;
    const int k = in.k;
    const IVector ell(static_cast<size_t>(r), 0);  // p is independent of the weight
    const QVectors qv = q_vectors(in, m, ell);
    const IMatrix A = min_matrix(k);
    const IMatrix nm = in.n_matrix(k);

    // 2Q = -m . (p + (I (x) A) n)
    long long x2 = 0;
    for (int a = 0; a < r; ++a) {
        for (int j = 0; j < k; ++j) {
            long long An = 0;
            for (int i = 0; i < k; ++i)
                An += A[static_cast<size_t>(j)][static_cast<size_t>(i)] *
                      nm[static_cast<size_t>(a)][static_cast<size_t>(i)];
            x2 -= m[static_cast<size_t>(a)][static_cast<size_t>(j)] *
                  (qv.p[static_cast<size_t>(a)][static_cast<size_t>(j)] + An);
        }
    }
    return x2;
}

}  // namespace qqfusion
