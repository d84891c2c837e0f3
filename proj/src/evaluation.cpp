#include "qqfusion/evaluation.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <tuple>

#include "qqfusion/error.hpp"
#include "qqfusion/parallel.hpp"

namespace qqfusion {

// ============================================================================
// phi and its re-embedding
// ============================================================================

Q1Polynomial phi(const TorusElement& p) {
    const CartanData& cd = p.ctx();
    const int r = cd.rank;

    // Q[a,0] evaluates to t^{-row_a} with row_a = sum_b lambda_{ab}.
    IVector row(r, 0);
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) row[a] += cd.lambda[a][b];

    Q1Polynomial out;
    for (const auto& [e, c] : p.terms()) {
        if (std::any_of(e.b.begin(), e.b.end(), [](int v) { return v < 0; })) continue;
        long long shift2 = 0;  // doubled t-exponent from the level-0 block
        for (int a = 0; a < r; ++a) shift2 -= 2 * row[a] * e.a[a];
        TPoly& dst = out.terms[e.b];
        dst += c.shifted(shift2);
        if (dst.is_zero()) out.terms.erase(e.b);
    }
    return out;
}

TorusElement q1_to_torus(const CartanData& cartan, const Q1Polynomial& p) {
    TorusElement out(cartan);
    for (const auto& [j, c] : p.terms) {
        ExpVec e;
        e.a.assign(cartan.rank, 0);
        e.b = j;
        out.insert_term(e, c);
    }
    return out;
}

// ============================================================================
// Moment table
// ============================================================================

namespace {

// The closed A1 form: mu_{ell,n} = t^{-ell(ell+3)/2}
// ([n over (n-ell)/2]_q - [n over (n-ell)/2 - 1]_q), q = t^{-2},
// vanishing unless 0 <= ell <= n with ell = n mod 2.
TPoly a1_closed_moment(long long ell, long long n) {
    if (ell < 0 || ell > n || (n - ell) % 2 != 0) return TPoly();
    const long long j = (n - ell) / 2;
    const QPoly diff = gauss_binomial(n, j) - gauss_binomial(n, j - 1);
    return embed_q(diff, 2).shifted(-ell * (ell + 3));
}

}  // namespace

MomentTable::MomentTable(CartanData cartan, IVector ell_max, std::vector<int> j_max)
    : cartan_(std::move(cartan)),
      ell_max_(std::move(ell_max)),
      j_max_(std::move(j_max)),
      cache_(std::make_shared<Cache>()) {
    if (static_cast<int>(ell_max_.size()) != cartan_.rank ||
        static_cast<int>(j_max_.size()) != cartan_.rank)
        throw invalid_input("moment table: bounds have wrong length");
    for (long long v : ell_max_)
        if (v < 0) throw invalid_input("moment table: negative weight bound");
    for (int v : j_max_)
        if (v < 0) throw invalid_input("moment table: negative exponent bound");
}

TPoly MomentTable::compute(const IVector& ell, const std::vector<int>& j) const {
    const int r = cartan_.rank;

    FusionInput seed;
    seed.cartan = cartan_;
    for (int a = 0; a < r; ++a)
        if (j[a] > 0) seed.n[{a + 1, 1}] = j[a];
    seed.k = auto_k(seed);
    const QPoly nsv = n_sum(seed, ell);

    long long e = 0;
    for (int a = 0; a < r; ++a) {
        e += ell[a] * cartan_.lambda[a][a];
        for (int b = 0; b < r; ++b)
            e += static_cast<long long>(j[a] + 1) * cartan_.lambda[a][b] * (j[b] + 1) -
                 cartan_.lambda[a][b];
    }
    TPoly mu = embed_v(nsv, cartan_.delta).shifted(-e);

    if (cartan_.label == 'A' && cartan_.rank == 1) {
        if (a1_closed_moment(ell[0], j[0]) != mu)
            throw theorem_violation(
                "moment table: A1 closed form disagrees with the fermionic seed at (ell=" +
                std::to_string(ell[0]) + ", j=" + std::to_string(j[0]) + ")");
    }
    return mu;
}

TPoly MomentTable::at(const IVector& ell, const std::vector<int>& j) const {
    if (static_cast<int>(ell.size()) != cartan_.rank ||
        static_cast<int>(j.size()) != cartan_.rank)
        throw invalid_input("moment table: index has wrong length");
    for (int a = 0; a < cartan_.rank; ++a) {
        if (ell[a] < 0 || ell[a] > ell_max_[a])
            throw invalid_input("moment table: weight outside declared bounds");
        if (j[a] < 0 || j[a] > j_max_[a])
            throw invalid_input("moment table: level-1 exponent outside declared bounds");
    }

    const auto key = std::make_pair(ell, j);
    {
        std::lock_guard<std::mutex> lock(cache_->mu);
        auto it = cache_->entries.find(key);
        if (it != cache_->entries.end()) return it->second;
    }
    TPoly value = compute(ell, j);  // outside the lock; a rare duplicate is harmless
    std::lock_guard<std::mutex> lock(cache_->mu);
    return cache_->entries.emplace(key, std::move(value)).first->second;
}

MomentTable build_moments(const CartanData& cartan, const IVector& max_ell,
                          const std::vector<int>& max_j) {
    return MomentTable(cartan, max_ell, max_j);
}

// ============================================================================
// Vacuum pairing
// ============================================================================

TPoly vacuum_pair(const Q1Polynomial& p, const IVector& ell, const MomentTable& moments) {
    TPoly acc;
    for (const auto& [j, c] : p.terms) acc += c * moments.at(ell, j);
    return acc;
}

TPoly vacuum_pair(const TorusElement& p, const IVector& ell, const MomentTable& moments) {
    return vacuum_pair(phi(p), ell, moments);
}

// ============================================================================
// Matrix-element multiplicities
// ============================================================================

TorusElement kr_product(const FusionInput& in, const QSolutionTable& table) {
    in.validate();
    if (*table.cartan != in.cartan)
        throw invalid_input("kr_product: table solved for a different algebra");
    if (table.n_max < std::max(1, in.max_level()))
        throw invalid_input("kr_product: table does not cover the top KR level");

    std::vector<std::tuple<int, int, long long>> factors;  // (level, node, count)
    for (const auto& [key, cnt] : in.n)
        if (cnt > 0) factors.emplace_back(key.second, key.first, cnt);
    std::sort(factors.begin(), factors.end());

    TorusElement p = TorusElement::scalar(*table.cartan, TPoly(1));
    for (const auto& [i, a, cnt] : factors)
        p = product(p, table.at(a, i).pow(static_cast<int>(cnt)));
    return p;
}

std::pair<IVector, std::vector<int>> moment_bounds(const FusionInput& in,
                                                   const Q1Polynomial& image) {
    in.validate();
    const int r = in.cartan.rank;

    IVector lmax(r, 0);
    for (const IVector& w : dominant_weights(in))
        for (int a = 0; a < r; ++a) lmax[a] = std::max(lmax[a], w[a]);
    if (in.lambda_weight)
        for (int a = 0; a < r; ++a) lmax[a] = std::max(lmax[a], (*in.lambda_weight)[a]);

    std::vector<int> jmax(r, 0);
    for (const auto& [j, c] : image.terms)
        for (int a = 0; a < r; ++a) jmax[a] = std::max(jmax[a], j[a]);
    return {lmax, jmax};
}

QPoly matrix_multiplicity(const FusionInput& in, const IVector& ell,
                          const Q1Polynomial& image, const MomentTable& moments) {
    in.validate();
    const CartanData& cd = in.cartan;
    if (moments.cartan() != cd)
        throw invalid_input("matrix multiplicity: moment table built for a different algebra");
    if (static_cast<int>(ell.size()) != cd.rank)
        throw invalid_input("matrix multiplicity: weight has wrong length");
    for (long long l : ell)
        if (l < 0) throw invalid_input("matrix multiplicity: weight must be dominant");

    // Doubled t-exponent of the prefactor:
    // 2 sum n_{a,i} lambda_row(a) + sum ell_a lambda_aa + n.(lambda (x) A).n.
    long long e2 = 0;
    for (const auto& [key, cnt] : in.n) {
        long long rowsum = 0;
        for (int b = 0; b < cd.rank; ++b) rowsum += cd.lambda[key.first - 1][b];
        e2 += 2 * cnt * rowsum;
    }
    for (int a = 0; a < cd.rank; ++a) e2 += ell[a] * cd.lambda[a][a];
    for (const auto& [k1, c1] : in.n)
        for (const auto& [k2, c2] : in.n)
            e2 += c1 * c2 * cd.lambda[k1.first - 1][k2.first - 1] *
                  std::min(k1.second, k2.second);

    const TPoly m_t = vacuum_pair(image, ell, moments).shifted(e2);
    return extract_v(m_t, cd.delta);
}

QPoly matrix_multiplicity(const FusionInput& in, const IVector& ell,
                          const QSolutionTable& table, const MomentTable& moments) {
    return matrix_multiplicity(in, ell, phi(kr_product(in, table)), moments);
}

MultiplicityResult fusion_decompose_matrix(const FusionInput& in,
                                           const QSolutionTable& table,
                                           const MomentTable& moments) {
    in.validate();

    MultiplicityResult res;
    res.label = in.cartan.label;
    res.rank = in.cartan.rank;
    res.k_used = in.k;
    res.method = "matrix";

    const Q1Polynomial image = phi(kr_product(in, table));
    const std::vector<IVector> weights =
        in.lambda_weight ? std::vector<IVector>{*in.lambda_weight} : dominant_weights(in);

    std::vector<QPoly> vals(weights.size());
    parallel_for(weights.size(), [&](size_t i) {
        vals[i] = matrix_multiplicity(in, weights[i], image, moments);
    });
    for (size_t i = 0; i < weights.size(); ++i)
        if (!vals[i].is_zero()) res.components.emplace(weights[i], std::move(vals[i]));
    return res;
}

// ============================================================================
// A1 constant-term route
// ============================================================================

namespace {

// The unique term of maximal level-1 degree; uniqueness is part of the
// structure of the A1 solutions and is enforced.
std::pair<ExpVec, TPoly> leading_by_b(const TorusElement& x) {
    int best = std::numeric_limits<int>::min();
    int hits = 0;
    const ExpVec* be = nullptr;
    const TPoly* bc = nullptr;
    for (const auto& [e, c] : x.terms()) {
        if (e.b[0] > best) {
            best = e.b[0];
            be = &e;
            bc = &c;
            hits = 1;
        } else if (e.b[0] == best) {
            ++hits;
        }
    }
    if (hits != 1)
        throw theorem_violation("constant-term route: leading level-1 term is not unique");
    return {*be, *bc};
}

}  // namespace

QPoly ct_z_multiplicity_A1(const FusionInput& in, const IVector& ell,
                           const QSolutionTable& table) {
    in.validate();
    const CartanData& cd = *table.cartan;
    if (in.cartan.label != 'A' || in.cartan.rank != 1)
        throw invalid_input("constant-term route applies to A1 only");
    if (cd != in.cartan)
        throw invalid_input("constant-term route: table solved for a different algebra");
    if (ell.size() != 1 || ell[0] < 0)
        throw invalid_input("constant-term route: weight must be a single dominant entry");

    const long long lval = ell[0];
    const long long total = in.total_i_n();  // sum_i i*n_i

    std::vector<std::pair<int, long long>> levels;  // (i, n_i), ascending
    long long total_n = 0;
    for (const auto& [key, cnt] : in.n) {
        if (cnt == 0) continue;
        levels.emplace_back(key.second, cnt);
        total_n += cnt;
    }
    std::sort(levels.begin(), levels.end());

    long long nAn = 0;
    for (const auto& [i1, c1] : levels)
        for (const auto& [i2, c2] : levels) nAn += c1 * c2 * std::min(i1, i2);

    const int kz = static_cast<int>(
        std::max<long long>({in.max_level(), (total + 1) / 2, 1}));
    if (table.n_max < kz)
        throw invalid_input("constant-term route: table must cover level " + std::to_string(kz));

    // Q[1,1] Q[1,0]^{-1} prod_i Q_i^{n_i}, an exact Laurent polynomial.
    TorusElement left = product(TorusElement::generator(cd, 1, 1),
                                TorusElement::generator(cd, 1, 0, -1));
    for (const auto& [i, cnt] : levels)
        left = product(left, table.at(1, i).pow(static_cast<int>(cnt)));

    // Every term of z has strictly negative degree in Q[1,1], so a power of
    // z can only contribute to the constant term of left * z^{l+1} from
    // terms of degree >= -max_b(left). Cutting there while raising z to its
    // power is exact and keeps the powers small.
    long long keep = 0;
    for (const auto& [e, c] : left.terms())
        keep = std::max(keep, static_cast<long long>(e.b[0]));

    auto run = [&](long long depth) -> TPoly {
        auto trunc = [&](const TorusElement& x) {
            TorusElement out(cd);
            for (const auto& [e, c] : x.terms())
                if (e.b[0] >= -depth) out.insert_term(e, c);
            return out;
        };
        auto tprod = [&](const TorusElement& x, const TorusElement& y) {
            return trunc(product(x, y));
        };

        // Q_j^{-1} = sum_m (-L^{-1} R)^m L^{-1} with Q_j = L + R, L leading.
        auto series_inverse = [&](const TorusElement& qj) {
            const auto [le, lc] = leading_by_b(qj);
            const TorusElement lead = TorusElement::monomial(cd, le, lc);
            const TorusElement linv = lead.monomial_inverse();
            const TorusElement rest = qj - lead;
            if (rest.is_zero()) return linv;
            const TorusElement x = -tprod(linv, rest);
            TorusElement acc = linv;
            TorusElement cur = linv;
            for (;;) {
                cur = tprod(x, cur);
                if (cur.is_zero()) break;
                acc += cur;
            }
            return acc;
        };

        // z = Q0 Q1^{-1} (1 - Q1^{-2})^{-1} (1 - Q2^{-2})^{-1} ...,
        // inverses expanded geometrically, everything cut below -depth.
        ExpVec ze;
        ze.a = {1};
        ze.b = {-1};
        TorusElement z = TorusElement::monomial(cd, ze, TPoly(1));
        for (int j = 1; j <= kz; ++j) {
            const TorusElement qinv = series_inverse(table.at(1, j));
            const TorusElement u = tprod(qinv, qinv);
            TorusElement geo = TorusElement::scalar(cd, TPoly(1));
            TorusElement cur = geo;
            for (;;) {
                cur = tprod(cur, u);
                if (cur.is_zero()) break;
                geo += cur;
            }
            z = tprod(z, geo);
        }

        auto ztrunc = [&](const TorusElement& x) {
            TorusElement out(cd);
            for (const auto& [e, c] : x.terms())
                if (e.b[0] >= -keep) out.insert_term(e, c);
            return out;
        };
        TorusElement zpow = ztrunc(z);
        for (long long e = 1; e <= lval; ++e) zpow = ztrunc(product(zpow, z));

        const TorusElement big = product(left, zpow);
        TPoly ct;
        for (const auto& [e, c] : big.terms())
            if (e.b[0] == 0) ct += c;  // constant term; Q0 = 1 sums the rest
        return ct;
    };

    long long depth = total + 2 * (lval + 1) + 4;
    TPoly prev = run(depth);
    for (int attempt = 0; attempt < 6; ++attempt) {
        depth *= 2;
        TPoly curr = run(depth);
        if (curr == prev)
            return extract_v(prev.shifted(2 * total_n + lval + nAn), 2);
        prev = std::move(curr);
    }
    throw theorem_violation("constant-term series did not stabilize within the safety depth");
}

}  // namespace qqfusion
