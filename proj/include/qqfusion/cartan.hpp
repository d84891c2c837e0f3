#pragma once

/**
 * @file cartan.hpp
 * @brief Simply-laced Cartan data (C, delta = det C, lambda = delta * C^{-1}),
 *        the min-matrix, the p/q index bookkeeping and the quadratic form of
 *        the fermionic sums.
 *
 * Node numbering is Bourbaki throughout:
 *   A_r : 1 - 2 - ... - r
 *   D_r : 1 - 2 - ... - (r-2), with both (r-1) and r attached to (r-2)
 *   E_r : chain 1 - 3 - 4 - 5 - 6 (- 7 (- 8)), with node 2 attached to node 4
 */

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qqfusion/scalars.hpp"

namespace qqfusion {

using IMatrix = std::vector<std::vector<long long>>;
using IVector = std::vector<long long>;

struct CartanData {
    char label = 'A';     // 'A', 'D' or 'E'
    int rank = 1;
    IMatrix C;            // r x r Cartan matrix
    long long delta = 0;  // det(C)
    IMatrix lambda;       // delta * C^{-1}, exact integer symmetric matrix

    // C^{-1} is rational; it is carried exactly as lambda / delta.
    // cinv_num(b, a) / delta is the entry C^{-1}[b][a].
    long long cinv_num(int b, int a) const { return lambda[static_cast<size_t>(b)][static_cast<size_t>(a)]; }

    /// 1-based Dynkin neighbors of node alpha (entries beta with C[alpha][beta] = -1).
    std::vector<int> neighbors(int alpha) const;

    bool operator==(const CartanData& o) const { return label == o.label && rank == o.rank; }
    bool operator!=(const CartanData& o) const { return !(*this == o); }
};

/// Builds the Cartan data for (A, r>=1), (D, r>=4) or (E, r in {6,7,8}).
/// Throws invalid_input for any other combination. Postconditions verified:
/// C symmetric with the right graph, delta = det C matches the family value
/// (r+1, 4, 3, 2, 1), lambda integral symmetric with C * lambda = delta * I.
CartanData build_cartan(char label, int rank);

/// The k x k matrix A with A[i][j] = min(i+1, j+1): 0-based storage of the
/// 1-based min(i,j) level-overlap matrix.
IMatrix min_matrix(int k);

/// One fusion-product instance: which KR modules are multiplied (n), an
/// optional target weight l, and the truncation level k.
struct FusionInput {
    CartanData cartan;
    /// (alpha in [1,r], i >= 1) -> count n_{alpha,i}; finitely supported,
    /// zero counts need not be stored.
    std::map<std::pair<int, int>, long long> n;
    std::optional<IVector> lambda_weight;
    int k = 1;

    int max_level() const;                 // largest i with n_{alpha,i} > 0 (0 when n = 0)
    long long total_i_n() const;           // sum_{alpha,i} i * n_{alpha,i}
    IMatrix n_matrix(int levels) const;    // r x levels dense matrix of the counts
    IVector level_weighted_sums() const;   // S_alpha = sum_i i * n_{alpha,i}

    /// Validates counts, index ranges, k >= max support level and the shape
    /// of lambda_weight. Throws invalid_input on violation.
    void validate() const;
};

struct QVectors {
    IVector q0;  // length r
    IMatrix q;   // r x k; q[alpha][j-1] = q_{alpha,j}
    IMatrix p;   // r x k; p[alpha][j-1] = p_{alpha,j}
};

/// p = (I (x) A) n - (C (x) A) m, q0 = l - p_k and q_{alpha,j} = q_{alpha,0} + p_{alpha,j},
/// with l taken from in.lambda_weight (zero vector when absent).
QVectors q_vectors(const FusionInput& in, const IMatrix& m);
QVectors q_vectors(const FusionInput& in, const IMatrix& m, const IVector& ell);

/// Twice the quadratic form: 2 * Q(m, n) = -m . (p + (I (x) A) n).
/// Q itself lives in (1/2)Z; the doubled value avoids a rational type.
long long quadratic_form_x2(const FusionInput& in, const IMatrix& m);

}  // namespace qqfusion
