#pragma once

/**
 * @file fermionic.hpp
 * @brief Graded fusion multiplicities by direct summation: the restricted
 *        sum (all vacancy numbers nonnegative) and the unrestricted sum
 *        (signed quantum binomials, no positivity constraint).
 *
 * Both sums run over configurations m = (m_{alpha,i}) of nonnegative
 * integers indexed by a node alpha and a level i <= k, subject to the
 * exact-weight constraint q_{alpha,0} = 0. Each configuration contributes
 *
 *     q^{Q(m,n)} * prod_{alpha,i} qbinomial(m_{alpha,i}, p_{alpha,i})
 *
 * with p and Q as in cartan.hpp. The result is reported in v = q^{-1},
 * where it is a polynomial with nonnegative exponents.
 */

#include <map>
#include <string>
#include <vector>

#include "qqfusion/cartan.hpp"

namespace qqfusion {

/// Graded decomposition of one fusion product: dominant weight (in the
/// fundamental-weight basis) -> multiplicity polynomial in v.
struct MultiplicityResult {
    char label = 'A';
    int rank = 1;
    int k_used = 1;
    std::string method;                  // "msum", "nsum", "matrix" or "ctz"
    std::map<IVector, QPoly> components; // ascending lex; zero entries dropped

    bool operator==(const MultiplicityResult&) const = default;
};

/// Truncation level when the caller does not pin one: one more than
/// max(largest occupied level, ceil(total weighted KR size / 2)).
/// An empty product gets k = 1.
int auto_k(const FusionInput& in);

/// All m-configurations (r x k nonnegative integer matrices) with
/// q_{alpha,0} = 0 for the target weight ell. Solving q0 = 0 fixes the
/// weighted row sums: sum_i i * m_{beta,i} = sum_a C^{-1}[beta][a] *
/// (S_a - ell_a) with S the weighted sums of n. The list is empty unless
/// every such value is a nonnegative integer.
std::vector<IMatrix> enumerate_m(const FusionInput& in, const IVector& ell);

/// Restricted sum M_{ell;n}(v): only configurations with every
/// p_{alpha,i} >= 0 contribute. The result always has nonnegative
/// exponents and coefficients; a violation throws theorem_violation.
QPoly m_sum(const FusionInput& in, const IVector& ell);

/// Unrestricted sum N_{ell;n}(v): every configuration contributes, with
/// the signed binomial convention for p < 0. Equals m_sum as an identity;
/// the two are computed independently so they can cross-check each other.
QPoly n_sum(const FusionInput& in, const IVector& ell);

/// Candidate dominant weights of the decomposition: ell = S - C*T over
/// the integer box T_beta in [0, floor((lambda * S)_beta / delta)], kept
/// when ell >= 0 componentwise. Descending lex order.
std::vector<IVector> dominant_weights(const FusionInput& in);

enum class FermionicMethod { MSum, NSum };

/// Decomposition over the whole dominant-weight polytope (or the single
/// weight in.lambda_weight when set), dropping zero multiplicities.
/// Weights are processed in parallel; see parallel.hpp.
MultiplicityResult fusion_decompose_fermionic(const FusionInput& in, FermionicMethod method);

}  // namespace qqfusion
