#pragma once

/**
 * @file evaluation.hpp
 * @brief The matrix-element route to graded multiplicities: the left
 *        evaluation map phi onto polynomials in the level-1 generators,
 *        the moment table mu_{ell,j}, the vacuum pairing, the general
 *        matrix-element multiplicity formula, and the A1 constant-term
 *        route through a truncated Laurent series.
 */

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "qqfusion/cartan.hpp"
#include "qqfusion/fermionic.hpp"
#include "qqfusion/qsystem.hpp"
#include "qqfusion/qtorus.hpp"

namespace qqfusion {

/// Commutative polynomial in the level-1 generators: j -> c_j(t) denotes
/// sum_j c_j(t) * prod_alpha Q[alpha,1]^{j_alpha}, exponents nonnegative.
struct Q1Polynomial {
    std::map<std::vector<int>, TPoly> terms;

    bool is_zero() const { return terms.empty(); }
    bool operator==(const Q1Polynomial& o) const { return terms == o.terms; }
    bool operator!=(const Q1Polynomial& o) const { return !(*this == o); }
};

/// Left evaluation: from the normal-ordered form of p, discard every
/// monomial with a negative level-1 exponent, then evaluate the leftmost
/// level-0 block at Q[alpha,0] -> t^{-sum_beta lambda_{alpha,beta}}.
/// The caller warrants that p lies in the subalgebra generated by
/// {Q[alpha,0]^{+-1}, Q[alpha,i] (i >= 1)}; outside it the result is
/// well-defined but carries no representation-theoretic meaning.
Q1Polynomial phi(const TorusElement& p);

/// Re-embeds a Q1Polynomial as a (normal-ordered) torus element.
TorusElement q1_to_torus(const CartanData& cartan, const Q1Polynomial& p);

/// Moments mu_{ell,j} within fixed componentwise bounds. Values are seeded
/// from the unrestricted fermionic sum with all n at level 1:
///     mu_{ell,j} = t^{-e/2} * N_{ell;n(j)}(q^{-1}),
///     e = sum_a ell_a lambda_{aa}
///       + sum_{a,b} [(j_a+1) lambda_{ab} (j_b+1) - lambda_{ab}],
/// and for A1 additionally recomputed from the closed change-of-basis form;
/// any disagreement throws theorem_violation. Entries are computed on
/// first use and cached; copies share the cache. Thread-safe.
class MomentTable {
public:
    MomentTable(CartanData cartan, IVector ell_max, std::vector<int> j_max);

    const CartanData& cartan() const { return cartan_; }
    const IVector& ell_max() const { return ell_max_; }
    const std::vector<int>& j_max() const { return j_max_; }

    /// mu_{ell,j}. Throws invalid_input when (ell, j) leaves the declared
    /// bounds (the caller must rebuild with larger ones).
    TPoly at(const IVector& ell, const std::vector<int>& j) const;

private:
    TPoly compute(const IVector& ell, const std::vector<int>& j) const;

    CartanData cartan_;
    IVector ell_max_;
    std::vector<int> j_max_;

    struct Cache {
        std::mutex mu;
        std::map<std::pair<IVector, std::vector<int>>, TPoly> entries;
    };
    std::shared_ptr<Cache> cache_;
};

MomentTable build_moments(const CartanData& cartan, const IVector& max_ell,
                          const std::vector<int>& max_j);

/// <0| p |ell> = sum_j phi(p)_j(t) * mu_{ell,j}.
TPoly vacuum_pair(const Q1Polynomial& p, const IVector& ell, const MomentTable& moments);
TPoly vacuum_pair(const TorusElement& p, const IVector& ell, const MomentTable& moments);

/// The ordered product prod_{i=1..k} prod_alpha Q[alpha,i]^{n_{alpha,i}}
/// of solved Q-system entries, lower levels leftmost.
TorusElement kr_product(const FusionInput& in, const QSolutionTable& table);

/// Componentwise moment bounds sufficient to decompose `in`: ell over the
/// dominant-weight polytope (and the pinned weight, when set), j over the
/// support of the product image.
std::pair<IVector, std::vector<int>> moment_bounds(const FusionInput& in,
                                                   const Q1Polynomial& image);

/// Graded multiplicity of weight ell by the matrix-element formula:
///     M = t^{sum_{a,b,i} n_{a,i} lambda_{ab}
///           + (1/2)(sum_a ell_a lambda_{aa} + n.(lambda (x) A).n)}
///         * <0| prod Q[alpha,i]^{n_{alpha,i}} |ell>,
/// converted to v. The t-prefactor lives in half-integer exponents and must
/// cancel to delta-divisible ones; extract_v asserts that cancellation.
QPoly matrix_multiplicity(const FusionInput& in, const IVector& ell,
                          const QSolutionTable& table, const MomentTable& moments);
/// Same, with the product image precomputed (shared across weights).
QPoly matrix_multiplicity(const FusionInput& in, const IVector& ell,
                          const Q1Polynomial& image, const MomentTable& moments);

/// Decomposition over the dominant-weight polytope by the matrix route;
/// weights processed in parallel over the shared tables.
MultiplicityResult fusion_decompose_matrix(const FusionInput& in,
                                           const QSolutionTable& table,
                                           const MomentTable& moments);

/// A1 only: the constant-term route. Expands
///     z = Q[1,0] Q[1,1]^{-1} prod_{j>=1} (1 - Q[1,j]^{-2})^{-1}
/// as a Laurent series in Q[1,1]^{-1} truncated below a depth bound, forms
/// Q[1,1] Q[1,0]^{-1} prod_i Q[1,i]^{n_i} z^{ell+1}, takes the Q[1,1]
/// constant term, evaluates at Q[1,0] = 1 and applies the same prefactor
/// as the matrix route. The depth starts at sum_i i*n_i + 2(ell+1) + 4 and
/// doubles until two consecutive depths agree; failure to stabilize within
/// the safety budget throws theorem_violation. The table must cover level
/// max(max occupied level, ceil(sum_i i*n_i / 2), 1).
QPoly ct_z_multiplicity_A1(const FusionInput& in, const IVector& ell,
                           const QSolutionTable& table);

}  // namespace qqfusion
