#pragma once

/**
 * @file qsystem.hpp
 * @brief Solves the quantum Q-system recursion over the quantum torus and
 *        exposes the structural checks (defining relation residual, same-seed
 *        commutation, A1 linear recursion, classical t = 1 specialization).
 *
 * The defining relation, for every node alpha and interior n:
 *     t^{lambda_{aa}} Q[a,n+1] Q[a,n-1] = Q[a,n]^2 - prod_{b ~ a} Q[b,n]
 * (off-diagonal Cartan entries are 0 or -1 for simply-laced algebras, so the
 * product runs over Dynkin neighbors with exponent one).
 */

#include <memory>
#include <string>
#include <vector>

#include "qqfusion/cartan.hpp"
#include "qqfusion/qtorus.hpp"

namespace qqfusion {

/// Solved table of Q[alpha, n] for n in [-1, n_max], each a TorusElement over
/// the fundamental seed {Q[alpha,0], Q[alpha,1]}. The CartanData is owned by
/// the table (shared), so entries stay valid across copies.
struct QSolutionTable {
    std::shared_ptr<const CartanData> cartan;
    int n_max = 1;
    /// rows[alpha-1][n+1] holds Q[alpha, n].
    std::vector<std::vector<TorusElement>> rows;

    const TorusElement& at(int alpha, int n) const;
};

/// Computes the table. Downward step (n = -1) by monomial-inverse
/// multiplication:
///     Q[a,-1] = t^{-lambda_{aa}} Q[a,1]^{-1} (Q[a,0]^2 - prod_{b ~ a} Q[b,0]);
/// upward steps by exact right division of the defining relation by Q[a,n-1].
/// A division failure would contradict the Laurent property and surfaces as
/// theorem_violation.
QSolutionTable solve(const CartanData& cartan, int n_max);

struct CheckReport {
    bool ok = true;
    std::vector<std::string> failures;
};

/// Asserts, for all alpha, beta and 0 <= n < n_max, the same-seed relations
///     Q[a,n] Q[b,n]   =                     Q[b,n]   Q[a,n]
///     Q[a,n] Q[b,n+1] = t^{lambda_{ab}} Q[b,n+1] Q[a,n].
CheckReport check_same_seed_commutation(const QSolutionTable& table);

/// A1 only: asserts Q[n+1] + t Q[n-1] = (Q1 Q0^{-1} + t Q[-1] Q0^{-1}) Q[n]
/// for 0 <= n < n_max.
CheckReport check_linear_recursion_A1(const QSolutionTable& table);

/// Commutative Laurent polynomials: the t = 1 image of a solution table.
struct ClassicalTable {
    std::shared_ptr<const CartanData> cartan;
    int n_max = 1;
    std::vector<std::vector<std::map<ExpVec, Int>>> rows;  // same indexing as QSolutionTable

    const std::map<ExpVec, Int>& at(int alpha, int n) const;
};

/// Evaluates every coefficient at t = 1 and verifies the images satisfy the
/// commutative Q-system Q[a,n+1] Q[a,n-1] = Q[a,n]^2 - prod_{b ~ a} Q[b,n].
/// Throws theorem_violation on any residual.
ClassicalTable classical_specialization(const QSolutionTable& table);

}  // namespace qqfusion
