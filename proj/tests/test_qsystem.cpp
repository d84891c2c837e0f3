#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include "qqfusion/cartan.hpp"
#include "qqfusion/error.hpp"
#include "qqfusion/qsystem.hpp"
#include "qqfusion/qtorus.hpp"

using namespace qqfusion;

namespace {

using Rational = boost::multiprecision::cpp_rational;

Rational rat_pow(const Rational& base, int e) {
    Rational r = 1;
    for (int i = 0; i < (e < 0 ? -e : e); ++i) r *= base;
    return e < 0 ? Rational(1) / r : r;
}

// Numeric evaluation of a commutative A1 Laurent polynomial at a given seed.
Rational eval_a1(const std::map<ExpVec, Int>& poly, const Rational& q0, const Rational& q1) {
    Rational total = 0;
    for (const auto& [e, c] : poly)
        total += Rational(c) * rat_pow(q0, e.a[0]) * rat_pow(q1, e.b[0]);
    return total;
}

// The defining relation, verified by explicit multiplication. solve() finds
// the upward entries by exact division, so multiplying back is the
// independent direction.
void check_residual(const QSolutionTable& t) {
    const CartanData& cd = *t.cartan;
    for (int a = 1; a <= cd.rank; ++a)
        for (int n = 0; n < t.n_max; ++n) {
            TorusElement lhs =
                product(t.at(a, n + 1), t.at(a, n - 1)).scaled(TPoly::t_pow(cd.lambda[a - 1][a - 1]));
            TorusElement rhs = product(t.at(a, n), t.at(a, n));
            TorusElement nb = TorusElement::scalar(cd, TPoly(1));
            for (int b : cd.neighbors(a)) nb = product(nb, t.at(b, n));
            rhs -= nb;
            CAPTURE(a);
            CAPTURE(n);
            CHECK(lhs == rhs);
        }
}

}  // namespace

TEST_CASE("A1 solved entries in closed form") {
    const CartanData cd = build_cartan('A', 1);
    const QSolutionTable t = solve(cd, 2);

    // Q[1,2] = t Q0^{-1} Q1^2 - t^{-1} Q0^{-1}
    TorusElement q2(cd);
    q2.insert_term(ExpVec{{-1}, {2}}, TPoly::t_pow(1));
    q2.insert_term(ExpVec{{-1}, {0}}, TPoly::t_pow(-1, Int(-1)));
    CHECK(t.at(1, 2) == q2);

    // Q[1,-1] = t Q0^2 Q1^{-1} - t^{-1} Q1^{-1}
    TorusElement qm(cd);
    qm.insert_term(ExpVec{{2}, {-1}}, TPoly::t_pow(1));
    qm.insert_term(ExpVec{{0}, {-1}}, TPoly::t_pow(-1, Int(-1)));
    CHECK(t.at(1, -1) == qm);

    CHECK(t.at(1, 0) == TorusElement::generator(cd, 1, 0));
    CHECK(t.at(1, 1) == TorusElement::generator(cd, 1, 1));
}

TEST_CASE("defining relation residual vanishes") {
    check_residual(solve(build_cartan('A', 1), 5));
    check_residual(solve(build_cartan('A', 2), 3));
    check_residual(solve(build_cartan('A', 3), 3));
    check_residual(solve(build_cartan('D', 4), 2));
}

TEST_CASE("same-seed commutation") {
    for (const auto& [label, rank, n_max] :
         {std::tuple<char, int, int>{'A', 1, 4}, {'A', 2, 3}, {'D', 4, 2}}) {
        const QSolutionTable t = solve(build_cartan(label, rank), n_max);
        const CheckReport rep = check_same_seed_commutation(t);
        CAPTURE(label);
        CAPTURE(rank);
        CHECK(rep.ok);
        CHECK(rep.failures.empty());
    }
}

TEST_CASE("A1 linear recursion") {
    const QSolutionTable t = solve(build_cartan('A', 1), 5);
    const CheckReport rep = check_linear_recursion_A1(t);
    CHECK(rep.ok);
}

TEST_CASE("A1 translation invariance") {
    // Substituting (Q0, Q1) -> (Q[j], Q[j+1]) shifts the whole family:
    // the solved entries are polynomial in any adjacent seed pair.
    const CartanData cd = build_cartan('A', 1);
    const QSolutionTable t = solve(cd, 5);
    for (int j : {1, 2}) {
        const std::vector<TorusElement> img0 = {t.at(1, j)};
        const std::vector<TorusElement> img1 = {t.at(1, j + 1)};
        CHECK(check_substitution_images(cd, img0, img1).empty());
        for (int n = -1; n + j <= t.n_max; ++n) {
            CAPTURE(j);
            CAPTURE(n);
            CHECK(substitute(t.at(1, n), img0, img1) == t.at(1, n + j));
        }
    }
}

TEST_CASE("classical specialization solves the commutative recursion") {
    // At t = 1 with seed Q0 = 1, Q1 = 2 the A1 recursion
    // Q_{n+1} Q_{n-1} = Q_n^2 - 1 is solved by Q_n = n + 1.
    const ClassicalTable ct = classical_specialization(solve(build_cartan('A', 1), 4));
    for (int n = -1; n <= 4; ++n)
        CHECK(eval_a1(ct.at(1, n), Rational(1), Rational(2)) == Rational(n + 1));
}

TEST_CASE("classical specialization accepts the solved families") {
    CHECK_NOTHROW(classical_specialization(solve(build_cartan('A', 2), 3)));
    CHECK_NOTHROW(classical_specialization(solve(build_cartan('D', 4), 2)));
}

TEST_CASE("table bounds") {
    const QSolutionTable t = solve(build_cartan('A', 2), 2);
    CHECK_THROWS_AS(t.at(1, 3), invalid_input);
    CHECK_THROWS_AS(t.at(3, 1), invalid_input);
    CHECK_THROWS_AS(t.at(1, -2), invalid_input);
}
