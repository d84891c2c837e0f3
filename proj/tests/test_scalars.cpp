#include <doctest.h>

#include <map>
#include <utility>

#include "qqfusion/cartan.hpp"
#include "qqfusion/error.hpp"
#include "qqfusion/qtorus.hpp"
#include "qqfusion/scalars.hpp"

using namespace qqfusion;

namespace {

// Independent oracle for the Gaussian binomial, built from the Pascal
// recursion [n k] = [n-1 k-1] + q^k [n-1 k] alone. The library computes
// binomials from truncated generating series, so agreement is meaningful.
QPoly pascal_gauss(long long n, long long k) {
    if (k < 0 || k > n) return QPoly();
    static std::map<std::pair<long long, long long>, QPoly> memo;
    const auto key = std::make_pair(n, k);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    QPoly r;
    if (k == 0 || k == n) {
        r = QPoly(1);
    } else {
        r = pascal_gauss(n - 1, k - 1) + QPoly::x_pow(k) * pascal_gauss(n - 1, k);
    }
    memo[key] = r;
    return r;
}

}  // namespace

TEST_CASE("TPoly arithmetic and canonical form") {
    const TPoly a = TPoly::t_pow(2) + TPoly::t_pow(-1);
    const TPoly b = TPoly::t_pow(-1, Int(-1));
    CHECK((a + b) == TPoly::t_pow(2));
    CHECK((a + b + TPoly::t_pow(2, Int(-1))).is_zero());
    CHECK(a * TPoly(1) == a);
    CHECK((a * b) == TPoly::t_pow(1, Int(-1)) + TPoly::t_pow(-2, Int(-1)));
    CHECK(a.shifted(3) == TPoly::t_half_pow(7) + TPoly::t_half_pow(1));
    CHECK((-a) + a == TPoly());
    CHECK(a.eval_at_one() == 2);
}

TEST_CASE("TPoly exact division") {
    const TPoly d = TPoly::t_pow(1) - TPoly::t_pow(-1);
    const TPoly p = TPoly::t_pow(3) + TPoly::t_half_pow(1, Int(5)) - TPoly(2);
    const auto q = (p * d).divide_exact(d);
    REQUIRE(q.has_value());
    CHECK(*q == p);
    CHECK_FALSE((p * d + TPoly(1)).divide_exact(d).has_value());
    CHECK_FALSE(TPoly(1).divide_exact(TPoly(2)).has_value());
    CHECK(TPoly().divide_exact(d).has_value());
}

TEST_CASE("TPoly units and monomials") {
    CHECK(TPoly::t_half_pow(-3).is_unit());
    CHECK(TPoly::t_half_pow(4, Int(-1)).is_unit());
    CHECK_FALSE(TPoly::t_pow(1, Int(2)).is_unit());
    CHECK_FALSE((TPoly(1) + TPoly::t_pow(1)).is_unit());
    CHECK(TPoly::t_pow(5, Int(7)).is_monomial());
}

TEST_CASE("TPoly rendering") {
    CHECK(TPoly().str() == "0");
    CHECK(TPoly(1).str() == "1");
    CHECK(TPoly::t_half_pow(1).str() == "t^(1/2)");
    CHECK((TPoly::t_pow(-2) + TPoly::t_pow(3)).str() == "t^-2 + t^3");
    CHECK((TPoly(1) - TPoly::t_half_pow(1)).str() == "1 - t^(1/2)");
    CHECK(TPoly::t_pow(1, Int(2)).str() == "2*t");
}

TEST_CASE("QPoly arithmetic and rendering") {
    const QPoly p = QPoly(1) + QPoly::x_pow(2);
    CHECK(p.str() == "1 + v^2");
    CHECK(QPoly::x_pow(1).str() == "v");
    CHECK((p * p).str() == "1 + 2*v^2 + v^4");
    CHECK(p.str("q") == "1 + q^2");
    CHECK(p.eval_at_one() == 2);
    CHECK(p.inverted_variable() == QPoly(1) + QPoly::x_pow(-2));
    CHECK(QPoly::x_pow(-1).has_negative_exponent());
    CHECK_FALSE(p.has_negative_exponent());
    CHECK((p - QPoly::x_pow(2, Int(3))).has_negative_coefficient());
}

TEST_CASE("qbinomial matches the Pascal oracle for p >= 0") {
    for (long long m = 0; m <= 8; ++m)
        for (long long p = 0; p <= 8; ++p)
            CHECK(qbinomial(m, p) == pascal_gauss(m + p, m));
}

TEST_CASE("qbinomial for p < 0 matches the finite-product closed form") {
    // prod_{i=0}^{-p-2} (1 - q^{i+p+1} x) has x^m coefficient
    // (-1)^m q^{(p+1)m + m(m-1)/2} [(-p-1) choose m], zero for m >= -p.
    for (long long m = 0; m <= 6; ++m)
        for (long long p = -6; p < 0; ++p) {
            QPoly expect;
            if (m < -p) {
                expect = QPoly::x_pow((p + 1) * m + m * (m - 1) / 2,
                                      Int(m % 2 == 0 ? 1 : -1)) *
                         pascal_gauss(-p - 1, m);
            }
            CHECK(qbinomial(m, p) == expect);
        }
}

TEST_CASE("qbinomial for p < 0 matches the quotient of factor ratios") {
    // [m+p over m]_q = prod_{j=1}^{m} (1 - q^{p+j}) / (1 - q^j), which
    // vanishes as soon as the numerator picks up the factor at j = -p.
    for (long long m = 1; m <= 6; ++m)
        for (long long p = -6; p < 0; ++p) {
            QPoly num(1), den(1);
            for (long long j = 1; j <= m; ++j) {
                num *= QPoly(1) - QPoly::x_pow(p + j);
                den *= QPoly(1) - QPoly::x_pow(j);
            }
            CHECK(qbinomial(m, p) * den == num);
        }
}

TEST_CASE("qbinomial frozen small values") {
    CHECK(qbinomial(0, 0) == QPoly(1));
    CHECK(qbinomial(0, -3) == QPoly(1));
    CHECK(qbinomial(1, 1) == QPoly(1) + QPoly::x_pow(1));
    CHECK(qbinomial(1, -1) == QPoly());
    CHECK(qbinomial(1, -2) == QPoly::x_pow(-1, Int(-1)));
    CHECK(qbinomial(2, -1) == QPoly());
    CHECK(qbinomial(2, -2) == QPoly());
    CHECK(qbinomial(2, -3) == QPoly::x_pow(-3));
    CHECK(qbinomial(3, -2) == QPoly());
    CHECK(qbinomial(2, 1) == QPoly(1) + QPoly::x_pow(1) + QPoly::x_pow(2));
}

TEST_CASE("gauss_binomial conventions") {
    CHECK(gauss_binomial(4, 2) == qbinomial(2, 2));
    CHECK(gauss_binomial(4, -1).is_zero());
    CHECK(gauss_binomial(4, 5).is_zero());
    CHECK(gauss_binomial(0, 0) == QPoly(1));
    for (long long n = 0; n <= 8; ++n)
        for (long long k = 0; k <= n; ++k) CHECK(gauss_binomial(n, k) == pascal_gauss(n, k));
}

TEST_CASE("q-binomial theorem realized in the A1 quantum torus") {
    // With x = Q[1,1]^{-2} and y = Q[1,0] the torus gives yx = q xy at
    // q = t^{-2}, so (x + y)^n must expand with Gaussian coefficients:
    // (x + y)^n = sum_k [n k]_q x^{n-k} y^k.
    const CartanData cd = build_cartan('A', 1);
    REQUIRE(cd.delta == 2);
    const TorusElement x = TorusElement::generator(cd, 1, 1, -2);
    const TorusElement y = TorusElement::generator(cd, 1, 0);
    CHECK(product(y, x) == product(x, y).scaled(TPoly::t_pow(-2)));
    for (int n = 0; n <= 5; ++n) {
        const TorusElement lhs = (x + y).pow(n);
        TorusElement rhs(cd);
        for (int k = 0; k <= n; ++k)
            rhs += product(x.pow(n - k), y.pow(k))
                       .scaled(embed_q(gauss_binomial(n, k), cd.delta));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("embedding q = t^{-delta} and the v boundary map") {
    CHECK(embed_q(QPoly::x_pow(2), 3) == TPoly::t_pow(-6));
    CHECK(embed_v(QPoly::x_pow(2), 3) == TPoly::t_pow(6));
    CHECK(embed_q(QPoly(5), 4) == TPoly(5));

    const QPoly p = QPoly(2) + QPoly::x_pow(1) - QPoly::x_pow(4, Int(3));
    for (long long delta : {1LL, 2LL, 3LL, 4LL}) {
        CHECK(extract_v(embed_v(p, delta), delta) == p);
        CHECK(embed_q(p, delta) == embed_v(p.inverted_variable(), delta));
    }

    CHECK_THROWS_AS(extract_v(TPoly::t_half_pow(1), 1), theorem_violation);
    CHECK_THROWS_AS(extract_v(TPoly::t_pow(1), 2), theorem_violation);
}
