#pragma once

/**
 * @file scalars.hpp
 * @brief The coefficient rings: Laurent polynomials in t^{1/2} over
 *        arbitrary-precision integers (TPoly), Laurent polynomials with
 *        integer exponents (QPoly, used for both q and v = q^{-1}),
 *        quantum binomials, and the exponent embedding q = t^{-delta}.
 *
 * TPoly stores exponents doubled, so the key 2e represents t^e with
 * e in (1/2)Z. Every scalar prefactor in the quantum Q-system lives in
 * Z[t^{1/2}, t^{-1/2}], so this is the universal coefficient ring.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <string>

namespace qqfusion {

using Int = boost::multiprecision::cpp_int;

/// Laurent polynomial in t^{1/2}. Keys are doubled exponents: terms_[k]
/// is the coefficient of t^{k/2}. Canonical form: no zero coefficients.
class TPoly {
public:
    using Terms = std::map<long long, Int>;

    TPoly() = default;
    TPoly(long long c) { if (c != 0) terms_[0] = c; }       // NOLINT(implicit)
    explicit TPoly(const Int& c) { if (c != 0) terms_[0] = c; }

    /// coeff * t^{e2/2}
    static TPoly t_half_pow(long long e2, Int coeff = Int(1));
    /// coeff * t^e (integer exponent)
    static TPoly t_pow(long long e, Int coeff = Int(1)) { return t_half_pow(2 * e, std::move(coeff)); }

    bool is_zero() const { return terms_.empty(); }
    bool operator==(const TPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const TPoly& o) const { return !(*this == o); }

    TPoly& operator+=(const TPoly& o);
    TPoly& operator-=(const TPoly& o);
    TPoly operator+(const TPoly& o) const { TPoly r = *this; r += o; return r; }
    TPoly operator-(const TPoly& o) const { TPoly r = *this; r -= o; return r; }
    TPoly operator-() const;
    TPoly operator*(const TPoly& o) const;
    TPoly& operator*=(const TPoly& o) { *this = *this * o; return *this; }

    /// Multiply by t^{e2/2}: shifts every doubled exponent by e2.
    TPoly shifted(long long e2) const;

    /// Sum of coefficients (the evaluation t = 1); used by classical oracles.
    Int eval_at_one() const;

    /// Exact division in Z[t^{1/2}, t^{-1/2}]: returns q with q * d == *this,
    /// or nullopt when no such Laurent polynomial exists.
    std::optional<TPoly> divide_exact(const TPoly& d) const;

    bool is_monomial() const { return terms_.size() == 1; }
    /// True when *this is +-t^{e/2}, i.e. a unit of the ring.
    bool is_unit() const;

    const Terms& terms() const { return terms_; }

    /// Canonical rendering, ascending exponents: "t^-2 + t^3", "1 - t^(1/2)".
    std::string str() const;

private:
    Terms terms_;
};

/// Laurent polynomial with integer exponents over Int. The variable is
/// abstract; rendering defaults to v = q^{-1}. Graded multiplicities are
/// QPoly values in v with nonnegative exponents and coefficients.
class QPoly {
public:
    using Terms = std::map<long long, Int>;

    QPoly() = default;
    QPoly(long long c) { if (c != 0) terms_[0] = c; }       // NOLINT(implicit)
    explicit QPoly(const Int& c) { if (c != 0) terms_[0] = c; }

    static QPoly x_pow(long long e, Int coeff = Int(1));

    bool is_zero() const { return terms_.empty(); }
    bool operator==(const QPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const QPoly& o) const { return !(*this == o); }

    QPoly& operator+=(const QPoly& o);
    QPoly& operator-=(const QPoly& o);
    QPoly operator+(const QPoly& o) const { QPoly r = *this; r += o; return r; }
    QPoly operator-(const QPoly& o) const { QPoly r = *this; r -= o; return r; }
    QPoly operator-() const;
    QPoly operator*(const QPoly& o) const;
    QPoly& operator*=(const QPoly& o) { *this = *this * o; return *this; }

    Int eval_at_one() const;

    /// Exponent sign flip x^e -> x^{-e} (converts between q and v = q^{-1}).
    QPoly inverted_variable() const;

    bool has_negative_exponent() const;
    bool has_negative_coefficient() const;

    const Terms& terms() const { return terms_; }

    std::string str(const std::string& var = "v") const;

private:
    Terms terms_;
};

/// Quantum binomial [m+p over m]_q, defined for p of either sign as the
/// coefficient of x^m in (q^{p+1} x; q)_inf / (x; q)_inf, which is
/// prod_{i=0}^{p} (1 - q^i x)^{-1} for p >= 0 and the finite product
/// prod_{i=0}^{-p-2} (1 - q^{i+p+1} x) for p < 0 (the factor at exponent
/// zero cancels between numerator and denominator). Vanishes when p < 0 and
/// m >= -p. Result is a Laurent polynomial in q. Requires m >= 0.
QPoly qbinomial(long long m, long long p);

/// Gaussian binomial [n over k]_q = qbinomial(k, n - k), with the usual
/// convention that it vanishes for k < 0 or k > n.
QPoly gauss_binomial(long long n, long long k);

/// Ring homomorphism q -> t^{-delta}: q-exponent e maps to t-exponent -delta*e.
TPoly embed_q(const QPoly& qp, long long delta);

/// Ring homomorphism v -> t^{delta} (v = q^{-1} and q = t^{-delta}).
TPoly embed_v(const QPoly& vp, long long delta);

/// Inverse boundary map: every t-exponent of tp must be divisible by delta;
/// t-exponent e maps to v-exponent e/delta. Throws theorem_violation on a
/// non-divisible exponent, which would signal an internal inconsistency.
QPoly extract_v(const TPoly& tp, long long delta);

}  // namespace qqfusion
