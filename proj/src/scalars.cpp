#include "qqfusion/scalars.hpp"

#include <sstream>
#include <vector>

#include "qqfusion/error.hpp"

namespace qqfusion {

// ============================================================================
// TPoly
// ============================================================================

TPoly TPoly::t_half_pow(long long e2, Int coeff) {
    TPoly p;
    if (coeff != 0) p.terms_[e2] = std::move(coeff);
    return p;
}

TPoly& TPoly::operator+=(const TPoly& o) {
    for (const auto& [e, c] : o.terms_) {
        Int& dst = terms_[e];
        dst += c;
        if (dst == 0) terms_.erase(e);
    }
    return *this;
}

TPoly& TPoly::operator-=(const TPoly& o) {
    for (const auto& [e, c] : o.terms_) {
        Int& dst = terms_[e];
        dst -= c;
        if (dst == 0) terms_.erase(e);
    }
    return *this;
}

TPoly TPoly::operator-() const {
    TPoly r;
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

TPoly TPoly::operator*(const TPoly& o) const {
    TPoly r;
    for (const auto& [e1, c1] : terms_) {
        for (const auto& [e2, c2] : o.terms_) {
            Int& dst = r.terms_[e1 + e2];
            dst += c1 * c2;
            if (dst == 0) r.terms_.erase(e1 + e2);
        }
    }
    return r;
}

TPoly TPoly::shifted(long long e2) const {
    TPoly r;
    for (const auto& [e, c] : terms_) r.terms_[e + e2] = c;
    return r;
}

Int TPoly::eval_at_one() const {
    Int s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
}

std::optional<TPoly> TPoly::divide_exact(const TPoly& d) const {
    if (d.is_zero()) return std::nullopt;
    if (is_zero()) return TPoly();

    // Top-down long division by the leading term. If an exact Laurent
    // quotient exists its exponents lie in [min(P)-min(D), max(P)-max(D)],
    // so any candidate outside that window proves non-exactness.
    const long long lo = terms_.begin()->first - d.terms_.begin()->first;
    TPoly quot;
    TPoly rem = *this;
    while (!rem.is_zero()) {
        const auto& [er, cr] = *rem.terms_.rbegin();
        const auto& [ed, cd] = *d.terms_.rbegin();
        const long long eq = er - ed;
        if (eq < lo) return std::nullopt;
        if (cr % cd != 0) return std::nullopt;
        Int cq = cr / cd;
        TPoly piece = TPoly::t_half_pow(eq, cq);
        quot += piece;
        rem -= piece * d;
    }
    return quot;
}

bool TPoly::is_unit() const {
    if (terms_.size() != 1) return false;
    const Int& c = terms_.begin()->second;
    return c == 1 || c == -1;
}

namespace {

// Shared term renderer for both polynomial classes. `e2x` doubles exponents
// for TPoly ("t^(1/2)") and is 1 for QPoly.
std::string render_terms(const std::map<long long, Int>& terms,
                         const std::string& var, bool doubled) {
    if (terms.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms) {
        Int mag = c < 0 ? Int(-c) : c;
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        std::string power;
        if (e != 0) {
            if (!doubled) {
                power = var;
                if (e != 1) power += "^" + std::to_string(e);
            } else if (e % 2 == 0) {
                power = var;
                if (e / 2 != 1) power += "^" + std::to_string(e / 2);
            } else {
                power = var + "^(" + std::to_string(e) + "/2)";
            }
        }
        if (power.empty()) {
            out << mag.str();
        } else if (mag == 1) {
            out << power;
        } else {
            out << mag.str() << "*" << power;
        }
    }
    return out.str();
}

}  // namespace

std::string TPoly::str() const { return render_terms(terms_, "t", true); }

// ============================================================================
// QPoly
// ============================================================================

QPoly QPoly::x_pow(long long e, Int coeff) {
    QPoly p;
    if (coeff != 0) p.terms_[e] = std::move(coeff);
    return p;
}

QPoly& QPoly::operator+=(const QPoly& o) {
    for (const auto& [e, c] : o.terms_) {
        Int& dst = terms_[e];
        dst += c;
        if (dst == 0) terms_.erase(e);
    }
    return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
    for (const auto& [e, c] : o.terms_) {
        Int& dst = terms_[e];
        dst -= c;
        if (dst == 0) terms_.erase(e);
    }
    return *this;
}

QPoly QPoly::operator-() const {
    QPoly r;
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

QPoly QPoly::operator*(const QPoly& o) const {
    QPoly r;
    for (const auto& [e1, c1] : terms_) {
        for (const auto& [e2, c2] : o.terms_) {
            Int& dst = r.terms_[e1 + e2];
            dst += c1 * c2;
            if (dst == 0) r.terms_.erase(e1 + e2);
        }
    }
    return r;
}

Int QPoly::eval_at_one() const {
    Int s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
}

QPoly QPoly::inverted_variable() const {
    QPoly r;
    for (const auto& [e, c] : terms_) r.terms_[-e] = c;
    return r;
}

bool QPoly::has_negative_exponent() const {
    return !terms_.empty() && terms_.begin()->first < 0;
}

bool QPoly::has_negative_coefficient() const {
    for (const auto& [e, c] : terms_)
        if (c < 0) return true;
    return false;
}

std::string QPoly::str(const std::string& var) const {
    return render_terms(terms_, var, false);
}

// ============================================================================
// Quantum binomials
// ============================================================================

QPoly qbinomial(long long m, long long p) {
    if (m < 0) throw invalid_input("qbinomial: m must be nonnegative");

    // Truncated series in x up to x^m; coefficients are polynomials in q.
    std::vector<QPoly> c(static_cast<size_t>(m) + 1);
    c[0] = QPoly(1);

    if (p >= 0) {
        // Multiply by (1 - q^i x)^{-1} for i = 0..p: in ascending j,
        // new[j] = old[j] + q^i * new[j-1].
        for (long long i = 0; i <= p; ++i) {
            for (long long j = 1; j <= m; ++j) {
                c[static_cast<size_t>(j)] +=
                    QPoly::x_pow(i) * c[static_cast<size_t>(j) - 1];
            }
        }
    } else {
        // Multiply by (1 - q^{i+p+1} x) for i = 0..-p-2: in descending j,
        // new[j] = old[j] - q^{i+p+1} * old[j-1]. The exponent-zero factor
        // of (q^{p+1} x; q)_inf cancels against (x; q)_inf and is skipped.
        for (long long i = 0; i <= -p - 2; ++i) {
            for (long long j = m; j >= 1; --j) {
                c[static_cast<size_t>(j)] -=
                    QPoly::x_pow(i + p + 1) * c[static_cast<size_t>(j) - 1];
            }
        }
    }
    return c[static_cast<size_t>(m)];
}

QPoly gauss_binomial(long long n, long long k) {
    if (k < 0 || k > n) return QPoly();
    return qbinomial(k, n - k);
}

// ============================================================================
// q <-> t exponent embeddings
// ============================================================================

TPoly embed_q(const QPoly& qp, long long delta) {
    TPoly r;
    for (const auto& [e, c] : qp.terms()) r += TPoly::t_pow(-delta * e, c);
    return r;
}

TPoly embed_v(const QPoly& vp, long long delta) {
    TPoly r;
    for (const auto& [e, c] : vp.terms()) r += TPoly::t_pow(delta * e, c);
    return r;
}

QPoly extract_v(const TPoly& tp, long long delta) {
    QPoly r;
    for (const auto& [e2, c] : tp.terms()) {
        if (e2 % (2 * delta) != 0)
            throw theorem_violation(
                "extract_v: t-exponent " + std::to_string(e2) +
                "/2 not divisible by delta=" + std::to_string(delta));
        r += QPoly::x_pow(e2 / (2 * delta), c);
    }
    return r;
}

}  // namespace qqfusion
