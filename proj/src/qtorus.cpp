#include "qqfusion/qtorus.hpp"

#include <algorithm>
#include <sstream>

#include "qqfusion/error.hpp"

namespace qqfusion {

// ============================================================================
// ExpVec
// ============================================================================

ExpVec ExpVec::operator+(const ExpVec& o) const {
    ExpVec r = *this;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += o.a[i];
    for (size_t i = 0; i < r.b.size(); ++i) r.b[i] += o.b[i];
    return r;
}

ExpVec ExpVec::operator-() const {
    ExpVec r = *this;
    for (int& v : r.a) v = -v;
    for (int& v : r.b) v = -v;
    return r;
}

bool ExpVec::is_zero() const {
    return std::all_of(a.begin(), a.end(), [](int v) { return v == 0; }) &&
           std::all_of(b.begin(), b.end(), [](int v) { return v == 0; });
}

namespace {

ExpVec zero_exp(int r) {
    ExpVec e;
    e.a.assign(static_cast<size_t>(r), 0);
    e.b.assign(static_cast<size_t>(r), 0);
    return e;
}

void require_same_algebra(const TorusElement& x, const TorusElement& y) {
    if (x.ctx() != y.ctx())
        throw invalid_input("torus: mixed-algebra operands");
}

// b . lambda . a, the exponent count of level-1/level-0 crossings.
long long cross_weight(const CartanData& ctx, const std::vector<int>& b,
                       const std::vector<int>& a) {
    long long w = 0;
    for (size_t i = 0; i < b.size(); ++i) {
        if (b[i] == 0) continue;
        for (size_t j = 0; j < a.size(); ++j)
            w += static_cast<long long>(b[i]) * ctx.lambda[i][j] * a[j];
    }
    return w;
}

}  // namespace

// ============================================================================
// TorusElement basics
// ============================================================================

TorusElement TorusElement::scalar(const CartanData& ctx, TPoly c) {
    TorusElement e(ctx);
    e.insert_term(zero_exp(ctx.rank), std::move(c));
    return e;
}

TorusElement TorusElement::monomial(const CartanData& ctx, ExpVec ev, TPoly c) {
    if (static_cast<int>(ev.a.size()) != ctx.rank ||
        static_cast<int>(ev.b.size()) != ctx.rank)
        throw invalid_input("torus: exponent vector has wrong length");
    TorusElement e(ctx);
    e.insert_term(ev, std::move(c));
    return e;
}

TorusElement TorusElement::generator(const CartanData& ctx, int alpha, int level, int power) {
    if (alpha < 1 || alpha > ctx.rank || (level != 0 && level != 1))
        throw invalid_input("torus: no such generator");
    ExpVec e = zero_exp(ctx.rank);
    (level == 0 ? e.a : e.b)[static_cast<size_t>(alpha - 1)] = power;
    return monomial(ctx, e, TPoly(1));
}

void TorusElement::insert_term(const ExpVec& e, TPoly c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, std::move(c));
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

bool TorusElement::operator==(const TorusElement& o) const {
    return *ctx_ == *o.ctx_ && terms_ == o.terms_;
}

TorusElement& TorusElement::operator+=(const TorusElement& o) {
    require_same_algebra(*this, o);
    for (const auto& [e, c] : o.terms_) insert_term(e, c);
    return *this;
}

TorusElement& TorusElement::operator-=(const TorusElement& o) {
    require_same_algebra(*this, o);
    for (const auto& [e, c] : o.terms_) insert_term(e, -c);
    return *this;
}

TorusElement TorusElement::operator+(const TorusElement& o) const {
    TorusElement r = *this;
    r += o;
    return r;
}

TorusElement TorusElement::operator-(const TorusElement& o) const {
    TorusElement r = *this;
    r -= o;
    return r;
}

TorusElement TorusElement::operator-() const {
    TorusElement r(*ctx_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

TorusElement TorusElement::scaled(const TPoly& c) const {
    TorusElement r(*ctx_);
    if (c.is_zero()) return r;
    for (const auto& [e, tc] : terms_) r.insert_term(e, tc * c);
    return r;
}

TorusElement TorusElement::monomial_inverse() const {
    if (terms_.size() != 1)
        throw invalid_input("torus: monomial_inverse of a non-monomial");
    const auto& [e, c] = *terms_.begin();
    if (!c.is_unit())
        throw invalid_input("torus: monomial scalar is not a unit of Z[t^{1/2},t^{-1/2}]");
    // (a,b)^{-1} = (-a,-b) with scalar t^{-b.lambda.a} / c. For the unit
    // c = s*t^{e2/2} (s = +-1) the reciprocal is s*t^{-e2/2}.
    const auto& [ce2, cc] = *c.terms().begin();
    const long long w = cross_weight(*ctx_, e.b, e.a);
    TPoly inv_scalar = TPoly::t_half_pow(-2 * w - ce2, cc);
    return monomial(*ctx_, -e, inv_scalar);
}

TorusElement TorusElement::pow(int e) const {
    if (e < 0) throw invalid_input("torus: pow exponent must be >= 0");
    TorusElement acc = scalar(*ctx_, TPoly(1));
    for (int i = 0; i < e; ++i) acc = product(acc, *this);
    return acc;
}

std::map<ExpVec, Int> TorusElement::eval_t_one() const {
    std::map<ExpVec, Int> out;
    for (const auto& [e, c] : terms_) {
        Int v = c.eval_at_one();
        if (v != 0) out[e] = v;
    }
    return out;
}

std::string TorusElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!first) out << " + ";
        first = false;
        const std::string coeff = it->second.str();
        std::string vars;
        auto emit = [&](const std::vector<int>& exps, int level) {
            for (size_t i = 0; i < exps.size(); ++i) {
                if (exps[i] == 0) continue;
                if (!vars.empty()) vars += "*";
                vars += "Q[" + std::to_string(i + 1) + "," + std::to_string(level) + "]";
                if (exps[i] != 1) vars += "^" + std::to_string(exps[i]);
            }
        };
        emit(it->first.a, 0);
        emit(it->first.b, 1);
        const bool compound = it->second.terms().size() > 1;
        if (vars.empty()) {
            out << (compound ? "(" + coeff + ")" : coeff);
        } else if (coeff == "1") {
            out << vars;
        } else if (compound) {
            out << "(" << coeff << ")*" << vars;
        } else {
            out << coeff << "*" << vars;
        }
    }
    return out.str();
}

// ============================================================================
// Products
// ============================================================================

std::pair<ExpVec, TPoly> mono_product(const CartanData& ctx,
                                      const ExpVec& ue, const TPoly& uc,
                                      const ExpVec& we, const TPoly& wc) {
    const long long w = cross_weight(ctx, ue.b, we.a);
    return {ue + we, (uc * wc).shifted(-2 * w)};
}

TorusElement product(const TorusElement& x, const TorusElement& y) {
    require_same_algebra(x, y);
    TorusElement r(x.ctx());
    for (const auto& [xe, xc] : x.terms()) {
        for (const auto& [ye, yc] : y.terms()) {
            auto [e, c] = mono_product(x.ctx(), xe, xc, ye, yc);
            r.insert_term(e, std::move(c));
        }
    }
    return r;
}

// ============================================================================
// Exact right division
// ============================================================================

namespace {

// Componentwise bounding box of a support set, as two ExpVecs.
std::pair<ExpVec, ExpVec> support_box(const TorusElement& x) {
    auto it = x.terms().begin();
    ExpVec lo = it->first, hi = it->first;
    for (++it; it != x.terms().end(); ++it) {
        for (size_t i = 0; i < lo.a.size(); ++i) {
            lo.a[i] = std::min(lo.a[i], it->first.a[i]);
            hi.a[i] = std::max(hi.a[i], it->first.a[i]);
            lo.b[i] = std::min(lo.b[i], it->first.b[i]);
            hi.b[i] = std::max(hi.b[i], it->first.b[i]);
        }
    }
    return {lo, hi};
}

bool inside_box(const ExpVec& e, const ExpVec& lo, const ExpVec& hi) {
    for (size_t i = 0; i < e.a.size(); ++i) {
        if (e.a[i] < lo.a[i] || e.a[i] > hi.a[i]) return false;
        if (e.b[i] < lo.b[i] || e.b[i] > hi.b[i]) return false;
    }
    return true;
}

}  // namespace

TorusElement right_divide_exact(const TorusElement& P, const TorusElement& D) {
    require_same_algebra(P, D);
    if (D.is_zero()) throw invalid_input("torus: division by zero");
    TorusElement R(P.ctx());
    if (P.is_zero()) return R;

    // For exact R*D = P, coordinate-first lex orders are translation
    // invariant and cancellation-free at their extremes, which pins every
    // exponent of R inside box(P) - box(D) corner to corner.
    const auto [plo, phi] = support_box(P);
    const auto [dlo, dhi] = support_box(D);
    ExpVec qlo = plo, qhi = phi;
    for (size_t i = 0; i < qlo.a.size(); ++i) {
        qlo.a[i] -= dlo.a[i];
        qhi.a[i] -= dhi.a[i];
        qlo.b[i] -= dlo.b[i];
        qhi.b[i] -= dhi.b[i];
    }

    const auto& [ed, cd] = *D.terms().rbegin();
    TorusElement rem = P;
    while (!rem.is_zero()) {
        const auto& [er, cr] = *rem.terms().rbegin();
        ExpVec eq = er;
        for (size_t i = 0; i < eq.a.size(); ++i) {
            eq.a[i] -= ed.a[i];
            eq.b[i] -= ed.b[i];
        }
        if (!inside_box(eq, qlo, qhi))
            throw theorem_violation("torus: non-exact right division (Laurent property violated)");

        // Want mono_product((eq,cq),(ed,cd)).scalar = cr, i.e.
        // cq * cd * t^{-w} = cr with w = eq.b . lambda . ed.a.
        const long long w = cross_weight(P.ctx(), eq.b, ed.a);
        auto cq = cr.shifted(2 * w).divide_exact(cd);
        if (!cq)
            throw theorem_violation("torus: non-exact right division (coefficient not divisible)");
        TorusElement piece = TorusElement::monomial(P.ctx(), eq, *cq);
        R += piece;
        rem -= product(piece, D);
    }
    return R;
}

// ============================================================================
// Substitution
// ============================================================================

TorusElement substitute(const TorusElement& x,
                        const std::vector<TorusElement>& images0,
                        const std::vector<TorusElement>& images1) {
    const int r = x.ctx().rank;
    if (static_cast<int>(images0.size()) != r || static_cast<int>(images1.size()) != r)
        throw invalid_input("substitute: need one image per generator");
    const CartanData& tctx = images0.empty() ? x.ctx() : images0.front().ctx();
    for (const auto& img : images0) require_same_algebra(images0.front(), img);
    for (const auto& img : images1) require_same_algebra(images0.front(), img);

    if (x.is_zero()) return TorusElement(tctx);

    // Global denominator clearing: one monomial s with x*s free of negative
    // exponents, then map and right-divide by the image of s.
    ExpVec smin = x.terms().begin()->first;
    for (const auto& [e, c] : x.terms()) {
        for (size_t i = 0; i < smin.a.size(); ++i) {
            smin.a[i] = std::min(smin.a[i], e.a[i]);
            smin.b[i] = std::min(smin.b[i], e.b[i]);
        }
    }
    ExpVec sexp;
    sexp.a.resize(static_cast<size_t>(r));
    sexp.b.resize(static_cast<size_t>(r));
    bool need_clear = false;
    for (size_t i = 0; i < sexp.a.size(); ++i) {
        sexp.a[i] = std::max(0, -smin.a[i]);
        sexp.b[i] = std::max(0, -smin.b[i]);
        need_clear = need_clear || sexp.a[i] > 0 || sexp.b[i] > 0;
    }

    auto map_nonneg = [&](const TorusElement& y) {
        TorusElement out(tctx);
        for (const auto& [e, c] : y.terms()) {
            TorusElement term = TorusElement::scalar(tctx, c);
            for (int i = 0; i < r; ++i)
                if (e.a[static_cast<size_t>(i)] != 0)
                    term = product(term, images0[static_cast<size_t>(i)].pow(e.a[static_cast<size_t>(i)]));
            for (int i = 0; i < r; ++i)
                if (e.b[static_cast<size_t>(i)] != 0)
                    term = product(term, images1[static_cast<size_t>(i)].pow(e.b[static_cast<size_t>(i)]));
            out += term;
        }
        return out;
    };

    if (!need_clear) return map_nonneg(x);

    const TorusElement s = TorusElement::monomial(x.ctx(), sexp, TPoly(1));
    const TorusElement y = product(x, s);
    return right_divide_exact(map_nonneg(y), map_nonneg(s));
}

std::vector<std::string> check_substitution_images(
    const CartanData& source,
    const std::vector<TorusElement>& images0,
    const std::vector<TorusElement>& images1) {
    std::vector<std::string> bad;
    auto image = [&](int alpha, int level) -> const TorusElement& {
        return (level == 0 ? images0 : images1)[static_cast<size_t>(alpha - 1)];
    };
    for (int alpha = 1; alpha <= source.rank; ++alpha) {
        for (int beta = 1; beta <= source.rank; ++beta) {
            for (int n = 0; n <= 1; ++n) {
                for (int m = 0; m <= 1; ++m) {
                    const long long lam =
                        source.lambda[static_cast<size_t>(alpha - 1)][static_cast<size_t>(beta - 1)];
                    const TorusElement lhs = product(image(alpha, n), image(beta, m));
                    const TorusElement rhs =
                        product(image(beta, m), image(alpha, n)).scaled(TPoly::t_pow(lam * (m - n)));
                    if (lhs != rhs)
                        bad.push_back("images of Q[" + std::to_string(alpha) + "," + std::to_string(n) +
                                      "] and Q[" + std::to_string(beta) + "," + std::to_string(m) +
                                      "] do not t-commute like the generators");
                }
            }
        }
    }
    return bad;
}

}  // namespace qqfusion
