#pragma once

/**
 * @file qtorus.hpp
 * @brief Non-commutative Laurent arithmetic in the 2r quantum-torus
 *        generators {Q[alpha,0], Q[alpha,1]} with t-commutation governed by
 *        lambda: normal ordering, products, exact one-sided division and
 *        generator substitution.
 *
 * A monomial with exponent vector (a, b) and scalar c(t) denotes
 *     c(t) * Q[1,0]^{a_1} ... Q[r,0]^{a_r} * Q[1,1]^{b_1} ... Q[r,1]^{b_r}
 * in exactly that order: the level-0 block left of the level-1 block,
 * ascending node index inside each block. Same-level generators commute, so
 * the order inside a block is immaterial; the cross-level rule is
 *     Q[alpha,0] Q[beta,1] = t^{lambda_{alpha,beta}} Q[beta,1] Q[alpha,0].
 */

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "qqfusion/cartan.hpp"
#include "qqfusion/scalars.hpp"

namespace qqfusion {

/// Exponents of one normal-ordered monomial: a for the level-0 block,
/// b for the level-1 block, both length r, any sign.
struct ExpVec {
    std::vector<int> a;
    std::vector<int> b;

    friend auto operator<=>(const ExpVec&, const ExpVec&) = default;

    ExpVec operator+(const ExpVec& o) const;
    ExpVec operator-() const;
    bool is_zero() const;
};

/// Normal-ordered non-commutative Laurent polynomial over TPoly. Elements
/// keep a pointer to their CartanData context; the context must outlive
/// every element created from it. Mixed-algebra operands are rejected.
class TorusElement {
public:
    using Terms = std::map<ExpVec, TPoly>;

    explicit TorusElement(const CartanData& ctx) : ctx_(&ctx) {}

    static TorusElement scalar(const CartanData& ctx, TPoly c);
    static TorusElement monomial(const CartanData& ctx, ExpVec e, TPoly c);
    /// Q[alpha, level]^power, alpha 1-based, level 0 or 1.
    static TorusElement generator(const CartanData& ctx, int alpha, int level, int power = 1);

    const CartanData& ctx() const { return *ctx_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }

    bool operator==(const TorusElement& o) const;
    bool operator!=(const TorusElement& o) const { return !(*this == o); }

    TorusElement& operator+=(const TorusElement& o);
    TorusElement& operator-=(const TorusElement& o);
    TorusElement operator+(const TorusElement& o) const;
    TorusElement operator-(const TorusElement& o) const;
    TorusElement operator-() const;

    /// Multiply every coefficient by c(t).
    TorusElement scaled(const TPoly& c) const;

    /// Two-sided inverse of a monomial whose scalar is a unit +-t^{e/2}.
    /// (a, b) inverts to (-a, -b) with scalar t^{-b.lambda.a} / scalar.
    TorusElement monomial_inverse() const;

    TorusElement pow(int e) const;  // e >= 0, repeated product

    /// Coefficient-wise evaluation at t = 1: the commutative image, used by
    /// classical-limit checks and test oracles.
    std::map<ExpVec, Int> eval_t_one() const;

    /// "t^-1*Q[1,0]^-1*Q[1,1]^2"-style rendering, leading (lex-largest)
    /// monomial first, multi-term coefficients parenthesized.
    std::string str() const;

    void insert_term(const ExpVec& e, TPoly c);  // adds, keeps canonical form

private:
    const CartanData* ctx_;
    Terms terms_;
};

/// Product of two normal-ordered monomials: exponents add; the scalar picks
/// up the reorder factor t^{-(u.b).lambda.(w.a)} from moving w's level-0
/// block left through u's level-1 block.
std::pair<ExpVec, TPoly> mono_product(const CartanData& ctx,
                                      const ExpVec& ue, const TPoly& uc,
                                      const ExpVec& we, const TPoly& wc);

/// Bilinear, associative, unital product.
TorusElement product(const TorusElement& x, const TorusElement& y);

/// Returns R with product(R, D) = P exactly. Lexicographic long division:
/// the quotient's candidate exponents are confined to the componentwise box
/// [min(P)-min(D), max(P)-max(D)]; leaving it proves the division is not
/// exact (a violated Laurent property) and throws theorem_violation.
TorusElement right_divide_exact(const TorusElement& P, const TorusElement& D);

/// Ring-map extension of generator images: Q[alpha,0] -> images0[alpha-1],
/// Q[alpha,1] -> images1[alpha-1]. The caller asserts that the images
/// pairwise satisfy the same t-commutation as the generators they replace
/// (check_substitution_images verifies this on demand). Negative exponents
/// are handled by clearing denominators with one global monomial and
/// right-dividing by its image; throws theorem_violation if the result is
/// genuinely not Laurent in the images.
TorusElement substitute(const TorusElement& x,
                        const std::vector<TorusElement>& images0,
                        const std::vector<TorusElement>& images1);

/// Verifies product(img_g, img_h) = t^{lambda_{alpha,beta}(m-n)} product(img_h, img_g)
/// for all generator pairs g = (alpha, n), h = (beta, m). Returns the list of
/// violating pairs, empty when the images are a valid substitution.
std::vector<std::string> check_substitution_images(
    const CartanData& source,
    const std::vector<TorusElement>& images0,
    const std::vector<TorusElement>& images1);

}  // namespace qqfusion
