#include "qqfusion/qsystem.hpp"

#include "qqfusion/error.hpp"

namespace qqfusion {

namespace {

// Q[a,n]^2 - prod_{b ~ a} Q[b,n], the right-hand side of the defining
// relation at level n. Same-level factors commute; ascending b keeps the
// computation deterministic.
TorusElement relation_rhs(const QSolutionTable& t, int alpha, int n) {
    const CartanData& cd = *t.cartan;
    TorusElement rhs = product(t.at(alpha, n), t.at(alpha, n));
    TorusElement prod = TorusElement::scalar(cd, TPoly(1));
    for (int beta : cd.neighbors(alpha)) prod = product(prod, t.at(beta, n));
    rhs -= prod;
    return rhs;
}

}  // namespace

const TorusElement& QSolutionTable::at(int alpha, int n) const {
    if (alpha < 1 || alpha > cartan->rank || n < -1 || n > n_max)
        throw invalid_input("qsystem: table index out of range");
    return rows[static_cast<size_t>(alpha - 1)][static_cast<size_t>(n + 1)];
}

QSolutionTable solve(const CartanData& cartan, int n_max) {
    if (n_max < 1) throw invalid_input("qsystem: n_max must be >= 1");

    QSolutionTable t;
    t.cartan = std::make_shared<const CartanData>(cartan);
    t.n_max = n_max;
    const CartanData& cd = *t.cartan;

    t.rows.assign(static_cast<size_t>(cd.rank),
                  std::vector<TorusElement>(static_cast<size_t>(n_max + 2), TorusElement(cd)));
    for (int a = 1; a <= cd.rank; ++a) {
        t.rows[static_cast<size_t>(a - 1)][1] = TorusElement::generator(cd, a, 0);
        t.rows[static_cast<size_t>(a - 1)][2] = TorusElement::generator(cd, a, 1);
    }

    // Q[a,-1] = t^{-lambda_aa} Q[a,1]^{-1} (Q[a,0]^2 - prod_{b~a} Q[b,0]).
    for (int a = 1; a <= cd.rank; ++a) {
        const long long laa = cd.lambda[static_cast<size_t>(a - 1)][static_cast<size_t>(a - 1)];
        TorusElement inv1 = t.at(a, 1).monomial_inverse();
        t.rows[static_cast<size_t>(a - 1)][0] =
            product(inv1, relation_rhs(t, a, 0)).scaled(TPoly::t_pow(-laa));
    }

    // Upward: Q[a,n+1] = (t^{-lambda_aa} (Q[a,n]^2 - prod)) / Q[a,n-1],
    // divided on the right. Exactness is the Laurent property.
    for (int n = 1; n < n_max; ++n) {
        for (int a = 1; a <= cd.rank; ++a) {
            const long long laa = cd.lambda[static_cast<size_t>(a - 1)][static_cast<size_t>(a - 1)];
            TorusElement num = relation_rhs(t, a, n).scaled(TPoly::t_pow(-laa));
            t.rows[static_cast<size_t>(a - 1)][static_cast<size_t>(n + 2)] =
                right_divide_exact(num, t.at(a, n - 1));
        }
    }
    return t;
}

CheckReport check_same_seed_commutation(const QSolutionTable& table) {
    CheckReport rep;
    const CartanData& cd = *table.cartan;
    for (int n = 0; n < table.n_max; ++n) {
        for (int a = 1; a <= cd.rank; ++a) {
            for (int b = 1; b <= cd.rank; ++b) {
                const long long lab =
                    cd.lambda[static_cast<size_t>(a - 1)][static_cast<size_t>(b - 1)];
                if (product(table.at(a, n), table.at(b, n)) !=
                    product(table.at(b, n), table.at(a, n))) {
                    rep.ok = false;
                    rep.failures.push_back("same-level commutation failed at (alpha=" +
                                           std::to_string(a) + ", beta=" + std::to_string(b) +
                                           ", n=" + std::to_string(n) + ")");
                }
                if (product(table.at(a, n), table.at(b, n + 1)) !=
                    product(table.at(b, n + 1), table.at(a, n)).scaled(TPoly::t_pow(lab))) {
                    rep.ok = false;
                    rep.failures.push_back("cross-level commutation failed at (alpha=" +
                                           std::to_string(a) + ", beta=" + std::to_string(b) +
                                           ", n=" + std::to_string(n) + ")");
                }
            }
        }
    }
    return rep;
}

CheckReport check_linear_recursion_A1(const QSolutionTable& table) {
    CheckReport rep;
    const CartanData& cd = *table.cartan;
    if (cd.label != 'A' || cd.rank != 1)
        throw invalid_input("linear recursion check applies to A1 only");
    if (table.n_max < 2) throw invalid_input("linear recursion check needs n_max >= 2");

    const TorusElement inv0 = table.at(1, 0).monomial_inverse();
    const TorusElement coeff =
        product(table.at(1, 1), inv0) + product(table.at(1, -1), inv0).scaled(TPoly::t_pow(1));
    for (int n = 0; n < table.n_max; ++n) {
        const TorusElement lhs =
            table.at(1, n + 1) + table.at(1, n - 1).scaled(TPoly::t_pow(1));
        if (lhs != product(coeff, table.at(1, n))) {
            rep.ok = false;
            rep.failures.push_back("linear recursion failed at n=" + std::to_string(n));
        }
    }
    return rep;
}

const std::map<ExpVec, Int>& ClassicalTable::at(int alpha, int n) const {
    if (alpha < 1 || alpha > cartan->rank || n < -1 || n > n_max)
        throw invalid_input("qsystem: classical table index out of range");
    return rows[static_cast<size_t>(alpha - 1)][static_cast<size_t>(n + 1)];
}

namespace {

std::map<ExpVec, Int> commutative_product(const std::map<ExpVec, Int>& x,
                                          const std::map<ExpVec, Int>& y) {
    std::map<ExpVec, Int> r;
    for (const auto& [ex, cx] : x) {
        for (const auto& [ey, cy] : y) {
            ExpVec e = ex + ey;
            Int& dst = r[e];
            dst += cx * cy;
            if (dst == 0) r.erase(e);
        }
    }
    return r;
}

}  // namespace

ClassicalTable classical_specialization(const QSolutionTable& table) {
    ClassicalTable ct;
    ct.cartan = table.cartan;
    ct.n_max = table.n_max;
    const CartanData& cd = *table.cartan;
    ct.rows.assign(static_cast<size_t>(cd.rank), {});
    for (int a = 1; a <= cd.rank; ++a) {
        auto& row = ct.rows[static_cast<size_t>(a - 1)];
        row.reserve(static_cast<size_t>(table.n_max + 2));
        for (int n = -1; n <= table.n_max; ++n) row.push_back(table.at(a, n).eval_t_one());
    }

    // Residual of the commutative Q-system at the t = 1 image.
    for (int n = 0; n < ct.n_max; ++n) {
        for (int a = 1; a <= cd.rank; ++a) {
            auto lhs = commutative_product(ct.at(a, n + 1), ct.at(a, n - 1));
            auto rhs = commutative_product(ct.at(a, n), ct.at(a, n));
            std::map<ExpVec, Int> prod{{ExpVec{std::vector<int>(static_cast<size_t>(cd.rank), 0),
                                               std::vector<int>(static_cast<size_t>(cd.rank), 0)},
                                        Int(1)}};
            for (int b : cd.neighbors(a)) prod = commutative_product(prod, ct.at(b, n));
            for (const auto& [e, c] : prod) {
                Int& dst = rhs[e];
                dst -= c;
                if (dst == 0) rhs.erase(e);
            }
            if (lhs != rhs)
                throw theorem_violation("classical specialization violates the Q-system at (alpha=" +
                                        std::to_string(a) + ", n=" + std::to_string(n) + ")");
        }
    }
    return ct;
}

}  // namespace qqfusion
