#include "qqfusion/fermionic.hpp"

#include <algorithm>
#include <optional>
#include <utility>

#include "qqfusion/error.hpp"
#include "qqfusion/parallel.hpp"

namespace qqfusion {

namespace {

// ============================================================================
// Per-node configuration rows
// ============================================================================

// One admissible row m_{beta,1..k} together with its min-matrix image
// (A m)_j = sum_i min(i,j) m_i, cached because every p entry needs it.
struct RowChoice {
    IVector m;
    IVector am;
};

void collect_rows(long long rem, int part, IVector& cur, std::vector<IVector>& out) {
    if (part == 1) {
        cur[0] = rem;
        out.push_back(cur);
        cur[0] = 0;
        return;
    }
    for (long long mult = 0; mult * part <= rem; ++mult) {
        cur[part - 1] = mult;
        collect_rows(rem - mult * part, part - 1, cur, out);
    }
    cur[part - 1] = 0;
}

// All nonnegative rows with sum_i i*m_i = target and parts at most k.
// Never empty for target >= 0: level 1 can absorb everything.
std::vector<RowChoice> row_choices(long long target, int k) {
    std::vector<IVector> rows;
    IVector cur(k, 0);
    collect_rows(target, k, cur, rows);

    std::vector<RowChoice> out;
    out.reserve(rows.size());
    for (auto& m : rows) {
        RowChoice rc;
        rc.am.assign(k, 0);
        // (A m)_j = sum_{i<=j} i*m_i + j * sum_{i>j} m_i via running sums.
        long long weighted = 0, count = 0, total = 0;
        for (int i = 0; i < k; ++i) total += m[i];
        for (int j = 0; j < k; ++j) {
            weighted += (j + 1) * m[j];
            count += m[j];
            rc.am[j] = weighted + (j + 1) * (total - count);
        }
        rc.m = std::move(m);
        out.push_back(std::move(rc));
    }
    return out;
}

// K_beta = sum_a C^{-1}[beta][a] (S_a - ell_a). nullopt unless every entry
// is a nonnegative integer, in which case no configuration has q0 = 0.
std::optional<IVector> weighted_targets(const CartanData& cd, const IVector& S,
                                        const IVector& ell) {
    IVector K(cd.rank, 0);
    for (int b = 0; b < cd.rank; ++b) {
        long long num = 0;
        for (int a = 0; a < cd.rank; ++a) num += cd.lambda[b][a] * (S[a] - ell[a]);
        if (num < 0 || num % cd.delta != 0) return std::nullopt;
        K[b] = num / cd.delta;
    }
    return K;
}

void check_weight(const FusionInput& in, const IVector& ell) {
    if (static_cast<int>(ell.size()) != in.cartan.rank)
        throw invalid_input("fermionic sum: weight has wrong length");
    for (long long l : ell)
        if (l < 0) throw invalid_input("fermionic sum: weight must be dominant");
}

// Shared core of m_sum and n_sum. The q-variable sum is accumulated with
// exponents Q(m,n); the caller converts to v by flipping exponent signs.
QPoly fermionic_sum(const FusionInput& in, const IVector& ell, bool restricted) {
    in.validate();
    check_weight(in, ell);

    const CartanData& cd = in.cartan;
    const int r = cd.rank;
    const int k = in.k;

    const auto K = weighted_targets(cd, in.level_weighted_sums(), ell);
    if (!K) return QPoly();

    // nA[a][j] = sum_i min(i,j) n_{a,i}; constant across configurations.
    IMatrix nA(r, IVector(k, 0));
    for (const auto& [key, cnt] : in.n) {
        if (cnt == 0) continue;
        for (int j = 1; j <= k; ++j)
            nA[key.first - 1][j - 1] += std::min(key.second, j) * cnt;
    }

    std::vector<std::vector<int>> nbr(r);
    for (int a = 0; a < r; ++a)
        for (int b : cd.neighbors(a + 1)) nbr[a].push_back(b - 1);

    std::vector<std::vector<RowChoice>> choices(r);
    for (int b = 0; b < r; ++b) choices[b] = row_choices((*K)[b], k);

    // The same (m, p) binomial recurs across configurations; cache per call
    // so parallel weight loops never share state.
    std::map<std::pair<long long, long long>, QPoly> bin_cache;
    auto binom = [&bin_cache](long long m, long long p) -> const QPoly& {
        auto it = bin_cache.find({m, p});
        if (it == bin_cache.end())
            it = bin_cache.emplace(std::make_pair(m, p), qbinomial(m, p)).first;
        return it->second;
    };

    QPoly acc;
    std::vector<size_t> idx(r, 0);
    for (;;) {
        bool zero = false;
        long long x2 = 0;
        QPoly term(1);
        for (int a = 0; a < r && !zero; ++a) {
            const RowChoice& ra = choices[a][idx[a]];
            for (int j = 0; j < k; ++j) {
                long long pv = nA[a][j] - 2 * ra.am[j];
                for (int b : nbr[a]) pv += choices[b][idx[b]].am[j];
                if (restricted && pv < 0) {
                    zero = true;
                    break;
                }
                const long long mv = ra.m[j];
                if (pv < 0 && mv >= -pv) {  // binomial vanishes identically
                    zero = true;
                    break;
                }
                x2 -= mv * (pv + nA[a][j]);
                if (mv > 0) term *= binom(mv, pv);
            }
        }
        if (!zero) {
            if (x2 % 2 != 0)
                throw theorem_violation("fermionic sum: quadratic form not an integer");
            acc += QPoly::x_pow(x2 / 2) * term;
        }

        int pos = 0;
        while (pos < r && ++idx[pos] == choices[pos].size()) idx[pos++] = 0;
        if (pos == r) break;
    }
    return acc;
}

}  // namespace

// ============================================================================
// Public entry points
// ============================================================================

int auto_k(const FusionInput& in) {
    const long long half = (in.total_i_n() + 1) / 2;
    const long long k = std::max<long long>(in.max_level(), half) + 1;
    return static_cast<int>(k);
}

std::vector<IMatrix> enumerate_m(const FusionInput& in, const IVector& ell) {
    in.validate();
    check_weight(in, ell);

    const int r = in.cartan.rank;
    const int k = in.k;
    std::vector<IMatrix> out;

    const auto K = weighted_targets(in.cartan, in.level_weighted_sums(), ell);
    if (!K) return out;

    std::vector<std::vector<RowChoice>> choices(r);
    for (int b = 0; b < r; ++b) choices[b] = row_choices((*K)[b], k);

    std::vector<size_t> idx(r, 0);
    for (;;) {
        IMatrix m(r);
        for (int b = 0; b < r; ++b) m[b] = choices[b][idx[b]].m;
        out.push_back(std::move(m));

        int pos = 0;
        while (pos < r && ++idx[pos] == choices[pos].size()) idx[pos++] = 0;
        if (pos == r) break;
    }
    return out;
}

QPoly m_sum(const FusionInput& in, const IVector& ell) {
    const QPoly m = fermionic_sum(in, ell, true).inverted_variable();
    if (m.has_negative_exponent())
        throw theorem_violation("m_sum: negative v-exponent in restricted sum");
    if (m.has_negative_coefficient())
        throw theorem_violation("m_sum: negative coefficient in restricted sum");
    return m;
}

QPoly n_sum(const FusionInput& in, const IVector& ell) {
    return fermionic_sum(in, ell, false).inverted_variable();
}

std::vector<IVector> dominant_weights(const FusionInput& in) {
    in.validate();
    const CartanData& cd = in.cartan;
    const int r = cd.rank;
    const IVector S = in.level_weighted_sums();

    // ell = S - C*T is injective in T, and T = C^{-1}(S - ell) has
    // nonnegative entries bounded by C^{-1} S = lambda S / delta.
    IVector tmax(r, 0);
    for (int b = 0; b < r; ++b) {
        long long num = 0;
        for (int a = 0; a < r; ++a) num += cd.lambda[b][a] * S[a];
        tmax[b] = num / cd.delta;
    }

    std::vector<IVector> weights;
    IVector T(r, 0);
    for (;;) {
        IVector ell(r, 0);
        bool ok = true;
        for (int a = 0; a < r; ++a) {
            long long v = S[a];
            for (int b = 0; b < r; ++b) v -= cd.C[a][b] * T[b];
            if (v < 0) {
                ok = false;
                break;
            }
            ell[a] = v;
        }
        if (ok) weights.push_back(std::move(ell));

        int pos = 0;
        while (pos < r && ++T[pos] > tmax[pos]) T[pos++] = 0;
        if (pos == r) break;
    }
    std::sort(weights.begin(), weights.end(), std::greater<IVector>());
    return weights;
}

MultiplicityResult fusion_decompose_fermionic(const FusionInput& in, FermionicMethod method) {
    in.validate();

    MultiplicityResult res;
    res.label = in.cartan.label;
    res.rank = in.cartan.rank;
    res.k_used = in.k;
    res.method = method == FermionicMethod::MSum ? "msum" : "nsum";

    const std::vector<IVector> weights =
        in.lambda_weight ? std::vector<IVector>{*in.lambda_weight} : dominant_weights(in);

    std::vector<QPoly> vals(weights.size());
    parallel_for(weights.size(), [&](size_t i) {
        vals[i] = method == FermionicMethod::MSum ? m_sum(in, weights[i])
                                                  : n_sum(in, weights[i]);
    });
    for (size_t i = 0; i < weights.size(); ++i)
        if (!vals[i].is_zero()) res.components.emplace(weights[i], std::move(vals[i]));
    return res;
}

}  // namespace qqfusion
