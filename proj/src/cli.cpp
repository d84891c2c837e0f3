#include "qqfusion/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <iostream>
#include <random>
#include <sstream>

#include "qqfusion/error.hpp"
#include "qqfusion/parallel.hpp"
#include "qqfusion/qsystem.hpp"

namespace qqfusion {

namespace {

long long parse_ll(const std::string& s, const char* what) {
    size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw invalid_input(std::string(what) + ": '" + s + "' is not an integer");
    }
    if (pos != s.size())
        throw invalid_input(std::string(what) + ": '" + s + "' is not an integer");
    return v;
}

std::string weight_str(const IVector& w) {
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(w[i]);
    }
    return s;
}

}  // namespace

// ============================================================================
// Request parsing
// ============================================================================

std::pair<char, int> parse_algebra(const std::string& s) {
    if (s.size() < 2)
        throw invalid_input("algebra must be a label and a rank, e.g. A2, D4, E6");
    const char label = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    const long long rank = parse_ll(s.substr(1), "algebra rank");
    if (rank < 1 || rank > 1000)
        throw invalid_input("algebra rank out of range: " + s);
    return {label, static_cast<int>(rank)};
}

KrEntry parse_kr(const std::string& token) {
    const size_t colon = token.find(':');
    if (colon == std::string::npos)
        throw invalid_input("KR module must be node:level or node:levelxcount, got '" + token + "'");
    KrEntry e;
    e.alpha = static_cast<int>(parse_ll(token.substr(0, colon), "KR node"));
    std::string rest = token.substr(colon + 1);
    const size_t x = rest.find('x');
    if (x != std::string::npos) {
        e.count = parse_ll(rest.substr(x + 1), "KR count");
        rest = rest.substr(0, x);
    }
    e.level = static_cast<int>(parse_ll(rest, "KR level"));
    if (e.alpha < 1 || e.level < 1 || e.count < 1)
        throw invalid_input("KR module indices must be positive: '" + token + "'");
    return e;
}

IVector parse_weight(const std::string& csv) {
    IVector w;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) w.push_back(parse_ll(item, "weight entry"));
    if (w.empty()) throw invalid_input("weight must have at least one entry");
    return w;
}

FusionInput make_input(const CliRequest& req) {
    const auto [label, rank] = parse_algebra(req.algebra);
    FusionInput in;
    in.cartan = build_cartan(label, rank);
    for (const KrEntry& e : req.kr_list) in.n[{e.alpha, e.level}] += e.count;
    in.lambda_weight = req.lambda_weight;
    in.k = req.k_override ? *req.k_override : auto_k(in);
    in.validate();
    return in;
}

// ============================================================================
// Method dispatch
// ============================================================================

MultiplicityResult compute_decomposition(const FusionInput& in, const std::string& method) {
    if (method == "msum")
        return fusion_decompose_fermionic(in, FermionicMethod::MSum);
    if (method == "nsum")
        return fusion_decompose_fermionic(in, FermionicMethod::NSum);

    if (method == "matrix") {
        const QSolutionTable table = solve(in.cartan, std::max(1, in.max_level()));
        const Q1Polynomial image = phi(kr_product(in, table));
        const auto [lmax, jmax] = moment_bounds(in, image);
        const MomentTable moments = build_moments(in.cartan, lmax, jmax);
        return fusion_decompose_matrix(in, table, moments);
    }

    if (method == "ctz") {
        if (in.cartan.label != 'A' || in.cartan.rank != 1)
            throw invalid_input("method ctz applies to A1 only");
        const int kz = static_cast<int>(
            std::max<long long>({in.max_level(), (in.total_i_n() + 1) / 2, 1}));
        const QSolutionTable table = solve(in.cartan, kz);

        MultiplicityResult res;
        res.label = in.cartan.label;
        res.rank = in.cartan.rank;
        res.k_used = in.k;
        res.method = "ctz";
        const std::vector<IVector> weights =
            in.lambda_weight ? std::vector<IVector>{*in.lambda_weight} : dominant_weights(in);
        std::vector<QPoly> vals(weights.size());
        parallel_for(weights.size(), [&](size_t i) {
            vals[i] = ct_z_multiplicity_A1(in, weights[i], table);
        });
        for (size_t i = 0; i < weights.size(); ++i)
            if (!vals[i].is_zero()) res.components.emplace(weights[i], std::move(vals[i]));
        return res;
    }

    throw invalid_input("unknown method '" + method + "' (msum|nsum|matrix|ctz|all)");
}

// ============================================================================
// Rendering
// ============================================================================

std::string render_text(const MultiplicityResult& res) {
    if (res.components.empty()) return "0";
    std::string out;
    for (auto it = res.components.rbegin(); it != res.components.rend(); ++it) {
        if (!out.empty()) out += " | ";
        out += "V[" + weight_str(it->first) + "]: " + it->second.str();
    }
    return out;
}

std::string render_json(const MultiplicityResult& res) {
    nlohmann::ordered_json root;
    root["algebra"] = std::string(1, res.label) + std::to_string(res.rank);
    root["v_means"] = "q^-1";
    root["k_used"] = res.k_used;
    root["method"] = res.method;
    auto comps = nlohmann::ordered_json::array();
    for (auto it = res.components.rbegin(); it != res.components.rend(); ++it) {
        nlohmann::ordered_json c;
        c["lambda"] = it->first;
        auto coeffs = nlohmann::ordered_json::object();
        for (const auto& [e, v] : it->second.terms()) coeffs[std::to_string(e)] = v.str();
        c["coeffs"] = coeffs;
        comps.push_back(std::move(c));
    }
    root["components"] = std::move(comps);
    return root.dump(2);
}

MultiplicityResult parse_result_json(const std::string& text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw invalid_input(std::string("malformed result JSON: ") + e.what());
    }
    try {
        MultiplicityResult res;
        const auto [label, rank] = parse_algebra(root.at("algebra").get<std::string>());
        res.label = label;
        res.rank = rank;
        res.k_used = root.at("k_used").get<int>();
        res.method = root.at("method").get<std::string>();
        for (const auto& c : root.at("components")) {
            const IVector w = c.at("lambda").get<IVector>();
            QPoly p;
            for (const auto& [key, val] : c.at("coeffs").items())
                p += QPoly::x_pow(parse_ll(key, "coefficient exponent"),
                                  Int(val.get<std::string>()));
            res.components[w] = p;
        }
        return res;
    } catch (const nlohmann::json::exception& e) {
        throw invalid_input(std::string("result JSON missing fields: ") + e.what());
    }
}

// ============================================================================
// Commands
// ============================================================================

namespace {

int run_qsolve(const CliRequest& req, std::ostream& out) {
    const auto [label, rank] = parse_algebra(req.algebra);
    const CartanData cd = build_cartan(label, rank);
    const int n_max = req.k_override ? *req.k_override : 2;
    const QSolutionTable t = solve(cd, n_max);
    for (int a = 1; a <= cd.rank; ++a)
        for (int n = -1; n <= n_max; ++n)
            out << "Q[" << a << "," << n << "] = " << t.at(a, n).str() << "\n";
    return 0;
}

int run_selftest(std::ostream& out, std::ostream& err) {
    std::vector<std::string> failures;
    auto record = [&](const std::string& where, const CheckReport& rep) {
        for (const std::string& f : rep.failures) failures.push_back(where + ": " + f);
    };

    struct Case {
        char label;
        int rank;
        int n_max;
    };
    for (const Case& c : {Case{'A', 1, 4}, Case{'A', 2, 3}, Case{'D', 4, 2}}) {
        const std::string name = std::string(1, c.label) + std::to_string(c.rank);
        const CartanData cd = build_cartan(c.label, c.rank);
        const QSolutionTable t = solve(cd, c.n_max);
        record(name, check_same_seed_commutation(t));
        try {
            classical_specialization(t);
        } catch (const theorem_violation& e) {
            failures.push_back(name + ": " + e.what());
        }
        if (c.label == 'A' && c.rank == 1) record(name, check_linear_recursion_A1(t));
    }

    // Exact division round-trip on pseudo-random A2 torus elements.
    {
        const CartanData cd = build_cartan('A', 2);
        std::mt19937 rng(12345);
        std::uniform_int_distribution<int> ex(-2, 2), ce(-3, 3), cc(1, 4), nt(1, 3);
        auto rand_elem = [&]() {
            TorusElement x(cd);
            const int terms = nt(rng);
            for (int i = 0; i < terms; ++i) {
                ExpVec e;
                e.a = {ex(rng), ex(rng)};
                e.b = {ex(rng), ex(rng)};
                x.insert_term(e, TPoly::t_half_pow(ce(rng), cc(rng)));
            }
            if (x.is_zero()) x = TorusElement::scalar(cd, TPoly(1));
            return x;
        };
        for (int i = 0; i < 20; ++i) {
            const TorusElement r0 = rand_elem();
            const TorusElement d = rand_elem();
            try {
                if (right_divide_exact(product(r0, d), d) != r0)
                    failures.push_back("division round-trip: wrong quotient at pair " +
                                       std::to_string(i));
            } catch (const theorem_violation& e) {
                failures.push_back("division round-trip: " + std::string(e.what()));
            }
        }
    }

    // Vacuum annihilation: <0| Q[1,-1] g pairs to zero against every weight.
    {
        const CartanData cd = build_cartan('A', 1);
        const QSolutionTable t = solve(cd, 2);
        const MomentTable moments = build_moments(cd, IVector{6}, std::vector<int>{6});
        const TorusElement q1 = TorusElement::generator(cd, 1, 1);
        const std::vector<TorusElement> gs = {
            TorusElement::scalar(cd, TPoly(1)), q1, product(q1, q1), t.at(1, 2),
            product(TorusElement::generator(cd, 1, 0), q1)};
        for (size_t gi = 0; gi < gs.size(); ++gi) {
            const TorusElement x = product(t.at(1, -1), gs[gi]);
            for (long long l = 0; l <= 4; ++l)
                if (!vacuum_pair(x, IVector{l}, moments).is_zero())
                    failures.push_back("vacuum annihilation failed for g #" +
                                       std::to_string(gi) + ", ell=" + std::to_string(l));
        }
    }

    if (!failures.empty()) {
        for (const std::string& f : failures) err << "selftest: " << f << "\n";
        return 3;
    }
    out << "selftest: all invariant suites passed\n";
    return 0;
}

}  // namespace

int run(const CliRequest& req, std::ostream& out, std::ostream& err) {
    if (req.command == "qsolve") return run_qsolve(req, out);
    if (req.command == "selftest") return run_selftest(out, err);
    if (req.command != "decompose" && req.command != "multiplicity" && req.command != "verify")
        throw invalid_input("unknown command '" + req.command + "'");

    const FusionInput in = make_input(req);
    if (req.command == "multiplicity" && !in.lambda_weight)
        throw invalid_input("multiplicity requires --lambda");

    std::vector<std::string> methods;
    if (req.command == "verify" || req.method == "all") {
        methods = {"msum", "nsum", "matrix"};
        if (in.cartan.label == 'A' && in.cartan.rank == 1) methods.push_back("ctz");
    } else {
        methods = {req.method};
    }

    std::vector<MultiplicityResult> results;
    results.reserve(methods.size());
    for (const std::string& m : methods) results.push_back(compute_decomposition(in, m));

    for (size_t i = 1; i < results.size(); ++i) {
        if (results[i].components != results[0].components) {
            err << "method disagreement detected:\n";
            for (size_t j = 0; j < results.size(); ++j)
                err << "  " << methods[j] << ": " << render_text(results[j]) << "\n";
            return 2;
        }
    }

    MultiplicityResult final_result = std::move(results.front());
    if (methods.size() > 1) final_result.method = "all";

    std::string agree_note;
    if (methods.size() > 1) {
        agree_note = "all methods agree (";
        for (size_t i = 0; i < methods.size(); ++i)
            agree_note += (i ? ", " : "") + methods[i];
        agree_note += ")";
    }

    if (req.command == "verify") {
        out << render_text(final_result) << "\n" << agree_note << "\n";
        return 0;
    }

    if (req.command == "multiplicity" && req.format == "text") {
        const auto it = final_result.components.find(*in.lambda_weight);
        out << (it == final_result.components.end() ? std::string("0") : it->second.str())
            << "\n";
        if (!agree_note.empty()) out << agree_note << "\n";
        return 0;
    }

    if (req.format == "json") {
        out << render_json(final_result) << "\n";
    } else {
        out << render_text(final_result) << "\n";
        if (!agree_note.empty()) out << agree_note << "\n";
    }
    return 0;
}

int run_cli(int argc, const char* const* argv) {
    CliRequest req;
    std::vector<std::string> kr_tokens;
    std::string lambda_csv;
    int k_value = 0;

    CLI::App app{
        "Exact graded multiplicities for fusion products of Kirillov-Reshetikhin\n"
        "modules over simply-laced Lie algebras, computed by independent methods\n"
        "(restricted/unrestricted fermionic sums, quantum Q-system matrix elements,\n"
        "and an A1 constant-term series) that cross-validate each other."};
    app.footer(
        "Node numbering is Bourbaki: A_r chain 1..r; D_r chain 1..r-2 with both\n"
        "r-1 and r attached to r-2; E_r chain 1-3-4-5-6(-7)(-8) with 2 on 4.\n"
        "Multiplicities are polynomials in v = q^{-1}. QQFUSION_THREADS caps the\n"
        "worker count. Exit codes: 0 ok, 1 usage, 2 method disagreement, 3\n"
        "internal consistency failure.");

    app.add_option("--algebra", req.algebra, "Algebra label and rank (A1, A2, D4, E6, ...)")
        ->capture_default_str();
    app.add_option("--kr", kr_tokens,
                   "KR module node:level or node:levelxcount (repeatable), e.g. 1:2x2");
    CLI::Option* lam = app.add_option(
        "--lambda", lambda_csv, "Target dominant weight, comma-separated (e.g. 0,0,2,1)");
    app.add_option("--method", req.method, "msum | nsum | matrix | ctz | all")
        ->capture_default_str()
        ->check(CLI::IsMember({"msum", "nsum", "matrix", "ctz", "all"}));
    CLI::Option* kopt =
        app.add_option("-k,--truncation", k_value,
                       "Truncation level (and qsolve depth); default chosen from the input");
    app.add_option("--format", req.format, "text | json")
        ->capture_default_str()
        ->check(CLI::IsMember({"text", "json"}));

    app.require_subcommand(1);
    app.add_subcommand("decompose", "Full graded decomposition of the fusion product")
        ->fallthrough();
    app.add_subcommand("multiplicity", "Multiplicity polynomial of one weight (--lambda)")
        ->fallthrough();
    app.add_subcommand("verify", "Run every applicable method and require agreement")
        ->fallthrough();
    app.add_subcommand("qsolve", "Print quantum Q-system solutions up to level -k")
        ->fallthrough();
    app.add_subcommand("selftest", "Run the built-in invariant suites")->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    req.command = app.get_subcommands().front()->get_name();
    for (const std::string& tok : kr_tokens) {
        try {
            req.kr_list.push_back(parse_kr(tok));
        } catch (const invalid_input& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }
    if (kopt->count() > 0) req.k_override = k_value;

    try {
        if (lam->count() > 0) req.lambda_weight = parse_weight(lambda_csv);
        return run(req, std::cout, std::cerr);
    } catch (const invalid_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const theorem_violation& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace qqfusion
