#pragma once

/**
 * @file cli.hpp
 * @brief Command-line front end: request parsing, method dispatch,
 *        cross-validation, text and JSON rendering.
 *
 * Exit codes: 0 success, 1 usage or input error, 2 method disagreement in
 * verify (or method=all), 3 internal consistency failure.
 */

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qqfusion/evaluation.hpp"
#include "qqfusion/fermionic.hpp"

namespace qqfusion {

struct KrEntry {
    int alpha = 1;
    int level = 1;
    long long count = 1;
};

struct CliRequest {
    std::string command;  // decompose | multiplicity | verify | qsolve | selftest
    std::string algebra = "A1";
    std::vector<KrEntry> kr_list;
    std::optional<IVector> lambda_weight;
    std::string method = "msum";  // msum | nsum | matrix | ctz | all
    std::optional<int> k_override;
    std::string format = "text";  // text | json
};

/// "A1", "D4", "E6" (case-insensitive label) -> (label, rank).
std::pair<char, int> parse_algebra(const std::string& s);
/// "alpha:level" or "alpha:levelxcount", e.g. "1:2x2".
KrEntry parse_kr(const std::string& token);
/// Comma-separated nonnegative integers, e.g. "0,0,2,1".
IVector parse_weight(const std::string& csv);

/// Builds the FusionInput for a request: algebra, KR counts, optional
/// weight, k from the override or auto_k. Throws invalid_input.
FusionInput make_input(const CliRequest& req);

/// Decomposition by one named method (msum | nsum | matrix | ctz).
MultiplicityResult compute_decomposition(const FusionInput& in, const std::string& method);

/// "V[4]: 1 | V[2]: v | V[0]: v^2", weights in descending lex order.
std::string render_text(const MultiplicityResult& res);
std::string render_json(const MultiplicityResult& res);
/// Inverse of render_json; parse_result_json(render_json(r)) == r.
MultiplicityResult parse_result_json(const std::string& text);

/// Executes a parsed request, writing results to out and diagnostics to
/// err. Returns the process exit code.
int run(const CliRequest& req, std::ostream& out, std::ostream& err);

/// argv entry point: CLI11 parsing plus run(), with exceptions mapped to
/// the documented exit codes.
int run_cli(int argc, const char* const* argv);

}  // namespace qqfusion
