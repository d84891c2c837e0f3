#include <doctest.h>

#include <sstream>
#include <string>

#include "qqfusion/cli.hpp"
#include "qqfusion/error.hpp"

using namespace qqfusion;

namespace {

CliRequest base_request(const std::string& command) {
    CliRequest req;
    req.command = command;
    return req;
}

std::pair<int, std::string> run_capture(const CliRequest& req) {
    std::ostringstream out, err;
    const int rc = run(req, out, err);
    return {rc, out.str()};
}

}  // namespace

TEST_CASE("algebra parsing") {
    CHECK(parse_algebra("A2") == std::make_pair('A', 2));
    CHECK(parse_algebra("d4") == std::make_pair('D', 4));
    CHECK(parse_algebra("E6") == std::make_pair('E', 6));
    CHECK_THROWS_AS(parse_algebra("A"), invalid_input);
    CHECK_THROWS_AS(parse_algebra("Ax"), invalid_input);
    CHECK_THROWS_AS(parse_algebra("4A"), invalid_input);
}

TEST_CASE("KR token parsing") {
    KrEntry e = parse_kr("1:2");
    CHECK(e.alpha == 1);
    CHECK(e.level == 2);
    CHECK(e.count == 1);
    e = parse_kr("3:1x4");
    CHECK(e.alpha == 3);
    CHECK(e.level == 1);
    CHECK(e.count == 4);
    CHECK_THROWS_AS(parse_kr("12"), invalid_input);
    CHECK_THROWS_AS(parse_kr("0:1"), invalid_input);
    CHECK_THROWS_AS(parse_kr("1:0"), invalid_input);
    CHECK_THROWS_AS(parse_kr("1:1x0"), invalid_input);
    CHECK_THROWS_AS(parse_kr("1:b"), invalid_input);
}

TEST_CASE("weight parsing") {
    CHECK(parse_weight("0,0,2,1") == IVector{0, 0, 2, 1});
    CHECK(parse_weight("5") == IVector{5});
    CHECK_THROWS_AS(parse_weight("1,x"), invalid_input);
    CHECK_THROWS_AS(parse_weight(""), invalid_input);
}

TEST_CASE("make_input assembles counts and truncation") {
    CliRequest req = base_request("decompose");
    req.algebra = "A2";
    req.kr_list = {{1, 1, 2}, {2, 2, 1}};
    const FusionInput in = make_input(req);
    CHECK(in.cartan.rank == 2);
    CHECK(in.n.at({1, 1}) == 2);
    CHECK(in.n.at({2, 2}) == 1);
    CHECK(in.k == 3);

    req.k_override = 5;
    CHECK(make_input(req).k == 5);
    req.k_override = 1;  // below the occupied level
    CHECK_THROWS_AS(make_input(req), invalid_input);
}

TEST_CASE("decompose with no factors is the trivial module") {
    const auto [rc, out] = run_capture(base_request("decompose"));
    CHECK(rc == 0);
    CHECK(out == "V[0]: 1\n");
}

TEST_CASE("decompose renders descending weights") {
    CliRequest req = base_request("decompose");
    req.kr_list = {{1, 2, 2}};
    const auto [rc, out] = run_capture(req);
    CHECK(rc == 0);
    CHECK(out == "V[4]: 1 | V[2]: v | V[0]: v^2\n");
}

TEST_CASE("multiplicity prints one polynomial") {
    CliRequest req = base_request("multiplicity");
    req.algebra = "D4";
    req.kr_list = {{1, 1, 1}, {3, 3, 1}};
    req.lambda_weight = IVector{0, 0, 2, 1};
    const auto [rc, out] = run_capture(req);
    CHECK(rc == 0);
    CHECK(out == "v\n");

    req.lambda_weight = IVector{0, 1, 0, 0};
    CHECK(run_capture(req).second == "0\n");

    CliRequest missing = base_request("multiplicity");
    std::ostringstream out2, err2;
    CHECK_THROWS_AS(run(missing, out2, err2), invalid_input);
}

TEST_CASE("verify runs every applicable method") {
    CliRequest req = base_request("verify");
    req.kr_list = {{1, 1, 2}};
    const auto [rc, out] = run_capture(req);
    CHECK(rc == 0);
    CHECK(out.find("V[2]: 1 | V[0]: v") != std::string::npos);
    CHECK(out.find("all methods agree (msum, nsum, matrix, ctz)") != std::string::npos);

    CliRequest a2 = base_request("verify");
    a2.algebra = "A2";
    a2.kr_list = {{1, 1, 1}, {2, 1, 1}};
    const auto [rc2, out2] = run_capture(a2);
    CHECK(rc2 == 0);
    CHECK(out2.find("all methods agree (msum, nsum, matrix)") != std::string::npos);
}

TEST_CASE("method=all behaves like verify for decompose") {
    CliRequest req = base_request("decompose");
    req.kr_list = {{1, 1, 2}};
    req.method = "all";
    const auto [rc, out] = run_capture(req);
    CHECK(rc == 0);
    CHECK(out.find("V[2]: 1 | V[0]: v") != std::string::npos);
    CHECK(out.find("all methods agree") != std::string::npos);
}

TEST_CASE("single-method dispatch covers every name") {
    CliRequest req = base_request("decompose");
    req.kr_list = {{1, 1, 2}};
    for (const char* method : {"msum", "nsum", "matrix", "ctz"}) {
        req.method = method;
        const auto [rc, out] = run_capture(req);
        CAPTURE(method);
        CHECK(rc == 0);
        CHECK(out == "V[2]: 1 | V[0]: v\n");
    }
    CHECK_THROWS_AS(compute_decomposition(make_input(req), "bogus"), invalid_input);
}

TEST_CASE("ctz is rejected off rank one") {
    CliRequest req = base_request("decompose");
    req.algebra = "A2";
    req.kr_list = {{1, 1, 1}};
    req.method = "ctz";
    std::ostringstream out, err;
    CHECK_THROWS_AS(run(req, out, err), invalid_input);
}

TEST_CASE("JSON output round-trips") {
    CliRequest req = base_request("decompose");
    req.algebra = "A2";
    req.kr_list = {{1, 1, 2}, {2, 2, 1}};
    const MultiplicityResult res = compute_decomposition(make_input(req), "msum");
    const std::string text = render_json(res);
    CHECK(text.find("\"algebra\": \"A2\"") != std::string::npos);
    CHECK(text.find("\"v_means\": \"q^-1\"") != std::string::npos);
    CHECK(text.find("\"k_used\": 3") != std::string::npos);
    CHECK(parse_result_json(text) == res);
    CHECK_THROWS_AS(parse_result_json("{"), invalid_input);
    CHECK_THROWS_AS(parse_result_json("{\"algebra\": \"A2\"}"), invalid_input);
}

TEST_CASE("JSON format flows through run") {
    CliRequest req = base_request("decompose");
    req.kr_list = {{1, 2, 2}};
    req.format = "json";
    const auto [rc, out] = run_capture(req);
    CHECK(rc == 0);
    const MultiplicityResult res = parse_result_json(out);
    CHECK(res.components ==
          std::map<IVector, QPoly>{
              {{4}, QPoly(1)}, {{2}, QPoly::x_pow(1)}, {{0}, QPoly::x_pow(2)}});
}

TEST_CASE("qsolve prints the solved window") {
    CliRequest req = base_request("qsolve");
    const auto [rc, out] = run_capture(req);
    CHECK(rc == 0);
    CHECK(out.find("Q[1,-1] = ") != std::string::npos);
    CHECK(out.find("Q[1,2] = t*Q[1,0]^-1*Q[1,1]^2 + -t^-1*Q[1,0]^-1") != std::string::npos);
}

TEST_CASE("selftest passes") {
    const auto [rc, out] = run_capture(base_request("selftest"));
    CHECK(rc == 0);
    CHECK(out == "selftest: all invariant suites passed\n");
}

TEST_CASE("argv entry point maps errors to exit codes") {
    const char* bad_method[] = {"qqfusion", "decompose", "--method", "bogus"};
    CHECK(run_cli(4, bad_method) == 1);

    const char* bad_algebra[] = {"qqfusion", "decompose", "--algebra", "B2"};
    CHECK(run_cli(4, bad_algebra) == 1);

    const char* no_command[] = {"qqfusion"};
    CHECK(run_cli(1, no_command) == 1);

    const char* ok[] = {"qqfusion", "multiplicity", "--kr", "1:1x2", "--lambda", "0"};
    CHECK(run_cli(6, ok) == 0);
}
