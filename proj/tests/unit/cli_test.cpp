#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "nilmult/json_io.hpp"

using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = nilmult::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args, int expected_code = 0) {
    args.insert(args.begin(), {"--format", "json"});
    const auto r = run(args);
    CHECK(r.code == expected_code);
    return json::parse(r.out);
}

}  // namespace

TEST_CASE("witt") {
    CHECK(run_json({"witt", "--weight", "3", "--generators", "2"})["result"]["chi"] == 2);
    CHECK(run_json({"witt", "--weight", "1", "--generators", "9"})["result"]["chi"] == 9);
    CHECK(run_json({"witt", "--weight", "6", "--generators", "2"})["result"]["chi"] == 9);
    CHECK(run({"witt", "--weight", "6", "--generators", "2"}).out == "9\n");
    CHECK(run({"witt", "--weight", "0", "--generators", "2"}).code == 1);
}

TEST_CASE("hall") {
    CHECK(run({"hall", "--generators", "2", "--max-weight", "2"}).out == "x1\nx2\n[x2,x1]\n");
    const auto counts = run_json({"hall", "--generators", "2", "--max-weight", "3", "--count-only"});
    CHECK(counts["result"]["counts"] == json{{"1", 2}, {"2", 1}, {"3", 2}});
    const auto empty = run_json({"hall", "--generators", "0", "--max-weight", "3"});
    CHECK(empty["result"]["basis"].empty());
    CHECK(run({"hall", "--generators", "0", "--max-weight", "3"}).out.empty());
}

TEST_CASE("multiplier") {
    CHECK(run({"multiplier", "--class", "2", "--c", "1", "--orders", "5,5"}).out == "Z_5^2\n");
    const auto j = run_json({"multiplier", "--class", "2", "--c", "2", "--orders", "0,7", "--method", "closed"});
    CHECK(j["ok"] == true);
    CHECK(j["error"].is_null());
    CHECK(j["result"]["structures"]["closed"]["factors"] == json::array({{{"modulus", 7}, {"multiplicity", 5}}}));
    CHECK(j["result"]["structures"]["closed"]["free_rank"] == 0);

    const auto bad = run_json({"multiplier", "--class", "2", "--c", "1", "--orders", "6,2"}, 1);
    CHECK(bad["ok"] == false);
    CHECK(bad["error"].get<std::string>().find("prime 2") != std::string::npos);
    CHECK(bad["result"]["validation"]["violations"][0]["prime"] == 2);
}

TEST_CASE("multiplier --method all cross-checks the applicable paths") {
    const auto j = run_json({"multiplier", "--class", "2", "--c", "1", "--orders", "25,35", "--method", "all"});
    CHECK(j["result"]["agree"] == true);
    CHECK(j["result"]["structures"].contains("general"));
    CHECK(j["result"]["structures"].contains("two-factor"));
    CHECK_FALSE(j["result"]["structures"].contains("closed"));
    CHECK(j["result"]["notes"].size() == 1);

    const auto chain = run_json({"multiplier", "--class", "3", "--c", "2", "--orders", "0,143,11", "--method", "all"});
    CHECK(chain["result"]["agree"] == true);
    CHECK(chain["result"]["structures"].contains("closed"));

    CHECK(run({"multiplier", "--class", "2", "--c", "1", "--orders", "25,35", "--method", "closed"}).code == 1);
    CHECK(run({"multiplier", "--class", "2", "--c", "1", "--orders", "0,7", "--method", "two-factor"}).code == 1);
}

TEST_CASE("multiplier --force annotates the output") {
    const auto j = run_json({"--force", "multiplier", "--class", "2", "--c", "1", "--orders", "6,2"});
    CHECK(j["ok"] == true);
    CHECK(j["result"]["outside_hypotheses"] == true);
    CHECK(j["warnings"].size() == 1);
}

TEST_CASE("json structures round-trip through the documented schema") {
    const auto j = run_json({"multiplier", "--class", "2", "--c", "2", "--orders", "0,0,11"});
    const auto& s = j["result"]["structures"]["general"];
    const auto g = nilmult::abelian_from_json(s);
    CHECK(g.to_text() == s["text"].get<std::string>());
    CHECK(nilmult::to_json(g) == s);
}

TEST_CASE("normal-form") {
    CHECK(run({"normal-form", "--class", "2", "--orders", "0,0", "--word", "g2 g1"}).out == "g1 g2 [g2,g1]\n");
    CHECK(run({"normal-form", "--class", "2", "--orders", "5,5", "--word", "g1^5"}).out == "1\n");
    CHECK(run({"normal-form", "--class", "2", "--orders", "0,0", "--word", "g1 g2 g1 g2"}).out ==
          "g1^2 g2^2 [g2,g1]\n");
    const auto j = run_json({"normal-form", "--class", "2", "--orders", "0,0", "--word", "g2 g1"});
    CHECK(j["result"]["exponents"] == json::array({1, 1, 1}));
    CHECK(run({"normal-form", "--class", "2", "--orders", "0,0", "--word", "h1"}).code == 1);
    CHECK(run({"normal-form", "--class", "2", "--orders", "2,0", "--word", "g1"}).code == 1);
}

TEST_CASE("verify") {
    auto r = run({"verify", "--class", "2", "--c", "1", "--orders", "5,5"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("match: Z_5^2", 0) == 0);
    r = run({"verify", "--class", "2", "--c", "2", "--orders", "5,5"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("match: Z_5^5", 0) == 0);
    const auto j = run_json({"verify", "--class", "2", "--c", "1", "--orders", "0,5"}, 1);
    CHECK(j["error"].get<std::string>().rfind("unsupported: infinite factor", 0) == 0);
}

TEST_CASE("resource caps: flag and environment override") {
    CHECK(run({"--basis-cap", "10", "hall", "--generators", "3", "--max-weight", "4"}).code == 2);
    CHECK(run({"--subgroup-cap", "100", "verify", "--class", "2", "--c", "2", "--orders", "5,5"}).code == 2);
    setenv("NILMULT_BASIS_CAP", "10", 1);
    CHECK(run({"hall", "--generators", "3", "--max-weight", "4"}).code == 2);
    unsetenv("NILMULT_BASIS_CAP");
    CHECK(run({"hall", "--generators", "3", "--max-weight", "4"}).code == 0);
}

TEST_CASE("crosscheck is deterministic for a fixed seed") {
    const auto a = run_json({"--seed", "42", "crosscheck", "--trials", "30"});
    const auto b = run_json({"--seed", "42", "crosscheck", "--trials", "30"});
    CHECK(a == b);
    CHECK(a["result"]["failures"] == 0);
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == 1);
    CHECK(run({"multiplier", "--class", "2"}).code == 1);
    CHECK(run({"multiplier", "--class", "2", "--c", "1", "--orders", "5,x"}).code == 1);
    CHECK(run({"--format", "xml", "witt", "--weight", "1", "--generators", "1"}).code == 1);
    CHECK(run({"--help"}).code == 0);
}
