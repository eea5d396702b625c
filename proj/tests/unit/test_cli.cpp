#include <doctest.h>

#include "wittlift/cli.hpp"
#include "wittlift/errors.hpp"

using namespace wl;
using wl::cli::json;

namespace {

cli::JobResult job(const std::string& command, json input) {
    cli::JobSpec s;
    s.command = command;
    s.input = std::move(input);
    return cli::run(s);
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("documented commands") {
        auto w = job("witt", {{"op", "add"}, {"p", 3}, {"r", 2}, {"args", {"(1,0)", "(1,0)"}}});
        CHECK(w.exit_code == 0);
        CHECK(w.text == "(2,1)");
        auto f = job("flag-vanish", {{"weights", "1,0"}});
        CHECK(f.report.at("result") == json{{"verdict", "Vanishes"}});
        auto c = job("closure", {{"action", "sigma"}, {"group", "trivial"}, {"p", 2}});
        REQUIRE(c.exit_code == 0);
        CHECK(c.report.at("result").at("order") == "2");
    }

    TEST_CASE("reports validate and round-trip") {
        std::vector<std::pair<std::string, json>> jobs = {
            {"witt", {{"op", "mul"}, {"p", 2}, {"r", 3}, {"args", {"(1,1,0)", "(1,0,1)"}}}},
            {"cohomology", {{"group", "C4"}, {"p", 2}, {"degree", 2}}},
            {"ext", {{"group", "C2"}, {"p", 2}, {"degree", 1}}},
            {"lift-flag", {{"flag", {{"group", "C2"}, {"p", 2}, {"generators", {{{1, 1}, {0, 1}}}}}}, {"exhaustive", true}}},
            {"h0", {{"weights", "0,1,2"}, {"p", 3}}},
            {"heisenberg", {{"group", "C4"}, {"p", 2}, {"x", "1"}, {"y", "0"}}},
            {"closure", {{"action", "check"}, {"group", "C3"}, {"p", 2}}},
            {"closure", {{"action", "nope"}}},
            {"bogus", json::object()},
        };
        for (auto& [cmd, in] : jobs) {
            auto r = job(cmd, in);
            CAPTURE(cmd);
            CHECK(cli::validate_report(r.report).empty());
            json back = json::parse(r.report.dump());
            CHECK(back == r.report);
            CHECK(cli::validate_report(back).empty());
            // determinism: a second run is byte-identical
            CHECK(job(cmd, in).report.dump() == r.report.dump());
        }
        CHECK_FALSE(cli::validate_report(json{{"schema", "other"}, {"command", "x"}, {"result", json::object()}}).empty());
        CHECK_FALSE(cli::validate_report(json{{"schema", cli::kSchemaVersion}, {"command", "x"}}).empty());
    }

    TEST_CASE("exit codes and error kinds") {
        auto bad = job("witt", {{"op", "add"}, {"p", 4}, {"args", {"(1,0)", "(1,0)"}}});
        CHECK(bad.exit_code == 1);
        auto parse = job("flag-vanish", {{"weights", "1,,x"}});
        CHECK(parse.exit_code == 1);
        CHECK(parse.report.at("error").at("kind") == "parse");
        cli::JobSpec s;
        s.command = "flag-vanish";
        s.input = {{"weights", "1,0,40"}};
        auto deg = cli::run(s);
        CHECK(deg.exit_code == 2);
        CHECK(deg.report.at("error").at("kind") == "resource");
        auto missing = job("lift-flag", json::object());
        CHECK(missing.exit_code == 1);
        // distinct codes for distinct failures
        CHECK(parse.report.at("error").at("code") != deg.report.at("error").at("code"));
    }

    TEST_CASE("group names") {
        CHECK(cli::parse_group("trivial").order() == 1);
        CHECK(cli::parse_group("C6").order() == 6);
        CHECK(cli::parse_group("Z/5").order() == 5);
        CHECK(cli::parse_group("D4").order() == 8);
        CHECK(cli::parse_group("Q8").order() == 8);
        CHECK(cli::parse_group("S3").order() == 6);
        CHECK(cli::parse_group("C2xC4").order() == 8);
        CHECK(cli::parse_group("C2^3").order() == 8);
        CHECK_THROWS_AS(cli::parse_group("X7"), Error);
        FiniteGroup G = cli::group_from_json(json{{"permutations", {{1, 2, 0}}}});
        CHECK(G.order() == 3);
        FiniteGroup T = cli::group_from_json(cli::group_to_json(cli::parse_group("S3")));
        CHECK(T.order() == 6);
    }

    TEST_CASE("flag json round trip") {
        FiniteGroup G = FiniteGroup::cyclic(3);
        FlagRep f = FlagRep::from_generators(G, 3, 2, 2, {{G.generators()[0], Mat::from_rows({{1, 3}, {0, 1}})}});
        FlagRep g = cli::flag_from_json(cli::flag_to_json(f));
        CHECK(g.rho == f.rho);
        CHECK(g.k == 2);
        Mat M = Mat::from_rows({{1, 2}, {3, 4}});
        CHECK(cli::mat_from_json(cli::mat_to_json(M)) == M);
    }

    TEST_CASE("budget from environment") {
        setenv("WITTLIFT_BUDGET", "enum=1000,degree=3", 1);
        cli::Budget b = cli::budget_from_env();
        CHECK(b.max_enumeration == 1000);
        CHECK(b.max_degree == 3);
        setenv("WITTLIFT_BUDGET", "77", 1);
        CHECK(cli::budget_from_env().max_enumeration == 77);
        setenv("WITTLIFT_BUDGET", "enum", 1);
        CHECK_THROWS_AS(cli::budget_from_env(), Error);
        unsetenv("WITTLIFT_BUDGET");
    }
}
