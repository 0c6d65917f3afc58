#include "run_cli.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cstdlib>
#include <fstream>

using namespace mlvtest;

namespace {

std::string write_temp(std::string const& name, std::string const& content)
{
    std::string path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") + "/mlv_cli_test_" + name;
    std::ofstream(path) << content;
    return path;
}

}

TEST_CASE("cli: fixtures produce the expected reports")
{
    auto r = run_cli("chain --fixture sec32");
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["depth"] == 3);
    CHECK(j["e"] == 1);
    CHECK(j["f"] == 8);
    CHECK(j["provenance"].size() == 3);

    auto d = json::parse(run_cli("depth --fixture sec34").out);
    CHECK(d["depth"] == 2);
    CHECK(d["e"] == 3);
    CHECK(d["f"] == 2);

    auto c = run_cli("cert-depth-one --fixture sec34");
    CHECK(json::parse(c.out)["status"] == "ResidueNotGenerating");

    auto o = run_cli("okutsu-verify --fixture sec4");
    REQUIRE(o.code == 0);
    auto oj = json::parse(o.out);
    CHECK(oj["pass"] == true);
    CHECK(oj["r"] == 2);
}

TEST_CASE("cli: reports are byte-identical across runs")
{
    for (std::string a : {"chain --fixture sec32", "branches --fixture sec4", "okutsu-verify --fixture sec34", "series-value --fixture sec4"}) {
        auto x = run_cli(a), y = run_cli(a);
        CHECK(x.code == y.code);
        CHECK(x.out == y.out);
    }
}

TEST_CASE("cli: exit codes")
{
    auto lim = write_temp("lim.json", R"({"field": {"kind": "Q_padic", "p": 5}, "g": "x^2 + 1"})");
    auto r = run_cli("chain --input " + lim);
    CHECK(r.code == 3);
    CHECK(json::parse(r.out)["error"] == "LimitSituation");
    CHECK(run_cli("chain --strict --input " + lim).code == 3);
    CHECK(run_cli("branches --input " + lim).code == 0);

    auto bad = write_temp("bad.json", R"({"field": {"kind": "Q_padic", "p": 4}, "g": "x"})");
    CHECK(run_cli("chain --input " + bad).code == 2);
    auto junk = write_temp("junk.json", "{not json");
    CHECK(run_cli("chain --input " + junk).code == 2);
    CHECK(run_cli("chain --input /nonexistent/file.json").code == 2);
    CHECK(run_cli("no-such-command").code == 2);

    auto pe = write_temp("pe.json", R"({"p": 5, "elements": ["a_9+1"]})");
    CHECK(run_cli("series-value --t-pr 3 --p-pr 3 --input " + pe).code == 4);
}

TEST_CASE("cli: valuation problems from files")
{
    auto ev = write_temp("eval.json", R"({"field": {"kind": "Q_padic", "p": 2},
        "valuation": {"steps": [{"phi": "x", "gamma": "0"}, {"phi": "x", "gamma": "1/2"}]},
        "f": "x^2 + 2*x + 4"})");
    auto r = run_cli("eval --input " + ev);
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["value"] == "1");

    auto nk = write_temp("nk.json", R"({"field": {"kind": "Q_padic", "p": 2},
        "valuation": {"steps": [{"phi": "x", "gamma": "0"}, {"phi": "x^2 + x", "gamma": "1"}]},
        "f": "x"})");
    auto r2 = run_cli("eval --input " + nk);
    CHECK(r2.code == 3);
    CHECK(json::parse(r2.out)["error"] == "NotKeyPolynomial");

    auto ik = write_temp("ik.json", R"({"field": {"kind": "Q_padic", "p": 2},
        "valuation": {"steps": [{"phi": "x", "gamma": "0"}]}, "Q": {"coeffs": [1, 1, 1]}})");
    auto r3 = run_cli("iskey --input " + ik);
    REQUIRE(r3.code == 0);
    CHECK(json::parse(r3.out)["key"] == true);
}

TEST_CASE("cli: search with an early stop")
{
    auto s = write_temp("search.json", R"({"field": {"kind": "Q_padic", "p": 2}, "g": "x^8 - 4*x^6 + 6*x^4 - 4*x^2 + 17",
        "box": [-2, 2], "stop_at_depth": 2})");
    auto r = run_cli("search-generators --input " + s);
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["min_depth_upper_bound"].get<int>() <= 2);
    CHECK(j["stopped_early"] == true);
}
