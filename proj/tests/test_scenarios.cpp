#include <cstdlib>
#include <set>

#include "chainlab/parallel.hpp"
#include "chainlab/scenarios.hpp"
#include "doctest.h"

using namespace chainlab;

TEST_SUITE("scenarios") {

TEST_CASE("time grids") {
    const auto lin = parse_time_grid("0:10:11").values();
    REQUIRE(lin.size() == 11);
    CHECK(lin[3] == 3.0);
    CHECK(lin.back() == 10.0);
    const auto lg = parse_time_grid("1:1000:4:log").values();
    CHECK(lg[1] == doctest::Approx(10.0));
    CHECK(lg.back() == 1000.0);
    CHECK(parse_time_grid("2:2:1").values() == std::vector<double>{2.0});
    CHECK_THROWS_AS((void)parse_time_grid("0:10"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_time_grid("0:10:0"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_time_grid("5:1:3"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_time_grid("0:10:3:log"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_time_grid("0:10:3:cubic"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_time_grid("-1:10:3"), std::invalid_argument);
}

TEST_CASE("registry holds the twelve named scenarios") {
    const std::set<std::string> expected = {
        "serial-impulse",       "serial-kronecker",   "serial-cesaro",      "serial-dsblocks",
        "serial-derivative-norm", "symmetric-decay",  "finite-3car-tethered", "finite-3car-origin",
        "finite-3car-cyclic",   "doubling-contrast",  "tauberian-triad",    "spectra-gallery"};
    std::set<std::string> names;
    for (const auto& s : scenario_list()) {
        names.insert(s.name);
        CHECK_FALSE(s.anchor.empty());
    }
    CHECK(names == expected);
    CHECK_THROWS_AS((void)run_scenario("no-such-thing"), UnknownScenario);
}

TEST_CASE("every scenario passes with defaults and reports its anchor") {
    for (const auto& s : scenario_list()) {
        CAPTURE(s.name);
        const auto r = run_scenario(s.name);
        CHECK(r.pass());
        CHECK(r.failure_summary().empty());
        CHECK_FALSE(r.artifacts.empty());
        const auto j = report_json(r, 0.25);
        CHECK(j["anchor"] == s.anchor);
        CHECK(j["verdict"] == "pass");
        CHECK(j["wall_time_s"] == 0.25);
        for (const auto& a : r.artifacts) {
            CHECK(a.content.find('\r') == std::string::npos);
            CHECK(a.content.back() == '\n');
        }
    }
}

TEST_CASE("artifacts are byte-identical across runs and thread counts") {
    for (const char* name : {"serial-impulse", "symmetric-decay", "tauberian-triad", "finite-3car-cyclic"}) {
        CAPTURE(name);
        setenv("CHAINLAB_THREADS", "1", 1);
        const auto a = run_scenario(name);
        setenv("CHAINLAB_THREADS", "4", 1);
        const auto b = run_scenario(name);
        const auto c = run_scenario(name);
        unsetenv("CHAINLAB_THREADS");
        REQUIRE(a.artifacts.size() == b.artifacts.size());
        for (std::size_t i = 0; i < a.artifacts.size(); ++i) {
            CHECK(a.artifacts[i].name == b.artifacts[i].name);
            CHECK(a.artifacts[i].content == b.artifacts[i].content);
            CHECK(b.artifacts[i].content == c.artifacts[i].content);
        }
        CHECK(a.metrics.dump() == b.metrics.dump());
    }
}

TEST_CASE("thread count honours the environment") {
    setenv("CHAINLAB_THREADS", "3", 1);
    CHECK(worker_count() == 3);
    unsetenv("CHAINLAB_THREADS");
    CHECK(worker_count() >= 1);
}

TEST_CASE("a loose series tolerance is reported as a failure") {
    ScenarioOptions o;
    o.tol = 0.5;
    const auto r = run_scenario("serial-kronecker", o);
    CHECK_FALSE(r.pass());
    CHECK(r.failure_summary().find("matches_closed_form") != std::string::npos);
}

TEST_CASE("options that break a scenario precondition are rejected") {
    ScenarioOptions o;
    o.times = parse_time_grid("0:5:3");
    CHECK_THROWS_AS((void)run_scenario("finite-3car-cyclic", o), std::invalid_argument);
}

}
