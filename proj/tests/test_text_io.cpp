#include <cmath>
#include <cstring>
#include <limits>
#include <random>

#include "chainlab/text_io.hpp"
#include "doctest.h"

using namespace chainlab;

TEST_SUITE("text_io") {

TEST_CASE("format_double round-trips random doubles bit for bit") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::uint64_t> bits;
    int checked = 0;
    while (checked < 2000) {
        const std::uint64_t b = bits(rng);
        double x;
        std::memcpy(&x, &b, sizeof x);
        if (!std::isfinite(x)) continue;
        CHECK(parse_double(format_double(x)) == x);
        ++checked;
    }
}

TEST_CASE("format_double uses the shortest form") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-2.5) == "-2.5");
    CHECK(format_double(1e-300) == "1e-300");
}

TEST_CASE("strict number parsing") {
    CHECK(parse_double("3.25") == 3.25);
    CHECK(parse_double(" 4 ") == 4.0);
    CHECK(std::isinf(parse_double("inf")));
    CHECK_THROWS_AS((void)parse_double("1.5x"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_double(""), std::invalid_argument);
    CHECK(parse_int("-12") == -12);
    CHECK_THROWS_AS((void)parse_int("1.0"), std::invalid_argument);
}

TEST_CASE("trim and split") {
    CHECK(trim("  a b \t") == "a b");
    const auto parts = split("1,2,,3", ',');
    REQUIRE(parts.size() == 4);
    CHECK(parts[2].empty());
    CHECK(parts[3] == "3");
}

TEST_CASE("csv writer emits header and LF rows") {
    CsvWriter csv({"t", "value"});
    csv.row({"0", "1"});
    csv.row({"0.5", "2"});
    CHECK(csv.str() == "t,value\n0,1\n0.5,2\n");
    CHECK_THROWS_AS(csv.row({"1"}), std::invalid_argument);
}

TEST_CASE("config sections, comments and line numbers") {
    const auto cfg = Config::parse("# comment\nchain = serial\n\n[ic]\nkind = periodic\nvalues = 1, 0\n[window]\nlo=-3\n");
    CHECK(cfg.get("chain") == "serial");
    CHECK(cfg.get("ic.kind") == "periodic");
    CHECK(cfg.get("ic.values") == "1, 0");
    CHECK(cfg.get("window.lo") == "-3");
    CHECK(cfg.line_of("ic.kind") == 5);
    const auto ic = cfg.section("ic");
    CHECK(ic.size() == 2);
    CHECK(ic.at("kind") == "periodic");
    CHECK(cfg.get_or("missing", "x") == "x");
}

TEST_CASE("config errors carry the key and line") {
    try {
        (void)Config::parse("a = 1\nb = 2\na = 3\n");
        FAIL("duplicate key accepted");
    } catch (const ConfigError& e) {
        CHECK(e.key() == "a");
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS((void)Config::parse("no equals sign\n"), ConfigError);
    const auto cfg = Config::parse("a = 1\n");
    CHECK_THROWS_AS((void)cfg.get("b"), ConfigError);
}

}
