#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "chainlab/cli.hpp"
#include "chainlab/text_io.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace chainlab;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("chainlab_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

fs::path write_config(const fs::path& dir, const std::string& text) {
    const auto p = dir / "run.cfg";
    std::ofstream(p, std::ios::binary) << text;
    return p;
}

// Rows of a t,n,re,im trajectory CSV.
std::vector<std::vector<double>> rows_of(const std::string& csv) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::vector<double> r;
        for (const auto& f : split(line, ',')) r.push_back(parse_double(f));
        rows.push_back(r);
    }
    return rows;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("scenario run writes artifacts and a report") {
    const auto dir = scratch("scenario");
    const auto r = run({"scenario", "finite-3car-cyclic", "--out", dir.string()});
    CHECK(r.code == cli::Pass);
    CHECK(fs::exists(dir / "trajectory.csv"));
    CHECK(fs::exists(dir / "matrix.csv"));
    const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
    CHECK(report["scenario"] == "finite-3car-cyclic");
    CHECK(report["verdict"] == "pass");
    CHECK_FALSE(report["anchor"].get<std::string>().empty());
    CHECK(report.contains("wall_time_s"));
    CHECK(std::abs(report["metrics"]["rendezvous_point"][0].get<double>() - 1.0) < 1e-8);
}

TEST_CASE("reruns produce byte-identical CSV bodies") {
    const auto d1 = scratch("det1"), d2 = scratch("det2");
    REQUIRE(run({"scenario", "serial-cesaro", "--out", d1.string()}).code == 0);
    REQUIRE(run({"scenario", "serial-cesaro", "--out", d2.string()}).code == 0);
    for (const auto& e : fs::directory_iterator(d1)) {
        if (e.path().extension() != ".csv") continue;
        CHECK(slurp(e.path()) == slurp(d2 / e.path().filename()));
    }
}

TEST_CASE("exit codes") {
    const auto dir = scratch("codes");
    CHECK(run({"scenario", "nonexistent", "--out", dir.string()}).code == cli::UsageError);
    CHECK(run({"scenario", "serial-impulse", "--times", "0:1", "--out", dir.string()}).code == cli::UsageError);
    CHECK(run({"scenario", "serial-impulse", "--bogus"}).code == cli::UsageError);
    CHECK(run({}).code == cli::UsageError);
    CHECK(run({"--help"}).code == cli::Pass);
    const auto fail = run({"scenario", "serial-kronecker", "--tol", "0.5", "--out", dir.string()});
    CHECK(fail.code == cli::ToleranceFailure);
    CHECK(fail.err.find("FAIL") != std::string::npos);
    const auto list = run({"list"});
    CHECK(list.code == cli::Pass);
    CHECK(list.out.find("doubling-contrast") != std::string::npos);
}

TEST_CASE("spectrum command") {
    const auto dir = scratch("spectrum");
    const auto r = run({"spectrum", "1:1,0:-1", "--samples", "64", "--out", dir.string()});
    REQUIRE(r.code == cli::Pass);
    const auto csv = slurp(dir / "spectrum.csv");
    CHECK(csv.rfind("omega,re,im\n", 0) == 0);
    const auto rows = rows_of(csv);
    CHECK(rows.size() == 65);
    for (const auto& row : rows) CHECK(std::abs(std::hypot(row[1] + 1.0, row[2]) - 1.0) < 1e-14);
    const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
    CHECK(std::abs(report["abscissa"].get<double>()) < 1e-12);

    CHECK(run({"spectrum", "0:-2,1:1,-1:1", "--out", dir.string()}).code == cli::Pass);
    for (const auto& row : rows_of(slurp(dir / "spectrum.csv"))) {
        CHECK(row[1] >= -4.0 - 1e-12);
        CHECK(row[1] <= 1e-12);
        CHECK(std::abs(row[2]) < 1e-12);
    }
    CHECK(run({"spectrum", "1:x", "--out", dir.string()}).code == cli::UsageError);
}

TEST_CASE("simulate: constant data stays constant") {
    const auto dir = scratch("sim_const");
    const auto cfg = write_config(dir, "chain = serial\ntimes = 0:30:7\n[ic]\nkind = constant\nc = 2.5\n[window]\nlo = -3\nlen = 5\n");
    REQUIRE(run({"simulate", cfg.string(), "--out", (dir / "out").string()}).code == cli::Pass);
    const auto rows = rows_of(slurp(dir / "out" / "trajectory.csv"));
    CHECK(rows.size() == 35);
    for (const auto& r : rows) {
        CHECK(std::abs(r[2] - 2.5) < 1e-13);
        CHECK(r[3] == 0.0);
    }
    CHECK(slurp(dir / "out" / "norms.csv").rfind("t,metric,value\n", 0) == 0);
}

TEST_CASE("simulate: alternating data gives the closed form at car 0") {
    const auto dir = scratch("sim_periodic");
    const auto cfg = write_config(dir, "chain = serial\ntimes = 0:5:11\ntol = 1e-15\n[ic]\nkind = periodic\nvalues = 1, 0\n[window]\nlo = 0\nlen = 1\n");
    REQUIRE(run({"simulate", cfg.string(), "--out", (dir / "out").string()}).code == cli::Pass);
    for (const auto& r : rows_of(slurp(dir / "out" / "trajectory.csv")))
        CHECK(std::abs(r[2] - 0.5 * (1.0 + std::exp(-2.0 * r[0]))) < 1e-13);
}

TEST_CASE("simulate: finite and compare chains") {
    const auto dir = scratch("sim_finite");
    const auto cfg = write_config(dir, "chain = finite\ntimes = 0:50:26\n[finite]\nboundary = cyclic\n[ic]\nkind = finite\noffset = 0\nvalues = 0, 1, 2\n[window]\nlo = 0\nlen = 3\n");
    REQUIRE(run({"simulate", cfg.string(), "--out", (dir / "out").string()}).code == cli::Pass);
    const auto report = nlohmann::json::parse(slurp(dir / "out" / "report.json"));
    CHECK(report["rendezvous"] == true);

    const auto cmp = write_config(dir, "chain = compare\ntimes = 0:5:3\n[compare]\nkind = symmetric\nsize = 160\nmargin = 60\n[ic]\nkind = impulse\n");
    REQUIRE(run({"simulate", cmp.string(), "--out", (dir / "cmp").string()}).code == cli::Pass);
    CHECK(slurp(dir / "cmp" / "compare.csv").rfind("t,sup_error\n", 0) == 0);
}

TEST_CASE("simulate: margin rule violation is a usage error naming the rule") {
    const auto dir = scratch("sim_margin");
    const auto cfg = write_config(dir, "chain = compare\ntimes = 0:20:5\n[compare]\nsize = 300\nmargin = 100\n[ic]\nkind = impulse\n");
    const auto r = run({"simulate", cfg.string(), "--out", (dir / "out").string()});
    CHECK(r.code == cli::UsageError);
    CHECK(r.err.find("4t+40") != std::string::npos);
}

TEST_CASE("simulate: config diagnostics carry line and field") {
    const auto dir = scratch("sim_bad");
    auto r = run({"simulate", write_config(dir, "chain = serial\nwindw.lo = 3\n[ic]\nkind = impulse\n").string()});
    CHECK(r.code == cli::UsageError);
    CHECK(r.err.find(":2: windw.lo") != std::string::npos);

    r = run({"simulate", write_config(dir, "chain = serial\n[ic]\nkind = impulse\ncentre = 2\n").string()});
    CHECK(r.code == cli::UsageError);
    CHECK(r.err.find("ic.kind") != std::string::npos);

    r = run({"simulate", write_config(dir, "chain = serial\n[window]\nlen = many\n[ic]\nkind = impulse\n").string()});
    CHECK(r.code == cli::UsageError);
    CHECK(r.err.find(":3: window.len") != std::string::npos);

    r = run({"simulate", write_config(dir, "chain = sideways\n[ic]\nkind = impulse\n").string()});
    CHECK(r.code == cli::UsageError);
    CHECK(run({"simulate", (dir / "missing.cfg").string()}).code == cli::UsageError);
}

TEST_CASE("simulate: seed override for random data") {
    const auto dir = scratch("sim_seed");
    const auto cfg = write_config(dir, "chain = serial\ntimes = 0:1:2\n[ic]\nkind = random\nseed = 1\n[window]\nlo = 0\nlen = 4\n");
    REQUIRE(run({"simulate", cfg.string(), "--seed", "9", "--out", (dir / "a").string()}).code == 0);
    REQUIRE(run({"simulate", cfg.string(), "--out", (dir / "b").string()}).code == 0);
    REQUIRE(run({"simulate", cfg.string(), "--seed", "9", "--out", (dir / "c").string()}).code == 0);
    CHECK(slurp(dir / "a" / "trajectory.csv") != slurp(dir / "b" / "trajectory.csv"));
    CHECK(slurp(dir / "a" / "trajectory.csv") == slurp(dir / "c" / "trajectory.csv"));
}

}
