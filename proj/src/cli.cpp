#include "chainlab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include "CLI11.hpp"
#include "chainlab/chain_sim.hpp"
#include "chainlab/poisson_series.hpp"
#include "chainlab/scenarios.hpp"
#include "chainlab/text_io.hpp"
#include "json.hpp"

namespace chainlab::cli {

namespace fs = std::filesystem;

namespace {

struct Common {
    std::string out = "out";
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    std::optional<int> samples;
    std::string times;
};

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << content;
}

void write_all(const std::string& dir, const std::vector<Artifact>& artifacts, const nlohmann::ordered_json& report) {
    fs::create_directories(dir);
    for (const auto& a : artifacts) write_file(fs::path(dir) / a.name, a.content);
    write_file(fs::path(dir) / "report.json", report.dump(2) + "\n");
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ScenarioOptions options_from(const Common& c) {
    ScenarioOptions o;
    o.tol = c.tol;
    o.seed = c.seed;
    o.samples = c.samples;
    if (!c.times.empty()) o.times = parse_time_grid(c.times);
    if (o.tol && !(*o.tol > 0.0)) throw std::invalid_argument("--tol must be > 0");
    return o;
}

int cmd_scenario(const std::string& name, const Common& c, std::ostream& out, std::ostream& err) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto result = run_scenario(name, options_from(c));
    auto report = report_json(result, seconds_since(t0));
    write_all(c.out, result.artifacts, report);
    out << name << ": " << (result.pass() ? "pass" : "fail") << " (" << result.checks.size() << " checks, "
        << result.artifacts.size() + 1 << " files in " << c.out << ")\n";
    if (!result.pass()) {
        err << result.failure_summary();
        return ToleranceFailure;
    }
    return Pass;
}

int cmd_list(std::ostream& out) {
    for (const auto& s : scenario_list()) out << s.name << "  " << s.anchor << '\n';
    return Pass;
}

int cmd_spectrum(const std::string& literal, const Common& c, std::ostream& out) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto op = parse_operator(literal);
    const int M = c.samples.value_or(512);
    const auto curve = spectrum_curve(op, M);
    nlohmann::ordered_json report;
    report["command"] = "spectrum";
    report["operator"] = format_operator(op);
    report["samples"] = M;
    report["abscissa"] = curve.abscissa;
    report["artifacts"] = {"spectrum.csv"};
    report["wall_time_s"] = seconds_since(t0);
    write_all(c.out, {{"spectrum.csv", spectrum_csv(curve)}}, report);
    out << "abscissa " << format_double(curve.abscissa) << '\n';
    return Pass;
}

const std::set<std::string> kTopKeys = {"chain",           "tol",           "times",        "window.lo",
                                        "window.len",      "finite.boundary", "finite.operator", "compare.kind",
                                        "compare.size",    "compare.margin",  "compare.max_error"};

double config_double(const Config& cfg, const std::string& key, double fallback) {
    if (!cfg.has(key)) return fallback;
    try {
        return parse_double(cfg.get(key));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(key, cfg.line_of(key), e.what());
    }
}

Index config_int(const Config& cfg, const std::string& key, Index fallback) {
    if (!cfg.has(key)) return fallback;
    try {
        return parse_int(cfg.get(key));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(key, cfg.line_of(key), e.what());
    }
}

template <class F>
auto with_key(const Config& cfg, const std::string& key, F&& f) {
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(key, cfg.has(key) ? cfg.line_of(key) : 0, e.what());
    }
}

int cmd_simulate(const std::string& path, const Common& c, std::ostream& out, std::ostream& err) {
    const auto t0 = std::chrono::steady_clock::now();
    const Config cfg = Config::load(path);
    for (const auto& [key, entry] : cfg.entries())
        if (!kTopKeys.count(key) && key.rfind("ic.", 0) != 0)
            throw ConfigError(key, entry.line, "unknown key '" + key + "'");

    const std::string chain = cfg.get("chain");
    auto fields = cfg.section("ic");
    if (c.seed) fields["seed"] = std::to_string(*c.seed);
    const InitialCondition ic = with_key(cfg, "ic.kind", [&] { return ic_from_fields(fields); });
    const double tol = c.tol.value_or(config_double(cfg, "tol", 1e-14));
    if (!(tol > 0.0)) throw ConfigError("tol", cfg.line_of("tol"), "tol must be > 0");
    const std::string times_text = !c.times.empty() ? c.times : cfg.get_or("times", "0:10:11");
    const auto times = with_key(cfg, "times", [&] { return parse_time_grid(times_text).values(); });

    nlohmann::ordered_json report;
    report["command"] = "simulate";
    report["config"] = path;
    report["chain"] = chain;
    report["ic"] = format_ic(ic);
    report["tol"] = tol;
    report["times"] = times;
    std::vector<Artifact> artifacts;
    bool pass = true;

    if (chain == "serial" || chain == "symmetric" || chain == "finite") {
        const Index lo = config_int(cfg, "window.lo", 0);
        const Index len = config_int(cfg, "window.len", 1);
        if (len < 1) throw ConfigError("window.len", cfg.line_of("window.len"), "window.len must be >= 1");
        report["window"] = {{"lo", lo}, {"len", len}};
        Trajectory traj;
        if (chain == "serial") {
            traj = serial_trajectory(ic, lo, len, times, tol);
        } else if (chain == "symmetric") {
            traj = symmetric_trajectory(ic, lo, len, times, tol);
        } else {
            const auto boundary = with_key(cfg, "finite.boundary",
                                           [&] { return parse_boundary(cfg.get_or("finite.boundary", "free")); });
            const auto op = with_key(cfg, "finite.operator", [&] {
                return parse_operator(cfg.get_or("finite.operator", format_operator(LaurentOperator::serial_pursuit())));
            });
            const FiniteChainModel model{len, op, boundary};
            traj = simulate_finite(model, window_of(ic, lo, len), times);
            report["finite"] = {{"boundary", to_string(boundary)}, {"operator", format_operator(op)}};
            artifacts.push_back({"matrix.csv", matrix_csv(build_matrix(model))});
            if (times.size() >= 4 && times.back() >= 20.0) {
                const auto rep = rendezvous_report(traj);
                report["rendezvous"] = rep.rendezvous;
                report["spread"] = rep.spread;
            }
        }
        artifacts.insert(artifacts.begin(), {{"trajectory.csv", trajectory_csv(traj)}, {"norms.csv", norms_csv(traj)}});
    } else if (chain == "compare") {
        const std::string kind = cfg.get_or("compare.kind", "serial");
        if (kind != "serial" && kind != "symmetric")
            throw ConfigError("compare.kind", cfg.line_of("compare.kind"), "compare.kind must be serial or symmetric");
        const Index N = config_int(cfg, "compare.size", 400);
        const Index margin = config_int(cfg, "compare.margin", 120);
        const double max_error = config_double(cfg, "compare.max_error", 1e-8);
        const auto rep = truncation_compare(ic, kind == "serial" ? ChainKind::Serial : ChainKind::Symmetric, N, margin,
                                            times, tol);
        CsvWriter csv({"t", "sup_error"});
        for (const auto& row : rep.rows) csv.row({format_double(row.t), format_double(row.sup_error)});
        artifacts.push_back({"compare.csv", csv.str()});
        report["compare"] = {{"kind", kind}, {"size", N}, {"margin", margin}, {"max_error", rep.max_error()},
                             {"bound", max_error}};
        pass = rep.max_error() <= max_error;
        if (!pass)
            err << "FAIL truncation error " << format_double(rep.max_error()) << " exceeds "
                << format_double(max_error) << '\n';
    } else {
        throw ConfigError("chain", cfg.line_of("chain"), "chain must be serial, symmetric, finite or compare");
    }

    report["verdict"] = pass ? "pass" : "fail";
    report["artifacts"] = nlohmann::ordered_json::array();
    for (const auto& a : artifacts) report["artifacts"].push_back(a.name);
    report["wall_time_s"] = seconds_since(t0);
    write_all(c.out, artifacts, report);
    out << "simulate " << chain << ": " << (pass ? "pass" : "fail") << " (" << artifacts.size() + 1 << " files in "
        << c.out << ")\n";
    return pass ? Pass : ToleranceFailure;
}

void add_common(CLI::App* sub, Common& c, bool with_times) {
    sub->add_option("--out", c.out, "Output directory")->capture_default_str();
    sub->add_option("--tol", c.tol, "Series truncation tolerance");
    sub->add_option("--seed", c.seed, "Seed for random initial conditions");
    sub->add_option("--samples", c.samples, "Sample count (spectrum points, triad grid size)");
    if (with_times) sub->add_option("--times", c.times, "Time grid start:stop:count[:log]");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"chainlab: pursuit chains on bi-infinite lattices", "chainlab"};
    app.require_subcommand(1);
    Common common;
    std::string name, literal, config;

    auto* scenario = app.add_subcommand("scenario", "Run a named self-checking scenario");
    scenario->add_option("name", name, "Scenario name (see 'list')")->required();
    add_common(scenario, common, true);

    auto* list = app.add_subcommand("list", "List registered scenarios");

    auto* spectrum = app.add_subcommand("spectrum", "Symbol curve of an operator literal such as 1:1,0:-1");
    spectrum->add_option("operator", literal, "lag:coeff pairs")->required();
    add_common(spectrum, common, false);

    auto* simulate = app.add_subcommand("simulate", "Run a key = value config file");
    simulate->add_option("config", config, "Config path")->required();
    add_common(simulate, common, true);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? Pass : UsageError;
    }

    try {
        if (*list) return cmd_list(out);
        if (*scenario) return cmd_scenario(name, common, out, err);
        if (*spectrum) return cmd_spectrum(literal, common, out);
        return cmd_simulate(config, common, out, err);
    } catch (const ConfigError& e) {
        err << "error: " << config << ':' << e.line() << ": " << e.key() << ": " << e.what() << '\n';
        return UsageError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return UsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return ToleranceFailure;
    }
}

}  // namespace chainlab::cli
