#pragma once

// Named, self-checking runs. Each scenario computes its metrics, checks them
// against fixed tolerances and returns CSV/JSON artifacts in memory; the
// CLI decides where they are written.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chainlab/laurent_operator.hpp"
#include "json.hpp"

namespace chainlab {

struct TimeGrid {
    double start = 0.0;
    double stop = 1.0;
    int count = 2;
    bool log = false;

    /// count points from start to stop inclusive, linear or geometric.
    [[nodiscard]] std::vector<double> values() const;
};

/// "start:stop:count" or "start:stop:count:log".
/// Throws std::invalid_argument on malformed input, count < 1, stop < start,
/// or a log grid with start <= 0.
[[nodiscard]] TimeGrid parse_time_grid(const std::string& text);

struct ScenarioOptions {
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    std::optional<int> samples;
    std::optional<TimeGrid> times;
};

struct Artifact {
    std::string name;  // file name relative to the output directory
    std::string content;
};

struct Check {
    std::string name;
    double value = 0.0;
    std::string relation;  // "<=", "<", ">", ">=", "true"
    double target = 0.0;
    bool pass = false;
};

struct ScenarioResult {
    std::string name;
    std::string anchor;
    nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
    nlohmann::ordered_json metrics = nlohmann::ordered_json::object();
    std::vector<Check> checks;
    std::vector<Artifact> artifacts;

    [[nodiscard]] bool pass() const;
    /// One line per failed check.
    [[nodiscard]] std::string failure_summary() const;
};

struct ScenarioInfo {
    std::string name;
    std::string anchor;
};

[[nodiscard]] const std::vector<ScenarioInfo>& scenario_list();

class UnknownScenario : public std::invalid_argument {
public:
    explicit UnknownScenario(const std::string& name) : std::invalid_argument("unknown scenario '" + name + "'") {}
};

/// Throws UnknownScenario, or std::invalid_argument for options the scenario
/// cannot accept (for example a time grid too short for a limit estimate).
[[nodiscard]] ScenarioResult run_scenario(const std::string& name, const ScenarioOptions& options = {});

/// Columns omega,re,im.
[[nodiscard]] std::string spectrum_csv(const SpectrumCurve& curve);

/// Report document: scenario, anchor, parameters, metrics, checks, verdict,
/// artifacts and wall_time_s.
[[nodiscard]] nlohmann::ordered_json report_json(const ScenarioResult& r, double wall_time_s);

}  // namespace chainlab
