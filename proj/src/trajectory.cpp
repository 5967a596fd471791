#include "chainlab/trajectory.hpp"

#include <algorithm>
#include <stdexcept>

#include "chainlab/text_io.hpp"

namespace chainlab {

Trajectory make_trajectory(std::vector<double> times, std::vector<Window> states) {
    if (times.size() != states.size()) throw std::invalid_argument("make_trajectory: length mismatch");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1])) throw std::invalid_argument("make_trajectory: times must increase strictly");

    Trajectory traj{std::move(times), std::move(states), {}, {}};
    for (const auto& w : traj.states) {
        traj.inf_norms.push_back(norm_inf(w));
        double d = 0.0;
        for (std::size_t i = 1; i < w.values.size(); ++i) d = std::max(d, std::abs(w.values[i - 1] - w.values[i]));
        traj.sup_consecutive_diff.push_back(d);
    }
    return traj;
}

std::string trajectory_csv(const Trajectory& traj) {
    CsvWriter csv({"t", "n", "re", "im"});
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const auto& w = traj.states[i];
        const std::string t = format_double(traj.times[i]);
        for (Index j = 0; j < w.size(); ++j) {
            const auto& z = w.values[static_cast<std::size_t>(j)];
            csv.row({t, std::to_string(w.lo + j), format_double(z.real()), format_double(z.imag())});
        }
    }
    return csv.str();
}

std::string norms_csv(const Trajectory& traj) {
    CsvWriter csv({"t", "metric", "value"});
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const std::string t = format_double(traj.times[i]);
        csv.row({t, "inf_norm", format_double(traj.inf_norms[i])});
        csv.row({t, "sup_consecutive_diff", format_double(traj.sup_consecutive_diff[i])});
    }
    return csv.str();
}

}  // namespace chainlab
