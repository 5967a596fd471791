#pragma once

#include <string>
#include <vector>

#include "chainlab/sequence_space.hpp"

namespace chainlab {

/// Time-indexed windows of the chain state plus per-time norms.
struct Trajectory {
    std::vector<double> times;
    std::vector<Window> states;
    std::vector<double> inf_norms;
    /// sup over the window of |q_{n-1}(t) - q_n(t)|; 0 for one-point windows.
    std::vector<double> sup_consecutive_diff;
};

/// Validates strictly increasing times and equal lengths, fills the norms.
[[nodiscard]] Trajectory make_trajectory(std::vector<double> times, std::vector<Window> states);

/// Columns t,n,re,im; one row per (time, index), ordered by t then n.
[[nodiscard]] std::string trajectory_csv(const Trajectory& traj);

/// Long format t,metric,value with metrics inf_norm and sup_consecutive_diff.
[[nodiscard]] std::string norms_csv(const Trajectory& traj);

}  // namespace chainlab
