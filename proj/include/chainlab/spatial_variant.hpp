#pragma once

// The doubling operator B on the non-negative half-chain, (Bx)_{2n} =
// (Bx)_{2n+1} = x_n, and the impulse response of p' = (-aI + B)p.
//
// B^j delta_0 is the indicator of [0, 2^j), so
//   p(t)_i = e^{-at} T_{L(i)}(t),  T_L = sum_{j >= L} t^j / j!,  L(i) = ceil(log2(i + 1)),
// and every coordinate depends only on its level. Level L >= 1 holds 2^{L-1}
// indices. Since p(t) >= e^{-at} (t^j/j!) B^j delta coordinatewise, the
// impulse is a witness for sup-norm decay with 2-norm growth when 1 < a < sqrt(2).

#include <string>
#include <vector>

#include "chainlab/sequence_space.hpp"

namespace chainlab {

struct DoublingModel {
    double a = 1.2;
};

/// Output on [2 lo, 2 (lo + len)). Throws std::invalid_argument when w.lo < 0.
[[nodiscard]] Window apply_B(const Window& w);

enum class NormSpace { L2, Linf };

[[nodiscard]] std::string to_string(NormSpace s);
/// Accepts l2, linf.
[[nodiscard]] NormSpace parse_norm_space(const std::string& name);

/// ||B^j||^{1/j} for j = 1..j_max. The ratio ||B^j x|| / ||x|| does not depend
/// on x (each entry is copied 2^j times), so it is read off B^j delta.
/// Throws std::invalid_argument unless 1 <= j_max <= 20.
[[nodiscard]] std::vector<double> power_norm_estimate(NormSpace space, int j_max);

struct Level {
    int L;
    double tail_sum;      // T_L(t); overflows to inf for very large t
    double log_tail;      // log T_L(t)
    double index_count;   // 1 for L = 0, 2^{L-1} otherwise
};

struct LevelProfile {
    double t = 0.0;
    double a = 0.0;
    std::vector<Level> levels;

    /// e^{-2t} sum_L index_count T_L; equals 1 up to truncation (B^j delta has mass 2^j).
    [[nodiscard]] double scaled_mass() const;
    /// Coordinate p(t)_i.
    [[nodiscard]] double at(Index i) const;
};

struct ImpulseResponse {
    LevelProfile profile;
    double linf = 0.0;
    double l2 = 0.0;
};

/// Levels are kept until T_L < tol e^t, L >= 4t and the level's share of the
/// mass, e^{-2t} index_count T_L, is < tol. Past 4t the level contributions
/// to mass and 2-norm shrink at least geometrically with ratio 1/2.
/// Throws std::invalid_argument for a <= 0, t < 0 or tol <= 0.
[[nodiscard]] ImpulseResponse impulse_response(double a, double t, double tol = 1e-15);

struct StabilityRow {
    double t;
    double linf;
    double l2;
};

struct StabilityReport {
    double a = 0.0;
    std::vector<StabilityRow> rows;
    bool linf_stable = false;    // linf strictly decreasing and final < 1e-3 initial
    bool l2_unstable = false;    // max l2 > 10 initial
    bool l2_stable = false;      // final l2 < 1e-3 initial
};

/// Throws std::invalid_argument unless t_grid has >= 2 strictly increasing entries.
[[nodiscard]] StabilityReport stability_report(double a, const std::vector<double>& t_grid, double tol = 1e-15);

/// Columns t,linf,l2,linf_decayed,l2_exceeded; the flags compare each row with the first.
[[nodiscard]] std::string stability_csv(const StabilityReport& r);

}  // namespace chainlab
