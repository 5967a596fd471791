#pragma once

// Exact evaluation of the two infinite-chain semigroups on bounded data.
//
// Serial pursuit, dq/dt = (U - I) q:
//     q_n(t) = sum_{k>=0} e^{-t} t^k / k! * q_{n-k}(0)
// Symmetric chain, dp/dt = (U + U^{-1} - 2I) p:
//     p_n(t) = sum_m e^{-2t} I_m(2t) * p_{n-m}(0)
//
// The heat coefficients e^{-2t} I_m(2t) come from uniformization:
// exp((U + U^{-1} - 2I) t) = sum_j Pois(2t)_j * ((U + U^{-1}) / 2)^j, and
// ((U + U^{-1}) / 2)^j has the law of a j-step symmetric +-1 walk.

#include <functional>
#include <string>
#include <vector>

#include "chainlab/sequence_space.hpp"
#include "chainlab/trajectory.hpp"

namespace chainlab {

/// e^{-t} t^k / k!, log-space. Throws std::invalid_argument for k < 0 or t < 0.
[[nodiscard]] double poisson_weight(Index k, double t);

/// Index maximizing t^k / k!; satisfies k0 <= t <= k0 + 1 (floor(t) at ties).
[[nodiscard]] Index poisson_mode(double t);

struct SeriesResult {
    Scalar value;
    Index k_lo = 0;  // first summed index
    Index k_hi = 0;  // last summed index
    double omitted_mass = 0.0;  // upper bound on the unsummed Poisson(t) mass
};

/// sum_k e^{-t} t^k / k! f(k), summed outward from the mode until the
/// omitted Poisson mass (geometric-ratio bounds on both sides) is < tol.
/// The summation order depends only on (t, tol), so equal inputs give
/// bit-identical results.
[[nodiscard]] SeriesResult poisson_sum(double t, double tol, const std::function<Scalar(Index)>& f);

/// q_n(t) with remainder <= tol * ic.sup_bound().
[[nodiscard]] Scalar serial_state(const InitialCondition& ic, Index n, double t, double tol);

[[nodiscard]] Window serial_window(const InitialCondition& ic, Index lo, Index len, double t, double tol);

/// Windows [lo, lo + len) at each time; times must be nonnegative, increasing.
[[nodiscard]] Trajectory serial_trajectory(const InitialCondition& ic, Index lo, Index len,
                                           const std::vector<double>& times, double tol);

/// Exact l-infinity induced norm of (U - I) e^{(U - I) t}.
///
/// The convolution kernel of (U - I) e^{(U - I)t} has coefficients -e^{-t}
/// at lag 0 and e^{-t} psi(k, t) at lag k + 1, psi(k, t) = t^k/k! - t^{k+1}/(k+1)!,
/// so its induced norm on bounded sequences is the kernel's l1 sum.
/// The psi sums are stored scaled by e^{-t} to stay finite at large t.
struct KernelDecomposition {
    double t = 0.0;
    Index mode_k0 = 0;
    double scaled_psi_l1 = 0.0;         // e^{-t} sum_k |psi(k,t)|, summed term by term
    double scaled_psi_l1_closed = 0.0;  // e^{-t} (2 t^{k0} / k0! - 1)
    double norm_value = 0.0;            // e^{-t} (1 + sum_k |psi(k,t)|) = 2 e^{-t} t^{k0} / k0!
    bool forms_agree = false;           // direct vs closed form within 1e-10 relative
};

/// Throws std::invalid_argument when t < 0.
[[nodiscard]] KernelDecomposition derivative_norm(double t);

/// coeffs[m + M_cut] = e^{-2t} I_m(2t) for |m| <= M_cut.
struct HeatKernel {
    double t = 0.0;
    Index M_cut = 0;
    std::vector<double> coeffs;
    double tail_bound = 0.0;  // >= mass not represented in coeffs

    [[nodiscard]] double at(Index m) const noexcept;
    [[nodiscard]] double mass() const noexcept;
};

/// Uniformized heat kernel with tail_bound <= tol.
/// Throws std::invalid_argument when t < 0 or tol <= 0.
[[nodiscard]] HeatKernel heat_kernel(double t, double tol);

/// Single coefficient e^{-2t} I_m(2t) as sum_j Pois(2t)_j Binom(j, 1/2)_{(j+m)/2}.
[[nodiscard]] double heat_coefficient(Index m, double t, double tol);

/// e^{-x} I_0(x) = heat_coefficient(0, x / 2).
[[nodiscard]] double scaled_bessel_i0(double x, double tol = 1e-16);

/// p_n(t) for the symmetric chain, remainder <= tol * ic.sup_bound().
[[nodiscard]] Scalar symmetric_state(const InitialCondition& ic, Index n, double t, double tol);

[[nodiscard]] Window symmetric_window(const InitialCondition& ic, Index lo, Index len, double t, double tol);

[[nodiscard]] Trajectory symmetric_trajectory(const InitialCondition& ic, Index lo, Index len,
                                              const std::vector<double>& times, double tol);

/// ((1/2pi) e^{-4t} I_0(4t))^{1/2} * P0_l2, an upper bound on ||p(t)||_inf
/// when P0_l2 = sqrt(2 pi) ||p(0)||_2 (unnormalized transform norm).
/// Throws std::invalid_argument for negative arguments.
[[nodiscard]] double bessel_bound(double t, double P0_l2);

enum class RangeVerdict { BoundedSoFar, Growing };

/// Finite-window heuristic for y in Im(U - I): are the forward partial sums
/// s_n(K) = sum_{k=0..K} y_{n-k} bounded? Never claims membership.
struct RangeReport {
    Index lo = 0;
    Index len = 0;
    Index K = 0;
    std::vector<double> max_partial;  // running max over n and K' <= K, per K'
    double overall_max = 0.0;
    double growth_slope = 0.0;  // log-log slope of max_partial vs K'+1
    RangeVerdict verdict = RangeVerdict::BoundedSoFar;
};

/// Throws std::invalid_argument when K < 1 or len < 1.
[[nodiscard]] RangeReport range_membership(const InitialCondition& ic, Index lo, Index K, Index len = 16);

[[nodiscard]] std::string to_string(RangeVerdict v);

/// Limit propagation along the chain: cars n0, n0+1, n0+2 over the second
/// half of the time grid.
struct PropagationReport {
    Index n0 = 0;
    std::vector<Scalar> limit_estimates;  // value at the last time, per car
    std::vector<double> tail_variation;   // max_t |q(t) - q(t_last)| over the tail
    bool n0_convergent = false;
    bool limits_agree = false;  // meaningful when n0_convergent
    double tol = 0.0;
};

/// Throws std::invalid_argument unless t_grid is increasing with max >= 100.
[[nodiscard]] PropagationReport propagation_check(const InitialCondition& ic, Index n0,
                                                  const std::vector<double>& t_grid, double tol = 1e-6,
                                                  double series_tol = 1e-13);

}  // namespace chainlab
