#pragma once

// Log-space Poisson and binomial probabilities via Loader's saddle-point
// expansion. Accurate to a few ulps even where k ln t and ln k! are both
// huge and nearly cancel.

#include <cstdint>

namespace chainlab::special {

/// ln(k!) - [(k + 1/2) ln k - k + ln sqrt(2 pi)], the Stirling remainder.
[[nodiscard]] double stirlerr(double k);

/// x ln(x / np) + np - x, evaluated without cancellation.
[[nodiscard]] double bd0(double x, double np);

/// ln(e^{-t} t^k / k!) for k >= 0, t >= 0 (-inf where the pmf is 0).
[[nodiscard]] double log_poisson_pmf(std::int64_t k, double t);
[[nodiscard]] double poisson_pmf(std::int64_t k, double t);

/// C(n, k) p^k (1 - p)^{n - k}.
[[nodiscard]] double binomial_pmf(std::int64_t k, std::int64_t n, double p);

}  // namespace chainlab::special
