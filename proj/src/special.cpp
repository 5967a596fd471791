#include "chainlab/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace chainlab::special {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

double stirlerr(double k) {
    constexpr double S0 = 1.0 / 12.0;
    constexpr double S1 = 1.0 / 360.0;
    constexpr double S2 = 1.0 / 1260.0;
    constexpr double S3 = 1.0 / 1680.0;
    constexpr double S4 = 1.0 / 1188.0;
    if (k <= 15.0) {
        if (k == 0.0) return 0.0;
        return std::lgamma(k + 1.0) - (k + 0.5) * std::log(k) + k - 0.5 * std::log(two_pi);
    }
    const double k2 = 1.0 / (k * k);
    if (k > 500) return (S0 - S1 * k2) / k;
    if (k > 80) return (S0 - (S1 - S2 * k2) * k2) / k;
    if (k > 35) return (S0 - (S1 - (S2 - S3 * k2) * k2) * k2) / k;
    return (S0 - (S1 - (S2 - (S3 - S4 * k2) * k2) * k2) * k2) / k;
}

double bd0(double x, double np) {
    if (std::fabs(x - np) < 0.1 * (x + np)) {
        double v = (x - np) / (x + np);
        double s = (x - np) * v;
        double ej = 2 * x * v;
        v *= v;
        for (int j = 1; j < 1000; ++j) {
            ej *= v;
            double s1 = s + ej / (2 * j + 1);
            if (s1 == s) return s1;
            s = s1;
        }
        return s;
    }
    return x * std::log(x / np) + np - x;
}

double log_poisson_pmf(std::int64_t k, double t) {
    if (k < 0) return -std::numeric_limits<double>::infinity();
    if (t == 0.0) return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    if (k == 0) return -t;
    const auto x = static_cast<double>(k);
    return -stirlerr(x) - bd0(x, t) - 0.5 * std::log(two_pi * x);
}

double poisson_pmf(std::int64_t k, double t) { return std::exp(log_poisson_pmf(k, t)); }

double binomial_pmf(std::int64_t k, std::int64_t n, double p) {
    if (k < 0 || k > n) return 0.0;
    if (p == 0.0) return k == 0 ? 1.0 : 0.0;
    if (p == 1.0) return k == n ? 1.0 : 0.0;
    const auto x = static_cast<double>(k);
    const auto N = static_cast<double>(n);
    if (k == 0) return std::exp(N * std::log1p(-p));
    if (k == n) return std::exp(N * std::log(p));
    double lc = stirlerr(N) - stirlerr(x) - stirlerr(N - x) - bd0(x, N * p) - bd0(N - x, N * (1 - p));
    return std::exp(lc) * std::sqrt(N / (two_pi * x * (N - x)));
}

}  // namespace chainlab::special
