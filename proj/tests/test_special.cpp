#include <cmath>
#include <initializer_list>
#include <numbers>

#include "chainlab/special.hpp"
#include "doctest.h"

using namespace chainlab;

namespace {

long double pmf_product(int k, long double t) {
    long double v = std::exp(-t);
    for (int i = 1; i <= k; ++i) v *= t / i;
    return v;
}

long double choose(int n, int k) {
    long double c = 1;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

}  // namespace

TEST_SUITE("special") {

TEST_CASE("poisson pmf against a long double product") {
    for (double t : {0.1, 1.0, 7.5, 30.0, 50.0})
        for (int k = 0; k <= 120; ++k) {
            const long double ref = pmf_product(k, t);
            if (ref < 1e-300L) continue;
            // exponentiating a log of size |ln p| costs about |ln p| ulps
            const double allowed = 1e-15 * (8.0 + std::abs(static_cast<double>(std::log(ref))));
            CHECK(std::abs(special::poisson_pmf(k, t) / static_cast<double>(ref) - 1.0) < allowed);
        }
}

TEST_CASE("poisson pmf at large t against long double lgamma") {
    for (double t : {1e3, 1e4, 1e5})
        for (double f : {-3.0, -1.0, 0.0, 0.5, 2.0}) {
            const auto k = static_cast<std::int64_t>(t + f * std::sqrt(t));
            const long double lt = t;
            const long double ref = std::exp(k * std::log(lt) - lt - std::lgamma(static_cast<long double>(k) + 1));
            CHECK(std::abs(special::poisson_pmf(k, t) / static_cast<double>(ref) - 1.0) < 1e-12);
        }
}

TEST_CASE("poisson pmf edge cases") {
    CHECK(special::poisson_pmf(0, 0.0) == 1.0);
    CHECK(special::poisson_pmf(3, 0.0) == 0.0);
    CHECK(special::poisson_pmf(-1, 2.0) == 0.0);
    double s = 0.0;
    for (int k = 0; k < 200; ++k) s += special::poisson_pmf(k, 40.0);
    CHECK(std::abs(s - 1.0) < 1e-14);
}

TEST_CASE("stirling remainder") {
    const long double half_log_2pi = 0.5L * std::log(2.0L * std::numbers::pi_v<long double>);
    for (int n = 16; n <= 2000; n += 37) {
        const long double ln = n;
        const long double ref = std::lgamma(ln + 1) - (ln + 0.5L) * std::log(ln) + ln - half_log_2pi;
        CHECK(std::abs(special::stirlerr(n) - static_cast<double>(ref)) < 4e-15);
        // Stirling series through the n^{-15} term
        const long double c[] = {1.0L / 12,   -1.0L / 360,          1.0L / 1260, -1.0L / 1680,
                                 1.0L / 1188, -691.0L / 360360,     1.0L / 156,  -3617.0L / 122400};
        const long double r2 = 1.0L / (ln * ln);
        long double series = 0.0L;
        for (int i = 7; i >= 0; --i) series = series * r2 + c[i];
        series /= ln;
        CHECK(std::abs(special::stirlerr(n) - static_cast<double>(series)) < 2e-16);
    }
    CHECK(special::stirlerr(1.0) == doctest::Approx(0.0810614667953272582).epsilon(1e-14));
}

TEST_CASE("binomial pmf against exact small binomials") {
    for (int n = 1; n <= 60; ++n) {
        double total = 0.0;
        for (int k = 0; k <= n; ++k) {
            const double ref = static_cast<double>(choose(n, k) / std::pow(2.0L, n));
            const double v = special::binomial_pmf(k, n, 0.5);
            CHECK(std::abs(v / ref - 1.0) < 1e-13);
            total += v;
        }
        CHECK(std::abs(total - 1.0) < 1e-14);
    }
    CHECK(special::binomial_pmf(-1, 5, 0.5) == 0.0);
    CHECK(special::binomial_pmf(6, 5, 0.5) == 0.0);
    CHECK(special::binomial_pmf(3, 10, 0.3) == doctest::Approx(120 * std::pow(0.3, 3) * std::pow(0.7, 7)));
}

TEST_CASE("bd0 is the deviance term") {
    for (double x : {1.0, 10.0, 99.0, 1e4})
        for (double np : {2.0, 50.0, 1e4 + 3}) {
            const long double ref = x * std::log(static_cast<long double>(x) / np) + np - x;
            CHECK(std::abs(special::bd0(x, np) - static_cast<double>(ref)) <= 1e-12 * (1.0 + std::abs(static_cast<double>(ref))));
        }
}

}
