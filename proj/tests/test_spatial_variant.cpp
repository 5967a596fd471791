#include <cmath>
#include <random>

#include "chainlab/spatial_variant.hpp"
#include "doctest.h"

using namespace chainlab;

namespace {

// p(t) = e^{-at} sum_j t^j/j! B^j delta on [0, 2^K), B applied to dense vectors.
// Every B^j delta with j >= K covers the whole window, so those terms are
// added as one tail sum.
std::vector<long double> dense_impulse(double a, double t, int K) {
    const std::size_t size = std::size_t{1} << K;
    std::vector<long double> v(size, 0.0L), p(size, 0.0L);
    v[0] = 1.0L;
    long double c = 1.0L;  // t^j / j!
    for (int j = 0; j < K; ++j) {
        for (std::size_t i = 0; i < size; ++i) p[i] += c * v[i];
        for (std::size_t i = size; i-- > 0;) v[i] = v[i / 2];
        c *= t / (j + 1);
    }
    long double tail = 0.0L;
    for (int j = K; j < K + 400; ++j) {
        tail += c;
        c *= t / (j + 1);
    }
    const long double scale = std::exp(-static_cast<long double>(a) * t);
    for (std::size_t i = 0; i < size; ++i) p[i] = scale * (p[i] + tail * v[i]);
    return p;
}

}  // namespace

TEST_SUITE("spatial_variant") {

TEST_CASE("B duplicates entries") {
    const auto y = apply_B(Window{0, {Scalar{1.0}}});
    CHECK(y.lo == 0);
    REQUIRE(y.size() == 2);
    CHECK(y.values[0] == Scalar{1.0});
    CHECK(y.values[1] == Scalar{1.0});
    const auto z = apply_B(Window{3, {1.0, 2.0}});
    CHECK(z.lo == 6);
    CHECK(z.at(6) == Scalar{1.0});
    CHECK(z.at(7) == Scalar{1.0});
    CHECK(z.at(8) == Scalar{2.0});
    CHECK(z.at(9) == Scalar{2.0});
    CHECK_THROWS_AS((void)apply_B(Window{-1, {1.0}}), std::invalid_argument);
}

TEST_CASE("B preserves the sup norm and scales the 2-norm by sqrt 2") {
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    std::uniform_int_distribution<int> len(1, 300), lo(0, 1000);
    for (int trial = 0; trial < 200; ++trial) {
        Window w{lo(rng), {}};
        const int n = len(rng);
        for (int i = 0; i < n; ++i) w.values.emplace_back(u(rng), u(rng));
        const auto y = apply_B(w);
        CHECK(norm_inf(y) == norm_inf(w));
        CHECK(std::abs(norm_2(y) / norm_2(w) - std::sqrt(2.0)) < 1e-12);
    }
}

TEST_CASE("power norms") {
    const auto l2 = power_norm_estimate(NormSpace::L2, 16);
    const auto linf = power_norm_estimate(NormSpace::Linf, 16);
    REQUIRE(l2.size() == 16);
    for (std::size_t j = 0; j < 16; ++j) {
        CHECK(std::abs(l2[j] - std::sqrt(2.0)) < 1e-12);
        CHECK(linf[j] == 1.0);
    }
    CHECK_THROWS_AS((void)power_norm_estimate(NormSpace::L2, 0), std::invalid_argument);
    CHECK(parse_norm_space("linf") == NormSpace::Linf);
    CHECK_THROWS_AS((void)parse_norm_space("l1"), std::invalid_argument);
}

TEST_CASE("impulse response at t = 0 is the impulse") {
    const auto r = impulse_response(1.2, 0.0);
    CHECK(r.linf == 1.0);
    CHECK(r.l2 == 1.0);
    CHECK(r.profile.at(0) == 1.0);
    CHECK(r.profile.at(1) == 0.0);
}

TEST_CASE("sup norm has the closed form e^{(1-a)t}") {
    for (double a : {0.5, 1.2, 2.0})
        for (double t : {0.1, 1.0, 10.0, 40.0, 200.0})
            CHECK(std::abs(impulse_response(a, t).linf / std::exp((1.0 - a) * t) - 1.0) < 1e-12);
    CHECK_THROWS_AS((void)impulse_response(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)impulse_response(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("level profile structure and mass identity") {
    for (double t : {0.5, 3.0, 20.0, 60.0}) {
        const auto prof = impulse_response(1.2, t).profile;
        REQUIRE(prof.levels.size() >= 2);
        CHECK(prof.levels[0].index_count == 1.0);
        CHECK(prof.levels[0].tail_sum == doctest::Approx(std::exp(t)).epsilon(1e-13));
        for (std::size_t L = 1; L < prof.levels.size(); ++L) {
            if (t <= 20.0) CHECK(prof.levels[L].tail_sum < prof.levels[L - 1].tail_sum);
            else CHECK(prof.levels[L].tail_sum <= prof.levels[L - 1].tail_sum);
            CHECK(prof.levels[L].index_count == std::ldexp(1.0, static_cast<int>(L) - 1));
        }
        CHECK(std::abs(prof.scaled_mass() - 1.0) < 1e-12);
    }
}

TEST_CASE("dense oracle: full agreement for small t") {
    const int K = 21;
    for (double t : {0.5, 1.0, 2.0}) {
        const auto p = dense_impulse(1.2, t, K);
        const auto r = impulse_response(1.2, t);
        long double sq = 0.0L;
        double worst = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            sq += p[i] * p[i];
            const double ref = static_cast<double>(p[i]);
            worst = std::max(worst, std::abs(r.profile.at(static_cast<Index>(i)) - ref) / r.linf);
        }
        CHECK(worst < 1e-12);
        CHECK(std::abs(r.l2 / static_cast<double>(std::sqrt(sq)) - 1.0) < 1e-9);
    }
}

TEST_CASE("dense oracle: windowed agreement up to t = 6") {
    const int K = 20;
    for (double t : {4.0, 6.0}) {
        const auto p = dense_impulse(1.2, t, K);
        const auto r = impulse_response(1.2, t);
        long double sq_ref = 0.0L, sq = 0.0L;
        double worst = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            const double v = r.profile.at(static_cast<Index>(i));
            sq_ref += p[i] * p[i];
            sq += static_cast<long double>(v) * v;
            worst = std::max(worst, std::abs(v - static_cast<double>(p[i])) / r.linf);
        }
        CHECK(worst < 1e-12);
        CHECK(std::abs(static_cast<double>(std::sqrt(sq / sq_ref)) - 1.0) < 1e-9);
        CHECK(r.l2 >= static_cast<double>(std::sqrt(sq_ref)) * (1.0 - 1e-12));
    }
}

TEST_CASE("stability verdicts") {
    std::vector<double> grid;
    for (int i = 0; i <= 40; ++i) grid.push_back(i);
    const auto mid = stability_report(1.2, grid);
    CHECK(mid.linf_stable);
    CHECK(mid.l2_unstable);
    CHECK_FALSE(mid.l2_stable);
    const auto strong = stability_report(2.0, grid);
    CHECK(strong.linf_stable);
    CHECK(strong.l2_stable);
    CHECK_FALSE(strong.l2_unstable);
    const auto weak = stability_report(0.5, grid);
    CHECK_FALSE(weak.linf_stable);
    CHECK_FALSE(weak.l2_stable);
    CHECK(impulse_response(1.2, 20.0).l2 > 10.0);
    CHECK_THROWS_AS((void)stability_report(1.2, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS((void)stability_report(1.2, {1.0, 1.0}), std::invalid_argument);
    const auto csv = stability_csv(mid);
    CHECK(csv.rfind("t,linf,l2,linf_decayed,l2_exceeded\n0,1,1,0,0\n", 0) == 0);
}

}
