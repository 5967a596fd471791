#include "chainlab/poisson_series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "chainlab/parallel.hpp"
#include "chainlab/special.hpp"

namespace chainlab {

namespace {

void require_time(double t, const char* who) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument(std::string(who) + ": t must be finite and >= 0");
}

void require_tol(double tol, const char* who) {
    if (!(tol > 0.0)) throw std::invalid_argument(std::string(who) + ": tol must be > 0");
}

void require_times(const std::vector<double>& times, const char* who) {
    for (std::size_t i = 0; i < times.size(); ++i) {
        require_time(times[i], who);
        if (i && !(times[i] > times[i - 1])) throw std::invalid_argument(std::string(who) + ": times must increase");
    }
}

constexpr double inf = std::numeric_limits<double>::infinity();

// Bound on sum_{k > hi} w_k using w_{k+1}/w_k = t/(k+1) <= t/(hi+2).
double right_tail(double w_next, Index hi, double t) {
    if (w_next == 0.0) return 0.0;
    double ratio = t / static_cast<double>(hi + 2);
    return ratio < 1.0 ? w_next / (1.0 - ratio) : inf;
}

// Bound on sum_{k < lo} w_k using w_{k-1}/w_k = k/t <= (lo-1)/t.
double left_tail(double w_prev, Index lo, double t) {
    if (lo == 0 || w_prev == 0.0) return 0.0;
    double ratio = static_cast<double>(lo - 1) / t;
    return ratio < 1.0 ? w_prev / (1.0 - ratio) : inf;
}

}  // namespace

double poisson_weight(Index k, double t) {
    if (k < 0) throw std::invalid_argument("poisson_weight: k must be >= 0");
    require_time(t, "poisson_weight");
    return special::poisson_pmf(k, t);
}

Index poisson_mode(double t) {
    require_time(t, "poisson_mode");
    return static_cast<Index>(std::floor(t));
}

SeriesResult poisson_sum(double t, double tol, const std::function<Scalar(Index)>& f) {
    require_time(t, "poisson_sum");
    require_tol(tol, "poisson_sum");
    if (t == 0.0) return {f(0), 0, 0, 0.0};

    const Index k0 = poisson_mode(t);
    Index lo = k0, hi = k0;
    Scalar sum = special::poisson_pmf(k0, t) * f(k0);
    double w_next = special::poisson_pmf(hi + 1, t);
    double w_prev = lo > 0 ? special::poisson_pmf(lo - 1, t) : 0.0;
    while (true) {
        double rt = right_tail(w_next, hi, t);
        double lt = left_tail(w_prev, lo, t);
        if (rt + lt < tol) return {sum, lo, hi, rt + lt};
        if (rt >= lt) {
            ++hi;
            sum += w_next * f(hi);
            w_next = special::poisson_pmf(hi + 1, t);
        } else {
            --lo;
            sum += w_prev * f(lo);
            w_prev = lo > 0 ? special::poisson_pmf(lo - 1, t) : 0.0;
        }
    }
}

Scalar serial_state(const InitialCondition& ic, Index n, double t, double tol) {
    return poisson_sum(t, tol, [&ic, n](Index k) { return ic(n - k); }).value;
}

Window serial_window(const InitialCondition& ic, Index lo, Index len, double t, double tol) {
    if (len < 1) throw std::invalid_argument("serial_window: len must be >= 1");
    Window w{lo, std::vector<Scalar>(static_cast<std::size_t>(len))};
    for (Index i = 0; i < len; ++i) w.values[static_cast<std::size_t>(i)] = serial_state(ic, lo + i, t, tol);
    return w;
}

Trajectory serial_trajectory(const InitialCondition& ic, Index lo, Index len, const std::vector<double>& times,
                             double tol) {
    require_times(times, "serial_trajectory");
    std::vector<Window> states(times.size());
    parallel_for(times.size(), [&](std::size_t i) { states[i] = serial_window(ic, lo, len, times[i], tol); });
    return make_trajectory(times, std::move(states));
}

KernelDecomposition derivative_norm(double t) {
    require_time(t, "derivative_norm");
    KernelDecomposition d;
    d.t = t;
    d.mode_k0 = poisson_mode(t);
    const double w0 = special::poisson_pmf(d.mode_k0, t);
    d.scaled_psi_l1_closed = 2.0 * w0 - std::exp(-t);

    // e^{-t} psi(k, t) = w_k - w_{k+1}; past the mode the terms telescope,
    // so the tail beyond k is exactly w_{k+1}.
    double direct = 0.0;
    double w = special::poisson_pmf(0, t);
    for (Index k = 0;; ++k) {
        double w_next = special::poisson_pmf(k + 1, t);
        direct += std::abs(w - w_next);
        if (k > d.mode_k0 && w_next < 1e-14 * direct) break;
        w = w_next;
    }
    d.scaled_psi_l1 = direct;
    d.norm_value = std::exp(-t) + direct;
    double closed_norm = 2.0 * w0;
    d.forms_agree = std::abs(d.norm_value - closed_norm) <= 1e-10 * closed_norm;
    return d;
}

double HeatKernel::at(Index m) const noexcept {
    if (m < -M_cut || m > M_cut) return 0.0;
    return coeffs[static_cast<std::size_t>(m + M_cut)];
}

double HeatKernel::mass() const noexcept {
    double s = 0.0;
    for (double c : coeffs) s += c;
    return s;
}

namespace {

// Smallest J with Pois(lambda) mass beyond J bounded by tol; returns the bound.
std::pair<Index, double> poisson_cutoff(double lambda, double tol) {
    if (lambda == 0.0) return {0, 0.0};
    Index J = std::max<Index>(poisson_mode(lambda), 0);
    while (true) {
        double bound = right_tail(special::poisson_pmf(J + 1, lambda), J, lambda);
        if (bound < tol) return {J, bound};
        ++J;
    }
}

}  // namespace

HeatKernel heat_kernel(double t, double tol) {
    require_time(t, "heat_kernel");
    require_tol(tol, "heat_kernel");
    const double lambda = 2.0 * t;
    auto [J, tail] = poisson_cutoff(lambda, tol);

    HeatKernel hk;
    hk.t = t;
    hk.M_cut = J;
    hk.tail_bound = tail;
    const auto width = static_cast<std::size_t>(2 * J + 1);
    hk.coeffs.assign(width, 0.0);

    // walk[m + c] = Pr(j-step symmetric walk ends at m), one guard cell each side
    std::vector<double> walk(width + 2, 0.0), next(width + 2, 0.0);
    const Index c = J + 1;
    auto cell = [c](std::vector<double>& v, Index m) -> double& { return v[static_cast<std::size_t>(c + m)]; };
    cell(walk, 0) = 1.0;
    for (Index j = 0; j <= J; ++j) {
        const double wj = special::poisson_pmf(j, lambda);
        if (wj != 0.0)
            for (Index m = -j; m <= j; m += 2) hk.coeffs[static_cast<std::size_t>(m + J)] += wj * cell(walk, m);
        if (j == J) break;
        for (Index m = -(j + 1); m <= j + 1; m += 2) cell(next, m) = 0.5 * (cell(walk, m - 1) + cell(walk, m + 1));
        for (Index m = -j; m <= j; m += 2) cell(walk, m) = 0.0;
        std::swap(walk, next);
    }
    return hk;
}

double heat_coefficient(Index m, double t, double tol) {
    require_time(t, "heat_coefficient");
    require_tol(tol, "heat_coefficient");
    const double lambda = 2.0 * t;
    const Index am = m < 0 ? -m : m;
    if (lambda == 0.0) return am == 0 ? 1.0 : 0.0;
    auto [J, tail] = poisson_cutoff(lambda, tol);
    (void)tail;
    double s = 0.0;
    for (Index j = am; j <= J; j += 2) s += special::poisson_pmf(j, lambda) * special::binomial_pmf((j + am) / 2, j, 0.5);
    return s;
}

double scaled_bessel_i0(double x, double tol) {
    if (!(x >= 0.0)) throw std::invalid_argument("scaled_bessel_i0: x must be >= 0");
    return heat_coefficient(0, 0.5 * x, tol);
}

namespace {

Window convolve_heat(const InitialCondition& ic, Index lo, Index len, const HeatKernel& hk) {
    const Index J = hk.M_cut;
    std::vector<Scalar> src(static_cast<std::size_t>(len + 2 * J));
    for (Index i = 0; i < len + 2 * J; ++i) src[static_cast<std::size_t>(i)] = ic(lo - J + i);
    Window w{lo, std::vector<Scalar>(static_cast<std::size_t>(len))};
    for (Index i = 0; i < len; ++i) {
        Scalar s{};
        // p_n = sum_d c_d x_{n-d}; x_{n-d} sits at src[i + J - d]
        for (Index d = -J; d <= J; ++d)
            s += hk.coeffs[static_cast<std::size_t>(d + J)] * src[static_cast<std::size_t>(i + J - d)];
        w.values[static_cast<std::size_t>(i)] = s;
    }
    return w;
}

}  // namespace

Scalar symmetric_state(const InitialCondition& ic, Index n, double t, double tol) {
    return symmetric_window(ic, n, 1, t, tol).values.front();
}

Window symmetric_window(const InitialCondition& ic, Index lo, Index len, double t, double tol) {
    if (len < 1) throw std::invalid_argument("symmetric_window: len must be >= 1");
    return convolve_heat(ic, lo, len, heat_kernel(t, tol));
}

Trajectory symmetric_trajectory(const InitialCondition& ic, Index lo, Index len, const std::vector<double>& times,
                                double tol) {
    require_times(times, "symmetric_trajectory");
    std::vector<Window> states(times.size());
    parallel_for(times.size(), [&](std::size_t i) { states[i] = symmetric_window(ic, lo, len, times[i], tol); });
    return make_trajectory(times, std::move(states));
}

double bessel_bound(double t, double P0_l2) {
    require_time(t, "bessel_bound");
    if (!(P0_l2 >= 0.0)) throw std::invalid_argument("bessel_bound: P0_l2 must be >= 0");
    return std::sqrt(scaled_bessel_i0(4.0 * t) / (2.0 * std::numbers::pi)) * P0_l2;
}

RangeReport range_membership(const InitialCondition& ic, Index lo, Index K, Index len) {
    if (K < 1) throw std::invalid_argument("range_membership: K must be >= 1");
    if (len < 1) throw std::invalid_argument("range_membership: len must be >= 1");
    RangeReport r{lo, len, K, {}, 0.0, 0.0, RangeVerdict::BoundedSoFar};

    std::vector<Scalar> partial(static_cast<std::size_t>(len));
    double running = 0.0;
    for (Index k = 0; k <= K; ++k) {
        for (Index i = 0; i < len; ++i) {
            auto& s = partial[static_cast<std::size_t>(i)];
            s += ic(lo + i - k);
            running = std::max(running, std::abs(s));
        }
        r.max_partial.push_back(running);
    }
    r.overall_max = running;

    std::vector<double> xs, ys;
    auto add_point = [&](Index k) {
        double v = r.max_partial[static_cast<std::size_t>(k)];
        if (v > 0.0) {
            xs.push_back(std::log(static_cast<double>(k + 1)));
            ys.push_back(std::log(v));
        }
    };
    const Index start = std::max<Index>(1, K / 64);
    for (Index k = start; k < K; k *= 2) add_point(k);
    add_point(K);
    if (xs.size() >= 2) {
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            mx += xs[i];
            my += ys[i];
        }
        mx /= static_cast<double>(xs.size());
        my /= static_cast<double>(xs.size());
        double sxy = 0, sxx = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxy += (xs[i] - mx) * (ys[i] - my);
            sxx += (xs[i] - mx) * (xs[i] - mx);
        }
        r.growth_slope = sxy / sxx;
    }
    r.verdict = r.growth_slope > 0.1 ? RangeVerdict::Growing : RangeVerdict::BoundedSoFar;
    return r;
}

std::string to_string(RangeVerdict v) { return v == RangeVerdict::Growing ? "growing" : "bounded-so-far"; }

PropagationReport propagation_check(const InitialCondition& ic, Index n0, const std::vector<double>& t_grid,
                                    double tol, double series_tol) {
    if (t_grid.empty()) throw std::invalid_argument("propagation_check: empty time grid");
    require_times(t_grid, "propagation_check");
    if (t_grid.back() < 100.0) throw std::invalid_argument("propagation_check: time grid must reach t >= 100");
    require_tol(tol, "propagation_check");

    PropagationReport r;
    r.n0 = n0;
    r.tol = tol;
    const std::size_t first = t_grid.size() / 2;
    for (Index n = n0; n <= n0 + 2; ++n) {
        Scalar last = serial_state(ic, n, t_grid.back(), series_tol);
        double var = 0.0;
        for (std::size_t i = first; i + 1 < t_grid.size(); ++i)
            var = std::max(var, std::abs(serial_state(ic, n, t_grid[i], series_tol) - last));
        r.limit_estimates.push_back(last);
        r.tail_variation.push_back(var);
    }
    r.n0_convergent = r.tail_variation.front() < tol;
    double spread = 0.0;
    for (const auto& a : r.limit_estimates)
        for (const auto& b : r.limit_estimates) spread = std::max(spread, std::abs(a - b));
    r.limits_agree = r.n0_convergent && spread < 10.0 * tol;
    return r;
}

}  // namespace chainlab
