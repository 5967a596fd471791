#include "chainlab/spatial_variant.hpp"

#include <bit>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "chainlab/special.hpp"
#include "chainlab/text_io.hpp"

namespace chainlab {

Window apply_B(const Window& w) {
    if (w.lo < 0) throw std::invalid_argument("apply_B: window must lie on non-negative indices");
    Window out{2 * w.lo, std::vector<Scalar>(2 * w.values.size())};
    for (std::size_t n = 0; n < w.values.size(); ++n) out.values[2 * n] = out.values[2 * n + 1] = w.values[n];
    return out;
}

std::string to_string(NormSpace s) { return s == NormSpace::L2 ? "l2" : "linf"; }

NormSpace parse_norm_space(const std::string& name) {
    if (name == "l2") return NormSpace::L2;
    if (name == "linf") return NormSpace::Linf;
    throw std::invalid_argument("unknown norm space '" + name + "' (l2, linf)");
}

std::vector<double> power_norm_estimate(NormSpace space, int j_max) {
    if (j_max < 1 || j_max > 20) throw std::invalid_argument("power_norm_estimate: j_max must be in [1, 20]");
    std::vector<double> out;
    Window w{0, {Scalar{1.0}}};
    for (int j = 1; j <= j_max; ++j) {
        w = apply_B(w);
        const double ratio = space == NormSpace::L2 ? norm_2(w) : norm_inf(w);
        out.push_back(std::pow(ratio, 1.0 / j));
    }
    return out;
}

double LevelProfile::scaled_mass() const {
    double s = 0.0;
    for (const auto& lv : levels) s += std::exp(std::log(lv.index_count) + lv.log_tail - 2.0 * t);
    return s;
}

double LevelProfile::at(Index i) const {
    if (i < 0) return 0.0;
    const auto L = static_cast<std::size_t>(std::bit_width(static_cast<std::uint64_t>(i)));
    if (L >= levels.size()) return 0.0;
    return std::exp(levels[L].log_tail - a * t);
}

ImpulseResponse impulse_response(double a, double t, double tol) {
    if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("impulse_response: a must be > 0");
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("impulse_response: t must be >= 0");
    if (!(tol > 0.0)) throw std::invalid_argument("impulse_response: tol must be > 0");

    ImpulseResponse r;
    r.profile.t = t;
    r.profile.a = a;
    if (t == 0.0) {
        r.profile.levels.push_back({0, 1.0, 0.0, 1.0});
    } else {
        // log of the Poisson(t) upper tail Q_L, accumulated from the far end
        const auto J = static_cast<Index>(std::ceil(4.0 * t + 60.0 + 10.0 * std::sqrt(t)));
        std::vector<double> logQ(static_cast<std::size_t>(J) + 1);
        double acc = -std::numeric_limits<double>::infinity();
        for (Index L = J; L >= 0; --L) {
            const double lp = special::log_poisson_pmf(L, t);
            const double hi = std::max(acc, lp), lo = std::min(acc, lp);
            acc = std::isinf(hi) ? hi : hi + std::log1p(std::exp(lo - hi));
            logQ[static_cast<std::size_t>(L)] = acc;
        }
        const double log_tol = std::log(tol);
        for (Index L = 0; L <= J; ++L) {
            const double lq = logQ[static_cast<std::size_t>(L)];
            if (std::isinf(lq)) break;
            const double count = L == 0 ? 1.0 : std::ldexp(1.0, static_cast<int>(L - 1));
            if (lq < log_tol && static_cast<double>(L) >= 4.0 * t && std::log(count) + lq - t < log_tol) break;
            r.profile.levels.push_back({static_cast<int>(L), std::exp(t + lq), t + lq, count});
        }
    }

    double sq = 0.0;
    for (const auto& lv : r.profile.levels)
        sq += std::exp(2.0 * (lv.log_tail - a * t) + std::log(lv.index_count));
    r.linf = std::exp(r.profile.levels.front().log_tail - a * t);
    r.l2 = std::sqrt(sq);
    return r;
}

StabilityReport stability_report(double a, const std::vector<double>& t_grid, double tol) {
    if (t_grid.size() < 2) throw std::invalid_argument("stability_report: need at least 2 times");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1])) throw std::invalid_argument("stability_report: times must be increasing");

    StabilityReport rep;
    rep.a = a;
    for (double t : t_grid) {
        const auto ir = impulse_response(a, t, tol);
        rep.rows.push_back({t, ir.linf, ir.l2});
    }
    const auto& first = rep.rows.front();
    const auto& last = rep.rows.back();
    bool decreasing = true;
    double l2_max = 0.0;
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        if (i && !(rep.rows[i].linf < rep.rows[i - 1].linf)) decreasing = false;
        l2_max = std::max(l2_max, rep.rows[i].l2);
    }
    rep.linf_stable = decreasing && last.linf < 1e-3 * first.linf;
    rep.l2_unstable = l2_max > 10.0 * first.l2;
    rep.l2_stable = last.l2 < 1e-3 * first.l2;
    return rep;
}

std::string stability_csv(const StabilityReport& r) {
    CsvWriter csv({"t", "linf", "l2", "linf_decayed", "l2_exceeded"});
    const auto& first = r.rows.front();
    for (const auto& row : r.rows)
        csv.row({format_double(row.t), format_double(row.linf), format_double(row.l2),
                 row.linf < 1e-3 * first.linf ? "1" : "0", row.l2 > 10.0 * first.l2 ? "1" : "0"});
    return csv.str();
}

}  // namespace chainlab
