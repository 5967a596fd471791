#include "chainlab/laurent_operator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "chainlab/text_io.hpp"

namespace chainlab {

LaurentOperator::LaurentOperator(const std::map<Lag, double>& coeffs) {
    for (const auto& [k, a] : coeffs) {
        if (!std::isfinite(a)) throw std::invalid_argument("LaurentOperator: non-finite coefficient");
        if (a != 0.0) coeffs_[k] = a;
    }
}

LaurentOperator LaurentOperator::shift(Lag k, double coeff) { return LaurentOperator({{k, coeff}}); }

LaurentOperator LaurentOperator::serial_pursuit() { return LaurentOperator({{1, 1.0}, {0, -1.0}}); }

LaurentOperator LaurentOperator::symmetric_chain() {
    return LaurentOperator({{1, 1.0}, {-1, 1.0}, {0, -2.0}});
}

double LaurentOperator::coeff(Lag k) const {
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? 0.0 : it->second;
}

LaurentOperator::Lag LaurentOperator::min_lag() const noexcept {
    return coeffs_.empty() ? 0 : coeffs_.begin()->first;
}

LaurentOperator::Lag LaurentOperator::max_lag() const noexcept {
    return coeffs_.empty() ? 0 : coeffs_.rbegin()->first;
}

double LaurentOperator::coefficient_sum() const noexcept {
    double s = 0.0;
    for (const auto& [k, a] : coeffs_) s += a;
    return s;
}

LaurentOperator operator+(const LaurentOperator& p, const LaurentOperator& q) {
    auto c = p.coeffs_;
    for (const auto& [k, a] : q.coeffs_) c[k] += a;
    return LaurentOperator(c);
}

LaurentOperator operator-(const LaurentOperator& p, const LaurentOperator& q) { return p + (-1.0) * q; }

LaurentOperator operator*(double s, const LaurentOperator& p) {
    auto c = p.coeffs_;
    for (auto& [k, a] : c) a *= s;
    return LaurentOperator(c);
}

LaurentOperator compose(const LaurentOperator& p, const LaurentOperator& q) {
    std::map<LaurentOperator::Lag, double> c;
    for (const auto& [i, a] : p.coeffs_)
        for (const auto& [j, b] : q.coeffs_) c[i + j] += a * b;
    return LaurentOperator(c);
}

LaurentOperator parse_operator(const std::string& literal) {
    std::map<LaurentOperator::Lag, double> c;
    if (trim(literal).empty()) throw std::invalid_argument("operator literal is empty");
    for (const auto& pair : split(literal, ',')) {
        auto colon = pair.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("operator literal: expected lag:coeff, got '" + pair + "'");
        auto lag = parse_int(std::string_view(pair).substr(0, colon));
        if (lag < -100000 || lag > 100000) throw std::invalid_argument("operator literal: lag out of range");
        const auto [it, fresh] = c.emplace(static_cast<LaurentOperator::Lag>(lag), 0.0);
        if (!fresh) throw std::invalid_argument("operator literal: duplicate lag " + std::to_string(lag));
        it->second = parse_double(std::string_view(pair).substr(colon + 1));
    }
    return LaurentOperator(c);
}

std::string format_operator(const LaurentOperator& op) {
    if (op.is_zero()) return "0:0";
    std::string out;
    for (auto it = op.coeffs().rbegin(); it != op.coeffs().rend(); ++it) {
        if (!out.empty()) out += ',';
        out += std::to_string(it->first) + ":" + format_double(it->second);
    }
    return out;
}

Scalar symbol(const LaurentOperator& op, double omega) {
    Scalar g{};
    for (const auto& [k, a] : op.coeffs()) {
        double phase = -omega * k;
        g += a * Scalar{std::cos(phase), std::sin(phase)};
    }
    return g;
}

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double re_symbol(const LaurentOperator& op, double omega) {
    double s = 0.0;
    for (const auto& [k, a] : op.coeffs()) s += a * std::cos(omega * k);
    return s;
}

// Maximizes Re G on [lo, hi] assuming a single local maximum there.
double refine_max(const LaurentOperator& op, double lo, double hi) {
    while (hi - lo > 1e-12) {
        double m1 = lo + (hi - lo) / 3.0;
        double m2 = hi - (hi - lo) / 3.0;
        if (re_symbol(op, m1) < re_symbol(op, m2))
            lo = m1;
        else
            hi = m2;
    }
    return re_symbol(op, 0.5 * (lo + hi));
}

double abscissa_from_grid(const LaurentOperator& op, int grid) {
    const double h = two_pi / grid;
    int best = 0;
    double best_val = re_symbol(op, 0.0);
    for (int i = 1; i < grid; ++i) {
        double v = re_symbol(op, i * h);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    // the symbol is 2pi-periodic, so the bracket may straddle 0
    double c = best * h;
    return std::max(best_val, refine_max(op, c - h, c + h));
}

}  // namespace

SpectrumCurve spectrum_curve(const LaurentOperator& op, int M) {
    if (M < 8) throw std::invalid_argument("spectrum_curve: M must be >= 8");
    SpectrumCurve curve;
    curve.samples.reserve(static_cast<std::size_t>(M) + 1);
    for (int i = 0; i <= M; ++i) {
        double omega = (i == M) ? two_pi : two_pi * i / M;
        curve.samples.push_back({omega, symbol(op, omega)});
    }
    curve.abscissa = spectral_abscissa(op);
    return curve;
}

double spectral_abscissa(const LaurentOperator& op) { return abscissa_from_grid(op, 4096); }

double l2_exp_norm(const LaurentOperator& op, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("l2_exp_norm: t must be >= 0");
    return std::exp(t * spectral_abscissa(op));
}

Window apply(const LaurentOperator& op, const Window& w) {
    const Index bw = op.bandwidth();
    if (w.size() <= bw) throw std::invalid_argument("apply: window shorter than operator bandwidth + 1");
    Window out{w.lo + op.max_lag(), {}};
    const Index len = w.size() - bw;
    out.values.assign(static_cast<std::size_t>(len), Scalar{});
    for (Index i = 0; i < len; ++i) {
        Index n = out.lo + i;
        Scalar y{};
        for (const auto& [k, a] : op.coeffs()) y += a * w.values[static_cast<std::size_t>(n - k - w.lo)];
        out.values[static_cast<std::size_t>(i)] = y;
    }
    return out;
}

GrowthBoundReport growth_bound_check(const LaurentOperator& op, double a, const std::vector<double>& t_grid) {
    if (t_grid.empty()) throw std::invalid_argument("growth_bound_check: empty time grid");
    GrowthBoundReport r;
    r.a = a;
    r.abscissa = spectral_abscissa(op);
    r.times = t_grid;
    for (double t : t_grid) {
        if (!(t >= 0.0)) throw std::invalid_argument("growth_bound_check: negative time");
        double n = std::exp(t * r.abscissa);
        r.norms.push_back(n);
        r.b_min = std::max(r.b_min, n * std::exp(-a * t));
    }
    r.pass = r.abscissa <= a && r.b_min <= 1.0 + 1e-12;
    return r;
}

}  // namespace chainlab
