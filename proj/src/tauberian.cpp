#include "chainlab/tauberian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chainlab/poisson_series.hpp"
#include "chainlab/special.hpp"
#include "chainlab/text_io.hpp"
#include "json.hpp"

namespace chainlab {

IntegerSet::IntegerSet(Variant v, bool complemented) : v_(std::move(v)), complemented_(complemented) {
    if (const auto* e = std::get_if<iset::Explicit>(&v_)) {
        for (std::size_t i = 0; i < e->members.size(); ++i) {
            if (e->members[i] < 0) throw std::invalid_argument("IntegerSet: negative member");
            if (i && e->members[i] <= e->members[i - 1])
                throw std::invalid_argument("IntegerSet: explicit members must be sorted and unique");
        }
    }
    if (const auto* d = std::get_if<iset::DSBlocks>(&v_); d && d->m_max && *d->m_max < 0)
        throw std::invalid_argument("IntegerSet: m_max must be >= 0");
}

bool IntegerSet::contains(Index k) const {
    if (k < 0) return false;
    bool in = std::visit(
        [k](const auto& s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, iset::All>) {
                return true;
            } else if constexpr (std::is_same_v<T, iset::Evens>) {
                return k % 2 == 0;
            } else if constexpr (std::is_same_v<T, iset::DSBlocks>) {
                if (!in_diaconis_stein_block(k)) return false;
                if (!s.m_max) return true;
                // k >= (m_max + 1)^2 lies in a block with m > m_max
                return k < (*s.m_max + 1) * (*s.m_max + 1);
            } else if constexpr (std::is_same_v<T, iset::Explicit>) {
                return std::binary_search(s.members.begin(), s.members.end(), k);
            } else {
                return k < static_cast<Index>(s.bitmap.size()) && s.bitmap[static_cast<std::size_t>(k)];
            }
        },
        v_);
    return in != complemented_;
}

std::string IntegerSet::name() const {
    std::string base = std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, iset::All>) return "all";
            else if constexpr (std::is_same_v<T, iset::Evens>) return "evens";
            else if constexpr (std::is_same_v<T, iset::DSBlocks>)
                return s.m_max ? "ds-blocks(m_max=" + std::to_string(*s.m_max) + ")" : "ds-blocks";
            else if constexpr (std::is_same_v<T, iset::Explicit>) return "explicit";
            else return "table";
        },
        v_);
    return complemented_ ? "complement(" + base + ")" : base;
}

Scalar borel_sum(const InitialCondition& ic, Index m, double t, double tol) {
    return poisson_sum(t, tol, [&ic, m](Index k) { return ic(m - k); }).value;
}

double ds_limit1(const IntegerSet& A, double t, double tol) {
    return poisson_sum(t, tol, [&A](Index k) { return A.contains(k) ? Scalar{1.0} : Scalar{}; }).value.real();
}

double ds_limit2(const IntegerSet& A, Index n) {
    if (n < 1) throw std::invalid_argument("ds_limit2: n must be >= 1");
    Index lo = 0, hi = n;
    if (n > 400) {
        // Hoeffding: Pr(|S_n - n/2| >= 6 sqrt(n)) <= 2 exp(-72) < 1e-12
        const double half_width = 6.0 * std::sqrt(static_cast<double>(n));
        lo = std::max<Index>(0, static_cast<Index>(std::floor(0.5 * n - half_width)));
        hi = std::min<Index>(n, static_cast<Index>(std::ceil(0.5 * n + half_width)));
    }
    double s = 0.0;
    for (Index k = lo; k <= hi; ++k)
        if (A.contains(k)) s += special::binomial_pmf(k, n, 0.5);
    return s;
}

double ds_limit3(const IntegerSet& A, Index n, double eps) {
    if (n < 1) throw std::invalid_argument("ds_limit3: n must be >= 1");
    if (!(eps > 0.0)) throw std::invalid_argument("ds_limit3: eps must be > 0");
    const double width = eps * std::sqrt(static_cast<double>(n));
    if (width < 1.0) throw std::invalid_argument("ds_limit3: eps * sqrt(n) must be >= 1");
    const double end = static_cast<double>(n) + width;
    Index count = 0;
    for (Index k = n; static_cast<double>(k) < end; ++k)
        if (A.contains(k)) ++count;
    return static_cast<double>(count) / width;
}

namespace {

template <class Samples, class Get>
double tail_spread(const Samples& samples, Get get) {
    double lo = 1.0, hi = 0.0;
    for (std::size_t i = samples.size() / 2; i < samples.size(); ++i) {
        lo = std::min(lo, get(samples[i]));
        hi = std::max(hi, get(samples[i]));
    }
    return hi - lo;
}

}  // namespace

TriadEstimate triad_report(const IntegerSet& A, const std::vector<double>& t_grid, const std::vector<Index>& n_grid,
                           double eps, double tol) {
    if (t_grid.empty() || n_grid.empty()) throw std::invalid_argument("triad_report: grids must be nonempty");
    TriadEstimate est;
    for (double t : t_grid) est.lim1_samples.push_back({t, ds_limit1(A, t, tol)});
    for (Index n : n_grid) {
        est.lim2_samples.push_back({n, ds_limit2(A, n)});
        est.lim3_samples.push_back({n, eps, ds_limit3(A, n, eps)});
    }
    auto v = [](const auto& s) { return s.value; };
    est.tail_variation = {tail_spread(est.lim1_samples, v), tail_spread(est.lim2_samples, v),
                          tail_spread(est.lim3_samples, v)};
    const double finals[] = {est.lim1_samples.back().value, est.lim2_samples.back().value,
                             est.lim3_samples.back().value};
    est.disagreement = *std::max_element(std::begin(finals), std::end(finals)) -
                       *std::min_element(std::begin(finals), std::end(finals));
    est.convergent = est.disagreement < TriadEstimate::disagreement_threshold &&
                     std::all_of(est.tail_variation.begin(), est.tail_variation.end(),
                                 [](double x) { return x < TriadEstimate::tail_threshold; });
    if (est.convergent)
        est.limit = (finals[0] + finals[1] + finals[2]) / 3.0;
    else
        est.gap = est.tail_variation[0];
    return est;
}

std::string triad_json(const TriadEstimate& est, const std::string& set_name) {
    nlohmann::ordered_json j;
    j["set"] = set_name;
    auto& l1 = j["lim1_samples"] = nlohmann::json::array();
    for (const auto& s : est.lim1_samples) l1.push_back({{"t", s.t}, {"value", s.value}});
    auto& l2 = j["lim2_samples"] = nlohmann::json::array();
    for (const auto& s : est.lim2_samples) l2.push_back({{"n", s.n}, {"value", s.value}});
    auto& l3 = j["lim3_samples"] = nlohmann::json::array();
    for (const auto& s : est.lim3_samples) l3.push_back({{"n", s.n}, {"eps", s.eps}, {"value", s.value}});
    j["tail_variation"] = est.tail_variation;
    j["disagreement"] = est.disagreement;
    j["thresholds"] = {{"tail_variation", TriadEstimate::tail_threshold},
                       {"disagreement", TriadEstimate::disagreement_threshold}};
    if (est.convergent)
        j["verdict"] = {{"kind", "convergent"}, {"limit", est.limit}};
    else
        j["verdict"] = {{"kind", "non-convergent"}, {"gap", est.gap}};
    return j.dump(2) + "\n";
}

std::string lim1_csv(const TriadEstimate& est) {
    CsvWriter csv({"t", "value"});
    for (const auto& s : est.lim1_samples) csv.row({format_double(s.t), format_double(s.value)});
    return csv.str();
}

std::string lim2_csv(const TriadEstimate& est) {
    CsvWriter csv({"n", "value"});
    for (const auto& s : est.lim2_samples) csv.row({std::to_string(s.n), format_double(s.value)});
    return csv.str();
}

std::string lim3_csv(const TriadEstimate& est) {
    CsvWriter csv({"n", "eps", "value"});
    for (const auto& s : est.lim3_samples) csv.row({std::to_string(s.n), format_double(s.eps), format_double(s.value)});
    return csv.str();
}

}  // namespace chainlab
