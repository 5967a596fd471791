#include "chainlab/sequence_space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chainlab/text_io.hpp"

namespace chainlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double max_modulus(const std::vector<Scalar>& v) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

void check_finite(Scalar z, const char* what) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::invalid_argument(std::string(what) + ": non-finite value");
}

Index floor_mod(Index a, Index p) {
    Index r = a % p;
    return r < 0 ? r + p : r;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

bool in_diaconis_stein_block(Index k) noexcept {
    if (k < 0) return false;
    auto m = static_cast<Index>(std::sqrt(static_cast<double>(k)));
    while (m * m > k) --m;
    while ((m + 1) * (m + 1) <= k) ++m;
    return m % 2 == 0 && k < m * m + m;
}

double unit_hash(std::uint64_t seed, Index n) noexcept {
    std::uint64_t h = splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(n));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

InitialCondition::InitialCondition(Variant v) : v_(std::move(v)) {
    sup_bound_ = std::visit(
        overloaded{
            [](const ic::Impulse&) { return 1.0; },
            [](const ic::Constant& c) {
                check_finite(c.c, "Constant");
                return std::abs(c.c);
            },
            [](const ic::FiniteSupport& f) {
                for (auto z : f.values) check_finite(z, "FiniteSupport");
                return max_modulus(f.values);
            },
            [](const ic::Periodic& p) {
                if (p.values.empty()) throw std::invalid_argument("Periodic: empty period");
                for (auto z : p.values) check_finite(z, "Periodic");
                return max_modulus(p.values);
            },
            [](const ic::Kronecker& k) {
                if (!std::isfinite(k.a)) throw std::invalid_argument("Kronecker: non-finite a");
                return 1.0;
            },
            [](const ic::DiaconisStein&) { return 1.0; },
            [](const ic::RandomBounded& r) {
                if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi)
                    throw std::invalid_argument("RandomBounded: need finite lo <= hi");
                return std::max(std::abs(r.lo), std::abs(r.hi));
            },
        },
        v_);
}

Scalar InitialCondition::operator()(Index n) const {
    return std::visit(
        overloaded{
            [n](const ic::Impulse& i) { return n == i.center ? Scalar{1.0} : Scalar{}; },
            [](const ic::Constant& c) { return c.c; },
            [n](const ic::FiniteSupport& f) {
                Index i = n - f.offset;
                return (i >= 0 && i < static_cast<Index>(f.values.size()))
                           ? f.values[static_cast<std::size_t>(i)]
                           : Scalar{};
            },
            [n](const ic::Periodic& p) {
                auto P = static_cast<Index>(p.values.size());
                return p.values[static_cast<std::size_t>(floor_mod(n - p.anchor, P))];
            },
            [n](const ic::Kronecker& k) {
                double phase = static_cast<double>(n) * k.a;
                return Scalar{std::cos(phase), std::sin(phase)};
            },
            [n](const ic::DiaconisStein&) {
                // positive indices are irrelevant to q_0 and set to zero
                return (n <= 0 && in_diaconis_stein_block(-n)) ? Scalar{1.0} : Scalar{};
            },
            [n](const ic::RandomBounded& r) {
                return Scalar{r.lo + (r.hi - r.lo) * unit_hash(r.seed, n)};
            },
        },
        v_);
}

std::string InitialCondition::kind() const {
    return std::visit(overloaded{
                          [](const ic::Impulse&) { return std::string("impulse"); },
                          [](const ic::Constant&) { return std::string("constant"); },
                          [](const ic::FiniteSupport&) { return std::string("finite"); },
                          [](const ic::Periodic&) { return std::string("periodic"); },
                          [](const ic::Kronecker&) { return std::string("kronecker"); },
                          [](const ic::DiaconisStein&) { return std::string("diaconis-stein"); },
                          [](const ic::RandomBounded&) { return std::string("random"); },
                      },
                      v_);
}

const Scalar& Window::at(Index n) const {
    if (!contains(n)) throw std::out_of_range("Window::at: index outside window");
    return values[static_cast<std::size_t>(n - lo)];
}

Scalar eval_ic(const InitialCondition& ic, Index n) { return ic(n); }

Window window_of(const InitialCondition& ic, Index lo, Index len) {
    if (len < 1) throw std::invalid_argument("window_of: len must be >= 1");
    Window w{lo, {}};
    w.values.reserve(static_cast<std::size_t>(len));
    for (Index i = 0; i < len; ++i) w.values.push_back(ic(lo + i));
    return w;
}

double norm_inf(const Window& w) noexcept { return max_modulus(w.values); }

double norm_2(const Window& w) noexcept {
    // scaled accumulation, avoids overflow for large entries
    double scale = norm_inf(w);
    if (scale == 0.0) return 0.0;
    double s = 0.0;
    for (const auto& z : w.values) s += std::norm(z / scale);
    return scale * std::sqrt(s);
}

Scalar cesaro_avg(const InitialCondition& ic, Index m, Index N) {
    if (N < 0) throw std::invalid_argument("cesaro_avg: N must be >= 0");
    Scalar s{};
    for (Index k = 0; k <= N; ++k) s += ic(m - k);
    return s / static_cast<double>(N + 1);
}

CesaroEstimate cesaro_rate_fit(const InitialCondition& ic, Index m, Index N_max) {
    if (N_max < 16) throw std::invalid_argument("cesaro_rate_fit: N_max must be >= 16");
    CesaroEstimate est;
    for (Index N = 16; N <= N_max; N *= 2) est.grid.push_back(N);

    const Index n_ref = 8 * N_max;
    std::vector<Scalar> avg_at_grid;
    Scalar running{};
    std::size_t g = 0;
    for (Index k = 0; k <= n_ref; ++k) {
        running += ic(m - k);
        if (g < est.grid.size() && k == est.grid[g]) {
            avg_at_grid.push_back(running / static_cast<double>(k + 1));
            ++g;
        }
    }
    est.qbar_est = running / static_cast<double>(n_ref + 1);
    est.n_terms = n_ref + 1;

    constexpr double exact_floor = 1e-14;
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < est.grid.size(); ++i) {
        double r = std::abs(avg_at_grid[i] - est.qbar_est);
        est.residuals.push_back(r);
        if (r >= exact_floor) {
            xs.push_back(std::log(static_cast<double>(est.grid[i])));
            ys.push_back(std::log(r));
        }
    }
    if (xs.empty()) {
        est.rate_exponent = std::numeric_limits<double>::infinity();
        return est;
    }
    if (xs.size() == 1) {
        // single usable point: slope is undetermined, report no decay
        est.rate_exponent = 0.0;
        return est;
    }
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
    est.rate_exponent = -sxy / sxx;
    return est;
}

CesaroVerdict classify(const CesaroEstimate& est) noexcept {
    constexpr double band = 0.1;
    if (std::isinf(est.rate_exponent)) return CesaroVerdict::ExactConvergence;
    if (est.rate_exponent > 0.5 + band) return CesaroVerdict::RateSupported;
    if (est.rate_exponent >= 0.5 - band) return CesaroVerdict::NotEstablished;
    return CesaroVerdict::Fails;
}

std::string to_string(CesaroVerdict v) {
    switch (v) {
        case CesaroVerdict::RateSupported: return "rate supported";
        case CesaroVerdict::NotEstablished: return "hypothesis not established";
        case CesaroVerdict::Fails: return "rate fails";
        case CesaroVerdict::ExactConvergence: return "exact convergence";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// structured text
// ---------------------------------------------------------------------------

Scalar parse_scalar(const std::string& text) {
    std::string s = trim(text);
    if (s.empty()) throw std::invalid_argument("empty scalar");
    if (s.back() != 'j' && s.back() != 'i') return Scalar{parse_double(s)};
    s.pop_back();
    // split at the last sign that is not a leading sign or an exponent sign
    std::size_t cut = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            cut = i;
            break;
        }
    }
    if (cut == std::string::npos) {
        if (s.empty() || s == "+") return Scalar{0.0, 1.0};
        if (s == "-") return Scalar{0.0, -1.0};
        return Scalar{0.0, parse_double(s)};
    }
    std::string im = s.substr(cut);
    if (im == "+") im = "1";
    if (im == "-") im = "-1";
    return Scalar{parse_double(s.substr(0, cut)), parse_double(im)};
}

std::string format_scalar(Scalar z) {
    if (z.imag() == 0.0) return format_double(z.real());
    std::string im = format_double(z.imag());
    if (im.front() != '-') im = "+" + im;
    return format_double(z.real()) + im + "j";
}

namespace {

std::vector<Scalar> parse_list(const std::string& s) {
    std::vector<Scalar> out;
    for (const auto& tok : split(s, ',')) out.push_back(parse_scalar(tok));
    return out;
}

std::string format_list(const std::vector<Scalar>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += format_scalar(v[i]);
    }
    return out;
}

class FieldReader {
public:
    explicit FieldReader(const FieldMap& f) : f_(f) {}

    const std::string* find(const std::string& key) {
        used_.push_back(key);
        auto it = f_.find(key);
        return it == f_.end() ? nullptr : &it->second;
    }
    const std::string& need(const std::string& key) {
        const auto* v = find(key);
        if (!v) throw std::invalid_argument("initial condition: missing field '" + key + "'");
        return *v;
    }
    void reject_unknown() const {
        for (const auto& [k, v] : f_)
            if (std::find(used_.begin(), used_.end(), k) == used_.end())
                throw std::invalid_argument("initial condition: unknown field '" + k + "'");
    }

private:
    const FieldMap& f_;
    std::vector<std::string> used_{"kind"};
};

}  // namespace

InitialCondition ic_from_fields(const FieldMap& fields) {
    auto kind_it = fields.find("kind");
    if (kind_it == fields.end()) throw std::invalid_argument("initial condition: missing field 'kind'");
    const std::string& kind = kind_it->second;
    FieldReader r(fields);

    auto opt_int = [&r](const std::string& key, Index fallback) {
        const auto* v = r.find(key);
        return v ? static_cast<Index>(parse_int(*v)) : fallback;
    };

    InitialCondition::Variant v;
    if (kind == "impulse") {
        v = ic::Impulse{opt_int("center", 0)};
    } else if (kind == "constant") {
        v = ic::Constant{parse_scalar(r.need("c"))};
    } else if (kind == "finite") {
        v = ic::FiniteSupport{opt_int("offset", 0), parse_list(r.need("values"))};
    } else if (kind == "periodic") {
        v = ic::Periodic{parse_list(r.need("values")), opt_int("anchor", 0)};
    } else if (kind == "kronecker") {
        v = ic::Kronecker{parse_double(r.need("a"))};
    } else if (kind == "diaconis-stein") {
        v = ic::DiaconisStein{};
    } else if (kind == "random") {
        const auto* lo = r.find("lo");
        const auto* hi = r.find("hi");
        v = ic::RandomBounded{static_cast<std::uint64_t>(opt_int("seed", 0)), lo ? parse_double(*lo) : -1.0,
                              hi ? parse_double(*hi) : 1.0};
    } else {
        throw std::invalid_argument("initial condition: unknown kind '" + kind + "'");
    }
    r.reject_unknown();
    return InitialCondition(std::move(v));
}

FieldMap ic_to_fields(const InitialCondition& ic) {
    FieldMap f{{"kind", ic.kind()}};
    std::visit(overloaded{
                   [&f](const ic::Impulse& i) { f["center"] = std::to_string(i.center); },
                   [&f](const ic::Constant& c) { f["c"] = format_scalar(c.c); },
                   [&f](const ic::FiniteSupport& s) {
                       f["offset"] = std::to_string(s.offset);
                       f["values"] = format_list(s.values);
                   },
                   [&f](const ic::Periodic& p) {
                       f["values"] = format_list(p.values);
                       f["anchor"] = std::to_string(p.anchor);
                   },
                   [&f](const ic::Kronecker& k) { f["a"] = format_double(k.a); },
                   [](const ic::DiaconisStein&) {},
                   [&f](const ic::RandomBounded& r) {
                       f["seed"] = std::to_string(r.seed);
                       f["lo"] = format_double(r.lo);
                       f["hi"] = format_double(r.hi);
                   },
               },
               ic.variant());
    return f;
}

InitialCondition parse_ic(const std::string& text) {
    // "key=value" tokens separated by ';' or ','; a token without '='
    // continues the list value of the preceding key.
    FieldMap fields;
    std::string last;
    for (const auto& group : split(text, ';')) {
        for (const auto& tok : split(group, ',')) {
            if (tok.empty()) continue;
            auto eq = tok.find('=');
            if (eq == std::string::npos) {
                if (last.empty()) throw std::invalid_argument("initial condition: stray token '" + tok + "'");
                fields[last] += "," + tok;
                continue;
            }
            last = trim(std::string_view(tok).substr(0, eq));
            if (fields.count(last)) throw std::invalid_argument("initial condition: duplicate field '" + last + "'");
            fields[last] = trim(std::string_view(tok).substr(eq + 1));
        }
    }
    return ic_from_fields(fields);
}

std::string format_ic(const InitialCondition& ic) {
    auto f = ic_to_fields(ic);
    std::string out = "kind=" + f["kind"];
    for (const auto& [k, v] : f)
        if (k != "kind") out += "; " + k + "=" + v;
    return out;
}

}  // namespace chainlab
