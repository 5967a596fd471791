#pragma once

// Bi-infinite sequences over Z, finite windows onto them, the two norms
// used throughout (sup and square-summable) and Cesaro averaging.
//
// Sequences are never stored: an InitialCondition is a closed-form
// generator that can be evaluated at any integer index, including very
// negative ones consumed by the serial-pursuit series.

#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

namespace chainlab {

using Scalar = std::complex<double>;
using Index = std::int64_t;

namespace ic {

/// Unit impulse located at `center`.
struct Impulse {
    Index center = 0;
};

struct Constant {
    Scalar c{1.0, 0.0};
};

/// values[i] sits at index offset + i; zero elsewhere.
struct FiniteSupport {
    Index offset = 0;
    std::vector<Scalar> values;
};

/// value(n) = values[(n - anchor) mod P].
struct Periodic {
    std::vector<Scalar> values;
    Index anchor = 0;
};

/// value(n) = exp(j n a).
struct Kronecker {
    double a = 0.0;
};

/// Indicator of the block set on the non-positive half-line:
/// value(-k) = 1 iff m^2 <= k < m^2 + m for some even m.
struct DiaconisStein {};

/// Counter-based pseudo-random real values in [lo, hi].
struct RandomBounded {
    std::uint64_t seed = 0;
    double lo = -1.0;
    double hi = 1.0;
};

}  // namespace ic

/// A bounded bi-infinite initial condition q(0).
class InitialCondition {
public:
    using Variant = std::variant<ic::Impulse, ic::Constant, ic::FiniteSupport, ic::Periodic,
                                 ic::Kronecker, ic::DiaconisStein, ic::RandomBounded>;

    InitialCondition(Variant v);  // NOLINT(google-explicit-constructor)
    template <class T>
        requires(!std::is_same_v<std::decay_t<T>, Variant> && std::is_constructible_v<Variant, T &&>)
    InitialCondition(T&& alt) : InitialCondition(Variant(std::forward<T>(alt))) {}  // NOLINT

    [[nodiscard]] Scalar operator()(Index n) const;

    /// An upper bound for sup_n |value(n)|, computed from the parameters.
    [[nodiscard]] double sup_bound() const noexcept { return sup_bound_; }

    /// Short lower-case variant name ("impulse", "kronecker", ...).
    [[nodiscard]] std::string kind() const;

    [[nodiscard]] const Variant& variant() const noexcept { return v_; }

private:
    Variant v_;
    double sup_bound_ = 0.0;
};

/// Shared block-set membership: k in [m^2, m^2 + m) with m even, k >= 0.
[[nodiscard]] bool in_diaconis_stein_block(Index k) noexcept;

/// Value of the counter-based generator for (seed, n), uniform in [0, 1).
[[nodiscard]] double unit_hash(std::uint64_t seed, Index n) noexcept;

/// Finite contiguous view: index n maps to values[n - lo].
struct Window {
    Index lo = 0;
    std::vector<Scalar> values;

    [[nodiscard]] Index size() const noexcept { return static_cast<Index>(values.size()); }
    /// One past the last index.
    [[nodiscard]] Index end() const noexcept { return lo + size(); }
    [[nodiscard]] bool contains(Index n) const noexcept { return n >= lo && n < end(); }
    [[nodiscard]] const Scalar& at(Index n) const;
};

[[nodiscard]] Scalar eval_ic(const InitialCondition& ic, Index n);

/// Throws std::invalid_argument when len < 1.
[[nodiscard]] Window window_of(const InitialCondition& ic, Index lo, Index len);

[[nodiscard]] double norm_inf(const Window& w) noexcept;
[[nodiscard]] double norm_2(const Window& w) noexcept;

/// (1/(N+1)) * sum_{k=0..N} q_{m-k}(0).
[[nodiscard]] Scalar cesaro_avg(const InitialCondition& ic, Index m, Index N);

struct CesaroEstimate {
    Scalar qbar_est;
    Index n_terms = 0;
    std::vector<Index> grid;        // dyadic N values
    std::vector<double> residuals;  // |avg_N - qbar_est| per grid point
    double rate_exponent = 0.0;     // +inf when all residuals vanish
};

enum class CesaroVerdict { RateSupported, NotEstablished, Fails, ExactConvergence };

/// Fits the decay rate of Cesaro averages on N = 16, 32, ..., N_max.
/// The reference value qbar_est is the average over 8 * N_max + 1 terms.
/// Throws std::invalid_argument when N_max < 16.
[[nodiscard]] CesaroEstimate cesaro_rate_fit(const InitialCondition& ic, Index m, Index N_max);

/// Classifies against the o(N^{-1/2}) hypothesis with a +-0.1 band on the exponent.
[[nodiscard]] CesaroVerdict classify(const CesaroEstimate& est) noexcept;
[[nodiscard]] std::string to_string(CesaroVerdict v);

// ---------------------------------------------------------------------------
// Structured-text form: "kind=kronecker; a=1.5707963267948966".
// Fields: kind, center, c, offset, values, anchor, a, seed, lo, hi.
// Scalars are written as "x" or "x+yj"; lists are comma-separated.
// ---------------------------------------------------------------------------

using FieldMap = std::map<std::string, std::string>;

[[nodiscard]] InitialCondition ic_from_fields(const FieldMap& fields);
[[nodiscard]] FieldMap ic_to_fields(const InitialCondition& ic);
[[nodiscard]] InitialCondition parse_ic(const std::string& text);
[[nodiscard]] std::string format_ic(const InitialCondition& ic);

[[nodiscard]] Scalar parse_scalar(const std::string& text);
[[nodiscard]] std::string format_scalar(Scalar z);

}  // namespace chainlab
