#pragma once

// Borel summation and the three equivalent density limits for a set A of
// non-negative integers:
//   (1) e^{-t} sum_{k in A} t^k / k!           as t -> inf
//   (2) Pr(S_n in A), S_n ~ Binomial(n, 1/2)   as n -> inf
//   (3) card{k in A : n <= k < n + eps sqrt(n)} / (eps sqrt(n))
// If any of them converges, all three do and share the limit.

#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "chainlab/sequence_space.hpp"

namespace chainlab {

namespace iset {
struct All {};
struct Evens {};
/// Blocks [m^2, m^2 + m) for even m (m <= m_max when bounded).
struct DSBlocks {
    std::optional<Index> m_max;
};
struct Explicit {
    std::vector<Index> members;  // sorted, unique, >= 0
};
/// bitmap[k] for k < bitmap.size(); no members beyond.
struct Table {
    std::vector<bool> bitmap;
};
}  // namespace iset

class IntegerSet {
public:
    using Variant = std::variant<iset::All, iset::Evens, iset::DSBlocks, iset::Explicit, iset::Table>;

    IntegerSet(Variant v, bool complemented = false);  // NOLINT(google-explicit-constructor)
    template <class T>
        requires(!std::is_same_v<std::decay_t<T>, Variant> && std::is_constructible_v<Variant, T &&>)
    IntegerSet(T&& alt, bool complemented = false)  // NOLINT
        : IntegerSet(Variant(std::forward<T>(alt)), complemented) {}

    [[nodiscard]] bool contains(Index k) const;
    /// Complement within the non-negative integers.
    [[nodiscard]] IntegerSet complement() const { return IntegerSet(v_, !complemented_); }
    [[nodiscard]] std::string name() const;

private:
    Variant v_;
    bool complemented_ = false;
};

/// e^{-t} sum_k f_k t^k / k! with f_k = q_{m-k}(0); shares the series engine
/// with serial_state, so borel_sum(ic, m, t, tol) == serial_state(ic, m, t, tol).
[[nodiscard]] Scalar borel_sum(const InitialCondition& ic, Index m, double t, double tol);

/// Poisson(t) mass of A.
[[nodiscard]] double ds_limit1(const IntegerSet& A, double t, double tol);

/// Pr(S_n in A), summed over n/2 +- 6 sqrt(n) (exact for n <= 400).
/// Throws std::invalid_argument when n < 1.
[[nodiscard]] double ds_limit2(const IntegerSet& A, Index n);

/// Block density at scale eps sqrt(n). Throws when n < 1, eps <= 0 or eps sqrt(n) < 1.
[[nodiscard]] double ds_limit3(const IntegerSet& A, Index n, double eps);

struct TriadEstimate {
    struct TimeSample {
        double t;
        double value;
    };
    struct IndexSample {
        Index n;
        double value;
    };
    struct BlockSample {
        Index n;
        double eps;
        double value;
    };
    std::vector<TimeSample> lim1_samples;
    std::vector<IndexSample> lim2_samples;
    std::vector<BlockSample> lim3_samples;
    std::vector<double> tail_variation;  // per estimator, over the second half of its grid
    double disagreement = 0.0;           // spread of the three final values
    bool convergent = false;
    double limit = 0.0;  // mean of final values when convergent
    double gap = 0.0;    // limsup - liminf of lim1 over the tail when not convergent

    static constexpr double tail_threshold = 0.02;
    static constexpr double disagreement_threshold = 0.05;
};

/// Throws std::invalid_argument for empty grids.
[[nodiscard]] TriadEstimate triad_report(const IntegerSet& A, const std::vector<double>& t_grid,
                                         const std::vector<Index>& n_grid, double eps, double tol = 1e-13);

/// JSON document with the three sample arrays, thresholds and verdict.
[[nodiscard]] std::string triad_json(const TriadEstimate& est, const std::string& set_name);

/// CSV per estimator: (t,value), (n,value), (n,eps,value).
[[nodiscard]] std::string lim1_csv(const TriadEstimate& est);
[[nodiscard]] std::string lim2_csv(const TriadEstimate& est);
[[nodiscard]] std::string lim3_csv(const TriadEstimate& est);

}  // namespace chainlab
