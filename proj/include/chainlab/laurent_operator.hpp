#pragma once

// Banded spatially-invariant operators: finite Laurent polynomials in the
// bilateral right shift U (y_n = x_{n-1}) and its inverse.
//
// Fourier convention: U maps to multiplication by e^{-j w}, so the symbol of
// sum_k a_k U^k is G(w) = sum_k a_k e^{-j w k}. With this convention
// U + U^{-1} - 2I has symbol 2(cos w - 1).

#include <map>
#include <string>
#include <vector>

#include "chainlab/sequence_space.hpp"

namespace chainlab {

class LaurentOperator {
public:
    using Lag = int;

    LaurentOperator() = default;
    /// Zero coefficients are dropped.
    explicit LaurentOperator(const std::map<Lag, double>& coeffs);

    [[nodiscard]] static LaurentOperator identity() { return shift(0); }
    /// U^k; k may be negative.
    [[nodiscard]] static LaurentOperator shift(Lag k, double coeff = 1.0);
    /// U - I
    [[nodiscard]] static LaurentOperator serial_pursuit();
    /// U + U^{-1} - 2I
    [[nodiscard]] static LaurentOperator symmetric_chain();

    [[nodiscard]] const std::map<Lag, double>& coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] double coeff(Lag k) const;
    [[nodiscard]] bool is_zero() const noexcept { return coeffs_.empty(); }
    /// 0 for the zero operator.
    [[nodiscard]] Lag min_lag() const noexcept;
    [[nodiscard]] Lag max_lag() const noexcept;
    [[nodiscard]] Lag bandwidth() const noexcept { return max_lag() - min_lag(); }
    /// G(0) = sum of coefficients.
    [[nodiscard]] double coefficient_sum() const noexcept;

    friend LaurentOperator operator+(const LaurentOperator& p, const LaurentOperator& q);
    friend LaurentOperator operator-(const LaurentOperator& p, const LaurentOperator& q);
    friend LaurentOperator operator*(double s, const LaurentOperator& p);
    /// Composition P Q (coefficient convolution).
    friend LaurentOperator compose(const LaurentOperator& p, const LaurentOperator& q);
    friend bool operator==(const LaurentOperator&, const LaurentOperator&) = default;

private:
    std::map<Lag, double> coeffs_;
};

[[nodiscard]] LaurentOperator compose(const LaurentOperator& p, const LaurentOperator& q);

/// "lag:coeff" pairs separated by commas, e.g. "1:1,0:-1" for U - I.
/// Throws std::invalid_argument on malformed input or a repeated lag.
[[nodiscard]] LaurentOperator parse_operator(const std::string& literal);
/// Canonical literal, lags in decreasing order.
[[nodiscard]] std::string format_operator(const LaurentOperator& op);

[[nodiscard]] Scalar symbol(const LaurentOperator& op, double omega);

struct SpectrumSample {
    double omega;
    Scalar value;
};

struct SpectrumCurve {
    std::vector<SpectrumSample> samples;  // M + 1 samples on [0, 2pi]
    double abscissa = 0.0;                // max Re over the curve, refined
};

/// Throws std::invalid_argument when M < 8.
[[nodiscard]] SpectrumCurve spectrum_curve(const LaurentOperator& op, int M);

/// max_w Re G(w): 4096-point grid, then ternary search on the bracketing cell.
[[nodiscard]] double spectral_abscissa(const LaurentOperator& op);

/// l2-induced norm of exp(op t) = exp(t * spectral_abscissa(op)).
/// Throws std::invalid_argument when t < 0.
[[nodiscard]] double l2_exp_norm(const LaurentOperator& op, double t);

/// y_n = sum_k a_k x_{n-k} on the indices where every needed input lies in w.
/// Throws std::invalid_argument when w.size() <= bandwidth.
[[nodiscard]] Window apply(const LaurentOperator& op, const Window& w);

struct GrowthBoundReport {
    double a = 0.0;
    double abscissa = 0.0;
    std::vector<double> times;
    std::vector<double> norms;  // ||exp(op t)|| on l2
    double b_min = 0.0;         // smallest b with norms <= b e^{a t} on the grid
    bool pass = false;          // abscissa <= a and b_min <= 1
};

/// Checks ||exp(op t)|| <= b e^{a t} on a time grid.
/// Throws std::invalid_argument for an empty grid or negative times.
[[nodiscard]] GrowthBoundReport growth_bound_check(const LaurentOperator& op, double a,
                                                   const std::vector<double>& t_grid);

}  // namespace chainlab
