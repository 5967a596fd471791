#pragma once

// Finite truncated chains: N x N matrices built from a Laurent operator plus
// a boundary rule, a dense matrix exponential, and comparison of the
// truncation against the exact infinite-chain evaluators.

#include <optional>
#include <string>
#include <vector>

#include "chainlab/laurent_operator.hpp"
#include "chainlab/sequence_space.hpp"
#include "chainlab/trajectory.hpp"

namespace chainlab {

/// Dense row-major real matrix.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);

    [[nodiscard]] static DenseMatrix identity(std::size_t n);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    /// Maximum absolute column sum.
    [[nodiscard]] double norm_1() const noexcept;
    [[nodiscard]] double norm_frobenius() const noexcept;

    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
    friend DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
    friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
    friend DenseMatrix operator*(double s, const DenseMatrix& a);
    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

    [[nodiscard]] std::vector<Scalar> apply(const std::vector<Scalar>& x) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

enum class Boundary { Tethered, OriginSeeking, Cyclic, Free };

[[nodiscard]] std::string to_string(Boundary b);
/// Accepts tethered, origin (origin-seeking), cyclic, free.
[[nodiscard]] Boundary parse_boundary(const std::string& name);

struct FiniteChainModel {
    Index size = 0;
    LaurentOperator base;
    Boundary boundary = Boundary::Free;
};

/// Row i holds a_k at column i - k. Free drops out-of-range couplings,
/// Cyclic wraps them, Tethered zeroes row 0, OriginSeeking makes row 0 = -e_0.
/// Throws std::invalid_argument when size < 2.
[[nodiscard]] DenseMatrix build_matrix(const FiniteChainModel& model);

/// e^{M t} by scaling and squaring of a truncated Taylor series. The scaled
/// matrix has 1-norm <= 1/2 and the series is cut once the remainder bound
/// drops below tol / 2^s. expm(M, 0) is exactly I.
/// Throws std::invalid_argument for t < 0, tol <= 0 or a non-square M.
[[nodiscard]] DenseMatrix expm(const DenseMatrix& M, double t, double tol = 1e-15);

/// states[i] = expm(A, times[i]) q0 on indices [q0.lo, q0.lo + N).
/// Throws std::invalid_argument when q0 length differs from model.size.
[[nodiscard]] Trajectory simulate_finite(const FiniteChainModel& model, const Window& q0,
                                         const std::vector<double>& times, double tol = 1e-15);

struct ConvergenceReport {
    std::vector<Scalar> per_car_limit;
    std::vector<double> tail_variation;
    bool rendezvous = false;
    std::optional<Scalar> rendezvous_point;
    double spread = 0.0;  // max pairwise distance between limits
    double tol = 0.0;
};

/// Throws std::invalid_argument unless there are >= 4 times and the last is >= 20.
[[nodiscard]] ConvergenceReport rendezvous_report(const Trajectory& traj, double tol = 1e-6);

enum class ChainKind { Serial, Symmetric };

[[nodiscard]] std::string to_string(ChainKind k);
[[nodiscard]] LaurentOperator chain_operator(ChainKind k);

struct TruncationRow {
    double t;
    double sup_error;
};

struct TruncationReport {
    ChainKind chain = ChainKind::Serial;
    Index size = 0;
    Index margin = 0;
    Index interior_lo = 0;
    Index interior_len = 0;
    std::vector<TruncationRow> rows;
    [[nodiscard]] double max_error() const noexcept;
};

/// Smallest margin accepted by truncation_compare for a horizon t_max.
[[nodiscard]] Index required_margin(double t_max);

/// Free-boundary truncation on [-N/2, N/2), compared on the interior
/// [-N/2 + margin, N/2 - margin) against serial_state / symmetric_state.
/// Throws std::invalid_argument when N <= 2 margin or margin < 4 t_max + 40.
[[nodiscard]] TruncationReport truncation_compare(const InitialCondition& ic, ChainKind chain, Index N, Index margin,
                                                  const std::vector<double>& times, double tol = 1e-14);

/// Same comparison without the margin rule; used to study boundary artifacts.
[[nodiscard]] TruncationReport truncation_compare_unchecked(const InitialCondition& ic, ChainKind chain, Index N,
                                                            Index margin, const std::vector<double>& times,
                                                            double tol = 1e-14);

/// Row-per-entry CSV: i,j,value.
[[nodiscard]] std::string matrix_csv(const DenseMatrix& M);

}  // namespace chainlab
