#include "chainlab/chain_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chainlab/parallel.hpp"
#include "chainlab/poisson_series.hpp"
#include "chainlab/text_io.hpp"

namespace chainlab {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix I(n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = 1.0;
    return I;
}

double DenseMatrix::norm_1() const noexcept {
    double best = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) s += std::abs((*this)(i, j));
        best = std::max(best, s);
    }
    return best;
}

double DenseMatrix::norm_frobenius() const noexcept {
    double s = 0.0;
    for (double x : data_) s += x * x;
    return std::sqrt(s);
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("DenseMatrix: shape mismatch in product");
    DenseMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        double* ci = &c.data_[i * c.cols_];
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;  // banded and triangular factors are common here
            const double* bk = &b.data_[k * b.cols_];
            for (std::size_t j = 0; j < b.cols_; ++j) ci[j] += aik * bk[j];
        }
    }
    return c;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("DenseMatrix: shape mismatch in sum");
    DenseMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) { return a + (-1.0) * b; }

DenseMatrix operator*(double s, const DenseMatrix& a) {
    DenseMatrix c = a;
    for (double& x : c.data_) x *= s;
    return c;
}

std::vector<Scalar> DenseMatrix::apply(const std::vector<Scalar>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("DenseMatrix::apply: dimension mismatch");
    std::vector<Scalar> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Scalar s{};
        for (std::size_t j = 0; j < cols_; ++j) {
            const double a = (*this)(i, j);
            if (a != 0.0) s += a * x[j];
        }
        y[i] = s;
    }
    return y;
}

std::string to_string(Boundary b) {
    switch (b) {
        case Boundary::Tethered: return "tethered";
        case Boundary::OriginSeeking: return "origin";
        case Boundary::Cyclic: return "cyclic";
        case Boundary::Free: return "free";
    }
    return "?";
}

Boundary parse_boundary(const std::string& name) {
    if (name == "tethered") return Boundary::Tethered;
    if (name == "origin" || name == "origin-seeking") return Boundary::OriginSeeking;
    if (name == "cyclic") return Boundary::Cyclic;
    if (name == "free") return Boundary::Free;
    throw std::invalid_argument("unknown boundary '" + name + "' (tethered, origin, cyclic, free)");
}

DenseMatrix build_matrix(const FiniteChainModel& model) {
    if (model.size < 2) throw std::invalid_argument("build_matrix: size must be >= 2");
    const Index N = model.size;
    DenseMatrix A(static_cast<std::size_t>(N), static_cast<std::size_t>(N));
    for (Index i = 0; i < N; ++i) {
        const auto row = static_cast<std::size_t>(i);
        if (i == 0 && model.boundary == Boundary::Tethered) continue;
        if (i == 0 && model.boundary == Boundary::OriginSeeking) {
            A(0, 0) = -1.0;
            continue;
        }
        for (const auto& [k, a] : model.base.coeffs()) {
            Index j = i - k;
            if (model.boundary == Boundary::Cyclic) {
                j %= N;
                if (j < 0) j += N;
            } else if (j < 0 || j >= N) {
                continue;
            }
            A(row, static_cast<std::size_t>(j)) += a;
        }
    }
    return A;
}

DenseMatrix expm(const DenseMatrix& M, double t, double tol) {
    if (M.rows() != M.cols()) throw std::invalid_argument("expm: matrix must be square");
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("expm: t must be finite and >= 0");
    if (!(tol > 0.0)) throw std::invalid_argument("expm: tol must be > 0");
    const std::size_t n = M.rows();
    if (t == 0.0) return DenseMatrix::identity(n);

    const DenseMatrix A = t * M;
    const double norm = A.norm_1();
    int s = 0;
    while (std::ldexp(norm, -s) > 0.5) ++s;
    const DenseMatrix X = std::ldexp(1.0, -s) * A;
    const double theta = std::ldexp(norm, -s);

    // Remainder of the degree-m Taylor polynomial is bounded by
    // theta^{m+1}/(m+1)! / (1 - theta/(m+2)).
    const double target = std::max(std::ldexp(tol, -s), 1e-18);
    int m = 0;
    double term = 1.0;
    while (true) {
        double next = term * theta / (m + 1);
        if (next / (1.0 - theta / (m + 2)) <= target || next == 0.0) break;
        term = next;
        ++m;
    }

    DenseMatrix E = DenseMatrix::identity(n);
    DenseMatrix T = DenseMatrix::identity(n);
    for (int k = 1; k <= m; ++k) {
        T = (1.0 / k) * (T * X);
        E = E + T;
    }
    for (int i = 0; i < s; ++i) E = E * E;
    return E;
}

Trajectory simulate_finite(const FiniteChainModel& model, const Window& q0, const std::vector<double>& times,
                           double tol) {
    if (q0.size() != model.size) throw std::invalid_argument("simulate_finite: q0 length must equal model size");
    const DenseMatrix A = build_matrix(model);
    std::vector<Window> states(times.size());
    parallel_for(times.size(), [&](std::size_t i) {
        states[i] = Window{q0.lo, expm(A, times[i], tol).apply(q0.values)};
    });
    return make_trajectory(times, std::move(states));
}

ConvergenceReport rendezvous_report(const Trajectory& traj, double tol) {
    const std::size_t n = traj.times.size();
    if (n < 4) throw std::invalid_argument("rendezvous_report: need at least 4 time points");
    if (traj.times.back() < 20.0) throw std::invalid_argument("rendezvous_report: final time must be >= 20");

    ConvergenceReport r;
    r.tol = tol;
    const Window& last = traj.states.back();
    r.per_car_limit = last.values;
    const std::size_t start = std::min(3 * n / 4, n - 2);
    for (std::size_t car = 0; car < last.values.size(); ++car) {
        double var = 0.0;
        for (std::size_t i = start; i < n; ++i)
            var = std::max(var, std::abs(traj.states[i].values[car] - last.values[car]));
        r.tail_variation.push_back(var);
    }
    for (const auto& a : r.per_car_limit)
        for (const auto& b : r.per_car_limit) r.spread = std::max(r.spread, std::abs(a - b));
    const bool settled =
        std::all_of(r.tail_variation.begin(), r.tail_variation.end(), [tol](double v) { return v < tol; });
    r.rendezvous = settled && r.spread < tol;
    if (r.rendezvous) {
        Scalar mean{};
        for (const auto& a : r.per_car_limit) mean += a;
        r.rendezvous_point = mean / static_cast<double>(r.per_car_limit.size());
    }
    return r;
}

std::string to_string(ChainKind k) { return k == ChainKind::Serial ? "serial" : "symmetric"; }

LaurentOperator chain_operator(ChainKind k) {
    return k == ChainKind::Serial ? LaurentOperator::serial_pursuit() : LaurentOperator::symmetric_chain();
}

double TruncationReport::max_error() const noexcept {
    double e = 0.0;
    for (const auto& r : rows) e = std::max(e, r.sup_error);
    return e;
}

Index required_margin(double t_max) { return static_cast<Index>(std::ceil(4.0 * t_max + 40.0)); }

TruncationReport truncation_compare_unchecked(const InitialCondition& ic, ChainKind chain, Index N, Index margin,
                                              const std::vector<double>& times, double tol) {
    if (N <= 2 * margin) throw std::invalid_argument("truncation_compare: need N > 2 * margin");
    if (margin < 0) throw std::invalid_argument("truncation_compare: margin must be >= 0");
    const Index lo = -N / 2;
    const FiniteChainModel model{N, chain_operator(chain), Boundary::Free};
    const Window q0 = window_of(ic, lo, N);
    const DenseMatrix A = build_matrix(model);

    TruncationReport rep;
    rep.chain = chain;
    rep.size = N;
    rep.margin = margin;
    rep.interior_lo = lo + margin;
    rep.interior_len = N - 2 * margin;
    rep.rows.resize(times.size());
    parallel_for(times.size(), [&](std::size_t i) {
        const double t = times[i];
        const auto finite = expm(A, t, 1e-15).apply(q0.values);
        const Window exact = chain == ChainKind::Serial ? serial_window(ic, rep.interior_lo, rep.interior_len, t, tol)
                                                        : symmetric_window(ic, rep.interior_lo, rep.interior_len, t, tol);
        double err = 0.0;
        for (Index j = 0; j < rep.interior_len; ++j)
            err = std::max(err, std::abs(finite[static_cast<std::size_t>(margin + j)] -
                                         exact.values[static_cast<std::size_t>(j)]));
        rep.rows[i] = {t, err};
    });
    return rep;
}

TruncationReport truncation_compare(const InitialCondition& ic, ChainKind chain, Index N, Index margin,
                                    const std::vector<double>& times, double tol) {
    if (N <= 2 * margin) throw std::invalid_argument("truncation_compare: need N > 2 * margin");
    double t_max = 0.0;
    for (double t : times) t_max = std::max(t_max, t);
    if (margin < required_margin(t_max))
        throw std::invalid_argument("truncation_compare: margin " + std::to_string(margin) +
                                    " violates the 4t+40 rule (need >= " + std::to_string(required_margin(t_max)) +
                                    " for t_max = " + format_double(t_max) + ")");
    return truncation_compare_unchecked(ic, chain, N, margin, times, tol);
}

std::string matrix_csv(const DenseMatrix& M) {
    CsvWriter csv({"i", "j", "value"});
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j)
            csv.row({std::to_string(i), std::to_string(j), format_double(M(i, j))});
    return csv.str();
}

}  // namespace chainlab
