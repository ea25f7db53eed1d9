#include "kaczfact/alternating.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>

#include "kaczfact/kernels.hpp"
#include "kaczfact/matrix_ops.hpp"

namespace kaczfact {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMajor> map_of(const DenseMatrix& m) {
    return {m.data().data(), static_cast<Eigen::Index>(m.rows()),
            static_cast<Eigen::Index>(m.cols())};
}

void validate(const SparseMatrix& x, const FactorizationConfig& config) {
    const Index m = x.rows();
    const Index n = x.cols();
    if (config.rank < 1 || config.rank >= std::min(m, n))
        throw RankTooLarge("factorize: rank must satisfy 1 <= k < min(m, n)");
    const auto frac_ok = [](double f) { return f > 0.0 && f <= 1.0; };
    if (!frac_ok(config.row_block_fraction) || !frac_ok(config.col_block_fraction))
        throw InvalidConfig("factorize: block fractions must lie in (0, 1]");
    if (config.trace_interval < 1)
        throw InvalidConfig("factorize: trace interval must be at least 1");
    if (config.solver.subiterations < 1)
        throw InvalidConfig("factorize: need at least one subiteration");
    if (frobenius_norm(x) == 0.0) throw ZeroDataMatrix("factorize: data matrix is zero");
}

// Runs one factorization; owns the update loops, counters and timing.
class Driver {
public:
    Driver(const SparseMatrix& x, const FactorizationConfig& config)
        : x_(x),
          config_(config),
          m_(x.rows()),
          n_(x.cols()),
          x_norm_(frobenius_norm(x)),
          target_rng_(Rng(config.seed).fork(2)),
          block_rng_(Rng(config.seed).fork(3)),
          row_pool_(m_),
          col_pool_(n_),
          r1_(block_size_from_fraction(config.row_block_fraction, m_)),
          r2_(block_size_from_fraction(config.col_block_fraction, n_)),
          schedule_(update_schedule(m_, n_)) {
        Rng init_rng = Rng(config.seed).fork(1);
        factors_ = init_factors(m_, n_, config.rank, init_rng);
    }

    FactorizeResult run() {
        using clock = std::chrono::steady_clock;
        record(0);
        for (Index it = 1; it <= config_.alternating_iterations; ++it) {
            const auto start = clock::now();
            if (config_.scheme == Scheme::Cyclic) {
                cyclic_iteration();
            } else {
                stochastic_iteration();
            }
            wall_seconds_ += std::chrono::duration<double>(clock::now() - start).count();
            factors_.iteration = it;
            factors_.epoch = epoch_of(it, m_, n_, config_.scheme);
            if (it % config_.trace_interval == 0 || it == config_.alternating_iterations)
                record(it);
        }
        return {std::move(factors_), std::move(trace_)};
    }

private:
    void stochastic_iteration() {
        // Tie-break: the side with more updates per step goes first.
        if (m_ >= n_) {
            for (Index u = 0; u < schedule_.row_updates_per_step; ++u) update_row(row_pool_.next(target_rng_));
            for (Index u = 0; u < schedule_.col_updates_per_step; ++u) update_col(col_pool_.next(target_rng_));
        } else {
            for (Index u = 0; u < schedule_.col_updates_per_step; ++u) update_col(col_pool_.next(target_rng_));
            for (Index u = 0; u < schedule_.row_updates_per_step; ++u) update_row(row_pool_.next(target_rng_));
        }
    }

    void cyclic_iteration() {
        for (Index j = 0; j < m_; ++j) update_row(j);
        for (Index i = 0; i < n_; ++i) update_col(i);
    }

    // Replaces S[:, i]; reads rows tau1 of A and X only.
    void update_col(Index i) {
        const SolverSpec& spec = config_.solver;
        if (spec.kind == SolverKind::ExactLS) {
            factors_.s.set_col(i, exact_ls_column(factors_.a, x_, i));
            rows_touched_ += m_;
            return;
        }
        const Index r = spec.kind == SolverKind::RK ? 1 : r1_;
        const Index L = spec.subiterations;
        std::vector<double> weights;
        if (spec.sampling == SamplingKind::Weighted)
            weights = kernels::row_sq_norms_parallel(factors_.a);
        std::vector<double> b_full;
        double epsilon = 0.0;
        if (L > 1) {
            b_full = sparse_dense_column(x_, i);
            epsilon = spec.epsilon < 0.0 ? 1e-8 * norm2(b_full) : spec.epsilon;
        }
        std::vector<double> y = factors_.s.col(i);
        for (Index l = 0; l < L; ++l) {
            const IndexSample tau = spec.sampling == SamplingKind::Weighted
                                        ? weighted_block(weights, r, block_rng_)
                                        : uniform_block(m_, r, block_rng_);
            const DenseMatrix block = row_slice(factors_.a, tau.indices);
            const std::vector<double> b_block = sparse_entry_slice(x_, tau.indices, i);
            y = kaczmarz_project(block, b_block, y);
            rows_touched_ += r;
            if (l + 1 < L && system_residual_norm(factors_.a, y, b_full) < epsilon) break;
        }
        factors_.s.set_col(i, y);
    }

    // Replaces A[j, :]; reads columns tau2 of S and X only.
    void update_row(Index j) {
        const SolverSpec& spec = config_.solver;
        if (spec.kind == SolverKind::ExactLS) {
            factors_.a.set_row(j, exact_ls_row(factors_.s, x_, j));
            cols_touched_ += n_;
            return;
        }
        const Index r = spec.kind == SolverKind::RK ? 1 : r2_;
        const Index L = spec.subiterations;
        std::vector<double> weights;
        if (spec.sampling == SamplingKind::Weighted)
            weights = kernels::col_sq_norms_parallel(factors_.s);
        std::vector<double> b_full;
        DenseMatrix st_full;
        double epsilon = 0.0;
        if (L > 1) {
            b_full = sparse_dense_row(x_, j);
            st_full = col_slice_transposed(factors_.s, IndexSample::full(n_).indices);
            epsilon = spec.epsilon < 0.0 ? 1e-8 * norm2(b_full) : spec.epsilon;
        }
        std::vector<double> y(factors_.a.row(j).begin(), factors_.a.row(j).end());
        for (Index l = 0; l < L; ++l) {
            const IndexSample tau = spec.sampling == SamplingKind::Weighted
                                        ? weighted_block(weights, r, block_rng_)
                                        : uniform_block(n_, r, block_rng_);
            const DenseMatrix block = col_slice_transposed(factors_.s, tau.indices);
            const std::vector<double> b_block = sparse_row_gather(x_, j, tau.indices);
            y = kaczmarz_project(block, b_block, y);
            cols_touched_ += r;
            if (l + 1 < L && system_residual_norm(st_full, y, b_full) < epsilon) break;
        }
        factors_.a.set_row(j, y);
    }

    void record(Index it) {
        TraceRecord rec;
        rec.iteration = it;
        rec.epoch = epoch_of(it, m_, n_, config_.scheme);
        // Serial residual kernel: instrumentation must not wake the OpenMP
        // pool, whose spin-wait would bleed into the next timed section. The
        // value is bit-identical to the parallel kernel's.
        rec.relative_error =
            std::sqrt(kernels::residual_fro_sq_serial(x_, factors_.a, factors_.s, 1024)) /
            x_norm_;
        rec.wall_time_s = wall_seconds_;
        rec.rows_touched = rows_touched_;
        rec.cols_touched = cols_touched_;
        trace_.push_back(rec);
    }

    const SparseMatrix& x_;
    const FactorizationConfig& config_;
    Index m_, n_;
    double x_norm_;
    Rng target_rng_;
    Rng block_rng_;
    WithoutReplacementPool row_pool_;
    WithoutReplacementPool col_pool_;
    Index r1_, r2_;
    UpdateSchedule schedule_;
    FactorPair factors_;
    std::vector<TraceRecord> trace_;
    double wall_seconds_ = 0.0;
    Index rows_touched_ = 0;
    Index cols_touched_ = 0;
};

}  // namespace

Index block_size_from_fraction(double fraction, Index universe) {
    const double scaled = fraction * static_cast<double>(universe);
    const double rounded = std::floor(scaled + 0.5);
    const Index r = rounded < 1.0 ? 1 : static_cast<Index>(rounded);
    return std::min(r, universe);
}

FactorPair init_factors(Index m, Index n, Index k, Rng& rng) {
    if (k >= std::min(m, n)) throw RankTooLarge("init_factors: rank must satisfy k < min(m, n)");
    FactorPair pair;
    pair.a = DenseMatrix(m, k);
    pair.s = DenseMatrix(k, n);
    for (double& v : pair.a.data()) v = rng.next_double();
    for (double& v : pair.s.data()) v = rng.next_double();
    return pair;
}

Index epoch_of(Index iteration, Index m, Index n, Scheme scheme) {
    if (scheme == Scheme::Cyclic) return iteration;
    const Index per_epoch = std::max<Index>(1, std::min(m, n));
    return iteration / per_epoch;
}

FactorizeResult factorize(const SparseMatrix& x, const FactorizationConfig& config) {
    validate(x, config);
    Driver driver(x, config);
    return driver.run();
}

StationarityReport stationarity_check(const DenseMatrix& a_prev,
                                      std::span<const double> a_next_row, const DenseMatrix& s,
                                      const SparseMatrix& x, Index i) {
    if (s.is_zero()) throw ZeroMatrix("stationarity_check: S is zero");
    if (i >= x.rows()) throw IndexOutOfRange("stationarity_check: row out of range");
    const Index k = s.rows();
    const Index n = s.cols();
    if (a_prev.cols() != k || a_next_row.size() != k || x.cols() != n ||
        a_prev.rows() != x.rows())
        throw DimensionMismatch("stationarity_check: shapes do not conform");

    const auto smap = map_of(s);
    Eigen::Map<const Eigen::VectorXd> a_new(a_next_row.data(), static_cast<Eigen::Index>(k));

    // delta = || S (X[i, :]^T - S^T a_new^T) ||
    const std::vector<double> xrow = sparse_dense_row(x, i);
    Eigen::Map<const Eigen::VectorXd> xv(xrow.data(), static_cast<Eigen::Index>(n));
    const Eigen::VectorXd residual = xv - smap.transpose() * a_new;
    const double delta = (smap * residual).norm();

    // lhs = sigma_min(S S^T) * || a_new - a_prev[i, :] ||
    const Eigen::MatrixXd gram = smap * smap.transpose();
    Eigen::BDCSVD<Eigen::MatrixXd> svd(gram);
    const double sigma_min = svd.singularValues()(static_cast<Eigen::Index>(k) - 1);
    Eigen::Map<const Eigen::VectorXd> a_old(a_prev.row(i).data(), static_cast<Eigen::Index>(k));
    const double lhs = sigma_min * (a_new - a_old).norm();

    StationarityReport report;
    report.lhs = lhs;
    report.delta = delta;
    report.satisfied = lhs <= delta + 1e-8 * (1.0 + delta);
    return report;
}

}  // namespace kaczfact
