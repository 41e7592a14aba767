#include "mfiv/mc.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "mfiv/instrument.hpp"
#include "mfiv/operator.hpp"
#include "mfiv/solver.hpp"

namespace mfiv {

namespace {

// Type-7 empirical quantile: linear interpolation between order statistics.
double quantile_sorted(const std::vector<double>& sorted, double p) {
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double pos = p * static_cast<double>(n - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= n) return sorted[n - 1];
    const double frac = pos - static_cast<double>(lo);
    return (1.0 - frac) * sorted[lo] + frac * sorted[lo + 1];
}

GridCurve pointwise_quantile(const std::vector<GridCurve>& curves,
                             const SamplingGrid& grid, double p) {
    Eigen::VectorXd out(grid.size());
    std::vector<double> column(curves.size());
    for (int j = 0; j < grid.size(); ++j) {
        for (std::size_t r = 0; r < curves.size(); ++r) column[r] = curves[r].values[j];
        std::sort(column.begin(), column.end());
        out[j] = quantile_sorted(column, p);
    }
    return GridCurve(grid, std::move(out));
}

// Runs `body(r)` for r in [0, count) across threads; results are indexed by r
// so the aggregation downstream is order-insensitive.
template <typename Body>
void parallel_for(int count, int threads, const Body& body) {
    int n = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    n = std::min(n, count);
    if (n <= 1) {
        for (int r = 0; r < count; ++r) body(r);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (int k = 0; k < n; ++k) {
        pool.emplace_back([&, k] {
            try {
                for (int r = k; r < count; r += n) body(r);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace

IntegratedMetrics integrated_metrics(const std::vector<GridCurve>& estimates,
                                     const GridCurve& truth,
                                     const SamplingGrid& metric_grid) {
    if (estimates.size() < 2)
        throw std::invalid_argument("integrated_metrics: need at least 2 estimates");

    const GridCurve truth_m = interpolate_linear(truth, metric_grid);
    std::vector<GridCurve> est_m;
    est_m.reserve(estimates.size());
    for (const auto& e : estimates) est_m.push_back(interpolate_linear(e, metric_grid));

    const double n = static_cast<double>(est_m.size());
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(metric_grid.size());
    for (const auto& e : est_m) mean += e.values;
    mean /= n;
    const GridCurve mean_curve(metric_grid, mean);

    GridCurve bias_curve(metric_grid, mean - truth_m.values);
    const double i_bias_sq = riemann_inner_product(bias_curve, bias_curve);

    double i_var = 0.0;
    double i_mse = 0.0;
    for (const auto& e : est_m) {
        GridCurve dev(metric_grid, e.values - mean);
        GridCurve err(metric_grid, e.values - truth_m.values);
        i_var += riemann_inner_product(dev, dev);
        i_mse += riemann_inner_product(err, err);
    }
    i_var /= n;
    i_mse /= n;
    return IntegratedMetrics{i_bias_sq, i_var, i_mse};
}

std::vector<McReport> run_mc(const McConfig& cfg) {
    if (cfg.replications < 2)
        throw std::invalid_argument("run_mc: need at least 2 replications");
    if (cfg.alphas.empty()) throw std::invalid_argument("run_mc: empty alpha list");

    // Metric grid no finer than the simulation grid, so estimates are never
    // evaluated below their first grid point.
    const SamplingGrid metric_grid = SamplingGrid::uniform(
        std::min(cfg.metric_grid_points, cfg.dgp.m_sim), 0.0, 1.0);
    const GridCurve truth = true_slope(cfg.dgp.beta_true, metric_grid);
    const std::size_t n_alpha = cfg.alphas.size();

    // estimates[a][r]: replication r's fit for alpha a, on the metric grid.
    std::vector<std::vector<GridCurve>> estimates(n_alpha);
    for (auto& v : estimates)
        v.assign(cfg.replications,
                 GridCurve(metric_grid, Eigen::VectorXd::Zero(metric_grid.size())));

    const InstrumentSpec instrument{};  // logistic CDF, raw W, per the DGP
    parallel_for(cfg.replications, cfg.threads, [&](int r) {
        DgpConfig dgp = cfg.dgp;
        dgp.seed = substream_seed(cfg.master_seed, static_cast<std::uint64_t>(r));
        try {
            const SimulatedSample sample = simulate_sample(dgp);
            const PsiMatrix psi = build_psi_matrix(instrument, sample.grid, sample.w);
            const MomentCurve moment = estimate_moment(sample.y, psi);
            const DiscretizedOperator op = estimate_kernel(sample.z, sample.grid, psi);
            const std::vector<TikhonovFit> fits = regularization_path(op, moment, cfg.alphas);
            for (std::size_t a = 0; a < n_alpha; ++a)
                estimates[a][r] = interpolate_linear(fits[a].beta_hat, metric_grid);
        } catch (const std::exception& e) {
            throw std::runtime_error("run_mc: replication " + std::to_string(r) +
                                     " (substream seed " + std::to_string(dgp.seed) +
                                     ") failed: " + e.what());
        }
    });

    std::vector<McReport> reports;
    reports.reserve(n_alpha);
    for (std::size_t a = 0; a < n_alpha; ++a) {
        Eigen::VectorXd mean = Eigen::VectorXd::Zero(metric_grid.size());
        for (const auto& e : estimates[a]) mean += e.values;
        mean /= static_cast<double>(cfg.replications);
        reports.push_back(McReport{
            cfg.alphas[a], integrated_metrics(estimates[a], truth, metric_grid), truth,
            GridCurve(metric_grid, std::move(mean)),
            pointwise_quantile(estimates[a], metric_grid, 0.025),
            pointwise_quantile(estimates[a], metric_grid, 0.975), cfg.replications,
            cfg.master_seed});
    }
    return reports;
}

std::vector<InfillRow> run_infill_experiment(const McConfig& cfg,
                                             const std::vector<int>& m_values) {
    if (m_values.empty()) throw std::invalid_argument("run_infill_experiment: empty m list");
    if (!std::is_sorted(m_values.begin(), m_values.end()))
        throw std::invalid_argument("run_infill_experiment: m values must be increasing");
    if (cfg.alphas.empty())
        throw std::invalid_argument("run_infill_experiment: no alpha configured");
    const int m_ref = 2 * m_values.back();
    for (int m : m_values)
        if (m < 1 || m_ref % m != 0)
            throw std::invalid_argument(
                "run_infill_experiment: every m must divide the reference resolution");

    const double alpha = cfg.alphas.front();
    const int reps = std::max(cfg.replications, 1);
    // Comparison grid no finer than the coarsest estimate, so no fit is
    // evaluated below its first grid point.
    const SamplingGrid metric_grid = SamplingGrid::uniform(
        std::min(cfg.metric_grid_points, m_values.front()), 0.0, 1.0);
    const GridCurve truth = true_slope(cfg.dgp.beta_true, metric_grid);

    std::vector<int> all_m = m_values;
    all_m.push_back(m_ref);
    const std::size_t n_m = all_m.size();

    std::vector<std::vector<GridCurve>> estimates(n_m);
    for (auto& v : estimates)
        v.assign(reps, GridCurve(metric_grid, Eigen::VectorXd::Zero(metric_grid.size())));

    const InstrumentSpec instrument{};
    parallel_for(reps, cfg.threads, [&](int r) {
        DgpConfig dgp = cfg.dgp;
        dgp.m_sim = m_ref;
        dgp.seed = substream_seed(cfg.master_seed, static_cast<std::uint64_t>(r));
        const SimulatedSample sample = simulate_sample(dgp);
        for (std::size_t k = 0; k < n_m; ++k) {
            const int m = all_m[k];
            const int stride = m_ref / m;
            const SamplingGrid grid = SamplingGrid::uniform(m, 0.0, 1.0);
            Eigen::MatrixXd z(sample.z.rows(), m);
            for (int j = 0; j < m; ++j) z.col(j) = sample.z.col((j + 1) * stride - 1);
            const PsiMatrix psi = build_psi_matrix(instrument, grid, sample.w);
            const MomentCurve moment = estimate_moment(sample.y, psi);
            const DiscretizedOperator op = estimate_kernel(z, grid, psi);
            const TikhonovFit fit = tikhonov_solve(op, moment, alpha);
            estimates[k][r] = interpolate_linear(fit.beta_hat, metric_grid);
        }
    });

    std::vector<InfillRow> rows;
    rows.reserve(m_values.size());
    for (std::size_t k = 0; k < m_values.size(); ++k) {
        double disc = 0.0;
        for (int r = 0; r < reps; ++r) {
            GridCurve diff(metric_grid,
                           estimates[k][r].values - estimates[n_m - 1][r].values);
            disc += l2_norm(diff);
        }
        disc /= reps;
        double mse;
        if (reps >= 2) {
            mse = integrated_metrics(estimates[k], truth, metric_grid).i_mse;
        } else {
            GridCurve err(metric_grid, estimates[k][0].values - truth.values);
            mse = riemann_inner_product(err, err);
        }
        rows.push_back(InfillRow{m_values[k], disc, mse});
    }
    return rows;
}

}  // namespace mfiv
