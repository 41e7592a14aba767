#pragma once

#include <cstdint>
#include <vector>

#include "mfiv/grid.hpp"
#include "mfiv/simulate.hpp"

namespace mfiv {

struct McConfig {
    DgpConfig dgp;
    std::vector<double> alphas;
    int replications = 5000;
    int metric_grid_points = 100;
    std::uint64_t master_seed = 0;
    int threads = 0;  // 0 = hardware concurrency
};

struct IntegratedMetrics {
    double i_bias_sq;
    double i_var;
    double i_mse;
};

/// Riemann-sum approximations of integrated squared bias, variance, and MSE
/// on the metric grid. Estimates and truth are interpolated onto the metric
/// grid first; the decomposition i_mse = i_bias_sq + i_var is exact.
IntegratedMetrics integrated_metrics(const std::vector<GridCurve>& estimates,
                                     const GridCurve& truth,
                                     const SamplingGrid& metric_grid);

struct McReport {
    double alpha;
    IntegratedMetrics metrics;
    GridCurve truth;       // on the metric grid
    GridCurve mean_curve;  // pointwise mean across replications
    GridCurve lo_curve;    // pointwise 2.5% quantile
    GridCurve hi_curve;    // pointwise 97.5% quantile
    int replications;
    std::uint64_t master_seed;
};

/// Replicated experiment: one report per alpha. Deterministic given the
/// master seed regardless of thread count; replication r uses the RNG
/// substream substream_seed(master_seed, r).
std::vector<McReport> run_mc(const McConfig& cfg);

struct InfillRow {
    int m;
    double disc_error;  // mean ||beta_m - beta_ref|| against the finest grid
    double i_mse;
};

/// Infill-refinement experiment: paths are simulated at m_ref = 2 * max(m_values)
/// and subsampled, so coarser fits differ from the reference only through the
/// quadrature. Uses cfg.alphas.front(); every m must divide m_ref.
std::vector<InfillRow> run_infill_experiment(const McConfig& cfg,
                                             const std::vector<int>& m_values);

}  // namespace mfiv
