#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

#include "mfiv/grid.hpp"

namespace mfiv {

enum class SlopeKind { NegTenExp, TenLinear };

/// Evaluate the chosen slope function on a grid: -10 exp(s) or 10 s.
GridCurve true_slope(SlopeKind kind, const SamplingGrid& grid);

struct DgpConfig {
    int t_sample = 1000;        // T
    int m_sim = 200;            // simulation grid resolution on [0, 1]
    double sigma = 0.5;         // noise level scaling the Brownian paths
    SlopeKind beta_true = SlopeKind::NegTenExp;
    std::uint64_t seed = 0;
    double ar_coef = 0.7;
    double ar_intercept = 0.5;
};

/// Deterministic, order-insensitive substream seed for replication `index`.
std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t index);

/// A Brownian path sampled on the weighted grid points, started at a
/// U(-1/2, 1/2) draw at s_0 with independent N(0, delta_j) increments.
struct BrownianPath {
    double start;     // value at s_0 (carries no weight, kept for diagnostics)
    GridCurve curve;  // values at s_1..s_m
};

BrownianPath simulate_brownian(const SamplingGrid& grid, std::mt19937_64& rng);

struct SimulatedSample {
    std::vector<double> y;  // length T
    std::vector<double> w;  // length T
    Eigen::MatrixXd z;      // T x m
    Eigen::MatrixXd b;      // T x m Brownian paths, kept for diagnostics
    std::vector<double> u;  // length T structural errors, Y = <beta, Z> + U exactly
    SamplingGrid grid;      // uniform on [0, 1]
};

/// Draw one sample from the data-generating process:
///   W_t  AR(1) with N(0,1) innovations, 200 burn-in periods from the
///        stationary mean,
///   Z_t(s) = sqrt(s^2 + W_t^2) + sigma B_t(s),
///   U_t  = 0.5 * riemann_integral(B_t) + 0.5 V_t,  V_t ~ N(0,1),
///   Y_t  = <beta, Z_t> + U_t.
SimulatedSample simulate_sample(const DgpConfig& cfg);

}  // namespace mfiv
