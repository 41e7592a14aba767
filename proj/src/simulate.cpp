#include "mfiv/simulate.hpp"

#include <cmath>
#include <stdexcept>

namespace mfiv {

GridCurve true_slope(SlopeKind kind, const SamplingGrid& grid) {
    Eigen::VectorXd v(grid.size());
    for (int j = 0; j < grid.size(); ++j) {
        const double s = grid.point(j);
        v[j] = kind == SlopeKind::NegTenExp ? -10.0 * std::exp(s) : 10.0 * s;
    }
    return GridCurve(grid, std::move(v));
}

std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t index) {
    // splitmix64 finalizer over (master, index); avalanches so consecutive
    // indices give unrelated mt19937_64 seeds.
    std::uint64_t x = master_seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

BrownianPath simulate_brownian(const SamplingGrid& grid, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> start_dist(-0.5, 0.5);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double start = start_dist(rng);
    Eigen::VectorXd values(grid.size());
    double level = start;
    for (int j = 0; j < grid.size(); ++j) {
        level += std::sqrt(grid.weight(j)) * gauss(rng);
        values[j] = level;
    }
    return BrownianPath{start, GridCurve(grid, std::move(values))};
}

SimulatedSample simulate_sample(const DgpConfig& cfg) {
    if (cfg.t_sample < 1) throw std::invalid_argument("simulate_sample: T must be >= 1");
    if (cfg.m_sim < 1) throw std::invalid_argument("simulate_sample: m_sim must be >= 1");
    if (!(cfg.sigma > 0.0)) throw std::invalid_argument("simulate_sample: sigma must be > 0");
    if (!(std::abs(cfg.ar_coef) < 1.0))
        throw std::invalid_argument("simulate_sample: |ar_coef| must be < 1");

    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    const int t_count = cfg.t_sample;
    const int m = cfg.m_sim;
    const SamplingGrid grid = SamplingGrid::uniform(m, 0.0, 1.0);
    const GridCurve beta = true_slope(cfg.beta_true, grid);

    // AR(1) instrument, 200 burn-in periods from the stationary mean.
    const int burn_in = 200;
    std::vector<double> w(t_count);
    double w_cur = cfg.ar_intercept / (1.0 - cfg.ar_coef);
    for (int t = 0; t < burn_in + t_count; ++t) {
        w_cur = cfg.ar_intercept + cfg.ar_coef * w_cur + gauss(rng);
        if (t >= burn_in) w[t - burn_in] = w_cur;
    }

    SimulatedSample out{std::vector<double>(t_count), std::move(w),
                        Eigen::MatrixXd(t_count, m), Eigen::MatrixXd(t_count, m),
                        std::vector<double>(t_count), grid};

    for (int t = 0; t < t_count; ++t) {
        const BrownianPath path = simulate_brownian(grid, rng);
        out.b.row(t) = path.curve.values;
        for (int j = 0; j < m; ++j) {
            const double s = grid.point(j);
            out.z(t, j) = std::sqrt(s * s + out.w[t] * out.w[t]) +
                          cfg.sigma * path.curve.values[j];
        }
        const double v = gauss(rng);
        const double b_integral = riemann_inner_product(
            path.curve, GridCurve(grid, Eigen::VectorXd::Ones(m)));
        out.u[t] = 0.5 * b_integral + 0.5 * v;
        GridCurve z_row(grid, out.z.row(t).transpose());
        out.y[t] = riemann_inner_product(beta, z_row) + out.u[t];
    }
    return out;
}

}  // namespace mfiv
