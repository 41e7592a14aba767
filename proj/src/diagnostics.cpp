#include "mfiv/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

namespace mfiv {

AutocovSummary autocov_diagnostic(const std::vector<GridCurve>& curves, int max_lag) {
    const int t_count = static_cast<int>(curves.size());
    if (t_count < 2) throw std::invalid_argument("autocov_diagnostic: need at least 2 curves");
    if (max_lag < 0 || 2 * max_lag >= t_count)
        throw std::invalid_argument("autocov_diagnostic: require 0 <= max_lag < T/2");
    const SamplingGrid& grid = curves.front().grid;
    for (const auto& c : curves)
        if (c.grid != grid)
            throw std::invalid_argument("autocov_diagnostic: curves on different grids");

    const int m = grid.size();
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(m);
    for (const auto& c : curves) mean += c.values;
    mean /= t_count;

    AutocovSummary summary;
    summary.max_lag = max_lag;
    summary.gamma_norms.resize(max_lag + 1);
    summary.partial_sum = 0.0;
    for (int h = 0; h <= max_lag; ++h) {
        Eigen::VectorXd gamma = Eigen::VectorXd::Zero(m);
        for (int t = 0; t + h < t_count; ++t)
            gamma += (curves[t].values - mean).cwiseProduct(curves[t + h].values - mean);
        gamma /= t_count;
        const double norm1 = (gamma.array().abs() * grid.weights().array()).sum();
        summary.gamma_norms[h] = norm1;
        summary.partial_sum += (h == 0 ? 1.0 : 2.0) * norm1;  // gamma_{-h} = gamma_h
    }
    return summary;
}

std::vector<double> spectrum_report(const DiscretizedOperator& op, int top_k) {
    const int m = op.s_grid.size();
    if (top_k < 1 || top_k > std::min<int>(m, op.u_grid.size()))
        throw std::invalid_argument("spectrum_report: top_k out of range");
    // Singular values of the operator in the weighted basis.
    Eigen::MatrixXd weighted = op.u_grid.weights().array().sqrt().matrix().asDiagonal() *
                               op.kernel *
                               op.s_grid.weights().array().sqrt().matrix().asDiagonal();
    Eigen::BDCSVD<Eigen::MatrixXd> svd(weighted);
    std::vector<double> out(top_k);
    for (int i = 0; i < top_k; ++i) out[i] = svd.singularValues()[i];
    return out;
}

int default_max_lag(int t_sample) {
    return static_cast<int>(std::floor(std::cbrt(static_cast<double>(t_sample))));
}

}  // namespace mfiv
