#include "mfiv/instrument.hpp"

#include <cmath>
#include <stdexcept>

namespace mfiv {

double psi_logistic(double u, double w) {
    return 1.0 / (1.0 + std::exp(-u * w));
}

double psi_indicator(double u, double w) {
    return w <= u ? 1.0 : 0.0;
}

PsiMatrix build_psi_matrix(const InstrumentSpec& spec, const SamplingGrid& u_grid,
                           const std::vector<double>& w) {
    const int t_count = static_cast<int>(w.size());
    if (t_count < 1) throw std::invalid_argument("build_psi_matrix: empty instrument sample");

    std::vector<double> wt = w;
    if (spec.standardize_w) {
        double mean = 0.0;
        for (double v : w) mean += v;
        mean /= t_count;
        double var = 0.0;
        for (double v : w) var += (v - mean) * (v - mean);
        var /= t_count;
        if (!(var > 0.0))
            throw std::invalid_argument("build_psi_matrix: zero-variance W under standardization");
        const double sd = std::sqrt(var);
        for (double& v : wt) v = (v - mean) / sd;
    }

    const int m = u_grid.size();
    Eigen::MatrixXd entries(m, t_count);
    for (int t = 0; t < t_count; ++t) {
        for (int i = 0; i < m; ++i) {
            const double u = u_grid.point(i);
            entries(i, t) = spec.kind == InstrumentKind::LogisticCdf
                                ? psi_logistic(u, wt[t])
                                : psi_indicator(u, wt[t]);
        }
    }
    return PsiMatrix{std::move(entries), u_grid};
}

}  // namespace mfiv
