#pragma once

#include <vector>

#include "mfiv/grid.hpp"
#include "mfiv/operator.hpp"

namespace mfiv {

struct AutocovSummary {
    std::vector<double> gamma_norms;  // ||gamma_h||_1 for h = 0..max_lag
    double partial_sum;               // sum over |h| <= max_lag (lags h != 0 counted twice)
    int max_lag;
};

/// Diagonal autocovariance summability diagnostic for a curve-valued sample:
/// after pointwise demeaning, gamma_h(s, s) is the lag-h sample autocovariance
/// at each grid point and ||gamma_h||_1 its Riemann-sum L1 norm on the
/// diagonal. Requires max_lag < T/2.
AutocovSummary autocov_diagnostic(const std::vector<GridCurve>& curves, int max_lag);

/// Leading singular values of the weighted kernel operator, sorted decreasing.
std::vector<double> spectrum_report(const DiscretizedOperator& op, int top_k);

/// Default lag truncation floor(T^{1/3}).
int default_max_lag(int t_sample);

}  // namespace mfiv
