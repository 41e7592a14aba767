#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mfiv/grid.hpp"

namespace mfiv {

enum class InstrumentKind { LogisticCdf, Indicator };

struct InstrumentSpec {
    InstrumentKind kind = InstrumentKind::LogisticCdf;
    bool standardize_w = false;
};

/// Logistic CDF instrument 1 / (1 + exp(-u*w)). Bounded in (0,1).
double psi_logistic(double u, double w);

/// Indicator instrument 1{w <= u}.
double psi_indicator(double u, double w);

/// m x T matrix of instrument evaluations, entry (i,t) = Psi(u_i, W_t).
struct PsiMatrix {
    Eigen::MatrixXd entries;
    SamplingGrid u_grid;
};

/// Build the evaluation matrix on the u-grid. When spec.standardize_w is set,
/// W is standardized to zero mean and unit variance first (rejected if the
/// sample standard deviation is zero).
PsiMatrix build_psi_matrix(const InstrumentSpec& spec, const SamplingGrid& u_grid,
                           const std::vector<double>& w);

}  // namespace mfiv
