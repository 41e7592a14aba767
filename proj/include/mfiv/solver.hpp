#pragma once

#include <vector>

#include "mfiv/grid.hpp"
#include "mfiv/operator.hpp"

namespace mfiv {

enum class SolveMethod { CholeskyPD, FallbackSymmetric };

struct TikhonovFit {
    GridCurve beta_hat;       // on the operator's s-grid
    double alpha;
    double residual_norm;     // ||K beta_hat - r|| on the u-grid
    double normal_residual;   // ||(alpha I + K*K) beta_hat - K*r|| on the s-grid
    SolveMethod solve_method;
};

/// Closed-form Tikhonov solve of (alpha I + K*K) beta = K*r. The system is
/// symmetrized with the square-root weight substitution, so on uniform grids
/// it reduces to the ridge-type matrix expression exactly.
TikhonovFit tikhonov_solve(const DiscretizedOperator& op, const MomentCurve& r, double alpha);

/// One fit per alpha, sharing a single eigendecomposition of the normal matrix.
std::vector<TikhonovFit> regularization_path(const DiscretizedOperator& op,
                                             const MomentCurve& r,
                                             const std::vector<double>& alphas);

struct AlphaSelection {
    std::vector<double> alpha_grid;
    std::vector<double> rss_values;
    double alpha_star;
};

/// Residual-based selection: RSS(alpha) = alpha^{-1} ||K beta_alpha - r||^2,
/// minimized over the grid with ties broken toward larger alpha. Grid points
/// with non-finite RSS are excluded with a warning.
AlphaSelection select_alpha(const DiscretizedOperator& op, const MomentCurve& r,
                            const std::vector<double>& alpha_grid);

/// 50 log-spaced points in [1e-8, 1e-1].
std::vector<double> default_alpha_grid();

/// Rate-balancing diagnostic alpha ~ T^{-1/(2 gamma + 1)}; gamma is a
/// source-condition input, not estimated.
double rate_balanced_alpha(double t_sample, double gamma);

}  // namespace mfiv
