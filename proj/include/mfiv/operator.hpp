#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mfiv/grid.hpp"
#include "mfiv/instrument.hpp"

namespace mfiv {

/// Estimated moment function r on the u-grid, r(u_i) = (1/T) sum_t Y_t Psi(u_i, W_t).
using MomentCurve = GridCurve;

/// Discretized integral operator. kernel(i, j) holds the kernel estimate
/// k(s_j, u_i) = (1/T) sum_t Z_t(s_j) Psi(u_i, W_t); applications weight by the
/// grid spacings so non-uniform grids work unchanged.
struct DiscretizedOperator {
    Eigen::MatrixXd kernel;  // u-grid rows, s-grid columns
    SamplingGrid s_grid;
    SamplingGrid u_grid;
};

MomentCurve estimate_moment(const std::vector<double>& y, const PsiMatrix& psi);

/// z is the T x m matrix of regressor evaluations on the s-grid.
DiscretizedOperator estimate_kernel(const Eigen::MatrixXd& z, const SamplingGrid& s_grid,
                                    const PsiMatrix& psi);

/// (K phi)(u_i) = sum_j kernel(i, j) phi(s_j) delta_j.
GridCurve apply(const DiscretizedOperator& op, const GridCurve& phi);

/// (K* psi)(s_j) = sum_i kernel(i, j) psi(u_i) delta_i.
GridCurve apply_adjoint(const DiscretizedOperator& op, const GridCurve& psi_curve);

/// Matrix A of K*K in the weighted discrete basis:
/// A(j, j') = sum_i delta_i^u kernel(i, j) kernel(i, j'). Symmetric PSD;
/// applying K*K to phi is A * (delta_s .* phi).
Eigen::MatrixXd normal_matrix(const DiscretizedOperator& op);

}  // namespace mfiv
