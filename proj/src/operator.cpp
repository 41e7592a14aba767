#include "mfiv/operator.hpp"

#include <stdexcept>

namespace mfiv {

MomentCurve estimate_moment(const std::vector<double>& y, const PsiMatrix& psi) {
    const int t_count = static_cast<int>(y.size());
    if (t_count != psi.entries.cols())
        throw std::invalid_argument("estimate_moment: Y length does not match Psi columns");
    Eigen::Map<const Eigen::VectorXd> yv(y.data(), t_count);
    Eigen::VectorXd r = psi.entries * yv / static_cast<double>(t_count);
    return MomentCurve(psi.u_grid, std::move(r));
}

DiscretizedOperator estimate_kernel(const Eigen::MatrixXd& z, const SamplingGrid& s_grid,
                                    const PsiMatrix& psi) {
    if (z.rows() != psi.entries.cols())
        throw std::invalid_argument("estimate_kernel: Z rows do not match Psi columns");
    if (z.cols() != s_grid.size())
        throw std::invalid_argument("estimate_kernel: Z columns do not match s-grid size");
    Eigen::MatrixXd kernel = psi.entries * z / static_cast<double>(z.rows());
    return DiscretizedOperator{std::move(kernel), s_grid, psi.u_grid};
}

GridCurve apply(const DiscretizedOperator& op, const GridCurve& phi) {
    if (phi.grid != op.s_grid)
        throw std::invalid_argument("apply: curve not on the operator's s-grid");
    Eigen::VectorXd out =
        op.kernel * (phi.values.array() * op.s_grid.weights().array()).matrix();
    return GridCurve(op.u_grid, std::move(out));
}

GridCurve apply_adjoint(const DiscretizedOperator& op, const GridCurve& psi_curve) {
    if (psi_curve.grid != op.u_grid)
        throw std::invalid_argument("apply_adjoint: curve not on the operator's u-grid");
    Eigen::VectorXd out =
        op.kernel.transpose() *
        (psi_curve.values.array() * op.u_grid.weights().array()).matrix();
    return GridCurve(op.s_grid, std::move(out));
}

Eigen::MatrixXd normal_matrix(const DiscretizedOperator& op) {
    Eigen::MatrixXd weighted =
        op.u_grid.weights().array().sqrt().matrix().asDiagonal() * op.kernel;
    // A = kernel^T diag(delta_u) kernel, assembled symmetrically
    Eigen::MatrixXd a = weighted.transpose() * weighted;
    return 0.5 * (a + a.transpose());
}

}  // namespace mfiv
