#include "mfiv/solver.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace mfiv {

namespace {

struct SymmetrizedSystem {
    Eigen::VectorXd sqrt_w;   // sqrt of the s-grid weights
    Eigen::MatrixXd s_mat;    // D^{1/2} A D^{1/2}
    Eigen::VectorXd rhs;      // D^{1/2} (K* r)
    Eigen::VectorXd kstar_r;  // K* r on the s-grid
};

SymmetrizedSystem build_system(const DiscretizedOperator& op, const MomentCurve& r) {
    if (r.grid != op.u_grid)
        throw std::invalid_argument("tikhonov_solve: moment curve not on the operator's u-grid");
    SymmetrizedSystem sys;
    sys.sqrt_w = op.s_grid.weights().array().sqrt();
    const Eigen::MatrixXd a = normal_matrix(op);
    sys.s_mat = sys.sqrt_w.asDiagonal() * a * sys.sqrt_w.asDiagonal();
    sys.kstar_r = apply_adjoint(op, r).values;
    sys.rhs = sys.sqrt_w.asDiagonal() * sys.kstar_r;
    return sys;
}

TikhonovFit finish_fit(const DiscretizedOperator& op, const MomentCurve& r,
                       const SymmetrizedSystem& sys, double alpha,
                       const Eigen::VectorXd& gamma, SolveMethod method) {
    Eigen::VectorXd beta = gamma.array() / sys.sqrt_w.array();
    GridCurve beta_curve(op.s_grid, std::move(beta));

    GridCurve k_beta = apply(op, beta_curve);
    GridCurve resid(op.u_grid, k_beta.values - r.values);
    const double residual_norm = l2_norm(resid);

    // Pointwise normal-equation residual on the s-grid.
    GridCurve kstar_k_beta = apply_adjoint(op, k_beta);
    GridCurve normal_resid(op.s_grid, alpha * beta_curve.values + kstar_k_beta.values -
                                          sys.kstar_r);
    const double normal_residual = l2_norm(normal_resid);

    return TikhonovFit{std::move(beta_curve), alpha, residual_norm, normal_residual, method};
}

}  // namespace

TikhonovFit tikhonov_solve(const DiscretizedOperator& op, const MomentCurve& r, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("tikhonov_solve: alpha must be positive");
    const SymmetrizedSystem sys = build_system(op, r);
    Eigen::MatrixXd lhs = sys.s_mat;
    lhs.diagonal().array() += alpha;

    Eigen::LLT<Eigen::MatrixXd> llt(lhs);
    if (llt.info() == Eigen::Success)
        return finish_fit(op, r, sys, alpha, llt.solve(sys.rhs), SolveMethod::CholeskyPD);

    Eigen::LDLT<Eigen::MatrixXd> ldlt(lhs);
    if (ldlt.info() != Eigen::Success)
        throw std::runtime_error("tikhonov_solve: symmetric factorization failed");
    return finish_fit(op, r, sys, alpha, ldlt.solve(sys.rhs), SolveMethod::FallbackSymmetric);
}

std::vector<TikhonovFit> regularization_path(const DiscretizedOperator& op,
                                             const MomentCurve& r,
                                             const std::vector<double>& alphas) {
    for (double a : alphas)
        if (!(a > 0.0))
            throw std::invalid_argument("regularization_path: alphas must be positive");
    const SymmetrizedSystem sys = build_system(op, r);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sys.s_mat);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("regularization_path: eigendecomposition failed");
    const Eigen::VectorXd proj = eig.eigenvectors().transpose() * sys.rhs;

    std::vector<TikhonovFit> fits;
    fits.reserve(alphas.size());
    for (double alpha : alphas) {
        Eigen::VectorXd scaled = proj.array() / (eig.eigenvalues().array() + alpha);
        Eigen::VectorXd gamma = eig.eigenvectors() * scaled;
        fits.push_back(finish_fit(op, r, sys, alpha, gamma, SolveMethod::CholeskyPD));
    }
    return fits;
}

AlphaSelection select_alpha(const DiscretizedOperator& op, const MomentCurve& r,
                            const std::vector<double>& alpha_grid) {
    if (alpha_grid.empty()) throw std::invalid_argument("select_alpha: empty alpha grid");
    const std::vector<TikhonovFit> fits = regularization_path(op, r, alpha_grid);

    AlphaSelection sel;
    sel.alpha_grid = alpha_grid;
    sel.rss_values.resize(alpha_grid.size());
    double best = std::numeric_limits<double>::infinity();
    double best_alpha = std::numeric_limits<double>::quiet_NaN();
    bool any = false;
    for (std::size_t i = 0; i < fits.size(); ++i) {
        const double rss =
            fits[i].residual_norm * fits[i].residual_norm / alpha_grid[i];
        sel.rss_values[i] = rss;
        if (!std::isfinite(rss)) {
            std::cerr << "select_alpha: non-finite RSS at alpha=" << alpha_grid[i]
                      << ", excluded\n";
            continue;
        }
        // Ties broken toward larger alpha.
        if (rss < best || (rss == best && alpha_grid[i] > best_alpha)) {
            best = rss;
            best_alpha = alpha_grid[i];
            any = true;
        }
    }
    if (!any) throw std::runtime_error("select_alpha: all grid points had non-finite RSS");
    sel.alpha_star = best_alpha;
    return sel;
}

std::vector<double> default_alpha_grid() {
    const int n = 50;
    const double lo = std::log(1e-8);
    const double hi = std::log(1e-1);
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i) grid[i] = std::exp(lo + (hi - lo) * i / (n - 1));
    return grid;
}

double rate_balanced_alpha(double t_sample, double gamma) {
    if (!(t_sample > 0.0) || !(gamma > 0.0))
        throw std::invalid_argument("rate_balanced_alpha: need T > 0 and gamma > 0");
    return std::pow(t_sample, -1.0 / (2.0 * gamma + 1.0));
}

}  // namespace mfiv
