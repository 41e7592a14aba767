// Acceptance suite: end-to-end statistical and numerical gates, one
// pass/fail line per criterion. Exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mfiv/grid.hpp"
#include "mfiv/instrument.hpp"
#include "mfiv/mc.hpp"
#include "mfiv/operator.hpp"
#include "mfiv/simulate.hpp"
#include "mfiv/solver.hpp"

using namespace mfiv;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << criterion << ": " << detail
              << std::endl;
    if (!pass) ++g_failures;
}

bool within(double value, double target, double rel_tol) {
    return std::abs(value - target) <= rel_tol * target;
}

GridCurve random_curve(const SamplingGrid& g, std::mt19937_64& rng) {
    std::normal_distribution<double> d(0.0, 1.0);
    Eigen::VectorXd v(g.size());
    for (int j = 0; j < g.size(); ++j) v[j] = d(rng);
    return GridCurve(g, std::move(v));
}

DiscretizedOperator random_operator(int m, std::mt19937_64& rng) {
    std::normal_distribution<double> d(0.0, 1.0);
    Eigen::MatrixXd kernel(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) kernel(i, j) = d(rng);
    const auto g = SamplingGrid::uniform(m, 0.0, 1.0);
    return DiscretizedOperator{std::move(kernel), g, g};
}

Eigen::VectorXd dense_oracle_solve(const DiscretizedOperator& op, const MomentCurve& r,
                                   double alpha) {
    const int m = op.s_grid.size();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
    for (int j = 0; j < m; ++j)
        for (int jp = 0; jp < m; ++jp)
            for (int i = 0; i < op.u_grid.size(); ++i)
                a(j, jp) += op.u_grid.weight(i) * op.kernel(i, j) * op.kernel(i, jp);
    Eigen::MatrixXd lhs =
        alpha * Eigen::MatrixXd::Identity(m, m) + a * op.s_grid.weights().asDiagonal();
    Eigen::VectorXd rhs(m);
    for (int j = 0; j < m; ++j) {
        rhs[j] = 0.0;
        for (int i = 0; i < op.u_grid.size(); ++i)
            rhs[j] += op.u_grid.weight(i) * op.kernel(i, j) * r.values[i];
    }
    return lhs.completeOrthogonalDecomposition().solve(rhs);
}

std::string read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

// --- criteria 1-4: Monte Carlo table replication ------------------------

void criteria_mc() {
    const bool full = std::getenv("MFIV_FULL_MC") != nullptr;
    const int reps = full ? 5000 : 500;
    const double tol = full ? 0.08 : 0.20;

    McConfig cfg;
    cfg.dgp.sigma = 0.5;
    cfg.dgp.beta_true = SlopeKind::NegTenExp;
    cfg.alphas = {1e-5, 1e-6, 1e-7};
    cfg.replications = reps;
    cfg.master_seed = 20260825;

    cfg.dgp.t_sample = 1000;
    const auto rep_1000 = run_mc(cfg);
    cfg.dgp.t_sample = 100;
    const auto rep_100 = run_mc(cfg);

    const double mse_100 = rep_100[1].metrics.i_mse;    // alpha = 1e-6
    const double mse_1000 = rep_1000[1].metrics.i_mse;
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "i-MSE(T=100)=%.4f vs 1.0723, i-MSE(T=1000)=%.4f vs 0.1944 "
                  "(%d reps, tol %.0f%%)",
                  mse_100, mse_1000, reps, tol * 100);
    report(1, within(mse_100, 1.0723, tol) && within(mse_1000, 0.1944, tol), buf);

    McConfig lin = cfg;
    lin.dgp.t_sample = 1000;
    lin.dgp.beta_true = SlopeKind::TenLinear;
    lin.alphas = {1e-6};
    const auto rep_lin = run_mc(lin);
    std::snprintf(buf, sizeof(buf), "i-MSE(T=1000, beta=10s)=%.4f vs 0.2315 (tol %.0f%%)",
                  rep_lin[0].metrics.i_mse, tol * 100);
    report(2, within(rep_lin[0].metrics.i_mse, 0.2315, tol), buf);

    const bool bias_dec = rep_1000[0].metrics.i_bias_sq > rep_1000[1].metrics.i_bias_sq &&
                          rep_1000[1].metrics.i_bias_sq > rep_1000[2].metrics.i_bias_sq;
    const bool var_inc = rep_1000[0].metrics.i_var < rep_1000[1].metrics.i_var &&
                         rep_1000[1].metrics.i_var < rep_1000[2].metrics.i_var;
    std::snprintf(buf, sizeof(buf),
                  "bias %.4f > %.4f > %.4f and var %.4f < %.4f < %.4f across alpha "
                  "1e-5 -> 1e-6 -> 1e-7",
                  rep_1000[0].metrics.i_bias_sq, rep_1000[1].metrics.i_bias_sq,
                  rep_1000[2].metrics.i_bias_sq, rep_1000[0].metrics.i_var,
                  rep_1000[1].metrics.i_var, rep_1000[2].metrics.i_var);
    report(3, bias_dec && var_inc, buf);

    const double ratio = rep_100[1].metrics.i_var / rep_1000[1].metrics.i_var;
    std::snprintf(buf, sizeof(buf), "i-Var(T=100)/i-Var(T=1000) = %.2f, required in [6, 16]",
                  ratio);
    report(4, ratio >= 6.0 && ratio <= 16.0, buf);
}

// --- criterion 5: solver oracle equivalence -----------------------------

void criterion_solver_oracle() {
    std::mt19937_64 rng(501);
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    for (int it = 0; it < 50; ++it) {
        const int m = 2 + static_cast<int>(rng() % 19);
        auto op = random_operator(m, rng);
        auto r = random_curve(op.u_grid, rng);
        const double alpha = std::pow(10.0, -1.0 - static_cast<double>(rng() % 5));
        const auto fit = tikhonov_solve(op, r, alpha);
        const Eigen::VectorXd oracle = dense_oracle_solve(op, r, alpha);
        const double rel =
            (fit.beta_hat.values - oracle).norm() / std::max(1.0, oracle.norm());
        if (rel > 1e-10) ok = false;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "50 instances (m <= 20) vs dense oracle at 1e-10, %.3f s", secs);
    report(5, ok && secs < 1.0, buf);
}

// --- criterion 6: adjoint identity --------------------------------------

void criterion_adjoint() {
    std::mt19937_64 rng(601);
    bool ok = true;
    for (int it = 0; it < 100; ++it) {
        auto op = random_operator(8 + static_cast<int>(rng() % 8), rng);
        auto phi = random_curve(op.s_grid, rng);
        auto psi = random_curve(op.u_grid, rng);
        const double lhs = riemann_inner_product(apply(op, phi), psi);
        const double rhs = riemann_inner_product(phi, apply_adjoint(op, psi));
        if (std::abs(lhs - rhs) > 1e-10 * std::max(1.0, std::abs(rhs))) ok = false;
    }
    report(6, ok, "<K phi, psi> = <phi, K* psi> over 100 random pairs at 1e-10");
}

// --- criterion 7: shrinkage along the path ------------------------------

void criterion_shrinkage() {
    std::mt19937_64 rng(701);
    bool ok = true;
    for (int instance = 0; instance < 5; ++instance) {
        auto op = random_operator(25, rng);
        auto r = random_curve(op.u_grid, rng);
        const auto alphas = default_alpha_grid();
        const auto path = regularization_path(op, r, alphas);
        const double kstar_r_norm = l2_norm(apply_adjoint(op, r));
        for (std::size_t i = 0; i < path.size(); ++i) {
            if (i > 0 &&
                l2_norm(path[i].beta_hat) > l2_norm(path[i - 1].beta_hat) * (1 + 1e-12))
                ok = false;
            if (l2_norm(path[i].beta_hat) > kstar_r_norm / alphas[i] * (1 + 1e-10)) ok = false;
        }
    }
    report(7, ok, "||beta_alpha|| nonincreasing along 50-point paths; bound ||K*r||/alpha");
}

// --- criterion 8: infill refinement -------------------------------------

void criterion_infill() {
    McConfig cfg;
    cfg.dgp.t_sample = 500;
    cfg.dgp.sigma = 0.5;
    cfg.alphas = {1e-5};
    cfg.replications = 1;  // fixed data: pure quadrature refinement
    cfg.master_seed = 808;
    const auto rows = run_infill_experiment(cfg, {50, 100, 200, 400});
    bool ok = true;
    std::string detail = "||beta_m - beta_800|| =";
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (k > 0 && !(rows[k].disc_error < rows[k - 1].disc_error)) ok = false;
        char buf[48];
        std::snprintf(buf, sizeof(buf), " %.3e(m=%d)", rows[k].disc_error, rows[k].m);
        detail += buf;
    }
    report(8, ok, detail + ", strictly decreasing");
}

// --- criterion 9: DGP statistics ----------------------------------------

void criterion_dgp() {
    const auto g = SamplingGrid::uniform(4, 0.0, 1.0);
    std::mt19937_64 rng(901);
    const int paths = 100'000;
    double sum = 0.0, sumsq = 0.0;
    for (int p = 0; p < paths; ++p) {
        const auto path = simulate_brownian(g, rng);
        const double inc = path.curve.values[3] - path.start;
        sum += inc;
        sumsq += inc * inc;
    }
    const double mean_inc = sum / paths;
    const double var_inc = sumsq / paths - mean_inc * mean_inc;

    DgpConfig cfg;
    cfg.t_sample = 100'000;
    cfg.m_sim = 4;
    cfg.seed = 902;
    const auto sample = simulate_sample(cfg);
    double w_mean = 0.0;
    for (double w : sample.w) w_mean += w;
    w_mean /= cfg.t_sample;
    double w_var = 0.0;
    for (double w : sample.w) w_var += (w - w_mean) * (w - w_mean);
    w_var /= cfg.t_sample;

    double u_mean = 0.0;
    for (double u : sample.u) u_mean += u;
    u_mean /= cfg.t_sample;
    double suu = 0.0, sww = 0.0, swu = 0.0;
    for (int t = 0; t < cfg.t_sample; ++t) {
        suu += (sample.u[t] - u_mean) * (sample.u[t] - u_mean);
        sww += (sample.w[t] - w_mean) * (sample.w[t] - w_mean);
        swu += (sample.w[t] - w_mean) * (sample.u[t] - u_mean);
    }
    const double corr_wu = swu / std::sqrt(suu * sww);

    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "Var[B(1)-B(0)]=%.4f (1 +/- 0.02), E[W]=%.4f (5/3 +/- 2%%), "
                  "Var[W]=%.4f (1/0.51 +/- 5%%), |corr(W,U)|=%.4f (< 0.03)",
                  var_inc, w_mean, w_var, std::abs(corr_wu));
    const bool ok = std::abs(var_inc - 1.0) <= 0.02 &&
                    std::abs(w_mean - 5.0 / 3.0) <= 0.02 * (5.0 / 3.0) &&
                    std::abs(w_var - 1.0 / 0.51) <= 0.05 * (1.0 / 0.51) &&
                    std::abs(corr_wu) < 0.03;
    report(9, ok, buf);
}

// --- criterion 10: CLI determinism --------------------------------------

void criterion_determinism() {
#ifdef MFIV_CLI_PATH
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "mfiv_accept";
    fs::create_directories(dir);
    const std::string cli = MFIV_CLI_PATH;
    bool ok = true;
    std::string detail;

    const auto run_twice = [&](const std::string& args, const std::string& out_name) {
        const std::string out_a = (dir / (out_name + ".a")).string();
        const std::string out_b = (dir / (out_name + ".b")).string();
        const std::string cmd_a = cli + " " + args + " --out " + out_a + " > /dev/null";
        const std::string cmd_b = cli + " " + args + " --out " + out_b + " > /dev/null";
        if (std::system(cmd_a.c_str()) != 0 || std::system(cmd_b.c_str()) != 0) {
            ok = false;
            detail += out_name + ": run failed; ";
            return;
        }
        if (read_bytes(out_a) != read_bytes(out_b)) {
            ok = false;
            detail += out_name + ": outputs differ; ";
        }
    };

    run_twice("simulate --T 50 --m 40 --sigma 0.5 --seed 17", "sample.csv");
    run_twice("mc --T 60 --m 40 --reps 10 --alphas 1e-5 1e-6 --seed 23 --threads 4",
              "mc_report.csv");
    run_twice("infill --T 60 --m-values 20 40 --reps 2 --seed 29", "infill.csv");
    report(10, ok, ok ? "simulate/mc/infill reruns byte-identical" : detail);
    fs::remove_all(dir);
#else
    report(10, false, "CLI path not configured at build time");
#endif
}

}  // namespace

int main() {
    criterion_solver_oracle();
    criterion_adjoint();
    criterion_shrinkage();
    criterion_dgp();
    criterion_infill();
    criterion_determinism();
    criteria_mc();
    std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES PRESENT")
              << " (" << g_failures << " failed)" << std::endl;
    return g_failures;
}
