// Command-line front end: simulation, Monte Carlo tables, empirical fits,
// regularization selection, infill refinement, and data diagnostics.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include "mfiv/diagnostics.hpp"
#include "mfiv/grid.hpp"
#include "mfiv/instrument.hpp"
#include "mfiv/io.hpp"
#include "mfiv/mc.hpp"
#include "mfiv/operator.hpp"
#include "mfiv/simulate.hpp"
#include "mfiv/solver.hpp"

namespace {

constexpr int kExitComputation = 1;

using namespace mfiv;

SlopeKind parse_slope(const std::string& name) {
    if (name == "negtenexp") return SlopeKind::NegTenExp;
    if (name == "tenlinear") return SlopeKind::TenLinear;
    throw CLI::ValidationError("--beta", "expected 'negtenexp' or 'tenlinear'");
}

struct DataOptions {
    std::string path;
    std::string instrument = "logistic";
    bool standardize_w = true;
    bool log_y = false;
    bool log_z = false;
    std::string missing = "reject";
    double grid_a = 0.0;
    double grid_b = 24.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--data", path, "input CSV (date,y,w,z_1..z_m)")->required();
        cmd->add_option("--instrument", instrument, "logistic|indicator")
            ->check(CLI::IsMember({"logistic", "indicator"}));
        cmd->add_flag("--standardize-w,!--no-standardize-w", standardize_w,
                      "standardize W before building the instrument matrix");
        cmd->add_flag("--log-y", log_y, "apply log to the y column");
        cmd->add_flag("--log-z", log_z, "apply log to the z columns");
        cmd->add_option("--missing", missing, "reject|drop")
            ->check(CLI::IsMember({"reject", "drop"}));
        cmd->add_option("--grid-a", grid_a, "interval lower bound of the s-grid");
        cmd->add_option("--grid-b", grid_b, "interval upper bound of the s-grid");
    }

    InstrumentSpec instrument_spec() const {
        return InstrumentSpec{instrument == "indicator" ? InstrumentKind::Indicator
                                                        : InstrumentKind::LogisticCdf,
                              standardize_w};
    }

    SchemaConfig schema() const {
        SchemaConfig s;
        s.log_y = log_y;
        s.log_z = log_z;
        s.missing = missing == "drop" ? MissingPolicy::DropRow : MissingPolicy::Reject;
        s.grid_a = grid_a;
        s.grid_b = grid_b;
        return s;
    }
};

struct LoadedProblem {
    EmpiricalDataset data;
    PsiMatrix psi;
    MomentCurve moment;
    DiscretizedOperator op;
};

LoadedProblem load_problem(const DataOptions& opts) {
    EmpiricalDataset data = load_csv(opts.path, opts.schema());
    if (data.dropped_rows > 0)
        std::cerr << "warning: dropped " << data.dropped_rows << " rows with missing values\n";
    PsiMatrix psi = build_psi_matrix(opts.instrument_spec(), data.grid, data.w);
    MomentCurve moment = estimate_moment(data.y, psi);
    DiscretizedOperator op = estimate_kernel(data.z, data.grid, psi);
    return LoadedProblem{std::move(data), std::move(psi), std::move(moment), std::move(op)};
}

std::string curve_csv(const std::string& header, const GridCurve& c) {
    std::string out = header + "\n";
    for (int j = 0; j < c.grid.size(); ++j)
        out += format_double(c.grid.point(j)) + "," + format_double(c.values[j]) + "\n";
    return out;
}

void dump_kernel_csv(const std::string& path, const DiscretizedOperator& op) {
    std::string out = "i,j,u,s,kernel\n";
    for (int i = 0; i < op.u_grid.size(); ++i)
        for (int j = 0; j < op.s_grid.size(); ++j)
            out += std::to_string(i) + "," + std::to_string(j) + "," +
                   format_double(op.u_grid.point(i)) + "," +
                   format_double(op.s_grid.point(j)) + "," +
                   format_double(op.kernel(i, j)) + "\n";
    write_file_atomic(path, out);
}

int run_simulate(int t_sample, int m, double sigma, const std::string& beta,
                 std::uint64_t seed, const std::string& out_path) {
    DgpConfig dgp;
    dgp.t_sample = t_sample;
    dgp.m_sim = m;
    dgp.sigma = sigma;
    dgp.beta_true = parse_slope(beta);
    dgp.seed = seed;
    export_sample_csv(out_path, simulate_sample(dgp));
    std::cout << "wrote " << out_path << " (T=" << t_sample << ", m=" << m << ")\n";
    return 0;
}

int run_mc_cmd(const McConfig& cfg, const std::string& out_path,
               const std::string& bands_path) {
    const std::vector<McReport> reports = run_mc(cfg);
    std::string out = "T,sigma,alpha,i_bias_sq,i_var,i_mse\n";
    for (const auto& rep : reports) {
        out += std::to_string(cfg.dgp.t_sample) + "," + format_double(cfg.dgp.sigma) + "," +
               format_double(rep.alpha) + "," + format_double(rep.metrics.i_bias_sq) + "," +
               format_double(rep.metrics.i_var) + "," + format_double(rep.metrics.i_mse) +
               "\n";
        std::cout << "alpha=" << rep.alpha << "  i-Bias^2=" << rep.metrics.i_bias_sq
                  << "  i-Var=" << rep.metrics.i_var << "  i-MSE=" << rep.metrics.i_mse
                  << "\n";
    }
    write_file_atomic(out_path, out);
    if (!bands_path.empty()) {
        // Bands for the first configured alpha, the one used in the figures.
        const McReport& rep = reports.front();
        std::string bands = "s,truth,mean,lo,hi\n";
        for (int j = 0; j < rep.truth.grid.size(); ++j)
            bands += format_double(rep.truth.grid.point(j)) + "," +
                     format_double(rep.truth.values[j]) + "," +
                     format_double(rep.mean_curve.values[j]) + "," +
                     format_double(rep.lo_curve.values[j]) + "," +
                     format_double(rep.hi_curve.values[j]) + "\n";
        write_file_atomic(bands_path, bands);
    }
    return 0;
}

int run_fit(const DataOptions& opts, double alpha, const std::string& out_path,
            const std::string& kernel_path) {
    const LoadedProblem problem = load_problem(opts);
    const TikhonovFit fit = tikhonov_solve(problem.op, problem.moment, alpha);
    write_file_atomic(out_path, curve_csv("s,beta_hat", fit.beta_hat));
    if (!kernel_path.empty()) dump_kernel_csv(kernel_path, problem.op);

    int argmax = 0;
    fit.beta_hat.values.maxCoeff(&argmax);
    std::cout << "alpha=" << format_double(fit.alpha)
              << " residual_norm=" << format_double(fit.residual_norm)
              << " grid_size=" << fit.beta_hat.grid.size() << "\n"
              << "elasticity min=" << format_double(fit.beta_hat.values.minCoeff())
              << " max=" << format_double(fit.beta_hat.values.maxCoeff())
              << " argmax_hour=" << format_double(fit.beta_hat.grid.point(argmax)) << "\n";
    return 0;
}

int run_select_alpha(const DataOptions& opts, double alpha_min, double alpha_max,
                     int alpha_count, const std::string& out_path) {
    const LoadedProblem problem = load_problem(opts);
    std::vector<double> grid;
    if (alpha_count < 2 || !(alpha_min > 0.0) || !(alpha_min < alpha_max))
        throw std::runtime_error("select-alpha: need 0 < alpha-min < alpha-max, count >= 2");
    for (int i = 0; i < alpha_count; ++i)
        grid.push_back(std::exp(std::log(alpha_min) +
                                (std::log(alpha_max) - std::log(alpha_min)) * i /
                                    (alpha_count - 1)));
    const AlphaSelection sel = select_alpha(problem.op, problem.moment, grid);
    std::string out = "alpha,rss\n";
    for (std::size_t i = 0; i < sel.alpha_grid.size(); ++i)
        out += format_double(sel.alpha_grid[i]) + "," + format_double(sel.rss_values[i]) +
               "\n";
    write_file_atomic(out_path, out);
    std::cout << "alpha_star=" << format_double(sel.alpha_star) << "\n";
    return 0;
}

int run_infill(const McConfig& cfg, const std::vector<int>& m_values,
               const std::string& out_path) {
    const std::vector<InfillRow> rows = run_infill_experiment(cfg, m_values);
    std::string out = "m,disc_error,i_mse\n";
    for (const auto& row : rows) {
        out += std::to_string(row.m) + "," + format_double(row.disc_error) + "," +
               format_double(row.i_mse) + "\n";
        std::cout << "m=" << row.m << "  disc_error=" << row.disc_error
                  << "  i_mse=" << row.i_mse << "\n";
    }
    write_file_atomic(out_path, out);
    return 0;
}

int run_diagnose(const DataOptions& opts, int max_lag, int top_k,
                 const std::string& autocov_path, const std::string& spectrum_path) {
    const LoadedProblem problem = load_problem(opts);
    const int t_count = static_cast<int>(problem.data.y.size());
    if (max_lag <= 0) max_lag = default_max_lag(t_count);

    // Summability diagnostic for the moment process t -> Y_t Psi(., W_t).
    std::vector<GridCurve> curves;
    curves.reserve(t_count);
    for (int t = 0; t < t_count; ++t)
        curves.emplace_back(problem.psi.u_grid,
                            (problem.data.y[t] * problem.psi.entries.col(t)).eval());
    const AutocovSummary summary = autocov_diagnostic(curves, max_lag);
    std::string out = "lag,norm,partial_sum\n";
    double running = 0.0;
    for (int h = 0; h <= summary.max_lag; ++h) {
        running += (h == 0 ? 1.0 : 2.0) * summary.gamma_norms[h];
        out += std::to_string(h) + "," + format_double(summary.gamma_norms[h]) + "," +
               format_double(running) + "\n";
    }
    write_file_atomic(autocov_path, out);

    if (top_k <= 0) top_k = std::min(20, problem.op.s_grid.size());
    const std::vector<double> sigmas = spectrum_report(problem.op, top_k);
    std::string spec_out = "index,sigma\n";
    for (std::size_t i = 0; i < sigmas.size(); ++i)
        spec_out += std::to_string(i + 1) + "," + format_double(sigmas[i]) + "\n";
    write_file_atomic(spectrum_path, spec_out);

    std::cout << "autocov partial_sum=" << format_double(summary.partial_sum)
              << "  sigma_1=" << format_double(sigmas.front()) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mixed-frequency IV regression toolkit"};
    app.set_config("--config", "", "flat key=value config file; flags take precedence");
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "draw a synthetic sample and export it");
    int sim_t = 1000, sim_m = 200;
    double sim_sigma = 0.5;
    std::string sim_beta = "negtenexp";
    std::uint64_t sim_seed = 0;
    std::string sim_out = "sample.csv";
    sim->add_option("--T", sim_t, "sample size");
    sim->add_option("--m", sim_m, "grid resolution");
    sim->add_option("--sigma", sim_sigma, "noise level");
    sim->add_option("--beta", sim_beta, "negtenexp|tenlinear")
        ->check(CLI::IsMember({"negtenexp", "tenlinear"}));
    sim->add_option("--seed", sim_seed, "RNG seed");
    sim->add_option("--out", sim_out, "output CSV path");

    // mc
    auto* mc = app.add_subcommand("mc", "replicated Monte Carlo experiment");
    McConfig mc_cfg;
    mc_cfg.replications = 500;
    mc_cfg.alphas = {1e-5, 1e-6, 1e-7};
    std::string mc_beta = "negtenexp";
    std::string mc_out = "mc_report.csv";
    std::string mc_bands;
    mc->add_option("--T", mc_cfg.dgp.t_sample, "sample size");
    mc->add_option("--m", mc_cfg.dgp.m_sim, "grid resolution");
    mc->add_option("--sigma", mc_cfg.dgp.sigma, "noise level");
    mc->add_option("--beta", mc_beta, "negtenexp|tenlinear")
        ->check(CLI::IsMember({"negtenexp", "tenlinear"}));
    mc->add_option("--alphas", mc_cfg.alphas, "regularization parameters");
    mc->add_option("--reps", mc_cfg.replications, "replication count");
    mc->add_option("--metric-points", mc_cfg.metric_grid_points, "metric grid resolution");
    mc->add_option("--seed", mc_cfg.master_seed, "master seed");
    mc->add_option("--threads", mc_cfg.threads, "worker threads (0 = hardware)");
    mc->add_option("--out", mc_out, "report CSV path");
    mc->add_option("--bands", mc_bands, "optional pointwise-band CSV path");

    // fit
    auto* fit = app.add_subcommand("fit", "Tikhonov fit on a CSV dataset");
    DataOptions fit_opts;
    double fit_alpha = 2.16e-3;
    std::string fit_out = "fit.csv";
    std::string fit_kernel;
    fit_opts.attach(fit);
    fit->add_option("--alpha", fit_alpha, "regularization parameter");
    fit->add_option("--out", fit_out, "output CSV path");
    fit->add_option("--dump-kernel", fit_kernel, "optional kernel matrix CSV path");

    // select-alpha
    auto* sel = app.add_subcommand("select-alpha", "residual-based alpha selection");
    DataOptions sel_opts;
    double sel_min = 1e-8, sel_max = 1e-1;
    int sel_count = 50;
    std::string sel_out = "alpha_path.csv";
    sel_opts.attach(sel);
    sel->add_option("--alpha-min", sel_min, "grid lower bound");
    sel->add_option("--alpha-max", sel_max, "grid upper bound");
    sel->add_option("--alpha-count", sel_count, "grid size");
    sel->add_option("--out", sel_out, "output CSV path");

    // infill
    auto* inf = app.add_subcommand("infill", "grid-refinement experiment");
    McConfig inf_cfg;
    inf_cfg.replications = 1;
    inf_cfg.alphas = {1e-5};
    std::string inf_beta = "negtenexp";
    std::vector<int> inf_m = {50, 100, 200, 400};
    std::string inf_out = "infill.csv";
    double inf_alpha = 1e-5;
    inf->add_option("--T", inf_cfg.dgp.t_sample, "sample size");
    inf->add_option("--sigma", inf_cfg.dgp.sigma, "noise level");
    inf->add_option("--beta", inf_beta, "negtenexp|tenlinear")
        ->check(CLI::IsMember({"negtenexp", "tenlinear"}));
    inf->add_option("--alpha", inf_alpha, "regularization parameter");
    inf->add_option("--m-values", inf_m, "grid resolutions, increasing");
    inf->add_option("--reps", inf_cfg.replications, "replication count");
    inf->add_option("--seed", inf_cfg.master_seed, "master seed");
    inf->add_option("--threads", inf_cfg.threads, "worker threads (0 = hardware)");
    inf->add_option("--out", inf_out, "output CSV path");

    // diagnose
    auto* diag = app.add_subcommand("diagnose", "autocovariance and spectrum diagnostics");
    DataOptions diag_opts;
    int diag_lag = 0, diag_topk = 0;
    std::string diag_autocov = "autocov.csv";
    std::string diag_spectrum = "spectrum.csv";
    diag_opts.attach(diag);
    diag->add_option("--max-lag", diag_lag, "lag truncation (0 = floor(T^(1/3)))");
    diag->add_option("--top-k", diag_topk, "number of singular values (0 = min(20, m))");
    diag->add_option("--out-autocov", diag_autocov, "autocovariance CSV path");
    diag->add_option("--out-spectrum", diag_spectrum, "spectrum CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // CLI11's --help exits 0 through this path; real usage errors exit 2.
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed())
            return run_simulate(sim_t, sim_m, sim_sigma, sim_beta, sim_seed, sim_out);
        if (mc->parsed()) {
            mc_cfg.dgp.beta_true = parse_slope(mc_beta);
            return run_mc_cmd(mc_cfg, mc_out, mc_bands);
        }
        if (fit->parsed()) return run_fit(fit_opts, fit_alpha, fit_out, fit_kernel);
        if (sel->parsed())
            return run_select_alpha(sel_opts, sel_min, sel_max, sel_count, sel_out);
        if (inf->parsed()) {
            inf_cfg.dgp.beta_true = parse_slope(inf_beta);
            inf_cfg.alphas = {inf_alpha};
            return run_infill(inf_cfg, inf_m, inf_out);
        }
        if (diag->parsed())
            return run_diagnose(diag_opts, diag_lag, diag_topk, diag_autocov, diag_spectrum);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputation;
    }
    return 0;
}
