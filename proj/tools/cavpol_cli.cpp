// Command-line front end: parameter sweeps, figure-data reproduction, and
// the cross-method validation report. All commands emit CSV or JSON with the
// full run specification embedded, 17-significant-digit numeric fields, and
// deterministic row order, so identical invocations produce identical bytes.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <mutex>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cavpol/cavpol.hpp"
#include "cavpol/reference.hpp"

namespace {

using namespace cavpol;

struct GridOptions {
    double lambda_min = 0.05;
    double lambda_max = 20.0;
    int lambda_points = 41;
    bool log_grid = false;
    std::string lambda_list; // explicit values override the range
};

std::vector<double> make_lambda_grid(const GridOptions& g) {
    if (!g.lambda_list.empty()) {
        auto grid = io::parse_grid(g.lambda_list);
        std::sort(grid.begin(), grid.end());
        return grid;
    }
    return g.log_grid ? io::logspace(g.lambda_min, g.lambda_max, g.lambda_points)
                      : io::linspace(g.lambda_min, g.lambda_max, g.lambda_points);
}

void add_grid_options(CLI::App* cmd, GridOptions& g) {
    cmd->add_option("--lambda-min", g.lambda_min, "Smallest normalised inverse temperature");
    cmd->add_option("--lambda-max", g.lambda_max, "Largest normalised inverse temperature");
    cmd->add_option("--lambda-points", g.lambda_points, "Number of grid points");
    cmd->add_flag("--log-grid", g.log_grid, "Log-spaced grid");
    cmd->add_option("--lambda-grid", g.lambda_list,
                    "Explicit grid: comma list or lo:hi:points (overrides min/max/points)");
}

void record_grid(io::RunSpec& run, const GridOptions& g) {
    if (!g.lambda_list.empty()) {
        run.set("lambda_grid", g.lambda_list);
    } else {
        run.set("lambda_min", g.lambda_min);
        run.set("lambda_max", g.lambda_max);
        run.set("lambda_points", (long long)g.lambda_points);
        run.set("log_grid", g.log_grid ? "true" : "false");
    }
}

void emit(const io::Table& table, const io::RunSpec& run) {
    io::write_output(io::render(table, run), run.out, std::cout);
}

// ---------------------------------------------------------------------------
// eta0: order parameter and thermodynamic-limit shift over a Lambda grid
// ---------------------------------------------------------------------------

int cmd_eta0(const GridOptions& grid_opt, io::RunSpec run) {
    const auto grid = make_lambda_grid(grid_opt);
    io::Table t;
    t.columns = {"lambda", "eta0", "shift_th"};
    for (double lambda : grid) {
        const auto sol = laplace::solve(lambda);
        t.add_row({lambda, sol.eta0, sol.shift_th});
    }
    emit(t, run);
    return 0;
}

// ---------------------------------------------------------------------------
// lp-energy: normalized lower-polariton shift by the selected method
// ---------------------------------------------------------------------------

struct McCliOptions {
    long sweeps = 1000000;
    long burn_in = 10000;
    int chains = 1;
    long thinning = 1;
};

int cmd_lp_energy(int n, const std::string& method, const GridOptions& grid_opt,
                  const McCliOptions& mc_opt, unsigned threads, io::RunSpec run) {
    const auto grid = make_lambda_grid(grid_opt);
    io::Table t;
    t.columns = {"lambda", "method", "n", "value", "error_estimate"};

    if (method == "laplace") {
        for (double lambda : grid)
            t.add_row({lambda, method, (long long)n, laplace::lp_energy_thermodynamic(lambda), 0.0});
    } else if (method == "gauss" || method == "exact") {
        const auto kernel = method == "gauss" ? thermo::KernelMethod::GaussianKernel
                                              : thermo::KernelMethod::ExactKernel;
        const auto results = thermo::sweep(n, grid, kernel, {}, threads);
        for (const auto& r : results)
            t.add_row({r.lambda, method, (long long)n, r.normalized_shift, r.shift_error});
    } else if (method == "mc") {
        std::vector<mc::McEstimate> merged(grid.size());
        par::parallel_for(grid.size(), threads, [&](std::size_t i) {
            std::vector<mc::McEstimate> chains;
            for (int c = 0; c < mc_opt.chains; ++c) {
                mc::McConfig cfg;
                cfg.n_dipoles = n;
                cfg.lambda = grid[i];
                cfg.sweeps = mc_opt.sweeps;
                cfg.burn_in = mc_opt.burn_in;
                cfg.thinning = mc_opt.thinning;
                cfg.seed = rng::derive_seed(run.seed, i * 1000 + c);
                chains.push_back(mc::run_chain(cfg));
            }
            merged[i] = mc::merge_chains(chains);
        });
        for (std::size_t i = 0; i < grid.size(); ++i)
            t.add_row({grid[i], method, (long long)n, merged[i].shift_mean, merged[i].stderr_mean});
    } else {
        std::cerr << "unknown method '" << method << "' (expected laplace|gauss|exact|mc)\n";
        return 2;
    }
    emit(t, run);
    return 0;
}

// ---------------------------------------------------------------------------
// saturation: exact-diagonalization shift over an excitation-density grid
// ---------------------------------------------------------------------------

int cmd_saturation(int n, const std::string& s_grid_spec, io::RunSpec run) {
    const auto s_grid = io::parse_grid(s_grid_spec);
    const auto results = saturation::sweep_saturation(n, s_grid);
    io::Table t;
    t.columns = {"s", "m", "n", "shift_sat"};
    for (const auto& r : results)
        t.add_row({r.s, (long long)std::lround(r.s * n), (long long)n, r.shift_sat});
    emit(t, run);
    return 0;
}

// ---------------------------------------------------------------------------
// reproduce-fig2: the four lower-polariton curves plus the order parameter
// ---------------------------------------------------------------------------

int cmd_fig2(const GridOptions& grid_opt, unsigned threads, io::RunSpec run) {
    const auto grid = make_lambda_grid(grid_opt);
    io::Table t;
    t.columns = {"lambda", "curve_id", "value", "error_estimate"};

    const auto gauss10 = thermo::sweep(10, grid, thermo::KernelMethod::GaussianKernel, {}, threads);
    const auto gauss100 = thermo::sweep(100, grid, thermo::KernelMethod::GaussianKernel, {}, threads);
    const auto exact10 = thermo::sweep(10, grid, thermo::KernelMethod::ExactKernel, {}, threads);

    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto sol = laplace::solve(grid[i]);
        t.add_row({grid[i], "laplace", sol.shift_th, 0.0});
        t.add_row({grid[i], "exact_n10", exact10[i].normalized_shift, exact10[i].shift_error});
        t.add_row({grid[i], "gauss_n10", gauss10[i].normalized_shift, gauss10[i].shift_error});
        t.add_row({grid[i], "gauss_n100", gauss100[i].normalized_shift, gauss100[i].shift_error});
        t.add_row({grid[i], "eta0", sol.eta0, 0.0});
    }
    emit(t, run);
    return 0;
}

// ---------------------------------------------------------------------------
// reproduce-fig3: saturated shift for N=100 and N=1000 plus reference levels
// ---------------------------------------------------------------------------

int cmd_fig3(const std::string& s_grid_spec, io::RunSpec run) {
    const auto s_grid = io::parse_grid(s_grid_spec);
    io::Table t;
    t.columns = {"s", "curve_id", "value", "error_estimate"};
    const auto r100 = saturation::sweep_saturation(100, s_grid);
    const auto r1000 = saturation::sweep_saturation(1000, s_grid);
    for (std::size_t i = 0; i < s_grid.size(); ++i) {
        t.add_row({s_grid[i], "sat_n100", r100[i].shift_sat, 0.0});
        t.add_row({s_grid[i], "sat_n1000", r1000[i].shift_sat, 0.0});
        t.add_row({s_grid[i], "aligned_limit", -1.0, 0.0});
        t.add_row({s_grid[i], "isotropic_limit", -special::kInvSqrt2, 0.0});
    }
    emit(t, run);
    return 0;
}

// ---------------------------------------------------------------------------
// validate: machine-readable cross-method report
// ---------------------------------------------------------------------------

struct Check {
    std::string name;
    bool pass;
    double measured;
    double tolerance;
    std::string detail;
};

int cmd_validate(std::uint64_t seed, long mc_sweeps, double lambda_c, unsigned threads,
                 io::RunSpec run) {
    std::vector<Check> checks;
    auto add = [&](const std::string& name, bool pass, double measured, double tol,
                   const std::string& detail = "") {
        checks.push_back({name, pass, measured, tol, detail});
    };

    // Order parameter: stationarity residual and continuity at the critical point.
    {
        double worst = 0;
        for (double lambda : io::logspace(1e-3, lambda_c * (1 - 1e-9), 200)) {
            const double e = laplace::eta0(lambda, lambda_c);
            const double resid = std::fabs(32.0 * e * e * (1.0 + e) - lambda * lambda) /
                                 (lambda * lambda);
            worst = std::max(worst, resid);
        }
        add("eta0_stationarity", worst < 1e-10, worst, 1e-10);
        const double eps = 1e-4;
        const double jump = std::fabs(laplace::eta0(lambda_c + eps, lambda_c) -
                                      laplace::eta0(lambda_c - eps, lambda_c));
        add("eta0_critical_continuity", jump < 5e-5, jump, 5e-5);
        add("eta0_critical_value", laplace::eta0(lambda_c, lambda_c) == 1.0,
            laplace::eta0(lambda_c, lambda_c), 1.0, "eta0 at the critical point");
    }

    // Limit shifts of the thermodynamic curve.
    {
        const double at0 = std::fabs(laplace::lp_energy_thermodynamic(0.0) + special::kInvSqrt2);
        add("limit_shift_isotropic", at0 < 1e-12, at0, 1e-12);
        double worst = 0;
        for (double lambda : {8.0, 10.0, 20.0})
            worst = std::max(worst, std::fabs(laplace::lp_energy_thermodynamic(lambda) + 1.0));
        add("limit_shift_aligned", worst == 0.0, worst, 0.0);
        const auto iso = thermo::lp_energy_quadrature(100, 0.1, thermo::KernelMethod::GaussianKernel);
        const double d = std::fabs(iso.normalized_shift + special::kInvSqrt2);
        add("isotropic_convergence_n100", d < 0.02, d, 0.02);
    }

    // Finite-N quadrature against the Laplace curve.
    {
        double worst1000 = 0;
        bool decreasing = true;
        for (double lambda : {1.0, 4.0, 12.0}) {
            const double wth = laplace::lp_energy_thermodynamic(lambda);
            const auto a = thermo::lp_energy_quadrature(100, lambda, thermo::KernelMethod::GaussianKernel);
            const auto b = thermo::lp_energy_quadrature(1000, lambda, thermo::KernelMethod::GaussianKernel);
            const double d100 = std::fabs(a.normalized_shift - wth);
            const double d1000 = std::fabs(b.normalized_shift - wth);
            decreasing = decreasing && d1000 < d100;
            worst1000 = std::max(worst1000, d1000);
        }
        add("thermo_vs_laplace_converging", decreasing, decreasing ? 1.0 : 0.0, 1.0);
        add("thermo_vs_laplace_n1000", worst1000 < 0.02, worst1000, 0.02);
    }

    // Cross-method agreement at N = 10.
    {
        const std::vector<double> lambdas{0.5, 1.0, 2.0, 4.0, 8.0};
        double worst_mc_pull = 0, worst_gap = 0, worst_mc_gauss = 0;
        std::vector<double> sigma(lambdas.size());
        par::parallel_for(lambdas.size(), threads, [&](std::size_t i) {
            mc::McConfig cfg;
            cfg.n_dipoles = 10;
            cfg.lambda = lambdas[i];
            cfg.sweeps = mc_sweeps;
            cfg.burn_in = std::max(1000L, mc_sweeps / 50);
            cfg.seed = rng::derive_seed(seed, 77 + i);
            const auto est = mc::run_chain(cfg);
            const auto ex = thermo::lp_energy_quadrature(10, lambdas[i], thermo::KernelMethod::ExactKernel);
            const auto ga = thermo::lp_energy_quadrature(10, lambdas[i], thermo::KernelMethod::GaussianKernel);
            sigma[i] = est.stderr_mean;
            const double pull = std::fabs(est.shift_mean - ex.normalized_shift) / est.stderr_mean;
            const double gap = std::fabs(ex.normalized_shift - ga.normalized_shift);
            const double mg = std::fabs(est.shift_mean - ga.normalized_shift) -
                              3.0 * est.stderr_mean;
            static std::mutex m;
            std::lock_guard lock(m);
            worst_mc_pull = std::max(worst_mc_pull, pull);
            worst_gap = std::max(worst_gap, gap);
            worst_mc_gauss = std::max(worst_mc_gauss, mg);
        });
        add("mc_vs_exact_kernel", worst_mc_pull < 3.0, worst_mc_pull, 3.0, "worst pull in sigma");
        add("exact_vs_gauss_kernel", worst_gap < 0.03, worst_gap, 0.03);
        add("mc_vs_gauss_kernel", worst_mc_gauss < 0.03, worst_mc_gauss, 0.03,
            "|mc-gauss| - 3 sigma, bounded by the kernel gap");
    }

    // Saturation: analytic anchors, dense-basis oracle, finite-size convergence.
    {
        double worst = 0;
        for (int n : {10, 100, 1000})
            worst = std::max(worst, std::fabs(saturation::saturated_lp_energy(n, 1).shift_sat + 1.0));
        add("saturation_m1_exact", worst < 1e-12, worst, 1e-12);
        const double d22 = std::fabs(saturation::saturated_lp_energy(2, 2).shift_sat +
                                     std::sqrt(6.0) / (2.0 * std::sqrt(2.0)));
        add("saturation_n2m2_analytic", d22 < 1e-10, d22, 1e-10);

        double worst_oracle = 0;
        for (int n : {4, 6, 8})
            for (int m = 1; m <= n; ++m) {
                const auto tri = saturation::build_manifold(n, m, 1.0);
                const double lmin = saturation::min_eigenvalue(tri);
                const double lmax = saturation::max_eigenvalue(tri);
                const auto dense = reference::dense_manifold_spectrum(n, m, 1.0);
                worst_oracle = std::max(worst_oracle, std::fabs(lmin - dense.front()));
                worst_oracle = std::max(worst_oracle, std::fabs(lmin + lmax));
            }
        add("saturation_dense_oracle", worst_oracle < 1e-10, worst_oracle, 1e-10);

        double worst_conv = 0;
        for (double s : {0.05, 0.1, 0.2}) {
            const double a = saturation::saturated_lp_energy(100, int(std::lround(100 * s))).shift_sat;
            const double b = saturation::saturated_lp_energy(1000, int(std::lround(1000 * s))).shift_sat;
            worst_conv = std::max(worst_conv, std::fabs(a - b));
        }
        add("saturation_convergence", worst_conv < 0.01, worst_conv, 0.01);
        const double s02 = std::fabs(saturation::saturated_lp_energy(100, 20).shift_sat + 1.0);
        add("saturation_small_vs_transition", s02 < 0.15, s02, 0.15,
            "|shift_sat + 1| at s=0.2 vs transition amplitude 0.293");
    }

    // Polymer endpoint density.
    {
        double worst = 0;
        for (double r : {0.3, 0.7, 1.0, 1.5}) {
            const double cf = 1.0 / (special::kPi * special::kPi * r * std::sqrt(4.0 - r * r));
            worst = std::max(worst, std::fabs(polymer::density_exact(2, r) - cf));
        }
        add("polymer_n2_closed_form", worst < 1e-6, worst, 1e-6);
        osc::QuadratureSpec sp;
        sp.abs_tol = 1e-10;
        auto norm = quad::integrate(
            [&](double r) { return 2 * special::kPi * r * polymer::density_exact(10, r, sp); }, 0.0,
            10.0, 1e-9, 1e-9);
        add("polymer_normalization_n10", std::fabs(norm.value - 1.0) < 1e-6,
            std::fabs(norm.value - 1.0), 1e-6);
    }

    // Determinism of seeded Monte Carlo.
    {
        mc::McConfig cfg;
        cfg.n_dipoles = 8;
        cfg.lambda = 2.0;
        cfg.sweeps = 20000;
        cfg.burn_in = 2000;
        cfg.seed = rng::derive_seed(seed, 999);
        const auto a = mc::run_chain(cfg);
        const auto b = mc::run_chain(cfg);
        const bool same = a.shift_mean == b.shift_mean && a.stderr_mean == b.stderr_mean;
        add("mc_determinism", same, same ? 0.0 : 1.0, 0.0);
    }

    nlohmann::ordered_json report;
    report["schema_version"] = io::kSchemaVersion;
    report["command"] = "validate";
    report["seed"] = seed;
    report["mc_sweeps"] = mc_sweeps;
    report["critical_lambda"] = lambda_c;
    report["checks"] = nlohmann::ordered_json::array();
    int failures = 0;
    for (const auto& c : checks) {
        nlohmann::ordered_json j;
        j["name"] = c.name;
        j["pass"] = c.pass;
        j["measured"] = c.measured;
        j["tolerance"] = c.tolerance;
        if (!c.detail.empty()) j["detail"] = c.detail;
        report["checks"].push_back(std::move(j));
        failures += !c.pass;
    }
    report["failures"] = failures;
    io::write_output(report.dump(2) + "\n", run.out, std::cout);
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equilibrium thermodynamics of cavity-coupled planar dipoles"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    std::string format = "csv", out = "-";
    std::uint64_t seed = 1;
    unsigned threads = par::default_threads();
    app.add_option("--format", format, "Output format: csv or json")->capture_default_str();
    app.add_option("--out", out, "Output path ('-' = stdout)")->capture_default_str();
    app.add_option("--seed", seed, "Base seed for stochastic commands")->capture_default_str();
    app.add_option("--threads", threads, "Worker threads for sweeps")->capture_default_str();

    GridOptions grid;
    int n_value = 100;
    std::string method = "gauss";
    McCliOptions mc_opt;
    std::string s_grid = "0.01:0.5:50";

    auto* c_eta0 = app.add_subcommand("eta0", "Order parameter and Laplace shift over a Lambda grid");
    add_grid_options(c_eta0, grid);

    auto* c_lp = app.add_subcommand("lp-energy", "Normalized lower-polariton shift");
    add_grid_options(c_lp, grid);
    c_lp->add_option("--n", n_value, "Number of dipoles")->capture_default_str();
    c_lp->add_option("--method", method, "laplace | gauss | exact | mc")->capture_default_str();
    c_lp->add_option("--mc-sweeps", mc_opt.sweeps, "Measurement sweeps per chain")->capture_default_str();
    c_lp->add_option("--mc-burn-in", mc_opt.burn_in, "Burn-in sweeps")->capture_default_str();
    c_lp->add_option("--mc-chains", mc_opt.chains, "Independent chains merged by inverse variance")
        ->capture_default_str();
    c_lp->add_option("--mc-thinning", mc_opt.thinning, "Record every k-th sweep")->capture_default_str();

    auto* c_sat = app.add_subcommand("saturation", "Saturated lower-polariton shift over an s grid");
    c_sat->add_option("--n", n_value, "Number of dipoles")->capture_default_str();
    c_sat->add_option("--s-grid", s_grid, "Excitation densities: comma list or lo:hi:points")
        ->capture_default_str();

    auto* c_f2 = app.add_subcommand("reproduce-fig2", "Lower-polariton energy curves vs Lambda");
    add_grid_options(c_f2, grid);

    auto* c_f3 = app.add_subcommand("reproduce-fig3", "Saturated shift vs excitation density");
    c_f3->add_option("--s-grid", s_grid, "Excitation densities: comma list or lo:hi:points")
        ->capture_default_str();

    long validate_sweeps = 1000000;
    double inject_lambda_c = laplace::kCriticalLambda;
    auto* c_val = app.add_subcommand("validate", "Cross-method validation report (exit 1 on failure)");
    c_val->add_option("--mc-sweeps", validate_sweeps, "Sweeps for the Monte Carlo checks")
        ->capture_default_str();
    c_val->add_option("--inject-lambda-c", inject_lambda_c,
                      "Fault-injection hook: override the critical Lambda used by the order-parameter checks");

    CLI11_PARSE(app, argc, argv);

    io::RunSpec run;
    run.seed = seed;
    run.format = format;
    run.out = out;

    try {
        if (app.got_subcommand(c_eta0)) {
            run.command = "eta0";
            record_grid(run, grid);
            return cmd_eta0(grid, run);
        }
        if (app.got_subcommand(c_lp)) {
            run.command = "lp-energy";
            run.set("n", (long long)n_value);
            run.set("method", method);
            record_grid(run, grid);
            if (method == "mc") {
                run.set("mc_sweeps", (long long)mc_opt.sweeps);
                run.set("mc_burn_in", (long long)mc_opt.burn_in);
                run.set("mc_chains", (long long)mc_opt.chains);
                run.set("mc_thinning", (long long)mc_opt.thinning);
            }
            return cmd_lp_energy(n_value, method, grid, mc_opt, threads, run);
        }
        if (app.got_subcommand(c_sat)) {
            run.command = "saturation";
            run.set("n", (long long)n_value);
            run.set("s_grid", s_grid);
            return cmd_saturation(n_value, s_grid, run);
        }
        if (app.got_subcommand(c_f2)) {
            run.command = "reproduce-fig2";
            grid.log_grid = grid.lambda_list.empty() ? true : grid.log_grid;
            record_grid(run, grid);
            return cmd_fig2(grid, threads, run);
        }
        if (app.got_subcommand(c_f3)) {
            run.command = "reproduce-fig3";
            run.set("s_grid", s_grid);
            return cmd_fig3(s_grid, run);
        }
        if (app.got_subcommand(c_val)) {
            run.command = "validate";
            return cmd_validate(seed, validate_sweeps, inject_lambda_c, threads, run);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
