// fracb: command-line front end. Subcommands compute kernels, cross-check the
// operator, evolve scenarios, build the self-similar profile, fit decay rates,
// and emit full JSON reports. Exit status is 0 iff every requested verdict
// passed.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracb/acceptance.hpp"
#include "fracb/frac_laplacian.hpp"
#include "fracb/kernels.hpp"
#include "fracb/profiles.hpp"
#include "fracb/scenario.hpp"

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double parse_p(const std::string& s) {
    if (s == "inf" || s == "infinity") return kInf;
    return std::stod(s);
}

std::filesystem::path out_dir(const std::string& flag) {
    fracb::ScenarioConfig cfg;
    cfg.output_dir = flag;
    auto root = fracb::output_root(cfg);
    std::filesystem::create_directories(root);
    return root;
}

void report_fit(const std::string& name, const fracb::RateVerdict& v) {
    std::printf("%-12s %s", name.c_str(), v.pass ? "[PASS]" : "[FAIL]");
    if (v.no_decay) {
        std::printf("  no-decay regime");
    } else if (v.degenerate) {
        std::printf("  degenerate series");
    } else {
        std::printf("  slope %+.4f  target %+.4f  slack %.2f  r2 %.4f", v.fit.slope,
                    v.target, v.slack, v.fit.r_squared);
    }
    if (!v.note.empty()) std::printf("  (%s)", v.note.c_str());
    std::printf("\n");
}

int cmd_kernel(double alpha, double t, double L, std::size_t n, const std::string& out) {
    const fracb::Grid g = fracb::make_grid(L, n);
    const auto tab = fracb::stable_density(alpha, t, g);
    const auto root = out_dir(out);
    const auto path = root / ("kernel_a" + std::to_string(alpha) + ".csv");
    std::ofstream f(path);
    f << std::setprecision(17) << "x,density,density_dx,symbol_density\n";
    for (std::size_t j = 0; j < g.n; ++j)
        f << g.node(j) << ',' << tab.density[j] << ',' << tab.density_dx[j] << ','
          << tab.symbol_density[j] << '\n';
    std::printf("wrote %s (%zu rows)\n", path.c_str(), g.n);

    if (alpha == 1.0 || alpha == 2.0) {
        double dev = 0.0;
        for (std::size_t j = 0; j < g.n; ++j) {
            const double x = g.node(j) / std::pow(t, 1.0 / alpha);
            if (std::abs(x) > 10.0) continue;
            const double scale = std::pow(t, -1.0 / alpha);
            const double exact =
                alpha == 1.0 ? scale * 2.0 / (1.0 + 4.0 * M_PI * M_PI * x * x)
                             : scale * std::sqrt(M_PI) * std::exp(-M_PI * M_PI * x * x);
            dev = std::max(dev, std::abs(tab.density[j] - exact));
        }
        const bool ok = dev <= 1e-6;
        std::printf("closed form deviation %.3g (tol 1e-6) %s\n", dev,
                    ok ? "[PASS]" : "[FAIL]");
        return ok ? 0 : 1;
    }
    return 0;
}

int cmd_laplacian_check(double alpha, double L, std::size_t n, double radius, double tol) {
    const fracb::Grid g = fracb::make_grid(L, n);
    fracb::Field f = fracb::constant_field(g, 0.0);
    fracb::add_gaussian_bump(f, 1.0, 0.0, 2.0);
    fracb::LevyKhintchineSplit split(alpha, radius > 0 ? radius : 4.0 * g.dx, g);
    const auto quad = split.apply(f.samples, 0.0, 0.0);
    const fracb::Field spec = fracb::apply_spectral(alpha, f);
    double dev = 0.0;
    for (std::size_t j = 0; j < g.n; ++j)
        dev = std::max(dev, std::abs(quad[j] - spec.samples[j]));
    const bool ok = dev <= tol;
    std::printf("spectral vs quadrature max dev %.3g (tol %.3g) %s\n", dev, tol,
                ok ? "[PASS]" : "[FAIL]");
    return ok ? 0 : 1;
}

int run_and_print(const fracb::ScenarioConfig& cfg) {
    const auto rep = fracb::run_scenario(cfg);
    for (const auto& cr : rep.results) report_fit(cr.name, cr.verdict);
    for (const auto& c : rep.csv_files) std::printf("csv  %s\n", c.c_str());
    std::printf("json %s\n", rep.json_file.c_str());
    std::printf("%s in %.1f s\n", rep.all_pass ? "all checks passed" : "FAILURES above",
                rep.wall_seconds);
    return rep.all_pass ? 0 : 1;
}

int cmd_profile(double u_minus, double u_plus, double L, std::size_t n, double eps,
                double tail_lo, double tail_hi, const std::string& out) {
    const auto prof = fracb::compute_profile(u_minus, u_plus, fracb::make_grid(L, n), eps);
    const auto root = out_dir(out);
    const auto path = root / "profile.csv";
    std::ofstream f(path);
    f << std::setprecision(17) << "y,U,Uy\n";
    for (std::size_t j = 0; j < prof.grid.n; ++j)
        f << prof.grid.node(j) << ',' << prof.U[j] << ',' << prof.Uy[j] << '\n';
    std::printf("wrote %s (%zu rows), self-similarity defect %.3g\n", path.c_str(),
                prof.grid.n, prof.selfsim_defect);

    const auto s = fracb::profile_shape(prof);
    const auto tc = fracb::tail_check(prof, tail_lo, tail_hi);
    const double sym_tol = 2.0 * prof.grid.dx * s.lipschitz;
    const double tail_dev = std::abs(tc.constant() - tc.expected) / tc.expected;
    const bool sym_ok = s.symmetry_residual <= sym_tol;
    const bool conv_ok = s.convexity_violation_frac <= 0.005;
    const bool tail_ok = tail_dev <= 0.10 && tc.reduction_ok;
    std::printf("monotone        %s\n", s.monotone ? "[PASS]" : "[FAIL]");
    std::printf("symmetry        %.3g (tol %.3g) %s\n", s.symmetry_residual, sym_tol,
                sym_ok ? "[PASS]" : "[FAIL]");
    std::printf("convexity flips %.3g%% (tol 0.5%%) %s\n",
                100.0 * s.convexity_violation_frac, conv_ok ? "[PASS]" : "[FAIL]");
    std::printf("tail constant   %.6g vs %.6g (dev %.2f%%, tol 10%%) %s\n", tc.constant(),
                tc.expected, 100.0 * tail_dev, tail_ok ? "[PASS]" : "[FAIL]");
    const double eq = fracb::profile_equation_residual(prof);
    std::printf("equation residual %.3g\n", eq);
    return (s.monotone && sym_ok && conv_ok && tail_ok) ? 0 : 1;
}

int cmd_acceptance(const std::vector<int>& only) {
    const auto results = fracb::run_acceptance(only);
    bool all = true;
    for (const auto& r : results) {
        std::printf("%s\n", fracb::format_criterion(r).c_str());
        std::fflush(stdout);
        all = all && r.pass;
    }
    std::printf("%zu/%zu criteria passed\n",
                static_cast<std::size_t>(std::count_if(results.begin(), results.end(),
                                                       [](const auto& r) { return r.pass; })),
                results.size());
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractal Burgers laboratory"};
    app.require_subcommand(1);

    // kernel
    double k_alpha = 1.0, k_t = 1.0, k_L = 1024.0;
    std::size_t k_n = 65536;
    std::string k_out = "fracb-out";
    auto* kernel = app.add_subcommand("kernel", "tabulate the stable kernel p_alpha(.,t)");
    kernel->add_option("--alpha", k_alpha, "stability index in (0,2]")->required();
    kernel->add_option("--t", k_t, "time, default 1");
    kernel->add_option("--L", k_L, "half-length, default 1024");
    kernel->add_option("--n", k_n, "grid size, default 65536");
    kernel->add_option("--out", k_out, "output directory");

    // laplacian-check
    double l_alpha = 1.0, l_L = 64.0, l_radius = 0.0, l_tol = 1e-3;
    std::size_t l_n = 8192;
    auto* lap = app.add_subcommand("laplacian-check",
                                   "spectral vs quadrature operator on a Gaussian");
    lap->add_option("--alpha", l_alpha)->required();
    lap->add_option("--L", l_L, "half-length, default 64");
    lap->add_option("--n", l_n, "grid size, default 8192");
    lap->add_option("--radius", l_radius, "split radius, default 4 dx");
    lap->add_option("--tol", l_tol, "max-norm tolerance, default 1e-3");

    // evolve / asymptotics / report share a config source
    std::string e_config, e_preset;
    auto add_config_opts = [&](CLI::App* c) {
        c->add_option("--config", e_config, "key=value scenario file");
        c->add_option("--preset", e_preset,
                      "canned scenario (thm11-default, thm12-default, thm14-default, "
                      "rarefaction-default, gradient-default)");
    };
    auto* evolve = app.add_subcommand("evolve", "run a scenario, snapshots only");
    add_config_opts(evolve);
    std::string a_check;
    auto* asym = app.add_subcommand("asymptotics", "run one decay-rate check");
    add_config_opts(asym);
    asym->add_option("--check", a_check,
                     "stability | linear | selfsimilar | rarefaction | gradient");
    auto* report = app.add_subcommand("report", "full scenario: evolve, checks, JSON report");
    add_config_opts(report);

    // profile
    double p_um = -0.5, p_up = 0.5, p_L = 96.0, p_eps = 1e-3, p_lo = 15.0, p_hi = 30.0;
    std::size_t p_n = 8192;
    std::string p_out = "fracb-out";
    auto* profile = app.add_subcommand("profile", "construct and check U(., 1)");
    profile->add_option("--u-minus", p_um);
    profile->add_option("--u-plus", p_up);
    profile->add_option("--L", p_L, "run-grid half-length, default 96");
    profile->add_option("--n", p_n, "grid size, default 8192");
    profile->add_option("--eps", p_eps, "viscosity, default 1e-3");
    profile->add_option("--tail-lo", p_lo);
    profile->add_option("--tail-hi", p_hi);
    profile->add_option("--out", p_out, "output directory");

    // all-acceptance
    std::vector<int> only;
    auto* acc = app.add_subcommand("all-acceptance", "run the acceptance criteria");
    acc->add_option("--only", only, "criterion ids (default: all)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (kernel->parsed()) return cmd_kernel(k_alpha, k_t, k_L, k_n, k_out);
        if (lap->parsed()) return cmd_laplacian_check(l_alpha, l_L, l_n, l_radius, l_tol);
        if (profile->parsed())
            return cmd_profile(p_um, p_up, p_L, p_n, p_eps, p_lo, p_hi, p_out);
        if (acc->parsed()) return cmd_acceptance(only);

        // the scenario-backed subcommands
        if (!e_config.empty() && !e_preset.empty())
            throw std::runtime_error("give --config or --preset, not both");
        fracb::ScenarioConfig cfg;
        if (!e_config.empty()) {
            std::ifstream f(e_config);
            if (!f) throw std::runtime_error("cannot open config: " + e_config);
            std::ostringstream ss;
            ss << f.rdbuf();
            cfg = fracb::parse_config(ss.str());
        } else if (!e_preset.empty()) {
            cfg = fracb::preset_scenario(e_preset);
        } else {
            throw std::runtime_error("need --config or --preset");
        }
        if (evolve->parsed()) cfg.checks.clear();
        if (asym->parsed() && !a_check.empty()) cfg.checks = {a_check};
        return run_and_print(cfg);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
