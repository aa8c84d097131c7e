#include "fracb/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "fracb/asymptotics.hpp"
#include "fracb/frac_laplacian.hpp"
#include "fracb/kernels.hpp"
#include "fracb/profiles.hpp"
#include "fracb/solver.hpp"

namespace fracb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
    char b[40];
    std::snprintf(b, sizeof b, "%.3g", x);
    return b;
}

// Profiles shared between criteria (7, 10, 11, 12, 14 reuse them); the base
// grid is L = 96 rather than 64 so the tail window [15,30] sits far from the
// rim, where the constant far-field closures slave the solution to u_+.
const SelfSimilarProfile& base_profile() {
    static const SelfSimilarProfile p =
        compute_profile(-0.5, 0.5, make_grid(96.0, 8192), 1e-3, 1.0);
    return p;
}

const SelfSimilarProfile& fine_profile() {
    static const SelfSimilarProfile p =
        compute_profile(-0.5, 0.5, make_grid(96.0, 32768), 2.5e-4, 1.0);
    return p;
}

const SelfSimilarProfile& unit_profile() {
    static const SelfSimilarProfile p =
        compute_profile(0.0, 1.0, make_grid(96.0, 8192), 1e-3, 1.0);
    return p;
}

CriterionResult c1_kernels() {
    CriterionResult r{1, "closed-form kernels", false, "", 0.0};
    const Grid g = make_grid(1024.0, 65536);
    const auto k1 = stable_density(1.0, 1.0, g);
    const auto k2 = stable_density(2.0, 1.0, g);
    double d1 = 0.0, d2 = 0.0;
    for (std::size_t j = 0; j < g.n; ++j) {
        const double x = g.node(j);
        if (std::abs(x) > 10.0) continue;
        d1 = std::max(d1, std::abs(k1.density[j] - 2.0 / (1.0 + 4.0 * M_PI * M_PI * x * x)));
        d2 = std::max(d2, std::abs(k2.density[j] -
                                   std::sqrt(M_PI) * std::exp(-M_PI * M_PI * x * x)));
    }
    r.pass = d1 <= 1e-6 && d2 <= 1e-6;
    r.detail = "max dev " + fmt(d1) + " (cauchy), " + fmt(d2) + " (gaussian), tol 1e-6";
    return r;
}

double cross_error(double alpha, const Grid& g, double radius) {
    Field f = constant_field(g, 0.0);
    add_gaussian_bump(f, 1.0, 0.0, 2.0);
    LevyKhintchineSplit split(alpha, radius, g);
    const auto quad = split.apply(f.samples, 0.0, 0.0);
    const Field spec = apply_spectral(alpha, f);
    double err = 0.0;
    for (std::size_t j = 0; j < g.n; ++j)
        err = std::max(err, std::abs(quad[j] - spec.samples[j]));
    return err;
}

CriterionResult c2_cross() {
    CriterionResult r{2, "operator cross-validation", false, "", 0.0};
    // The two paths close the far tails differently (periodic images vs the
    // constant closure), so they disagree by an n-independent O(L^{-1-alpha})
    // floor on top of the O(dx^2) quadrature error. L = 256 sinks the floor
    // below the coarse-grid error and the halving under n -> 2n is visible.
    const Grid coarse = make_grid(256.0, 2048), fine = make_grid(256.0, 4096);
    bool ok = true;
    std::string d;
    for (double alpha : {0.5, 1.0, 1.5}) {
        const double e1 = cross_error(alpha, coarse, 0.25);
        const double e2 = cross_error(alpha, fine, 0.25);
        ok = ok && e1 <= 1e-3 && e2 <= 0.6 * e1;
        if (!d.empty()) d += ", ";
        d += "a=" + fmt(alpha) + ": " + fmt(e1) + " -> " + fmt(e2);
    }
    r.pass = ok;
    r.detail = d + " (tol 1e-3, ratio <= 0.6)";
    return r;
}

CriterionResult c3_step() {
    CriterionResult r{3, "sharp-step formula", false, "", 0.0};
    const Grid g = make_grid(64.0, 8192);
    LevyKhintchineSplit split(1.0, 4.0 * g.dx, g);
    const Field u = step_field(g, -0.5, 0.5);
    const auto lam = split.apply(u.samples, -0.5, 0.5);
    double worst = 0.0;
    for (double x : {1.0, 2.0, 5.0}) {
        const double exact = step_laplacian(1.0, -0.5, 0.5, x);
        const double rel = std::abs(lam[g.index_of(x)] - exact) / std::abs(exact);
        worst = std::max(worst, rel);
    }
    r.pass = worst <= 0.01;
    r.detail = "max rel dev " + fmt(worst) + " at x in {1,2,5}, tol 0.01";
    return r;
}

CriterionResult c4_invariants() {
    CriterionResult r{4, "monotone-path invariants", false, "", 0.0};
    const Grid g = make_grid(64.0, 8192);
    Field a0 = step_field(g, -0.5, 0.5);
    add_gaussian_bump(a0, 0.1, 0.0, 1.0);
    Field b0 = step_field(g, -0.5, 0.5);
    add_gaussian_bump(b0, 0.1, 1.0, 1.0);
    SolverConfig cfg;
    std::vector<double> times;
    for (int k = 1; k <= 10; ++k) times.push_back(2.0 * k);
    const auto rep = contraction_check(a0, b0, 0.5, 0.0, cfg, times);

    SolverConfig run = cfg;
    run.snapshot_times = times;
    const auto snaps = evolve(a0, 0.5, 0.0, run, 20.0);
    double lo0 = std::min(a0.far_left, a0.far_right);
    double hi0 = std::max(a0.far_left, a0.far_right);
    for (double v : a0.samples) {
        lo0 = std::min(lo0, v);
        hi0 = std::max(hi0, v);
    }
    double excess = 0.0;
    for (const auto& s : snaps)
        excess = std::max({excess, s.max_u - hi0, lo0 - s.min_u});

    // the domain-of-dependence bound compares against a semigroup-evolved
    // envelope whose alpha = 1/2 tails need room; run it on a wider grid
    const Grid gd = make_grid(256.0, 16384);
    Field ad = step_field(gd, -0.5, 0.5);
    add_gaussian_bump(ad, 0.1, 0.0, 1.0);
    Field bd = step_field(gd, -0.5, 0.5);
    add_gaussian_bump(bd, 0.1, 1.0, 1.0);
    const double dmargin = domain_dependence_check(ad, bd, 0.5, 0.0, 4.0, 2.0, cfg);
    r.pass = rep.contraction_ok && rep.tv_ok && excess <= 1e-13 && dmargin <= 1e-3;
    r.detail = std::string("contraction ") + (rep.contraction_ok ? "ok" : "VIOLATED") +
               ", tv " + (rep.tv_ok ? "ok" : "VIOLATED") + ", max-principle excess " +
               fmt(excess) + ", domain margin " + fmt(dmargin);
    return r;
}

CriterionResult c5_entropy() {
    CriterionResult r{5, "entropy residual battery", false, "", 0.0};
    const Grid g = make_grid(64.0, 8192);
    const Field u0 = step_field(g, -0.5, 0.5);
    SolverConfig cfg;
    for (int k = 1; k <= 210; ++k) cfg.snapshot_times.push_back(0.025 * k);
    const auto snaps = evolve(u0, 0.5, 0.0, cfg, 5.25);
    const TestBump bumps[] = {{0.0, 6.0, 3.0, 2.0}, {5.0, 4.0, 3.5, 1.5}, {-4.0, 5.0, 2.5, 1.5}};
    const double levels[] = {-0.4, -0.15, 0.0, 0.2, 0.45};
    double worst = kInf;
    for (const auto& phi : bumps)
        for (double k : levels)
            worst = std::min(worst, entropy_residual(snaps, 0.5, k, phi));
    r.pass = worst >= -1e-3;
    r.detail = "min residual " + fmt(worst) + " over 5 levels x 3 bumps, tol -1e-3";
    return r;
}

CriterionResult c6_gradient() {
    CriterionResult r{6, "gradient decay rates", false, "", 0.0};
    const auto v1 = check_gradient_decay(1.0, step_field(make_grid(128.0, 8192), -0.5, 0.5));
    // at alpha = 1/2 the nonlinear correction to ||u_x|| relaxes like c/t with
    // c proportional to the jump, so a smaller step reaches the t^{-2} regime
    // inside the fitting window; the wide grid keeps the x^{-3/2} kernel tails
    // from touching the rim before t = 50
    const auto v05 =
        check_gradient_decay(0.5, step_field(make_grid(4096.0, 65536), -0.125, 0.125));
    r.pass = v1.pass && v05.pass;
    r.detail = "slope " + fmt(v1.fit.slope) + " (target -1), " + fmt(v05.fit.slope) +
               " (target -2), slack 0.15";
    return r;
}

CriterionResult c7_selfsimilar() {
    CriterionResult r{7, "self-similar attraction rates", false, "", 0.0};
    const auto& prof = fine_profile();
    const Grid g = make_grid(128.0, 8192);
    Field u0 = step_field(g, -0.5, 0.5);
    add_gaussian_bump(u0, 0.25, 0.0, 1.0);
    const auto vi = check_selfsimilar_asymptotics(kInf, u0, prof);
    const auto v2 = check_selfsimilar_asymptotics(2.0, u0, prof);
    r.pass = vi.fit.slope <= -0.85 && v2.fit.slope <= -0.35;
    r.detail = "sup slope " + fmt(vi.fit.slope) + " (<= -0.85), L2 slope " +
               fmt(v2.fit.slope) + " (<= -0.35)";
    return r;
}

CriterionResult c8_linear() {
    CriterionResult r{8, "linear-regime rates", false, "", 0.0};
    const Grid g = make_grid(512.0, 16384);
    const Field u0 = step_field(g, -0.5, 0.5);
    const auto vi = check_linear_asymptotics(0.5, kInf, u0);
    const auto v2 = check_linear_asymptotics(0.5, 2.0, u0);
    r.pass = vi.fit.slope <= -0.8 && v2.no_decay && v2.pass;
    r.detail = "sup slope " + fmt(vi.fit.slope) + " (<= -0.8), p=2 no-decay " +
               (v2.no_decay ? "flagged" : "MISSING");
    return r;
}

CriterionResult c9_rarefaction() {
    CriterionResult r{9, "rarefaction rate", false, "", 0.0};
    const Grid g = make_grid(256.0, 8192);
    const Field u0 = step_field(g, -0.5, 0.5);
    const auto v = check_rarefaction_asymptotics(1.5, kInf, u0, {10.0, 80.0, 12});
    r.pass = v.fit.slope <= -0.1;
    r.detail = "sup slope " + fmt(v.fit.slope) + " (<= -0.1, target -0.25 + log slack)";
    return r;
}

CriterionResult c10_shape() {
    CriterionResult r{10, "profile shape and tails", false, "", 0.0};
    const auto& prof = base_profile();
    const auto s = profile_shape(prof);
    const auto tc = tail_check(prof, 15.0, 30.0);
    const bool sym = s.symmetry_residual <= 2.0 * prof.grid.dx * s.lipschitz;
    const double tail_dev = std::abs(tc.constant() - tc.expected) / tc.expected;
    r.pass = s.monotone && sym && s.convexity_violation_frac <= 0.005 && tail_dev <= 0.10 &&
             tc.reduction_ok;
    r.detail = std::string("monotone ") + (s.monotone ? "ok" : "VIOLATED") + ", symmetry " +
               fmt(s.symmetry_residual) + " (<= " + fmt(2.0 * prof.grid.dx * s.lipschitz) +
               "), convexity flips " + fmt(100.0 * s.convexity_violation_frac) +
               "%, tail dev " + fmt(100.0 * tail_dev) + "% of 1/(2pi^2)";
    return r;
}

CriterionResult c11_equation() {
    CriterionResult r{11, "profile equation and reconstruction", false, "", 0.0};
    const double r1 = profile_equation_residual(base_profile());
    const double r2 = profile_equation_residual(fine_profile());
    const auto du = duhamel_reconstruct(base_profile());
    r.pass = r1 <= 5e-2 && r2 <= 0.6 * r1 && du.residual <= 1e-2;
    r.detail = "eq residual " + fmt(r1) + " -> " + fmt(r2) +
               " under refinement (<= 5e-2, ratio <= 0.6), reconstruction dev " +
               fmt(du.residual) + " (<= 1e-2)";
    return r;
}

CriterionResult c12_cauchy() {
    CriterionResult r{12, "heavier-than-profile Cauchy windows", false, "", 0.0};
    const auto cc = cauchy_comparison(unit_profile());
    double margin = kInf;
    for (std::size_t k = 0; k < cc.radii.size(); ++k)
        margin = std::min(margin, cc.p_y[k] - cc.p_x[k]);
    r.pass = cc.positive_bulk && cc.windows_ok;
    r.detail = "min g on (0," + fmt(cc.bulk_hi) + "] = " + fmt(cc.g_min_bulk) +
               ", min window margin " + fmt(margin);
    return r;
}

Field battery_field(const Grid& g, unsigned seed) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<double> a(33), b(33);
    for (int k = 1; k <= 32; ++k) {
        a[k] = noise(gen) / k;
        b[k] = noise(gen) / k;
    }
    Field f = constant_field(g, 0.0);
    double sup = 0.0;
    for (std::size_t j = 0; j < g.n; ++j) {
        const double x = g.node(j);
        const double env = mollifier(x / 20.0);
        if (env == 0.0) continue;
        double s = 0.0;
        for (int k = 1; k <= 32; ++k) {
            const double th = M_PI * k * x / 32.0;
            s += a[k] * std::cos(th) + b[k] * std::sin(th);
        }
        f.samples[j] = env * s;
        sup = std::max(sup, std::abs(f.samples[j]));
    }
    for (auto& v : f.samples) v /= sup;
    return f;
}

CriterionResult c13_inequalities() {
    CriterionResult r{13, "functional inequality battery", false, "", 0.0};
    const Grid g2 = make_grid(32.0, 2048), g4 = make_grid(32.0, 4096);
    double worst = kInf, eq_worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const Field w = battery_field(g2, 1000 + i);
        for (double alpha : {0.5, 1.0})
            for (double p : {2.0, 3.0, 4.0}) worst = std::min(worst, sv_check(alpha, p, w));
        // equality cases: p = 2 needs a one-signed field (Parseval), while
        // alpha = 2, p = 4 squares the sign away for any field
        Field wpos = w;
        for (auto& v : wpos.samples) v = std::abs(v);
        for (double alpha : {0.5, 1.0, 2.0})
            eq_worst = std::max(eq_worst, std::abs(sv_check(alpha, 2.0, wpos)));
        eq_worst = std::max(eq_worst, std::abs(sv_check(2.0, 4.0, w)));
    }
    bool nash_ok = true;
    std::string nash_d;
    for (double alpha : {0.5, 1.0}) {
        const double r2 = nash_check(alpha, battery_field(g2, 1000));
        const double r4 = nash_check(alpha, battery_field(g4, 1000));
        nash_ok = nash_ok && std::isfinite(r2) && std::isfinite(r4) &&
                  std::abs(r2 - r4) <= 0.01 * std::abs(r4);
        if (!nash_d.empty()) nash_d += ", ";
        nash_d += fmt(r2) + " -> " + fmt(r4);
    }
    r.pass = worst >= -1e-6 && eq_worst <= 1e-6 && nash_ok;
    r.detail = "min margin " + fmt(worst) + " (>= -1e-6), max |equality case| " +
               fmt(eq_worst) + " (<= 1e-6), nash " + nash_d;
    return r;
}

CriterionResult c14_defect() {
    CriterionResult r{14, "self-similarity defect", false, "", 0.0};
    const auto prof = compute_profile(-0.5, 0.5, make_grid(64.0, 8192), 1e-3, 1.0);
    r.pass = prof.selfsim_defect <= 5e-3 * prof.jump();
    r.detail = "defect " + fmt(prof.selfsim_defect) + " (<= " + fmt(5e-3 * prof.jump()) + ")";
    return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::vector<int>& only) {
    using Runner = CriterionResult (*)();
    const Runner runners[] = {c1_kernels,   c2_cross,       c3_step,       c4_invariants,
                              c5_entropy,   c6_gradient,    c7_selfsimilar, c8_linear,
                              c9_rarefaction, c10_shape,    c11_equation,  c12_cauchy,
                              c13_inequalities, c14_defect};
    std::vector<CriterionResult> out;
    for (int id = 1; id <= 14; ++id) {
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
        const auto t0 = std::chrono::steady_clock::now();
        CriterionResult r;
        try {
            r = runners[id - 1]();
        } catch (const std::exception& e) {
            r.id = id;
            r.name = "criterion " + std::to_string(id);
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(std::move(r));
    }
    return out;
}

std::string format_criterion(const CriterionResult& r) {
    return std::string(r.pass ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + ": " +
           r.name + " (" + r.detail + "; " + fmt(r.seconds) + "s)";
}

}  // namespace fracb
