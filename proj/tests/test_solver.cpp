#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fracb/kernels.hpp"
#include "fracb/solver.hpp"

using namespace fracb;

TEST_CASE("godunov flux of the convex burgers flux") {
    const FluxModel m = burgers_flux();
    CHECK(m.f(2.0) == doctest::Approx(2.0));
    CHECK(m.df(3.0) == doctest::Approx(3.0));
    CHECK(m.sonic == 0.0);
    CHECK(godunov_flux(1.0, -1.0, m) == doctest::Approx(0.5));   // shock, max side
    CHECK(godunov_flux(-1.0, 1.0, m) == doctest::Approx(0.0));   // transonic rarefaction
    CHECK(godunov_flux(2.0, 2.0, m) == doctest::Approx(2.0));    // consistency
    CHECK(godunov_flux(0.3, 0.8, m) == doctest::Approx(0.045));  // supersonic, upwind left
    CHECK(godunov_flux(-0.8, -0.3, m) == doctest::Approx(0.045));
}

TEST_CASE("evolve: schedule handling") {
    const Grid g = make_grid(32.0, 1024);
    const Field u0 = step_field(g, -0.5, 0.5);
    SolverConfig cfg;
    cfg.snapshot_times = {0.5, 1.0};
    const auto snaps = evolve(u0, 1.0, 0.0, cfg, 2.0);
    REQUIRE(snaps.size() == 3);  // t_end appended
    CHECK(snaps[0].t == doctest::Approx(0.5));
    CHECK(snaps[2].t == doctest::Approx(2.0));
    CHECK(snaps[1].min_u >= -0.5 - 1e-13);
    CHECK(snaps[1].max_u <= 0.5 + 1e-13);

    SolverConfig bad = cfg;
    bad.snapshot_times = {1.0, 0.5};
    CHECK_THROWS_AS(evolve(u0, 1.0, 0.0, bad, 2.0), std::invalid_argument);
    bad.snapshot_times = {3.0};
    CHECK_THROWS_AS(evolve(u0, 1.0, 0.0, bad, 2.0), std::invalid_argument);
}

TEST_CASE("comparison principle under lockstep evolution") {
    const Grid g = make_grid(32.0, 2048);
    const Field a0 = step_field(g, -0.5, 0.5);
    Field b0 = a0;
    add_gaussian_bump(b0, 0.2, 0.5, 1.0);  // b0 >= a0 pointwise
    SolverConfig cfg;
    SolverState sa = make_state(a0, 0.5, 0.0, cfg);
    SolverState sb = make_state(b0, 0.5, 0.0, cfg);
    while (sa.t < 1.0) {
        const double dt = std::min({cfl_dt(sa, cfg), cfl_dt(sb, cfg), 1.0 - sa.t});
        step(sa, cfg, dt);
        step(sb, cfg, dt);
    }
    double worst = 0.0;
    for (std::size_t j = 0; j < g.n; ++j)
        worst = std::min(worst, sb.u.samples[j] - sa.u.samples[j]);
    CHECK(worst >= -1e-13);
}

TEST_CASE("contraction, total variation, max principle on a short run") {
    const Grid g = make_grid(32.0, 2048);
    Field a0 = step_field(g, -0.5, 0.5);
    add_gaussian_bump(a0, 0.1, 0.0, 1.0);
    Field b0 = step_field(g, -0.5, 0.5);
    add_gaussian_bump(b0, 0.1, 1.0, 1.0);
    SolverConfig cfg;
    const auto rep = contraction_check(a0, b0, 1.0, 0.0, cfg, {1.0, 2.0, 3.0, 4.0});
    CHECK(rep.contraction_ok);
    CHECK(rep.tv_ok);
    REQUIRE(rep.l1_diff.size() == 4);
    CHECK(rep.l1_diff.back() <= rep.l1_initial * (1.0 + 1e-10));
    CHECK(rep.tv_a_initial == doctest::Approx(1.0 + 2.0 * 0.1).epsilon(1e-3));
}

TEST_CASE("grids and far fields must match in contraction_check") {
    const Grid g = make_grid(32.0, 1024);
    const Field a0 = step_field(g, -0.5, 0.5);
    const Field b0 = step_field(g, -0.4, 0.5);
    SolverConfig cfg;
    CHECK_THROWS_AS(contraction_check(a0, b0, 1.0, 0.0, cfg, {1.0}), std::invalid_argument);
}

TEST_CASE("mass of the deviation from the initial datum is conserved") {
    const Grid g = make_grid(64.0, 2048);
    Field u0 = step_field(g, -0.5, 0.5);
    add_gaussian_bump(u0, 0.15, -1.0, 1.0);
    SolverConfig cfg;
    const auto snaps = evolve(u0, 1.0, 0.0, cfg, 2.0);
    // f(u_+) = f(u_-) for symmetric far fields, so int (u(t) - u0) stays 0
    double drift = 0.0;
    for (std::size_t j = 0; j < g.n; ++j)
        drift += (snaps.back().u.samples[j] - u0.samples[j]) * g.dx;
    CHECK(std::abs(drift) <= 1e-3);
}

TEST_CASE("spectral and quadrature paths agree on smoothed-step data") {
    const Grid g = make_grid(64.0, 4096);
    Field u0 = reference_profile(1.5, -0.5, 0.5, g);
    add_gaussian_bump(u0, 0.1, 0.0, 2.0);
    SolverConfig cq;
    cq.path = LapPath::quadrature;
    SolverConfig cs;
    cs.path = LapPath::spectral;
    const auto uq = evolve(u0, 1.5, 0.0, cq, 1.0);
    const auto us = evolve(u0, 1.5, 0.0, cs, 1.0);
    double dev = 0.0;
    for (std::size_t j = 0; j < g.n; ++j) {
        if (std::abs(g.node(j)) > 48.0) continue;  // skip the spectral sponge band
        dev = std::max(dev, std::abs(uq.back().u.samples[j] - us.back().u.samples[j]));
    }
    CHECK(dev <= 2e-3);
}

TEST_CASE("center of the evolved step rides at the mean celerity") {
    const Grid g = make_grid(64.0, 2048);
    const Field u0 = step_field(g, 0.0, 1.0);  // cbar = 1/2
    SolverConfig cfg;
    const auto snaps = evolve(u0, 1.0, 0.0, cfg, 4.0);
    const auto& u = snaps.back().u.samples;
    // u should cross 1/2 near x = cbar t = 2
    std::size_t j = 0;
    while (j + 1 < g.n && u[j] < 0.5) ++j;
    const double crossing = g.node(j);
    CHECK(std::abs(crossing - 2.0) <= 0.1);
}

TEST_CASE("galilean shift by a whole number of cells") {
    const Grid g = make_grid(64.0, 4096);
    Field a0 = step_field(g, -0.5, 0.5);
    add_gaussian_bump(a0, 0.1, 0.0, 1.0);
    Field b0 = a0;
    for (auto& v : b0.samples) v += 0.5;
    b0.far_left += 0.5;
    b0.far_right += 0.5;
    SolverConfig cfg;
    const double t = 2.0;  // shift c t = 1 = 64 cells
    const auto ua = evolve(a0, 1.0, 0.0, cfg, t);
    const auto ub = evolve(b0, 1.0, 0.0, cfg, t);
    const std::size_t shift = static_cast<std::size_t>(std::llround(1.0 / g.dx));
    double dev = 0.0;
    for (std::size_t j = shift; j < g.n; ++j) {
        if (std::abs(g.node(j)) > 32.0) continue;
        dev = std::max(dev,
                       std::abs(ub.back().u.samples[j] -
                                (ua.back().u.samples[j - shift] + 0.5)));
    }
    CHECK(dev <= 0.05);
}

TEST_CASE("entropy residual of a short run is nonnegative up to quadrature") {
    const Grid g = make_grid(32.0, 2048);
    const Field u0 = step_field(g, -0.5, 0.5);
    SolverConfig cfg;
    for (int k = 1; k <= 60; ++k) cfg.snapshot_times.push_back(0.05 * k);
    const auto snaps = evolve(u0, 1.0, 0.0, cfg, 3.0);
    const TestBump phi{0.0, 10.0, 1.5, 1.0};
    CHECK(entropy_residual(snaps, 1.0, 0.0, phi) >= -1e-3);
    CHECK(entropy_residual(snaps, 1.0, 0.25, phi) >= -1e-3);

    CHECK_THROWS_AS(entropy_residual({snaps[0], snaps[1]}, 1.0, 0.0, phi),
                    std::invalid_argument);
    const TestBump late{0.0, 10.0, 4.0, 1.0};  // support sticks out of the range
    CHECK_THROWS_AS(entropy_residual(snaps, 1.0, 0.0, late), std::invalid_argument);
}

TEST_CASE("sponge pins the rim to the requested target") {
    const Grid g = make_grid(32.0, 1024);
    const Field u0 = step_field(g, -0.5, 0.5);
    SolverConfig cfg;
    cfg.sponge_width = 2.0;
    cfg.sponge_target = [](double, double x) { return x < 0.0 ? -7.0 : 7.0; };
    SolverState s = make_state(u0, 1.0, 0.0, cfg);
    step(s, cfg, 0.5 * cfl_dt(s, cfg));
    CHECK(s.u.samples.front() == doctest::Approx(-7.0).epsilon(1e-12));
    // interior nodes are untouched by the mask
    CHECK(std::abs(s.u.samples[g.n / 2] - 0.0) <= 0.1);
}

TEST_CASE("state validation") {
    const Grid g = make_grid(32.0, 1024);
    const Field u0 = step_field(g, -0.5, 0.5);
    SolverConfig cfg;
    CHECK_THROWS_AS(make_state(u0, 2.5, 0.0, cfg), std::invalid_argument);
    CHECK_THROWS_AS(make_state(u0, 1.0, -0.1, cfg), std::invalid_argument);
    SolverConfig badcfl;
    badcfl.cfl = 1.5;
    CHECK_THROWS_AS(make_state(u0, 1.0, 0.0, badcfl), std::invalid_argument);
    // quadrature path excludes alpha = 2
    CHECK_THROWS_AS(make_state(u0, 2.0, 0.0, cfg), std::invalid_argument);
    // spectral path rejects sharp steps below alpha = 1
    SolverConfig spec;
    spec.path = LapPath::spectral;
    CHECK_THROWS_AS(make_state(u0, 0.5, 0.0, spec), std::invalid_argument);
}
