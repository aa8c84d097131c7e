#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fracb/field.hpp"
#include "fracb/frac_laplacian.hpp"
#include "fracb/kernels.hpp"

using namespace fracb;

namespace {

Field wave_packet(const Grid& g) {
    Field w = constant_field(g, 0.0);
    for (std::size_t j = 0; j < g.n; ++j) {
        const double x = g.node(j);
        w.samples[j] = std::exp(-x * x) * std::sin(3.0 * x);
    }
    return w;
}

}  // namespace

TEST_CASE("levy-khintchine split geometry and constants annihilation") {
    const Grid g = make_grid(32.0, 1024);
    CHECK_THROWS_AS(LevyKhintchineSplit(1.0, 0.4 * g.dx, g), std::invalid_argument);
    LevyKhintchineSplit split(1.0, 0.2, g);  // snaps to a whole number of cells
    const double cells = split.radius() / g.dx;
    CHECK(cells == doctest::Approx(std::round(cells)).epsilon(1e-12));
    CHECK(split.row_sum() > 0.0);

    const Field c = constant_field(g, 0.7);
    Field cc = c;
    cc.far_left = cc.far_right = 0.7;
    const auto lam = split.apply(cc.samples, 0.7, 0.7);
    double dev = 0.0;
    for (double v : lam) dev = std::max(dev, std::abs(v));
    CHECK(dev <= 1e-13);
}

TEST_CASE("spectral vs quadrature on a gaussian, r-independence") {
    const Grid g = make_grid(64.0, 4096);
    Field f = constant_field(g, 0.0);
    add_gaussian_bump(f, 1.0, 0.0, 2.0);
    const Field spec = apply_spectral(1.0, f);
    for (double r : {4.0 * g.dx, 16.0 * g.dx}) {
        LevyKhintchineSplit split(1.0, r, g);
        const auto quad = split.apply(f.samples, 0.0, 0.0);
        double dev = 0.0;
        for (std::size_t j = 0; j < g.n; ++j)
            dev = std::max(dev, std::abs(quad[j] - spec.samples[j]));
        CHECK(dev <= 1e-3);
    }
}

TEST_CASE("outer sum: fft path equals the direct reference") {
    const Grid g = make_grid(32.0, 1024);
    Field f = step_field(g, -0.5, 0.5);
    add_gaussian_bump(f, 0.2, 1.0, 1.5);
    LevyKhintchineSplit split(0.75, 4.0 * g.dx, g);
    const auto a = split.apply_outer(f.samples, -0.5, 0.5);
    const auto b = split.apply_outer_direct(f.samples, -0.5, 0.5);
    double dev = 0.0;
    for (std::size_t j = 0; j < g.n; ++j) dev = std::max(dev, std::abs(a[j] - b[j]));
    CHECK(dev <= 5e-12);
}

TEST_CASE("step laplacian closed form") {
    // j (G_alpha/alpha) sign(x) |x|^{-alpha}; G_1 = 1/(2 pi^2), G_1/2 / (1/2) = 1/(2 pi)
    CHECK(step_laplacian(1.0, -0.5, 0.5, 1.0) ==
          doctest::Approx(1.0 / (2.0 * M_PI * M_PI)).epsilon(1e-12));
    CHECK(step_laplacian(1.0, -0.5, 0.5, 2.0) ==
          doctest::Approx(1.0 / (4.0 * M_PI * M_PI)).epsilon(1e-12));
    CHECK(step_laplacian(1.0, -0.5, 0.5, -1.0) ==
          doctest::Approx(-1.0 / (2.0 * M_PI * M_PI)).epsilon(1e-12));
    CHECK(step_laplacian(0.5, 0.0, 1.0, 4.0) ==
          doctest::Approx(1.0 / (4.0 * M_PI)).epsilon(1e-12));
    CHECK(step_laplacian(2.0, -0.5, 0.5, 1.0) == 0.0);
    // doubling the jump doubles the value
    CHECK(step_laplacian(1.5, -1.0, 1.0, 2.0) ==
          doctest::Approx(2.0 * step_laplacian(1.5, -0.5, 0.5, 2.0)).epsilon(1e-12));
}

TEST_CASE("quadrature reproduces the sharp-step formula") {
    const Grid g = make_grid(64.0, 4096);
    const Field u = step_field(g, -0.5, 0.5);
    for (double alpha : {0.5, 1.0}) {
        LevyKhintchineSplit split(alpha, 4.0 * g.dx, g);
        const auto lam = split.apply(u.samples, -0.5, 0.5);
        for (double x : {1.0, 2.0, 5.0}) {
            const double exact = step_laplacian(alpha, -0.5, 0.5, x);
            CHECK(lam[g.index_of(x)] == doctest::Approx(exact).epsilon(0.01));
        }
    }
}

TEST_CASE("kato inequality on the quadrature path") {
    const Grid g = make_grid(32.0, 1024);
    Field f = constant_field(g, 0.0);
    add_gaussian_bump(f, 1.0, -2.0, 1.5);
    add_gaussian_bump(f, -0.7, 3.0, 2.0);
    const auto sq = [](double u) { return u * u; };
    const auto dsq = [](double u) { return 2.0 * u; };
    CHECK(kato_check(0.5, f, sq, dsq) >= -1e-12);
    CHECK(kato_check(1.5, f, sq, dsq) >= -1e-12);
    const auto av = [](double u) { return std::abs(u); };
    const auto dav = [](double u) { return u >= 0.0 ? 1.0 : -1.0; };
    CHECK(kato_check(1.0, f, av, dav) >= -1e-12);
}

TEST_CASE("nash quotient: scale and translation invariant, finite") {
    const Grid g = make_grid(32.0, 2048);
    Field w = constant_field(g, 0.0);
    add_gaussian_bump(w, 1.0, 0.0, 2.0);
    const double r = nash_check(1.0, w);
    CHECK(std::isfinite(r));
    CHECK(r > 0.0);

    Field w3 = w;
    for (auto& v : w3.samples) v *= 3.0;
    CHECK(nash_check(1.0, w3) == doctest::Approx(r).epsilon(1e-12));

    Field ws = constant_field(g, 0.0);
    add_gaussian_bump(ws, 1.0, 3.0, 2.0);  // on-grid shift
    CHECK(nash_check(1.0, ws) == doctest::Approx(r).epsilon(1e-9));
}

TEST_CASE("stroock-varopoulos margins") {
    const Grid g = make_grid(16.0, 1024);
    const Field w = wave_packet(g);
    // p = 2 on a nonnegative field is a Parseval identity; a sign change
    // makes it a strict inequality (the modulus sheds Dirichlet energy)
    Field wp = constant_field(g, 0.0);
    for (std::size_t j = 0; j < g.n; ++j) {
        const double x = g.node(j);
        wp.samples[j] = std::exp(-x * x) * (1.5 + std::sin(3.0 * x));
    }
    CHECK(std::abs(sv_check(0.5, 2.0, wp)) <= 1e-10);
    CHECK(std::abs(sv_check(1.0, 2.0, wp)) <= 1e-10);
    CHECK(std::abs(sv_check(2.0, 2.0, wp)) <= 1e-10);
    CHECK(sv_check(0.5, 2.0, w) >= 1e-3);
    // alpha = 2, p = 4: |w|^2 drops the sign, and integration by parts is
    // alias-free for band-limited data
    CHECK(std::abs(sv_check(2.0, 4.0, w)) <= 1e-9);
    // inequality side
    CHECK(sv_check(0.5, 3.0, w) >= -1e-10);
    CHECK(sv_check(1.0, 3.0, w) >= -1e-10);
    CHECK(sv_check(0.5, 4.0, w) >= -1e-10);
    CHECK(sv_check(1.0, 4.0, w) >= -1e-10);
}

TEST_CASE("spectral path guards") {
    const Grid g = make_grid(32.0, 1024);
    // a sharp step has an exact background at every alpha ...
    const Field s = apply_spectral(0.5, step_field(g, -0.5, 0.5));
    CHECK(s.samples[g.index_of(1.0)] ==
          doctest::Approx(step_laplacian(0.5, -0.5, 0.5, 1.0)).epsilon(1e-12));
    // ... but a smoothed reference below alpha = 1 has no integrable one
    CHECK_THROWS_AS(apply_spectral(0.5, reference_profile(0.5, -0.5, 0.5, g)),
                    std::invalid_argument);
    // and a viscosity-smoothed step has no analytic background at all
    Field gsm = reference_profile(1.0, -0.5, 0.5, g);
    gsm.ref_gauss = 0.1;
    CHECK_THROWS_AS(apply_spectral(1.0, gsm), std::invalid_argument);
    // perturbation parked on the rim
    Field e = constant_field(g, 0.0);
    add_gaussian_bump(e, 1.0, 31.0, 2.0);
    CHECK_THROWS(apply_spectral(1.0, e));
}
