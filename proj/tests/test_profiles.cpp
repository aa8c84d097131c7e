#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fracb/profiles.hpp"
#include "fracb/quadrature.hpp"
#include "util.hpp"

using namespace fracb;

namespace {

// one shared small profile; fine enough for property checks, cheap to build
const SelfSimilarProfile& small_profile() {
    static const SelfSimilarProfile p =
        compute_profile(-0.5, 0.5, make_grid(48.0, 4096), 1e-3, 1.0);
    return p;
}

}  // namespace

TEST_CASE("rarefaction fan") {
    CHECK(rarefaction(-1.0, 1.0, -2.0, 1.0) == -1.0);
    CHECK(rarefaction(-1.0, 1.0, 2.0, 1.0) == 1.0);
    CHECK(rarefaction(-1.0, 1.0, 0.5, 1.0) == doctest::Approx(0.5));
    CHECK(rarefaction(-1.0, 1.0, 1.0, 2.0) == doctest::Approx(0.5));
    CHECK(rarefaction(0.0, 1.0, -0.1, 1.0) == 0.0);
    CHECK_THROWS_AS(rarefaction(-1.0, 1.0, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(rarefaction(1.0, -1.0, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("quadrature helpers") {
    // gauss rule integrates low-degree polynomials exactly
    CHECK(gauss_integrate([](double x) { return x * x * x * x * x; }, 0.0, 1.0, 3) ==
          doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(gauss_integrate([](double x) { return std::exp(x); }, 0.0, 1.0, 15) ==
          doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));

    // hermite interpolation reproduces a cubic exactly
    const double h = 0.7, s = 0.37;
    const auto p = [](double x) { return x * x * x - 2.0 * x + 1.0; };
    const auto dp = [](double x) { return 3.0 * x * x - 2.0; };
    const double x = s * h;
    CHECK(cubic_hermite(p(0.0), p(h), dp(0.0), dp(h), h, s) ==
          doctest::Approx(p(x)).epsilon(1e-14));
    CHECK(cubic_hermite_deriv(p(0.0), p(h), dp(0.0), dp(h), h, s) ==
          doctest::Approx(dp(x)).epsilon(1e-13));

    // mollifier support and smoothness
    CHECK(mollifier(0.0) == doctest::Approx(1.0));
    CHECK(mollifier(1.0) == 0.0);
    CHECK(mollifier(-1.2) == 0.0);
    CHECK(mollifier(0.999) > 0.0);
    const double fd =
        (mollifier(0.3 + 5e-7) - mollifier(0.3 - 5e-7)) / 1e-6;
    CHECK(mollifier_deriv(0.3) == doctest::Approx(fd).epsilon(1e-6));

    const TestBump b{1.0, 2.0, 3.0, 1.5};
    const double fdx = (b.value(0.4 + 5e-7, 2.7) - b.value(0.4 - 5e-7, 2.7)) / 1e-6;
    CHECK(b.dx(0.4, 2.7) == doctest::Approx(fdx).epsilon(1e-6));
    const double fdt = (b.value(0.4, 2.7 + 5e-7) - b.value(0.4, 2.7 - 5e-7)) / 1e-6;
    CHECK(b.dt(0.4, 2.7) == doctest::Approx(fdt).epsilon(1e-6));
}

TEST_CASE("profile construction basics") {
    const auto& prof = small_profile();
    CHECK(prof.grid.half_length == doctest::Approx(24.0));
    CHECK(prof.u_minus == -0.5);
    CHECK(prof.jump() == doctest::Approx(1.0));
    CHECK(prof.selfsim_defect > 0.0);
    CHECK(prof.selfsim_defect <= 0.02);

    // odd symmetry holds to solver accuracy at the midpoint
    CHECK(std::abs(prof.value(0.0)) <= 1e-8);
    // clamping outside the grid
    CHECK(prof.value(-100.0) == -0.5);
    CHECK(prof.value(100.0) == 0.5);
    CHECK(prof.deriv(100.0) == 0.0);
    CHECK(prof.deriv(0.0) > 0.1);

    // interpolant consistency off the nodes
    const double y = 1.7 + 0.3 * prof.grid.dx;
    const double fd = (prof.value(y + 5e-5) - prof.value(y - 5e-5)) / 1e-4;
    CHECK(prof.deriv(y) == doctest::Approx(fd).epsilon(1e-4));
}

TEST_CASE("profile shape properties") {
    const auto& prof = small_profile();
    const auto s = profile_shape(prof);
    CHECK(s.monotone);
    CHECK(s.lipschitz > 0.0);
    CHECK(s.symmetry_residual <= 2.0 * prof.grid.dx * s.lipschitz);
    CHECK(s.convexity_violation_frac <= 0.01);
    CHECK(std::abs(s.edge_left) <= 0.02);
    CHECK(std::abs(s.edge_right) <= 0.02);
}

TEST_CASE("profile tails carry the predicted constant") {
    const auto& prof = small_profile();
    const auto tc = tail_check(prof, 8.0, 16.0);
    const double expected = 1.0 / (2.0 * M_PI * M_PI);
    CHECK(tc.expected == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(tc.constant() - expected) <= 0.15 * expected);

    CHECK(thrown_message<std::invalid_argument>([&] { tail_check(prof, 10.0, 9.0); }) ==
          "tail_check: bad window");
    CHECK(thrown_message<std::invalid_argument>([&] {
              tail_check(prof, 10.0, 23.5);
          }) == "tail_check: window overlapping sponge");
}

TEST_CASE("profile equation residual is small and the reconstruction matches") {
    const auto& prof = small_profile();
    CHECK(profile_equation_residual(prof) <= 0.1);

    const auto d8 = duhamel_reconstruct(prof, 8);
    const auto d16 = duhamel_reconstruct(prof, 16);
    CHECK(d8.residual <= 0.05);
    CHECK(d16.residual <= d8.residual + 1e-3);  // quadrature refinement cannot hurt
    REQUIRE(d16.reconstruction.samples.size() == prof.grid.n);
}

TEST_CASE("compute_profile rejects hopeless grids") {
    CHECK_THROWS_AS(compute_profile(-0.5, 0.5, make_grid(16.0, 16), 1e-3, 1.0),
                    std::runtime_error);
}

TEST_CASE("cauchy comparison wants the (0,1) normalization") {
    CHECK(thrown_message<std::invalid_argument>([&] {
              cauchy_comparison(small_profile());
          }) == "cauchy_comparison: non-centered profile (need u_± = 0,1)");
}
