#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "fracb/fft.hpp"
#include "fracb/field.hpp"

namespace fracb {

// Levy–Khintchine splitting of Lambda^alpha at radius r on a grid,
//   inner: -G_a int_{|z|<=r} (f(x+z) - f(x) - f'(x) z) |z|^{-1-a} dz
//   outer: -G_a int_{|z|> r} (f(x+z) - f(x))          |z|^{-1-a} dz
// discretized so every weight is positive and constants are annihilated
// exactly, which is what makes the solver's monotonicity discrete facts:
//  - inner: the symmetrized increment f(x+z)+f(x-z)-2f(x) is written z^2 Q(z);
//    Q is hat-interpolated (constant on the first cell, Q'(0)=0 by symmetry)
//    and integrated against z^{1-alpha} exactly per cell — O(dx^2) uniformly
//    in alpha, no endpoint singularity;
//  - outer: f(x+z) is hat-interpolated and integrated against |z|^{-1-alpha}
//    exactly per cell; beyond the last on-grid sample the closure blends into
//    the far-field constant and integrates the power tail in closed form, so
//    the operator sees step data on all of R, not a truncation.
// r snaps to a whole number of cells; r >= dx required.
class LevyKhintchineSplit {
  public:
    LevyKhintchineSplit(double alpha, double r, const Grid& grid);

    double alpha_value() const { return alpha_; }
    double radius() const { return r_; }
    const Grid& grid() const { return grid_; }
    // sup_i of the total positive weight against neighbors; the CFL bound.
    double row_sum() const { return row_sum_; }

    std::vector<double> apply_inner(std::span<const double> f, double u_minus,
                                    double u_plus) const;
    std::vector<double> apply_outer(std::span<const double> f, double u_minus,
                                    double u_plus) const;
    std::vector<double> apply(std::span<const double> f, double u_minus, double u_plus) const;
    // O(n m) evaluation of the outer sum, for validating the FFT path.
    std::vector<double> apply_outer_direct(std::span<const double> f, double u_minus,
                                           double u_plus) const;

  private:
    std::vector<double> outer_from(std::span<const double> conv, std::span<const double> f,
                                   double u_minus, double u_plus) const;

    double alpha_ = 0.0, r_ = 0.0, levy_ = 0.0;
    Grid grid_;
    std::size_t m_ = 0;                 // r / dx
    std::vector<double> inner_w_;       // inner_w_[k], k = 1..m (index 0 unused)
    double inner_row_ = 0.0;            // 2 * sum inner_w_
    double outer_mass_ = 0.0;           // int_{|z|>r} |z|^{-1-a} dz = 2 r^-a / a
    std::vector<double> closure_;       // closure_[k]: ghost weight when the last
                                        // on-grid lag in a direction is k
    std::shared_ptr<SymmetricConvolver> conv_;
    double row_sum_ = 0.0;
};

// Spectral realization: multiplier |xi|^alpha on the perturbation from the
// field's step reference, plus the analytic Lambda^alpha of that reference
// (lambda_cdf of the law for a smoothed step, step_laplacian for a sharp one).
// Throws when the perturbation has not decayed at the grid edge, or for
// step-like data with alpha < 1 / a Gaussian-smoothed reference (no analytic
// background available — the quadrature path covers those).
Field apply_spectral(double alpha, const Field& f);

Field apply_quadrature(const LevyKhintchineSplit& split, const Field& f);

// Exact Lambda^alpha of the pure step: (u_+ - u_-) (G_a / a) sign(x) |x|^-a.
// alpha = 2 returns 0 (the second derivative of a step vanishes off the jump).
double step_laplacian(double alpha, double u_minus, double u_plus, double x);

// min over the grid of eta'(f) Lambda f - Lambda eta(f) on the quadrature
// path; >= 0 exactly (up to roundoff) for convex eta by positivity of the
// weights. r = 0 picks the default 4 dx.
double kato_check(double alpha, const Field& f, const std::function<double(double)>& eta,
                  const std::function<double(double)>& eta_prime, double r = 0.0);

// ||w||_2^{2(1+a)} / (||Lambda^{a/2} w||_2^2 ||w||_1^{2a}); w must have zero
// far fields and not vanish identically.
double nash_check(double alpha, const Field& w);

// int |w|^{p-2} w Lambda^a w dx - 4(p-1)/p^2 int (Lambda^{a/2} |w|^{p/2})^2 dx,
// spectral path; p >= 2. Zero (to quadrature noise) at p = 2 and at alpha = 2.
double sv_check(double alpha, double p, const Field& w);

}  // namespace fracb
