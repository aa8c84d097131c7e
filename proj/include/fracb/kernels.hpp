#pragma once

#include <memory>
#include <vector>

#include "fracb/field.hpp"
#include "fracb/grid.hpp"

namespace fracb {

// p_alpha(.,t) sampled on a grid, with d/dx p_alpha(.,t) and
// q_alpha = Lambda^alpha p_alpha(.,1), all synthesized from the symbol
// exp(-t |xi|^alpha) in one spectral pass.
struct KernelTable {
    double alpha = 0.0;
    double t = 0.0;
    Grid grid;
    std::vector<double> density;
    std::vector<double> density_dx;
    std::vector<double> symbol_density;  // q_alpha
};

// Throws when the grid cannot hold the kernel: estimated tail mass beyond
// half_length above 1e-4 (power-envelope estimate), or relative spectral mass
// beyond the Nyquist frequency above 1e-6 (kernel too narrow for dx). The
// small-alpha laws are so heavy-tailed that no reasonable grid passes; those
// are served analytically by ReferenceLaw instead.
KernelTable stable_density(double alpha, double t, const Grid& grid);

// Unit-scale evaluators for the smoothed-step family built on p_alpha:
//   cdf(y)        = int_{-inf}^y p_alpha(.,1)            (step response H)
//   pdf(y)        = p_alpha(y,1)
//   lambda_cdf(y) = int_{-inf}^y Lambda^alpha p_alpha(.,1)
// so that, with s = scale and j = u_+ - u_-,
//   H_alpha(x, s)            = u_- + j * cdf(x s^{-1/alpha})
//   Lambda^alpha H_alpha(x,s) = j s^{-1} * lambda_cdf(x s^{-1/alpha}).
// Closed forms at alpha = 1, 2; rotated-contour tables below 1; a one-time
// fine-grid spectral synthesis for alpha in (1,2), with the power series
// taking over past |y| = 16. lambda_cdf needs alpha >= 1 (the spectral
// solver path; the sub-linear range runs on quadrature and never asks).
class ReferenceLaw {
  public:
    explicit ReferenceLaw(double alpha);

    double alpha_value() const { return alpha_; }
    double cdf(double y) const;
    double pdf(double y) const;
    double lambda_cdf(double y) const;

    // CDF at x of p_alpha(a) * p_2(g) — the step response after a units of
    // alpha-stable smoothing plus g of Gaussian. a = g = 0 is the sharp step.
    double step_response(double a, double g, double x) const;

  private:
    double alpha_;
    std::shared_ptr<const class StableLaw> law_;
    // alpha in (1,2): slope-carrying tables on [0, table_ymax_]
    double table_step_ = 0.0;
    double table_ymax_ = 0.0;
    std::vector<double> tcdf_, tpdf_, tdpdf_, tq_, tqcum_;
};

std::shared_ptr<const ReferenceLaw> reference_law(double alpha);

// H_alpha on the grid: u_- + (u_+ - u_-) * cdf(x), evaluated per node from
// the law (no grid-dependent synthesis error). ref_scale = 1.
Field reference_profile(double alpha, double u_minus, double u_plus, const Grid& grid);

// S_alpha^eps(t) f. The step part of f (per its ref_scale/ref_gauss tags) is
// propagated in closed form through ReferenceLaw::step_response; the remaining
// integrable perturbation gets the multiplier exp(-t xi^alpha - eps t (2 pi xi)^2).
// Far fields are preserved exactly. Throws if the evolved perturbation reaches
// the grid edge (tail-mass overflow).
Field semigroup_apply(double alpha, double eps, double t, const Field& f);

}  // namespace fracb
