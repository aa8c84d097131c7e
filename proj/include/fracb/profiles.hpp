#pragma once

#include <vector>

#include "fracb/field.hpp"
#include "fracb/solver.hpp"

namespace fracb {

// The explicit rarefaction fan of the inviscid problem: u_- left of the fan,
// x/t inside, u_+ right of it.
double rarefaction(double u_minus, double u_plus, double x, double t);

// alpha = 1 self-similar profile U(., 1) with its derivative on a y-grid,
// produced by evolving the step (the existence construction) with a small
// viscosity. Outside the grid, value() clamps to the far fields.
struct SelfSimilarProfile {
    double u_minus = 0.0, u_plus = 0.0;
    Grid grid;  // y-grid of U(., 1)
    std::vector<double> U, Uy;
    // provenance of the producing run
    double eps = 0.0;
    Grid run_grid;
    double t_end = 1.0;
    // || u(., 2 t_end) - u(./2, t_end) ||_inf, measured node-exactly
    double selfsim_defect = 0.0;

    double cbar() const { return 0.5 * (u_minus + u_plus); }
    double jump() const { return u_plus - u_minus; }
    double value(double y) const;
    double deriv(double y) const;
};

SelfSimilarProfile compute_profile(double u_minus, double u_plus, const Grid& run_grid,
                                   double eps = 1e-3, double t_end = 1.0);

// Samplewise shape checks for p1-p4 on the stored profile.
struct ProfileShape {
    bool monotone = false;            // p2, exact
    double edge_left = 0.0, edge_right = 0.0;  // deviation from u_-, u_+
    double symmetry_residual = 0.0;   // max |U(c+y) + U(c-y) - 2c|
    double lipschitz = 0.0;           // max |Uy|
    double convexity_violation_frac = 0.0;  // second-difference sign flips in the bulk
};

ProfileShape profile_shape(const SelfSimilarProfile& prof);

// Mean of y^2 U_y over [lo, hi] mirrored to both sides, against the predicted
// (u_+ - u_-)/(2 pi^2), plus the dyadic-window deviations (the averaged form
// of the tail estimate): the deviation over [hi/2, hi] should undercut the one
// over [hi/4, hi/2].
struct TailCheck {
    double left_mean = 0.0, right_mean = 0.0;
    double expected = 0.0;
    double dev_inner = 0.0, dev_outer = 0.0;  // dyadic windows, relative deviations
    bool reduction_ok = false;

    double constant() const { return 0.5 * (left_mean + right_mean); }
};

TailCheck tail_check(const SelfSimilarProfile& prof, double window_lo, double window_hi);

// max over the bulk (|y| <= 3/4 of the grid) of |(U - y) U_y + Lambda^1 U|,
// quadrature Laplacian with the step-tail closures.
double profile_equation_residual(const SelfSimilarProfile& prof);

// Duhamel form of the profile at unit time, far fields +-1/2:
//   -1/2 + H_1(x,1) - int_0^{1/2} dp_1(1-tau)/dx * U^2(./tau,1)/2 dtau
//               - int_{1/2}^1 tau^{-1} p_1(1-tau) * (U U_y)(./tau) dtau,
// Gauss-Legendre in tau (nodes_per_half per half-interval, never sampling
// tau = 1), convolutions as Fourier multipliers. Residual is the max norm
// against the stored profile over the bulk.
struct DuhamelResult {
    Field reconstruction;
    double residual = 0.0;
};

DuhamelResult duhamel_reconstruct(const SelfSimilarProfile& prof,
                                  std::size_t nodes_per_half = 16);

// Probability-law comparison for the (0,1)-normalized profile: g = the two
// Duhamel integrals of the centered profile V, positive for positive x iff
// the law of X - cbar is tighter than Cauchy; window masses P(|X-cbar| < r)
// vs P(|Y| < r) on a few radii.
struct CauchyComparison {
    std::vector<double> x, g;   // g at the profile nodes
    double g_at_zero = 0.0;
    double g_min_bulk = 0.0;    // min over 0 < x <= bulk_hi
    double bulk_hi = 20.0;
    bool positive_bulk = false;
    std::vector<double> radii, p_x, p_y;  // P(|X-cbar|<r), P(|Y|<r)
    bool windows_ok = false;
};

CauchyComparison cauchy_comparison(const SelfSimilarProfile& prof);

}  // namespace fracb
