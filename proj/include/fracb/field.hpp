#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fracb/grid.hpp"

namespace fracb {

// Grid samples plus the far-field constants (u_-, u_+) the function attains
// off-grid. All step-like data in the lab is carried this way; operators use
// the constants for tail closures instead of assuming periodicity.
struct Field {
    Grid grid;
    std::vector<double> samples;
    double far_left = 0.0;   // value as x -> -inf
    double far_right = 0.0;  // value as x -> +inf

    // Scales of the smoothed-step part of this field: the tails are assumed to
    // follow u_- + jump * CDF of p_alpha(ref_scale) * p_2(ref_gauss). The
    // semigroup propagates the step part in closed form through these numbers
    // (and advances them), so repeated applications compose exactly instead of
    // accumulating periodization error from the heavy |x|^{-alpha} tails.
    // ref_scale = 0 marks a sharp step; fields made by reference_profile carry 1.
    double ref_scale = 1.0;
    double ref_gauss = 0.0;

    double jump() const { return far_right - far_left; }
};

Field constant_field(const Grid& g, double c);

// Step with the left state for x < 0, right state for x > 0 and the midpoint
// value at the x = 0 node (keeps odd symmetry exact).
Field step_field(const Grid& g, double left, double right);

Field field_from(const Grid& g, const std::function<double(double)>& f, double far_left,
                 double far_right);

// f + amp * exp(-((x-center)/width)^2); far fields unchanged.
void add_gaussian_bump(Field& f, double amp, double center, double width);

// Largest deviation of the outermost `edge` samples from the far-field
// constants; the solver's tail guard compares this against its tolerance.
double tail_residual(const Field& f, std::size_t edge = 8);

}  // namespace fracb
