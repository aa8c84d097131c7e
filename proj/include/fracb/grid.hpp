#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fracb {

// Uniform periodic grid on [-L, L) with n = 2^k nodes, x_j = -L + j*dx.
// The node x = 0 sits at index n/2, so step data and odd-symmetry checks are
// exact at the origin. Frequencies live at xi_k = k/(2L) (cycles per unit
// length); the Nyquist multiplier on this grid is (1/(2dx))^alpha.
struct Grid {
    double half_length = 0.0;  // L
    std::size_t n = 0;
    double dx = 0.0;

    double node(std::size_t j) const { return -half_length + static_cast<double>(j) * dx; }
    double freq_spacing() const { return 1.0 / (2.0 * half_length); }
    double nyquist() const { return 1.0 / (2.0 * dx); }
    std::size_t index_of(double x) const;  // nearest node index, throws if off-grid
    std::vector<double> nodes() const;

    bool operator==(const Grid&) const = default;
};

// Throws std::invalid_argument unless L > 0 and n is a power of two >= 16.
Grid make_grid(double half_length, std::size_t n);

// Discrete L^p norm: (sum |f_j|^p dx)^(1/p); p = infinity -> max |f_j|.
// p is any real >= 1; pass lp_infinity for the sup norm.
inline constexpr double lp_infinity = -1.0;
double lp_norm(std::span<const double> f, const Grid& g, double p);

// Trapezoid cumulative integral from the left edge with a prescribed value
// there; out[j] = boundary + int_{-L}^{x_j} f.
std::vector<double> cumulative_trapezoid(std::span<const double> f, const Grid& g,
                                         double boundary);

// Corrected (Hermite) trapezoid cumulative: uses the derivative table to get
// an O(dx^4) cumulative, int over a cell ~ dx/2 (f_j + f_{j+1}) + dx^2/12 (f'_j - f'_{j+1}).
std::vector<double> cumulative_corrected(std::span<const double> f,
                                         std::span<const double> df, const Grid& g,
                                         double boundary);

// sum f_j dx over nodes with a <= x_j <= b.
double integrate_window(std::span<const double> f, const Grid& g, double a, double b);

}  // namespace fracb
