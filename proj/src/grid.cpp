#include "fracb/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fracb {

namespace {
bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid make_grid(double half_length, std::size_t n) {
    if (!(half_length > 0.0) || !std::isfinite(half_length))
        throw std::invalid_argument("grid: half_length must be positive and finite");
    if (!power_of_two(n) || n < 16)
        throw std::invalid_argument("grid: n must be a power of two >= 16, got " +
                                    std::to_string(n));
    Grid g;
    g.half_length = half_length;
    g.n = n;
    g.dx = 2.0 * half_length / static_cast<double>(n);
    return g;
}

std::size_t Grid::index_of(double x) const {
    double pos = (x + half_length) / dx;
    auto j = static_cast<long long>(std::llround(pos));
    if (j < 0 || j >= static_cast<long long>(n) || std::abs(pos - static_cast<double>(j)) > 1e-9)
        throw std::invalid_argument("grid: x = " + std::to_string(x) + " is not a grid node");
    return static_cast<std::size_t>(j);
}

std::vector<double> Grid::nodes() const {
    std::vector<double> xs(n);
    for (std::size_t j = 0; j < n; ++j) xs[j] = node(j);
    return xs;
}

double lp_norm(std::span<const double> f, const Grid& g, double p) {
    if (f.size() != g.n) throw std::invalid_argument("lp_norm: sample count != grid size");
    if (p == lp_infinity) {
        double m = 0.0;
        for (double v : f) m = std::max(m, std::abs(v));
        return m;
    }
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1 or infinity");
    if (p == 1.0) {
        double s = 0.0;
        for (double v : f) s += std::abs(v);
        return s * g.dx;
    }
    if (p == 2.0) {
        double s = 0.0;
        for (double v : f) s += v * v;
        return std::sqrt(s * g.dx);
    }
    double s = 0.0;
    for (double v : f) s += std::pow(std::abs(v), p);
    return std::pow(s * g.dx, 1.0 / p);
}

std::vector<double> cumulative_trapezoid(std::span<const double> f, const Grid& g,
                                         double boundary) {
    if (f.size() != g.n) throw std::invalid_argument("cumulative: sample count != grid size");
    std::vector<double> out(g.n);
    out[0] = boundary;
    for (std::size_t j = 1; j < g.n; ++j)
        out[j] = out[j - 1] + 0.5 * g.dx * (f[j - 1] + f[j]);
    return out;
}

std::vector<double> cumulative_corrected(std::span<const double> f,
                                         std::span<const double> df, const Grid& g,
                                         double boundary) {
    if (f.size() != g.n || df.size() != g.n)
        throw std::invalid_argument("cumulative: sample count != grid size");
    std::vector<double> out(g.n);
    out[0] = boundary;
    const double c = g.dx * g.dx / 12.0;
    for (std::size_t j = 1; j < g.n; ++j)
        out[j] = out[j - 1] + 0.5 * g.dx * (f[j - 1] + f[j]) + c * (df[j - 1] - df[j]);
    return out;
}

double integrate_window(std::span<const double> f, const Grid& g, double a, double b) {
    if (f.size() != g.n) throw std::invalid_argument("integrate_window: size mismatch");
    double s = 0.0;
    for (std::size_t j = 0; j < g.n; ++j) {
        double x = g.node(j);
        if (x >= a - 1e-12 && x <= b + 1e-12) s += f[j];
    }
    return s * g.dx;
}

}  // namespace fracb
