#include "fracb/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fracb {

Field constant_field(const Grid& g, double c) {
    return Field{g, std::vector<double>(g.n, c), c, c};
}

Field step_field(const Grid& g, double left, double right) {
    Field f{g, std::vector<double>(g.n), left, right};
    f.ref_scale = 0.0;  // sharp step
    for (std::size_t j = 0; j < g.n; ++j) {
        double x = g.node(j);
        f.samples[j] = x < 0.0 ? left : (x > 0.0 ? right : 0.5 * (left + right));
    }
    return f;
}

Field field_from(const Grid& g, const std::function<double(double)>& fn, double far_left,
                 double far_right) {
    Field f{g, std::vector<double>(g.n), far_left, far_right};
    for (std::size_t j = 0; j < g.n; ++j) f.samples[j] = fn(g.node(j));
    return f;
}

void add_gaussian_bump(Field& f, double amp, double center, double width) {
    if (!(width > 0.0)) throw std::invalid_argument("bump: width must be positive");
    for (std::size_t j = 0; j < f.grid.n; ++j) {
        double s = (f.grid.node(j) - center) / width;
        f.samples[j] += amp * std::exp(-s * s);
    }
}

double tail_residual(const Field& f, std::size_t edge) {
    edge = std::min(edge, f.grid.n / 4);
    double r = 0.0;
    for (std::size_t j = 0; j < edge; ++j) {
        r = std::max(r, std::abs(f.samples[j] - f.far_left));
        r = std::max(r, std::abs(f.samples[f.grid.n - 1 - j] - f.far_right));
    }
    return r;
}

}  // namespace fracb
