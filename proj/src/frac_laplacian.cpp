#include "fracb/frac_laplacian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fracb/kernels.hpp"
#include "fracb/stable_law.hpp"

namespace fracb {

namespace {

double edge_max_abs(std::span<const double> w, std::size_t edge = 8) {
    edge = std::min(edge, w.size());
    double m = 0.0;
    for (std::size_t j = 0; j < edge; ++j) {
        m = std::max(m, std::abs(w[j]));
        m = std::max(m, std::abs(w[w.size() - 1 - j]));
    }
    return m;
}

}  // namespace

LevyKhintchineSplit::LevyKhintchineSplit(double alpha, double r, const Grid& grid)
    : alpha_(alpha), grid_(grid) {
    if (!(alpha > 0.0) || alpha >= 2.0)
        throw std::invalid_argument("quadrature splitting needs alpha in (0,2)");
    levy_ = levy_constant(alpha);
    const double dx = grid.dx;
    m_ = static_cast<std::size_t>(std::llround(r / dx));
    if (m_ < 1 || r < dx * 0.5)
        throw std::invalid_argument("splitting radius below one cell");
    if (m_ + 2 >= grid.n / 2) throw std::invalid_argument("splitting radius too large for grid");
    r_ = static_cast<double>(m_) * dx;

    // inner: hat coefficients c_k against z^{1-alpha} on [0, r]; Q constant on
    // the first cell (symmetry gives Q'(0) = 0, so this stays second order).
    std::vector<double> c(m_ + 1, 0.0);
    c[1] = std::pow(dx, 2.0 - alpha) / (2.0 - alpha);
    for (std::size_t k = 1; k < m_; ++k) {
        const double a = static_cast<double>(k) * dx;
        const double b = a + dx;
        const double A =
            (std::pow(b, 2.0 - alpha) - std::pow(a, 2.0 - alpha)) / (2.0 - alpha);
        const double B =
            (std::pow(b, 3.0 - alpha) - std::pow(a, 3.0 - alpha)) / (3.0 - alpha);
        c[k] += (b * A - B) / dx;
        c[k + 1] += (B - a * A) / dx;
    }
    inner_w_.assign(m_ + 1, 0.0);
    for (std::size_t k = 1; k <= m_; ++k) {
        const double zk = static_cast<double>(k) * dx;
        inner_w_[k] = levy_ * c[k] / (zk * zk);
        inner_row_ += 2.0 * inner_w_[k];
    }

    // outer: hat weights against |z|^{-1-alpha} per cell [k dx, (k+1) dx],
    // k >= m; the up-hat of the last covered cell plus the closed-form power
    // tail become the ghost (far-field) weight for each truncation depth.
    const std::size_t n = grid.n;
    std::vector<double> W(n, 0.0);
    closure_.assign(n, 0.0);
    outer_mass_ = 2.0 * std::pow(r_, -alpha) / alpha;
    double up_prev = 0.0;
    for (std::size_t k = m_; k < n; ++k) {
        const double a = static_cast<double>(k) * dx;
        const double b = a + dx;
        const double A = (std::pow(a, -alpha) - std::pow(b, -alpha)) / alpha;
        const double B = alpha == 1.0
                             ? std::log(b / a)
                             : (std::pow(a, 1.0 - alpha) - std::pow(b, 1.0 - alpha)) /
                                   (alpha - 1.0);
        const double down = (b * A - B) / dx;
        const double up = (B - a * A) / dx;
        W[k] = down + up_prev;
        closure_[k] = up + std::pow(b, -alpha) / alpha;
        up_prev = up;
    }
    const double whole = std::pow(r_, -alpha) / alpha;
    for (std::size_t k = 0; k < m_; ++k) closure_[k] = whole;
    conv_ = std::make_shared<SymmetricConvolver>(grid, W);
    row_sum_ = inner_row_ + levy_ * outer_mass_;
}

std::vector<double> LevyKhintchineSplit::apply_inner(std::span<const double> f,
                                                     double u_minus, double u_plus) const {
    const std::size_t n = grid_.n;
    if (f.size() != n) throw std::invalid_argument("apply_inner: sample count mismatch");
    std::vector<double> out(n, 0.0);
    const auto at = [&](std::ptrdiff_t j) {
        if (j < 0) return u_minus;
        if (j >= static_cast<std::ptrdiff_t>(n)) return u_plus;
        return f[static_cast<std::size_t>(j)];
    };
    for (std::size_t i = 0; i < n; ++i) {
        const auto si = static_cast<std::ptrdiff_t>(i);
        double acc = 0.0;
        for (std::size_t k = 1; k <= m_; ++k) {
            const auto sk = static_cast<std::ptrdiff_t>(k);
            acc += inner_w_[k] * (2.0 * f[i] - at(si + sk) - at(si - sk));
        }
        out[i] = acc;
    }
    return out;
}

std::vector<double> LevyKhintchineSplit::outer_from(std::span<const double> conv,
                                                    std::span<const double> f,
                                                    double u_minus, double u_plus) const {
    const std::size_t n = grid_.n;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = levy_ * (f[i] * outer_mass_ - conv[i] - u_plus * closure_[n - 1 - i] -
                          u_minus * closure_[i]);
    }
    return out;
}

std::vector<double> LevyKhintchineSplit::apply_outer(std::span<const double> f,
                                                     double u_minus, double u_plus) const {
    if (f.size() != grid_.n) throw std::invalid_argument("apply_outer: sample count mismatch");
    return outer_from(conv_->apply(f), f, u_minus, u_plus);
}

std::vector<double> LevyKhintchineSplit::apply_outer_direct(std::span<const double> f,
                                                            double u_minus,
                                                            double u_plus) const {
    if (f.size() != grid_.n) throw std::invalid_argument("apply_outer: sample count mismatch");
    return outer_from(conv_->apply_direct(f), f, u_minus, u_plus);
}

std::vector<double> LevyKhintchineSplit::apply(std::span<const double> f, double u_minus,
                                               double u_plus) const {
    auto out = apply_outer(f, u_minus, u_plus);
    auto inner = apply_inner(f, u_minus, u_plus);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += inner[i];
    return out;
}

Field apply_spectral(double alpha, const Field& f) {
    if (!(alpha > 0.0) || alpha > 2.0) throw std::invalid_argument("alpha out of (0,2]");
    const Grid& g = f.grid;
    const double ju = f.jump();
    std::vector<double> w(f.samples.begin(), f.samples.end());
    std::vector<double> bg(g.n, 0.0);
    if (ju != 0.0) {
        if (f.ref_gauss != 0.0)
            throw std::invalid_argument(
                "apply_spectral: no analytic background for a Gaussian-smoothed step; "
                "use the quadrature path");
        if (f.ref_scale > 0.0) {
            if (alpha < 1.0)
                throw std::invalid_argument(
                    "apply_spectral: step-like data needs alpha >= 1 (no integrable "
                    "reference otherwise); use the quadrature path");
            auto law = reference_law(alpha);
            const double ainv = std::pow(f.ref_scale, -1.0 / alpha);
            for (std::size_t i = 0; i < g.n; ++i) {
                const double y = g.node(i) * ainv;
                w[i] -= f.far_left + ju * law->cdf(y);
                bg[i] = ju / f.ref_scale * law->lambda_cdf(y);
            }
        } else {
            for (std::size_t i = 0; i < g.n; ++i) {
                const double x = g.node(i);
                if (x < 0.0)
                    w[i] -= f.far_left;
                else if (x > 0.0)
                    w[i] -= f.far_right;
                else
                    w[i] -= 0.5 * (f.far_left + f.far_right);
                bg[i] = x == 0.0 ? 0.0 : step_laplacian(alpha, f.far_left, f.far_right, x);
            }
        }
    } else {
        for (auto& v : w) v -= f.far_left;
    }
    double wmax = 0.0;
    for (double v : w) wmax = std::max(wmax, std::abs(v));
    if (edge_max_abs(w) > 1e-3 * wmax + 1e-14)
        throw std::runtime_error(
            "apply_spectral: perturbation has not decayed at the grid edge");
    auto lap = apply_symbol(g, w, [alpha](double xi) {
        return std::complex<double>(std::pow(std::abs(xi), alpha), 0.0);
    });
    for (std::size_t i = 0; i < g.n; ++i) lap[i] += bg[i];
    Field out{g, std::move(lap), 0.0, 0.0};
    return out;
}

Field apply_quadrature(const LevyKhintchineSplit& split, const Field& f) {
    if (!(f.grid == split.grid()))
        throw std::invalid_argument("apply_quadrature: field grid does not match split");
    Field out{f.grid, split.apply(f.samples, f.far_left, f.far_right), 0.0, 0.0};
    return out;
}

double step_laplacian(double alpha, double u_minus, double u_plus, double x) {
    if (!(alpha > 0.0) || alpha > 2.0) throw std::invalid_argument("alpha out of (0,2]");
    if (x == 0.0) throw std::invalid_argument("step_laplacian: singular at x = 0");
    if (alpha == 2.0) return 0.0;
    const double mag = (levy_constant(alpha) / alpha) * std::pow(std::abs(x), -alpha);
    return (u_plus - u_minus) * (x > 0.0 ? mag : -mag);
}

double kato_check(double alpha, const Field& f, const std::function<double(double)>& eta,
                  const std::function<double(double)>& eta_prime, double r) {
    const Grid& g = f.grid;
    if (r <= 0.0) r = 4.0 * g.dx;
    LevyKhintchineSplit split(alpha, r, g);
    auto lf = split.apply(f.samples, f.far_left, f.far_right);
    std::vector<double> ef(g.n);
    for (std::size_t i = 0; i < g.n; ++i) ef[i] = eta(f.samples[i]);
    auto lef = split.apply(ef, eta(f.far_left), eta(f.far_right));
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < g.n; ++i)
        margin = std::min(margin, eta_prime(f.samples[i]) * lf[i] - lef[i]);
    return margin;
}

double nash_check(double alpha, const Field& w) {
    if (w.far_left != 0.0 || w.far_right != 0.0)
        throw std::invalid_argument("nash_check: w must have zero far fields");
    const double l1 = lp_norm(w.samples, w.grid, 1.0);
    const double l2 = lp_norm(w.samples, w.grid, 2.0);
    if (l1 == 0.0) throw std::invalid_argument("nash_check: w vanishes identically");
    auto half = apply_symbol(w.grid, w.samples, [alpha](double xi) {
        return std::complex<double>(std::pow(std::abs(xi), 0.5 * alpha), 0.0);
    });
    const double lh = lp_norm(half, w.grid, 2.0);
    return std::pow(l2, 2.0 * (1.0 + alpha)) /
           (lh * lh * std::pow(l1, 2.0 * alpha));
}

double sv_check(double alpha, double p, const Field& w) {
    if (p < 2.0) throw std::invalid_argument("sv_check: p must be >= 2");
    if (w.far_left != 0.0 || w.far_right != 0.0)
        throw std::invalid_argument("sv_check: w must have zero far fields");
    const Grid& g = w.grid;
    auto lap = apply_symbol(g, w.samples, [alpha](double xi) {
        return std::complex<double>(std::pow(std::abs(xi), alpha), 0.0);
    });
    double lhs = 0.0;
    for (std::size_t i = 0; i < g.n; ++i) {
        const double v = w.samples[i];
        lhs += std::pow(std::abs(v), p - 2.0) * v * lap[i];
    }
    lhs *= g.dx;
    std::vector<double> wp(g.n);
    for (std::size_t i = 0; i < g.n; ++i) wp[i] = std::pow(std::abs(w.samples[i]), 0.5 * p);
    auto half = apply_symbol(g, wp, [alpha](double xi) {
        return std::complex<double>(std::pow(std::abs(xi), 0.5 * alpha), 0.0);
    });
    const double rhs = lp_norm(half, g, 2.0);
    return lhs - 4.0 * (p - 1.0) / (p * p) * rhs * rhs;
}

}  // namespace fracb
