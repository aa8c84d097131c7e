#include "fracb/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "fracb/fft.hpp"
#include "fracb/kernels.hpp"
#include "fracb/quadrature.hpp"

namespace fracb {

double rarefaction(double u_minus, double u_plus, double x, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("rarefaction: t must be positive");
    if (!(u_minus < u_plus))
        throw std::invalid_argument("rarefaction: u_minus must be < u_plus");
    const double s = x / t;
    if (s <= u_minus) return u_minus;
    if (s >= u_plus) return u_plus;
    return s;
}

double SelfSimilarProfile::value(double y) const {
    const double pos = (y - grid.node(0)) / grid.dx;
    if (pos <= 0.0) return u_minus;
    if (pos >= static_cast<double>(grid.n - 1)) return u_plus;
    const auto i = static_cast<std::size_t>(pos);
    return cubic_hermite(U[i], U[i + 1], Uy[i], Uy[i + 1], grid.dx,
                         pos - static_cast<double>(i));
}

double SelfSimilarProfile::deriv(double y) const {
    const double pos = (y - grid.node(0)) / grid.dx;
    if (pos <= 0.0 || pos >= static_cast<double>(grid.n - 1)) return 0.0;
    const auto i = static_cast<std::size_t>(pos);
    return cubic_hermite_deriv(U[i], U[i + 1], Uy[i], Uy[i + 1], grid.dx,
                               pos - static_cast<double>(i));
}

SelfSimilarProfile compute_profile(double u_minus, double u_plus, const Grid& run_grid,
                                   double eps, double t_end) {
    if (!(u_minus < u_plus))
        throw std::invalid_argument("compute_profile: u_minus must be < u_plus");
    if (eps < 0.0) throw std::invalid_argument("compute_profile: eps must be >= 0");
    if (!(t_end > 0.0)) throw std::invalid_argument("compute_profile: t_end must be positive");

    SolverConfig cfg;
    cfg.snapshot_times = {t_end, 2.0 * t_end};
    const Field u0 = step_field(run_grid, u_minus, u_plus);
    const auto snaps = evolve(u0, 1.0, eps, cfg, 2.0 * t_end);
    const auto& u1 = snaps[0].u.samples;
    const auto& u2 = snaps[1].u.samples;

    // u(x, 2 t_end) against u(x/2, t_end); x/2 lands on a node for even indices
    const std::size_t n = run_grid.n;
    double defect = 0.0;
    for (std::size_t j = 0; j < n; j += 2)
        defect = std::max(defect, std::abs(u2[j] - u1[n / 4 + j / 2]));

    SelfSimilarProfile prof;
    prof.u_minus = u_minus;
    prof.u_plus = u_plus;
    prof.eps = eps;
    prof.run_grid = run_grid;
    prof.t_end = t_end;
    prof.selfsim_defect = defect;
    // u(x, 2 t_end) = U(x / (2 t_end), 1) samplewise: relabel the x-grid
    prof.grid = make_grid(run_grid.half_length / (2.0 * t_end), n);
    prof.U = u2;
    prof.Uy.assign(n, 0.0);
    const double dy = prof.grid.dx;
    for (std::size_t j = 1; j + 1 < n; ++j)
        prof.Uy[j] = (prof.U[j + 1] - prof.U[j - 1]) / (2.0 * dy);
    prof.Uy[0] = (prof.U[1] - prof.U[0]) / dy;
    prof.Uy[n - 1] = (prof.U[n - 1] - prof.U[n - 2]) / dy;

    if (defect > 0.02 * (u_plus - u_minus))
        throw std::runtime_error(
            "compute_profile: self-similarity defect above threshold (grid or eps too "
            "coarse)");
    return prof;
}

ProfileShape profile_shape(const SelfSimilarProfile& prof) {
    const std::size_t n = prof.grid.n;
    ProfileShape s;
    s.monotone = true;
    for (std::size_t j = 0; j + 1 < n; ++j)
        if (prof.U[j + 1] < prof.U[j]) {
            s.monotone = false;
            break;
        }
    s.edge_left = std::abs(prof.U.front() - prof.u_minus);
    s.edge_right = std::abs(prof.U.back() - prof.u_plus);
    for (double v : prof.Uy) s.lipschitz = std::max(s.lipschitz, std::abs(v));

    const double c = prof.cbar();
    const double span = 0.75 * prof.grid.half_length;
    double sym = 0.0;
    for (double y = prof.grid.dx; y <= span; y += prof.grid.dx)
        sym = std::max(sym, std::abs(prof.value(c + y) + prof.value(c - y) - 2.0 * c));
    s.symmetry_residual = sym;

    // second-difference signs: convex left of cbar, concave right of it
    const double dead = 1e-13 * prof.jump();
    std::size_t bulk = 0, bad = 0;
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double y = prof.grid.node(j);
        if (std::abs(y - c) > span) continue;
        ++bulk;
        const double d2 = prof.U[j + 1] - 2.0 * prof.U[j] + prof.U[j - 1];
        if (std::abs(d2) <= dead) continue;
        if ((y < c && d2 < 0.0) || (y > c && d2 > 0.0)) ++bad;
    }
    s.convexity_violation_frac =
        bulk == 0 ? 0.0 : static_cast<double>(bad) / static_cast<double>(bulk);
    return s;
}

TailCheck tail_check(const SelfSimilarProfile& prof, double window_lo, double window_hi) {
    if (!(window_lo > 0.0) || !(window_hi > window_lo))
        throw std::invalid_argument("tail_check: bad window");
    if (window_hi > 0.95 * prof.grid.half_length)
        throw std::invalid_argument("tail_check: window overlapping sponge");
    const auto mean_over = [&](double lo, double hi, int side) {
        double acc = 0.0;
        std::size_t cnt = 0;
        for (std::size_t j = 0; j < prof.grid.n; ++j) {
            const double y = prof.grid.node(j) * side;
            if (y < lo || y > hi) continue;
            const double yy = prof.grid.node(j);
            acc += yy * yy * prof.Uy[j];
            ++cnt;
        }
        if (cnt == 0) throw std::invalid_argument("tail_check: empty window");
        return acc / static_cast<double>(cnt);
    };
    TailCheck out;
    out.right_mean = mean_over(window_lo, window_hi, +1);
    out.left_mean = mean_over(window_lo, window_hi, -1);
    out.expected = prof.jump() / (2.0 * M_PI * M_PI);
    const auto dev = [&](double lo, double hi) {
        const double m = 0.5 * (mean_over(lo, hi, +1) + mean_over(lo, hi, -1));
        return std::abs(m - out.expected) / out.expected;
    };
    out.dev_inner = dev(0.25 * window_hi, 0.5 * window_hi);
    out.dev_outer = dev(0.5 * window_hi, window_hi);
    out.reduction_ok = out.dev_outer <= out.dev_inner;
    return out;
}

double profile_equation_residual(const SelfSimilarProfile& prof) {
    const Grid& g = prof.grid;
    LevyKhintchineSplit split(1.0, 4.0 * g.dx, g);
    const auto lam = split.apply(prof.U, prof.u_minus, prof.u_plus);
    const double span = 0.75 * g.half_length;
    double worst = 0.0;
    for (std::size_t j = 0; j < g.n; ++j) {
        const double y = g.node(j);
        if (std::abs(y) > span) continue;
        worst = std::max(worst, std::abs((prof.U[j] - y) * prof.Uy[j] + lam[j]));
    }
    return worst;
}

namespace {

// sum of the two tau-integrals of the Duhamel form for a +-1/2 step profile
// given by the accessors; Gauss-Legendre per half-interval, convolutions done
// as Fourier multipliers of p_1(1-tau) resp. its derivative.
std::vector<double> duhamel_integrals(const Grid& g,
                                      const std::function<double(double)>& val,
                                      const std::function<double(double)>& der,
                                      std::size_t nodes_per_half) {
    const QuadRule& rule = gauss_legendre(nodes_per_half);
    std::vector<double> total(g.n, 0.0);
    std::vector<double> w(g.n);
    for (std::size_t half = 0; half < 2; ++half) {
        const double a = half == 0 ? 0.0 : 0.5;
        const double mid = a + 0.25, scale = 0.25;
        for (std::size_t q = 0; q < nodes_per_half; ++q) {
            const double tau = mid + scale * rule.nodes[q];
            const double wq = scale * rule.weights[q];
            std::vector<double> conv;
            if (half == 0) {
                for (std::size_t j = 0; j < g.n; ++j) {
                    const double v = val(g.node(j) / tau);
                    w[j] = 0.5 * v * v - 0.125;
                }
                conv = apply_symbol(g, w, [tau](double xi) {
                    return std::complex<double>(0.0, 2.0 * M_PI * xi) *
                           std::exp(-(1.0 - tau) * std::abs(xi));
                });
            } else {
                for (std::size_t j = 0; j < g.n; ++j) {
                    const double y = g.node(j) / tau;
                    w[j] = val(y) * der(y) / tau;
                }
                conv = apply_symbol(g, w, [tau](double xi) {
                    return std::complex<double>(std::exp(-(1.0 - tau) * std::abs(xi)), 0.0);
                });
            }
            for (std::size_t j = 0; j < g.n; ++j) total[j] += wq * conv[j];
        }
    }
    return total;
}

}  // namespace

DuhamelResult duhamel_reconstruct(const SelfSimilarProfile& prof,
                                  std::size_t nodes_per_half) {
    if (std::abs(prof.u_minus + 0.5) > 1e-12 || std::abs(prof.u_plus - 0.5) > 1e-12)
        throw std::invalid_argument("duhamel_reconstruct: profile must have far fields ±1/2");
    const Grid& g = prof.grid;
    auto law = reference_law(1.0);
    const auto I = duhamel_integrals(
        g, [&](double y) { return prof.value(y); }, [&](double y) { return prof.deriv(y); },
        nodes_per_half);
    DuhamelResult out;
    out.reconstruction.grid = g;
    out.reconstruction.samples.resize(g.n);
    out.reconstruction.far_left = -0.5;
    out.reconstruction.far_right = 0.5;
    const double span = 0.75 * g.half_length;
    for (std::size_t j = 0; j < g.n; ++j) {
        const double x = g.node(j);
        out.reconstruction.samples[j] = -0.5 + law->cdf(x) - I[j];
        if (std::abs(x) <= span)
            out.residual =
                std::max(out.residual, std::abs(out.reconstruction.samples[j] - prof.U[j]));
    }
    return out;
}

CauchyComparison cauchy_comparison(const SelfSimilarProfile& prof) {
    if (std::abs(prof.u_minus) > 1e-9 || std::abs(prof.u_plus - 1.0) > 1e-9)
        throw std::invalid_argument("cauchy_comparison: non-centered profile (need u_± = 0,1)");
    const Grid& g = prof.grid;
    const double c = 0.5;
    CauchyComparison out;
    const auto I = duhamel_integrals(
        g, [&](double y) { return prof.value(y + c) - c; },
        [&](double y) { return prof.deriv(y + c); }, 16);
    out.x = g.nodes();
    out.g = I;
    out.g_at_zero = I[g.index_of(0.0)];
    out.g_min_bulk = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < g.n; ++j) {
        const double x = g.node(j);
        if (x <= 0.0 || x > out.bulk_hi) continue;
        out.g_min_bulk = std::min(out.g_min_bulk, I[j]);
    }
    out.positive_bulk = out.g_min_bulk > 0.0;
    out.radii = {0.5, 1.0, 2.0, 5.0};
    out.windows_ok = true;
    for (double r : out.radii) {
        const double px = prof.value(c + r) - prof.value(c - r);
        const double py = 2.0 * std::atan(2.0 * M_PI * r) / M_PI;
        out.p_x.push_back(px);
        out.p_y.push_back(py);
        if (!(px < py)) out.windows_ok = false;
    }
    return out;
}

}  // namespace fracb
