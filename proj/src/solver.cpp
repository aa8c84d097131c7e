#include "fracb/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fracb/fft.hpp"

namespace fracb {

FluxModel burgers_flux() {
    return FluxModel{[](double u) { return 0.5 * u * u; },
                     [](double u) { return u; }, 0.0};
}

double godunov_flux(double ul, double ur, const FluxModel& m) {
    if (ul <= ur) return m.f(std::clamp(m.sonic, ul, ur));
    return std::max(m.f(ul), m.f(ur));
}

namespace {

double reference_value(const SolverState& s, double shift, double x) {
    const double ju = s.u.jump();
    if (ju == 0.0) return s.u.far_left;
    return s.u.far_left + ju * s.law->step_response(s.u.ref_scale + shift,
                                                    s.u.ref_gauss + s.eps * shift, x);
}

// Lambda^alpha of the moving reference: ju a^{-1} Q(x a^{-1/alpha}) when the
// Gaussian scale is zero, otherwise averaged over the Gaussian factor.
double reference_lambda(const SolverState& s, double shift, double x) {
    const double ju = s.u.jump();
    if (ju == 0.0) return 0.0;
    const double a = s.u.ref_scale + shift;
    const double g = s.u.ref_gauss + s.eps * shift;
    if (a == 0.0)
        return x == 0.0 ? 0.0 : step_laplacian(s.alpha, s.u.far_left, s.u.far_right, x);
    const double ainv = std::pow(a, -1.0 / s.alpha);
    if (g == 0.0) return ju / a * s.law->lambda_cdf(x * ainv);
    const double sig = std::sqrt(0.5 * g) / M_PI;
    const double norm = std::sqrt(M_PI / g);
    double acc = 0.0;
    for (int i = -2; i < 2; ++i) {
        acc += gauss_integrate(
            [&](double z) {
                return norm * std::exp(-M_PI * M_PI * z * z / g) *
                       s.law->lambda_cdf((x - z) * ainv);
            },
            3.0 * sig * i, 3.0 * sig * (i + 1));
    }
    return ju / a * acc;
}

std::vector<double> rhs(const SolverState& s, const SolverConfig& cfg,
                        std::span<const double> f, double shift) {
    const Grid& g = s.u.grid;
    const std::size_t n = g.n;
    const double uL = s.u.far_left, uR = s.u.far_right;

    std::vector<double> lap;
    if (cfg.path == LapPath::quadrature) {
        lap = s.split->apply(f, uL, uR);
    } else {
        std::vector<double> w(n);
        for (std::size_t i = 0; i < n; ++i)
            w[i] = f[i] - reference_value(s, shift, g.node(i));
        const double alpha = s.alpha;
        lap = apply_symbol(g, w, [alpha](double xi) {
            return std::complex<double>(std::pow(std::abs(xi), alpha), 0.0);
        });
        if (s.u.jump() != 0.0)
            for (std::size_t i = 0; i < n; ++i)
                lap[i] += reference_lambda(s, shift, g.node(i));
    }

    const auto at = [&](std::ptrdiff_t j) {
        if (j < 0) return uL;
        if (j >= static_cast<std::ptrdiff_t>(n)) return uR;
        return f[static_cast<std::size_t>(j)];
    };
    std::vector<double> out(n);
    const double inv_dx = 1.0 / g.dx;
    const double diff = s.eps * inv_dx * inv_dx;
    double fl = godunov_flux(uL, f[0], s.flux);
    for (std::size_t i = 0; i < n; ++i) {
        const auto si = static_cast<std::ptrdiff_t>(i);
        const double fr = godunov_flux(f[i], at(si + 1), s.flux);
        out[i] = -(fr - fl) * inv_dx - lap[i];
        if (diff != 0.0) out[i] += diff * (at(si + 1) - 2.0 * f[i] + at(si - 1));
        fl = fr;
    }
    return out;
}

}  // namespace

SolverState make_state(const Field& u0, double alpha, double eps, const SolverConfig& cfg,
                       FluxModel flux) {
    if (!(alpha > 0.0) || alpha > 2.0) throw std::invalid_argument("alpha out of (0,2]");
    if (eps < 0.0) throw std::invalid_argument("eps must be >= 0");
    if (!(cfg.cfl > 0.0) || cfg.cfl > 1.0) throw std::invalid_argument("cfl out of (0,1]");
    SolverState s;
    s.alpha = alpha;
    s.eps = eps;
    s.u = u0;
    s.flux = std::move(flux);
    const Grid& g = u0.grid;
    if (cfg.path == LapPath::quadrature) {
        if (alpha >= 2.0)
            throw std::invalid_argument("quadrature path needs alpha in (0,2)");
        const double r = cfg.split_radius > 0.0 ? cfg.split_radius : 4.0 * g.dx;
        s.split = std::make_shared<LevyKhintchineSplit>(alpha, r, g);
    } else if (u0.jump() != 0.0) {
        if (alpha < 1.0)
            throw std::invalid_argument(
                "spectral path needs alpha >= 1 for step-like data; use the quadrature path");
        if (u0.ref_scale == 0.0 && u0.ref_gauss > 0.0)
            throw std::invalid_argument(
                "spectral path: a purely Gaussian step reference has no analytic "
                "Lambda^alpha; give the data a stable reference scale");
    }
    if (u0.jump() != 0.0) s.law = reference_law(alpha);

    double width = cfg.sponge_width;
    if (width < 0.0) width = cfg.path == LapPath::spectral ? 8.0 * g.dx : 0.0;
    if (width > 0.0) {
        s.sponge.assign(g.n, 1.0);
        for (std::size_t i = 0; i < g.n; ++i) {
            const double d = g.half_length - std::abs(g.node(i));
            if (d < width) {
                const double c = std::sin(0.5 * M_PI * d / width);
                s.sponge[i] = c * c;
            }
        }
    }
    return s;
}

double cfl_dt(const SolverState& s, const SolverConfig& cfg) {
    double lo = std::min(s.u.far_left, s.u.far_right);
    double hi = std::max(s.u.far_left, s.u.far_right);
    for (double v : s.u.samples) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double speed = std::max(std::abs(s.flux.df(lo)), std::abs(s.flux.df(hi)));
    const double lam = cfg.path == LapPath::quadrature
                           ? s.split->row_sum()
                           : std::pow(s.u.grid.nyquist(), s.alpha);
    const double dx = s.u.grid.dx;
    return cfg.cfl / (speed / dx + lam + 2.0 * s.eps / (dx * dx));
}

void step(SolverState& s, const SolverConfig& cfg, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
    auto& u = s.u.samples;
    const std::size_t n = u.size();
    const auto k1 = rhs(s, cfg, u, 0.0);
    if (cfg.stepper == Stepper::euler) {
        for (std::size_t i = 0; i < n; ++i) u[i] += dt * k1[i];
    } else {
        std::vector<double> u1(n);
        for (std::size_t i = 0; i < n; ++i) u1[i] = u[i] + dt * k1[i];
        const auto k2 = rhs(s, cfg, u1, dt);
        for (std::size_t i = 0; i < n; ++i) u[i] = 0.5 * (u[i] + u1[i] + dt * k2[i]);
    }
    s.t += dt;
    s.u.ref_scale += dt;
    s.u.ref_gauss += s.eps * dt;
    if (!s.sponge.empty()) {
        for (std::size_t i = 0; i < n; ++i) {
            if (s.sponge[i] < 1.0) {
                const double x = s.u.grid.node(i);
                const double ref = cfg.sponge_target ? cfg.sponge_target(s.t, x)
                                                     : reference_value(s, 0.0, x);
                u[i] = ref + s.sponge[i] * (u[i] - ref);
            }
        }
    }
    double lo = u[0], hi = u[0];
    for (double v : u) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw std::runtime_error("solver produced non-finite values");
}

namespace {

Snapshot record(const SolverState& s) {
    Snapshot snap;
    snap.t = s.t;
    snap.u = s.u;
    const Grid& g = s.u.grid;
    std::vector<double> d(g.n);
    for (std::size_t i = 0; i < g.n; ++i)
        d[i] = s.u.samples[i] - reference_value(s, 0.0, g.node(i));
    snap.l1_v = lp_norm(d, g, 1.0);
    double dumax = 0.0;
    for (std::size_t i = 0; i + 1 < g.n; ++i)
        dumax = std::max(dumax, std::abs(s.u.samples[i + 1] - s.u.samples[i]));
    snap.linf_ux = dumax / g.dx;
    snap.min_u = *std::min_element(s.u.samples.begin(), s.u.samples.end());
    snap.max_u = *std::max_element(s.u.samples.begin(), s.u.samples.end());
    return snap;
}

// run to T exactly, then pin t and the reference tags to cancel fp drift
void advance_to(SolverState& s, const SolverConfig& cfg, double T, double base_scale,
                double base_gauss) {
    while (s.t < T - 1e-12) {
        const double dt = std::min(cfl_dt(s, cfg), T - s.t);
        step(s, cfg, dt);
    }
    s.t = T;
    s.u.ref_scale = base_scale + T;
    s.u.ref_gauss = base_gauss + s.eps * T;
}

void check_schedule(const std::vector<double>& times, double t_end) {
    for (std::size_t j = 0; j < times.size(); ++j) {
        if (times[j] < 0.0 || times[j] > t_end + 1e-12)
            throw std::invalid_argument("snapshot times must lie in [0, t_end]");
        if (j > 0 && times[j] <= times[j - 1])
            throw std::invalid_argument("snapshot times must be strictly increasing");
    }
}

}  // namespace

std::vector<Snapshot> evolve(const Field& u0, double alpha, double eps,
                             const SolverConfig& cfg, double t_end, FluxModel flux) {
    if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
    std::vector<double> sched = cfg.snapshot_times;
    check_schedule(sched, t_end);
    if (sched.empty() || sched.back() < t_end - 1e-12) sched.push_back(t_end);
    SolverState s = make_state(u0, alpha, eps, cfg, std::move(flux));
    const double base_scale = u0.ref_scale, base_gauss = u0.ref_gauss;
    std::vector<Snapshot> out;
    out.reserve(sched.size());
    for (double T : sched) {
        advance_to(s, cfg, T, base_scale, base_gauss);
        out.push_back(record(s));
    }
    return out;
}

namespace {

double tv(const Field& f) {
    double s = std::abs(f.samples.front() - f.far_left);
    for (std::size_t i = 0; i + 1 < f.samples.size(); ++i)
        s += std::abs(f.samples[i + 1] - f.samples[i]);
    return s + std::abs(f.far_right - f.samples.back());
}

double l1_between(const Field& a, const Field& b) {
    std::vector<double> d(a.samples.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::abs(a.samples[i] - b.samples[i]);
    return lp_norm(d, a.grid, 1.0);
}

void lockstep_to(SolverState& sa, SolverState& sb, const SolverConfig& cfg, double T,
                 double base_scale_a, double base_gauss_a, double base_scale_b,
                 double base_gauss_b) {
    while (sa.t < T - 1e-12) {
        const double dt = std::min({cfl_dt(sa, cfg), cfl_dt(sb, cfg), T - sa.t});
        step(sa, cfg, dt);
        step(sb, cfg, dt);
    }
    sa.t = sb.t = T;
    sa.u.ref_scale = base_scale_a + T;
    sa.u.ref_gauss = base_gauss_a + sa.eps * T;
    sb.u.ref_scale = base_scale_b + T;
    sb.u.ref_gauss = base_gauss_b + sb.eps * T;
}

}  // namespace

ContractionReport contraction_check(const Field& a0, const Field& b0, double alpha,
                                    double eps, const SolverConfig& cfg,
                                    const std::vector<double>& times, FluxModel flux) {
    if (!(a0.grid == b0.grid))
        throw std::invalid_argument("contraction_check: grids differ");
    if (a0.far_left != b0.far_left || a0.far_right != b0.far_right)
        throw std::invalid_argument("contraction_check: far fields must agree");
    if (times.empty()) throw std::invalid_argument("contraction_check: no sample times");
    check_schedule(times, times.back());
    SolverState sa = make_state(a0, alpha, eps, cfg, flux);
    SolverState sb = make_state(b0, alpha, eps, cfg, std::move(flux));
    ContractionReport rep;
    rep.l1_initial = l1_between(a0, b0);
    rep.tv_a_initial = tv(a0);
    rep.tv_b_initial = tv(b0);
    for (double T : times) {
        lockstep_to(sa, sb, cfg, T, a0.ref_scale, a0.ref_gauss, b0.ref_scale, b0.ref_gauss);
        rep.times.push_back(T);
        rep.l1_diff.push_back(l1_between(sa.u, sb.u));
        rep.tv_a.push_back(tv(sa.u));
        rep.tv_b.push_back(tv(sb.u));
    }
    const auto non_increasing = [](double first, const std::vector<double>& v) {
        double prev = first;
        for (double x : v) {
            if (x > prev * (1.0 + 1e-8) + 1e-15) return false;
            prev = x;
        }
        return true;
    };
    rep.contraction_ok = non_increasing(rep.l1_initial, rep.l1_diff);
    rep.tv_ok = non_increasing(rep.tv_a_initial, rep.tv_a) &&
                non_increasing(rep.tv_b_initial, rep.tv_b);
    return rep;
}

double domain_dependence_check(const Field& a0, const Field& b0, double alpha, double eps,
                               double R, double t, const SolverConfig& cfg,
                               FluxModel flux) {
    if (!(a0.grid == b0.grid))
        throw std::invalid_argument("domain_dependence_check: grids differ");
    if (a0.far_left != b0.far_left || a0.far_right != b0.far_right)
        throw std::invalid_argument("domain_dependence_check: far fields must agree");
    if (!(R > 0.0) || !(t > 0.0))
        throw std::invalid_argument("domain_dependence_check: R and t must be positive");
    double lo = std::min(a0.far_left, a0.far_right);
    double hi = std::max(a0.far_left, a0.far_right);
    for (double v : a0.samples) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    for (double v : b0.samples) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double lip = std::max(std::abs(flux.df(lo)), std::abs(flux.df(hi)));
    const double w = R + lip * t;
    if (w >= a0.grid.half_length)
        throw std::invalid_argument("domain_dependence_check: window exceeds the grid");

    SolverState sa = make_state(a0, alpha, eps, cfg, flux);
    SolverState sb = make_state(b0, alpha, eps, cfg, std::move(flux));
    lockstep_to(sa, sb, cfg, t, a0.ref_scale, a0.ref_gauss, b0.ref_scale, b0.ref_gauss);

    std::vector<double> d(a0.grid.n);
    for (std::size_t i = 0; i < d.size(); ++i)
        d[i] = std::abs(sa.u.samples[i] - sb.u.samples[i]);
    const double lhs = integrate_window(d, a0.grid, -R, R);

    Field delta0{a0.grid, {}, 0.0, 0.0};
    delta0.samples.resize(a0.grid.n);
    for (std::size_t i = 0; i < delta0.samples.size(); ++i)
        delta0.samples[i] = std::abs(a0.samples[i] - b0.samples[i]);
    const Field spread = semigroup_apply(alpha, eps, t, delta0);
    const double rhs_mass = integrate_window(spread.samples, a0.grid, -w, w);
    return lhs - rhs_mass;
}

double entropy_residual(const std::vector<Snapshot>& snaps, double alpha, double k,
                        const TestBump& phi, double r, const FluxModel& flux) {
    if (snaps.size() < 3)
        throw std::invalid_argument("entropy_residual: need at least 3 snapshots");
    const Grid& g = snaps.front().u.grid;
    if (r <= 0.0) r = 4.0 * g.dx;
    if (phi.t0 - phi.wt < snaps.front().t - 1e-12 ||
        phi.t0 + phi.wt > snaps.back().t + 1e-12)
        throw std::invalid_argument(
            "entropy_residual: bump time support must lie inside the snapshot range");
    LevyKhintchineSplit split(alpha, r, g);
    const double fk = flux.f(k);
    std::vector<double> I(snaps.size(), 0.0);
    std::vector<double> phis(g.n), phit(g.n), phix(g.n);
    for (std::size_t j = 0; j < snaps.size(); ++j) {
        const double tj = snaps[j].t;
        if (std::abs(tj - phi.t0) >= phi.wt) continue;
        const Field& u = snaps[j].u;
        if (!(u.grid == g))
            throw std::invalid_argument("entropy_residual: snapshots on mixed grids");
        for (std::size_t i = 0; i < g.n; ++i) {
            const double x = g.node(i);
            phis[i] = phi.value(x, tj);
            phit[i] = phi.dt(x, tj);
            phix[i] = phi.dx(x, tj);
        }
        const auto inner_phi = split.apply_inner(phis, 0.0, 0.0);
        const auto outer_u = split.apply_outer(u.samples, u.far_left, u.far_right);
        double acc = 0.0;
        for (std::size_t i = 0; i < g.n; ++i) {
            const double du = u.samples[i] - k;
            const double sgn = du > 0.0 ? 1.0 : (du < 0.0 ? -1.0 : 0.0);
            const double eta = std::abs(du);
            const double q = sgn * (flux.f(u.samples[i]) - fk);
            acc += eta * phit[i] + q * phix[i] - eta * inner_phi[i] -
                   sgn * phis[i] * outer_u[i];
        }
        I[j] = acc * g.dx;
    }
    double total = 0.0;
    for (std::size_t j = 0; j + 1 < snaps.size(); ++j)
        total += 0.5 * (I[j] + I[j + 1]) * (snaps[j + 1].t - snaps[j].t);
    return total;
}

}  // namespace fracb
