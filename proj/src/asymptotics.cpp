#include "fracb/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fracb {

namespace {

double norm_index(double p) {
    if (std::isinf(p)) return lp_infinity;
    if (!(p >= 1.0)) throw std::invalid_argument("norm index p must be >= 1");
    return p;
}

void validate_window(const RateWindow& win) {
    if (!(win.t_min > 0.0) || !(win.t_max > win.t_min))
        throw std::invalid_argument("rate window too short");
    if (win.samples < 8)
        throw std::invalid_argument("rate window needs at least 8 samples");
}

// ||a - b||_p sampled at the given times, the two runs advanced in lockstep
// with a common dt so they share one discrete map (far-field closure
// artifacts then cancel in the difference).
std::vector<double> pair_norm_series(SolverState& a, SolverState& b,
                                     const SolverConfig& cfg,
                                     const std::vector<double>& times, double p) {
    std::vector<double> vals;
    vals.reserve(times.size());
    std::vector<double> diff(a.u.grid.n);
    for (double T : times) {
        while (a.t < T) {
            const double dt = std::min({cfl_dt(a, cfg), cfl_dt(b, cfg), T - a.t});
            step(a, cfg, dt);
            step(b, cfg, dt);
        }
        for (std::size_t j = 0; j < a.u.grid.n; ++j)
            diff[j] = a.u.samples[j] - b.u.samples[j];
        vals.push_back(lp_norm(diff, a.u.grid, p));
    }
    return vals;
}

// ||u(t_k) - ref(t_k, .)||_p for one evolution against an analytic reference
template <typename Ref>
std::vector<double> norm_series(const Field& u0, double alpha, double eps,
                                const SolverConfig& cfg,
                                const std::vector<double>& times, double p, Ref&& ref) {
    SolverConfig run = cfg;
    run.snapshot_times = times;
    const auto snaps = evolve(u0, alpha, eps, run, times.back());
    std::vector<double> vals;
    vals.reserve(times.size());
    std::vector<double> diff(u0.grid.n);
    for (const auto& s : snaps) {
        for (std::size_t j = 0; j < u0.grid.n; ++j)
            diff[j] = s.u.samples[j] - ref(s.t, u0.grid.node(j));
        vals.push_back(lp_norm(diff, u0.grid, p));
    }
    return vals;
}

bool roundoff_series(const std::vector<double>& vals, double scale) {
    const double top = *std::max_element(vals.begin(), vals.end());
    return top <= 1e-12 * (scale + 1.0);
}

}  // namespace

std::vector<double> sample_times(const RateWindow& win) {
    validate_window(win);
    std::vector<double> t(win.samples);
    const double ratio = win.t_max / win.t_min;
    for (std::size_t k = 0; k < win.samples; ++k)
        t[k] = win.t_min *
               std::pow(ratio, static_cast<double>(k) / static_cast<double>(win.samples - 1));
    t.back() = win.t_max;
    return t;
}

DecayFit fit_decay(const std::vector<double>& times, const std::vector<double>& values,
                   double p) {
    if (times.size() != values.size())
        throw std::invalid_argument("fit_decay: times/values size mismatch");
    if (times.size() < 8) throw std::invalid_argument("fit_decay: need at least 8 samples");
    DecayFit fit;
    fit.p = p;
    fit.times = times;
    fit.values = values;
    fit.t_min = times.front();
    fit.t_max = times.back();
    const auto n = static_cast<double>(times.size());
    double sx = 0.0, sy = 0.0;
    std::vector<double> lx(times.size()), ly(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (k > 0 && !(times[k] > times[k - 1]))
            throw std::invalid_argument("fit_decay: times must be increasing");
        if (!(values[k] > 0.0))
            throw std::invalid_argument("fit_decay: values must be positive");
        lx[k] = std::log(times[k]);
        ly[k] = std::log(values[k]);
        sx += lx[k];
        sy += ly[k];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        sxx += (lx[k] - mx) * (lx[k] - mx);
        sxy += (lx[k] - mx) * (ly[k] - my);
        syy += (ly[k] - my) * (ly[k] - my);
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (syy < 1e-28) {
        fit.r_squared = 1.0;  // constant series: the flat fit is exact
    } else {
        double res = 0.0;
        for (std::size_t k = 0; k < times.size(); ++k) {
            const double e = ly[k] - (fit.intercept + fit.slope * lx[k]);
            res += e * e;
        }
        fit.r_squared = std::clamp(1.0 - res / syy, 0.0, 1.0);
    }
    return fit;
}

RateVerdict check_stability_rate(double alpha, double p, const Field& u0,
                                 const Field& u0_tilde, const RateWindow& win,
                                 const SolverConfig& cfg) {
    const double pn = norm_index(p);
    if (!(u0.grid == u0_tilde.grid))
        throw std::invalid_argument("check_stability_rate: grids differ");
    if (u0.far_left != u0_tilde.far_left || u0.far_right != u0_tilde.far_right)
        throw std::invalid_argument("check_stability_rate: far fields must agree");
    for (std::size_t j = 0; j + 1 < u0_tilde.grid.n; ++j)
        if (u0_tilde.samples[j + 1] < u0_tilde.samples[j])
            throw std::invalid_argument("check_stability_rate: u0_tilde must be non-decreasing");
    const auto times = sample_times(win);

    SolverState a = make_state(u0, alpha, 0.0, cfg);
    SolverState b = make_state(u0_tilde, alpha, 0.0, cfg);
    const auto vals = pair_norm_series(a, b, cfg, times, pn);

    RateVerdict v;
    const double pinv = std::isinf(p) ? 0.0 : 1.0 / p;
    v.target = -(1.0 / alpha) * (1.0 - pinv);
    const double scale = std::abs(u0.jump()) + std::abs(u0_tilde.jump());
    if (roundoff_series(vals, scale)) {
        v.degenerate = true;
        v.pass = true;
        v.note = "difference at roundoff; fit skipped";
        v.fit.times = times;
        v.fit.values = vals;
        v.fit.p = p;
        return v;
    }
    if (p == 1.0) {
        // contraction regime: the bound is t^0, assert no growth instead
        v.target = 0.0;
        double top = 0.0;
        for (double x : vals) top = std::max(top, x);
        v.pass = top <= vals.front() * (1.0 + 1e-8) + 1e-14;
        v.note = "p = 1: contraction bound, no-growth assertion";
        v.fit = fit_decay(times, vals, p);
        return v;
    }
    v.fit = fit_decay(times, vals, p);
    v.pass = v.fit.slope <= v.target + v.slack;
    return v;
}

RateVerdict check_linear_asymptotics(double alpha, double p, const Field& u0,
                                     const RateWindow& win, const SolverConfig& cfg) {
    const double pn = norm_index(p);
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::invalid_argument("check_linear_asymptotics: alpha must be in (0,1)");
    validate_window(win);

    RateVerdict v;
    const double pinv = std::isinf(p) ? 0.0 : 1.0 / p;
    v.target = 1.0 - (1.0 / alpha) * (1.0 - pinv);
    if (p <= 1.0 / (1.0 - alpha) * (1.0 + 1e-12)) {
        v.no_decay = true;
        v.pass = true;
        v.note = "p <= 1/(1-alpha): no decay claimed in this regime";
        return v;
    }

    // the linear flow is co-evolved with the flux removed: the same discrete
    // map, so the truncation of the far tails biases both runs identically.
    // The cancellation still degrades at the rim once the transition zone --
    // spreading like t^{1/alpha}, fast for alpha < 1 -- reaches it, so a wide
    // band is pinned to the moving reference in both runs.
    SolverConfig run = cfg;
    if (run.sponge_width < 0.0) run.sponge_width = 0.1 * u0.grid.half_length;
    const auto times = sample_times(win);
    const FluxModel no_flux{[](double) { return 0.0; }, [](double) { return 0.0; }, 0.0};
    SolverState a = make_state(u0, alpha, 0.0, run);
    SolverState b = make_state(u0, alpha, 0.0, run, no_flux);
    const auto vals = pair_norm_series(a, b, run, times, pn);
    v.fit = fit_decay(times, vals, p);
    v.pass = v.fit.slope <= v.target + v.slack;
    return v;
}

RateVerdict check_selfsimilar_asymptotics(double p, const Field& u0,
                                          const SelfSimilarProfile& prof,
                                          const RateWindow& win, const SolverConfig& cfg) {
    const double pn = norm_index(p);
    validate_window(win);
    if (std::abs(u0.far_left - prof.u_minus) > 1e-12 ||
        std::abs(u0.far_right - prof.u_plus) > 1e-12)
        throw std::invalid_argument(
            "check_selfsimilar_asymptotics: far fields must match the profile");
    if (u0.grid.half_length / win.t_min > prof.grid.half_length)
        throw std::invalid_argument(
            "check_selfsimilar_asymptotics: profile grid coverage insufficient for the window");

    RateVerdict v;
    const double pinv = std::isinf(p) ? 0.0 : 1.0 / p;
    v.target = -(1.0 - pinv);

    const Field u_step = step_field(u0.grid, prof.u_minus, prof.u_plus);
    std::vector<double> d0(u0.grid.n);
    for (std::size_t j = 0; j < u0.grid.n; ++j)
        d0[j] = u0.samples[j] - u_step.samples[j];
    if (lp_norm(d0, u0.grid, 1.0) <= 1e-12 * (1.0 + std::abs(prof.jump()))) {
        v.degenerate = true;
        v.pass = true;
        v.note = "u0 equals the step datum; the difference is discretization noise";
        return v;
    }

    SolverConfig run = cfg;
    if (run.sponge_width < 0.0) {
        // pin the rim to the attractor itself, not to the constant closures
        run.sponge_width = 0.05 * u0.grid.half_length;
        run.sponge_target = [&prof](double t, double x) {
            if (t <= 0.0) return x < 0.0 ? prof.u_minus : prof.u_plus;
            return prof.value(x / t);
        };
    }
    const auto times = sample_times(win);
    const auto vals = norm_series(u0, 1.0, 0.0, run, times, pn,
                                  [&](double t, double x) { return prof.value(x / t); });
    v.fit = fit_decay(times, vals, p);
    v.pass = v.fit.slope <= v.target + v.slack;
    return v;
}

RateVerdict check_rarefaction_asymptotics(double alpha, double p, const Field& u0,
                                          const RateWindow& win, const SolverConfig& cfg) {
    const double pn = norm_index(p);
    if (!(alpha > 1.0) || !(alpha <= 2.0))
        throw std::invalid_argument("check_rarefaction_asymptotics: alpha must be in (1,2]");
    if (!(u0.far_left < u0.far_right))
        throw std::invalid_argument("check_rarefaction_asymptotics: needs u_minus < u_plus");
    const double threshold = (3.0 - alpha) / (alpha - 1.0);
    if (!(p > threshold))
        throw std::invalid_argument(
            "check_rarefaction_asymptotics: p at or below the validity threshold");
    validate_window(win);

    SolverConfig run = cfg;
    if (alpha == 2.0) run.path = LapPath::spectral;  // the splitting needs alpha < 2

    const auto times = sample_times(win);
    const double ul = u0.far_left, ur = u0.far_right;
    const auto vals = norm_series(u0, alpha, 0.0, run, times, pn, [&](double t, double x) {
        return rarefaction(ul, ur, x, t);
    });
    RateVerdict v;
    const double pinv = std::isinf(p) ? 0.0 : 1.0 / p;
    v.target = -0.5 * (alpha - 1.0 - (3.0 - alpha) * pinv);
    v.fit = fit_decay(times, vals, p);
    v.pass = v.fit.slope <= v.target + v.slack;  // slack absorbs the log factor
    return v;
}

RateVerdict check_gradient_decay(double alpha, const Field& u0, const RateWindow& win,
                                 const SolverConfig& cfg) {
    validate_window(win);
    for (std::size_t j = 0; j + 1 < u0.grid.n; ++j)
        if (u0.samples[j + 1] < u0.samples[j])
            throw std::invalid_argument("check_gradient_decay: u0 must be non-decreasing");
    const auto times = sample_times(win);
    SolverConfig run = cfg;
    if (run.sponge_width < 0.0)
        run.sponge_width = 0.05 * u0.grid.half_length;  // keep the rim kink-free
    run.snapshot_times = times;
    const auto snaps = evolve(u0, alpha, 0.0, run, times.back());
    std::vector<double> vals;
    vals.reserve(times.size());
    for (const auto& s : snaps) vals.push_back(s.linf_ux);

    RateVerdict v;
    v.target = -1.0 / alpha;
    v.one_sided = false;
    v.fit = fit_decay(times, vals, std::numeric_limits<double>::infinity());
    v.pass = std::abs(v.fit.slope - v.target) <= v.slack;
    return v;
}

}  // namespace fracb
