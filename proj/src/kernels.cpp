#include "fracb/kernels.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "fracb/fft.hpp"
#include "fracb/quadrature.hpp"
#include "fracb/stable_law.hpp"

namespace fracb {

namespace {

// Gamma(a, x) / Gamma(a); the integrand is spent after ~45 units.
double upper_gamma_ratio(double a, double x) {
    if (x <= 0.0) return 1.0;
    double acc = 0.0, lo = x;
    for (int i = 0; i < 12; ++i) {
        double hi = lo + 4.0;
        acc += gauss_integrate([a](double s) { return std::pow(s, a - 1.0) * std::exp(-s); },
                               lo, hi);
        lo = hi;
    }
    return acc / std::tgamma(a);
}

}  // namespace

KernelTable stable_density(double alpha, double t, const Grid& g) {
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw std::invalid_argument("stable_density: alpha must lie in (0,2]");
    if (!(t > 0.0)) throw std::invalid_argument("stable_density: t must be positive");

    double L = g.half_length;
    double tail_mass = alpha < 2.0
                           ? 2.0 * t * levy_constant(alpha) * std::pow(L, -alpha) / alpha
                           : std::erfc(M_PI * L / std::sqrt(t));
    if (tail_mass > 1e-4)
        throw std::invalid_argument(
            "stable_density: kernel tail mass beyond half_length exceeds 1e-4; enlarge the grid");
    double dropped = upper_gamma_ratio(1.0 / alpha, t * std::pow(g.nyquist(), alpha));
    if (dropped > 1e-6)
        throw std::invalid_argument(
            "stable_density: kernel unresolved at this dx (spectral mass beyond Nyquist above "
            "1e-6); refine the grid");

    KernelTable tab;
    tab.alpha = alpha;
    tab.t = t;
    tab.grid = g;
    std::size_t m = g.n / 2 + 1;
    Spectrum ph(m), dph(m), qh(m);
    for (std::size_t k = 0; k < m; ++k) {
        double xi = static_cast<double>(k) * g.freq_spacing();
        double pa = std::pow(xi, alpha);
        double e = std::exp(-t * pa);
        ph[k] = e;
        dph[k] = std::complex<double>(0.0, 2.0 * M_PI * xi) * e;
        qh[k] = pa * std::exp(-pa);
    }
    tab.density = synthesize(g, ph);
    tab.density_dx = synthesize(g, dph);
    tab.symbol_density = synthesize(g, qh);
    return tab;
}

ReferenceLaw::ReferenceLaw(double alpha) : alpha_(alpha), law_(stable_law(alpha)) {
    if (alpha_ > 1.0 && alpha_ < 2.0) {
        // One-time synthesis on a wide private grid; only |y| <= 16 is kept,
        // the series covers the rest. dx = 1/32, Nyquist damping exp(-16^alpha).
        Grid pg = make_grid(1024.0, 65536);
        KernelTable tab = stable_density(alpha_, 1.0, pg);
        std::size_t m = pg.n / 2 + 1;
        Spectrum dqh(m);
        for (std::size_t k = 0; k < m; ++k) {
            double xi = static_cast<double>(k) * pg.freq_spacing();
            double pa = std::pow(xi, alpha_);
            dqh[k] = std::complex<double>(0.0, 2.0 * M_PI * xi) * pa * std::exp(-pa);
        }
        std::vector<double> q_dx = synthesize(pg, dqh);

        std::vector<double> cdf_full =
            cumulative_corrected(tab.density, tab.density_dx, pg,
                                 stable_series(alpha_, pg.half_length, StableSeries::tail));
        std::vector<double> qcum_full = cumulative_corrected(
            tab.symbol_density, q_dx, pg,
            -stable_series(alpha_, pg.half_length, StableSeries::lambda_cum));

        table_step_ = pg.dx;
        table_ymax_ = 16.0;
        std::size_t count = static_cast<std::size_t>(table_ymax_ / table_step_) + 1;
        std::size_t base = pg.n / 2;  // x = 0
        tcdf_.assign(cdf_full.begin() + base, cdf_full.begin() + base + count);
        tpdf_.assign(tab.density.begin() + base, tab.density.begin() + base + count);
        tdpdf_.assign(tab.density_dx.begin() + base, tab.density_dx.begin() + base + count);
        tq_.assign(tab.symbol_density.begin() + base, tab.symbol_density.begin() + base + count);
        tqcum_.assign(qcum_full.begin() + base, qcum_full.begin() + base + count);
    }
}

double ReferenceLaw::cdf(double y) const {
    if (alpha_ <= 1.0 || alpha_ == 2.0) return law_->cdf(y);
    double ay = std::abs(y);
    if (ay >= table_ymax_) {
        double t = stable_series(alpha_, ay, StableSeries::tail);
        return y >= 0.0 ? 1.0 - t : t;
    }
    double pos = ay / table_step_;
    std::size_t i = std::min(static_cast<std::size_t>(pos), tcdf_.size() - 2);
    double v = cubic_hermite(tcdf_[i], tcdf_[i + 1], tpdf_[i], tpdf_[i + 1], table_step_,
                             pos - static_cast<double>(i));
    return y >= 0.0 ? v : 1.0 - v;
}

double ReferenceLaw::pdf(double y) const {
    if (alpha_ <= 1.0 || alpha_ == 2.0) return law_->pdf(y);
    double ay = std::abs(y);
    if (ay >= table_ymax_) return stable_series(alpha_, ay, StableSeries::density);
    double pos = ay / table_step_;
    std::size_t i = std::min(static_cast<std::size_t>(pos), tpdf_.size() - 2);
    return cubic_hermite(tpdf_[i], tpdf_[i + 1], tdpdf_[i], tdpdf_[i + 1], table_step_,
                         pos - static_cast<double>(i));
}

double ReferenceLaw::lambda_cdf(double y) const {
    if (alpha_ < 1.0)
        throw std::invalid_argument("lambda_cdf: available for alpha >= 1 only");
    if (alpha_ == 1.0) return 2.0 * y / (1.0 + 4.0 * M_PI * M_PI * y * y);
    if (alpha_ == 2.0) return 0.5 * std::sqrt(M_PI) * y * std::exp(-M_PI * M_PI * y * y);
    double ay = std::abs(y);
    double v;
    if (ay >= table_ymax_) {
        v = stable_series(alpha_, ay, StableSeries::lambda_cum);
    } else {
        double pos = ay / table_step_;
        std::size_t i = std::min(static_cast<std::size_t>(pos), tqcum_.size() - 2);
        v = cubic_hermite(tqcum_[i], tqcum_[i + 1], tq_[i], tq_[i + 1], table_step_,
                          pos - static_cast<double>(i));
    }
    return y >= 0.0 ? v : -v;
}

double ReferenceLaw::step_response(double a, double g, double x) const {
    if (a < 0.0 || g < 0.0)
        throw std::invalid_argument("step_response: scales must be non-negative");
    if (alpha_ == 2.0) {  // both factors Gaussian; variances add
        double s = a + g;
        if (s == 0.0) return x < 0.0 ? 0.0 : (x > 0.0 ? 1.0 : 0.5);
        return 0.5 * std::erfc(-M_PI * x / std::sqrt(s));
    }
    if (g == 0.0) {
        if (a == 0.0) return x < 0.0 ? 0.0 : (x > 0.0 ? 1.0 : 0.5);
        return cdf(x * std::pow(a, -1.0 / alpha_));
    }
    if (a == 0.0) return 0.5 * std::erfc(-M_PI * x / std::sqrt(g));
    // Gaussian smoothing of the a-scale response; std dev sqrt(g)/(pi sqrt(2))
    double sigma = std::sqrt(0.5 * g) / M_PI;
    double inv = std::pow(a, -1.0 / alpha_);
    double norm = std::sqrt(M_PI / g);
    auto f = [&](double z) {
        return norm * std::exp(-M_PI * M_PI * z * z / g) * cdf((x - z) * inv);
    };
    double acc = 0.0;
    for (int i = -2; i < 2; ++i)
        acc += gauss_integrate(f, 3.0 * sigma * i, 3.0 * sigma * (i + 1));
    return acc;
}

std::shared_ptr<const ReferenceLaw> reference_law(double alpha) {
    static std::mutex mu;
    static std::map<long long, std::shared_ptr<const ReferenceLaw>> cache;
    auto key = static_cast<long long>(std::llround(alpha * 1e12));
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[key];
    if (!slot) slot = std::make_shared<ReferenceLaw>(alpha);
    return slot;
}

Field reference_profile(double alpha, double u_minus, double u_plus, const Grid& g) {
    if (!(u_minus <= u_plus))
        throw std::invalid_argument("reference_profile: u_minus must be <= u_plus");
    auto law = reference_law(alpha);
    Field f{g, std::vector<double>(g.n), u_minus, u_plus};
    f.ref_scale = 1.0;
    double ju = u_plus - u_minus;
    for (std::size_t j = 0; j < g.n; ++j)
        f.samples[j] = u_minus + ju * (ju == 0.0 ? 0.0 : law->cdf(g.node(j)));
    return f;
}

Field semigroup_apply(double alpha, double eps, double t, const Field& f) {
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw std::invalid_argument("semigroup_apply: alpha must lie in (0,2]");
    if (eps < 0.0) throw std::invalid_argument("semigroup_apply: eps must be non-negative");
    if (t < 0.0) throw std::invalid_argument("semigroup_apply: t must be non-negative");
    if (t == 0.0) return f;

    auto law = reference_law(alpha);
    const Grid& g = f.grid;
    double ju = f.jump();
    double a1 = f.ref_scale + t, g1 = f.ref_gauss + eps * t;

    Field out{g, std::vector<double>(g.n), f.far_left, f.far_right};
    out.ref_scale = a1;
    out.ref_gauss = g1;

    std::vector<double> w(g.n);
    double wmax = 0.0;
    for (std::size_t j = 0; j < g.n; ++j) {
        double x = g.node(j);
        double ref = f.far_left +
                     (ju == 0.0 ? 0.0 : ju * law->step_response(f.ref_scale, f.ref_gauss, x));
        w[j] = f.samples[j] - ref;
        wmax = std::max(wmax, std::abs(w[j]));
        out.samples[j] =
            f.far_left + (ju == 0.0 ? 0.0 : ju * law->step_response(a1, g1, x));
    }
    if (wmax > 1e-13 * (1.0 + std::abs(ju))) {
        auto wev = apply_symbol(g, w, [&](double xi) {
            double two_pi_xi = 2.0 * M_PI * xi;
            return std::complex<double>(
                std::exp(-t * std::pow(xi, alpha) - eps * t * two_pi_xi * two_pi_xi), 0.0);
        });
        double edge = 0.0, peak = 0.0;
        for (std::size_t j = 0; j < g.n; ++j) peak = std::max(peak, std::abs(wev[j]));
        for (std::size_t j = 0; j < 8; ++j) {
            edge = std::max(edge, std::abs(wev[j]));
            edge = std::max(edge, std::abs(wev[g.n - 1 - j]));
        }
        if (edge > 1e-3 * peak && peak > 0.0)
            throw std::invalid_argument(
                "semigroup_apply: evolved perturbation reaches the grid edge (tail-mass "
                "overflow); enlarge the grid or shorten t");
        for (std::size_t j = 0; j < g.n; ++j) out.samples[j] += wev[j];
    }
    return out;
}

}  // namespace fracb
