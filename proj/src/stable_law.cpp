#include "fracb/stable_law.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "fracb/quadrature.hpp"

namespace fracb {

double levy_constant(double alpha) {
    if (!(alpha > 0.0) || alpha >= 2.0)
        throw std::invalid_argument("levy_constant: alpha must lie in (0,2)");
    return alpha * std::tgamma(0.5 * (1.0 + alpha)) /
           (2.0 * std::pow(M_PI, 0.5 + alpha) * std::tgamma(1.0 - 0.5 * alpha));
}

double stable_series(double alpha, double y, StableSeries kind) {
    if (!(y > 0.0)) throw std::invalid_argument("stable_series: y must be positive");
    // term k: 2 (-1)^{k+1} Gamma(k a + 1)/k! sin(k pi a/2) (2 pi)^{-k a - 1} y^{-k a}
    // times y^{-1} (density), 1/(k a) (tail), or 1/a (lambda_cum).
    double sum = 0.0, prev = HUGE_VAL;
    for (int k = 1; k <= 200; ++k) {
        double ka = static_cast<double>(k) * alpha;
        double s = std::sin(0.5 * M_PI * static_cast<double>(k) * alpha);
        double ln = std::log(2.0) + std::lgamma(ka + 1.0) - std::lgamma(k + 1.0) -
                    (ka + 1.0) * std::log(2.0 * M_PI) - ka * std::log(y);
        switch (kind) {
            case StableSeries::density: ln -= std::log(y); break;
            case StableSeries::tail: ln -= std::log(ka); break;
            case StableSeries::lambda_cum: ln -= std::log(alpha); break;
        }
        double mag = std::exp(ln) * std::abs(s);
        if (mag > prev && alpha > 1.0) break;  // asymptotic: stop at smallest term
        prev = std::max(mag, 1e-300);
        double term = ((k % 2 == 1) ? 1.0 : -1.0) * ((s >= 0.0) ? mag : -mag);
        sum += term;
        if (mag < 1e-17 * std::abs(sum) + 1e-300) break;
    }
    return sum;
}

namespace {

// Composite Gauss panels for the rotated (imaginary-axis) integrals. The
// substitution u = zeta^alpha makes the oscillation sin(b u) linear in u.
template <typename F>
double rotated_integral(double alpha, double y, F integrand) {
    const double a = std::cos(0.5 * M_PI * alpha);
    const double u_max = 45.0 / a;
    const double u_small = std::pow(1.0 / (2.0 * M_PI * std::max(y, 0.05)), alpha);
    double lo = std::min(u_small, 1.0) * 1e-3;
    double total = gauss_integrate(integrand, 0.0, lo);
    while (lo < 1.0) {
        double hi = std::min(lo * 1.6, 1.0);
        total += gauss_integrate(integrand, lo, hi);
        lo = hi;
    }
    while (lo < u_max) {
        double hi = std::min(lo + 0.5, u_max);
        total += gauss_integrate(integrand, lo, hi);
        lo = hi;
    }
    return total;
}

}  // namespace

double StableLaw::pdf_contour(double y) const {
    y = std::abs(y);
    const double a = std::cos(0.5 * M_PI * alpha_), b = std::sin(0.5 * M_PI * alpha_);
    const double inv = 1.0 / alpha_;
    auto f = [&](double u) {
        if (u <= 0.0) return 0.0;
        double z = std::pow(u, inv);
        return std::exp(-a * u - 2.0 * M_PI * y * z) * std::sin(b * u) * std::pow(u, inv - 1.0);
    };
    return (2.0 / alpha_) * rotated_integral(alpha_, y, f);
}

double StableLaw::cdf_contour(double y) const {
    // y > 0; F(y) = 1/2 + (1/(pi alpha)) * int e^{-au} sin(bu) (1-e^{-2 pi y u^{1/a}})/u du
    const double a = std::cos(0.5 * M_PI * alpha_), b = std::sin(0.5 * M_PI * alpha_);
    const double inv = 1.0 / alpha_;
    auto f = [&](double u) {
        if (u <= 0.0) return 0.0;
        double z = std::pow(u, inv);
        return std::exp(-a * u) * std::sin(b * u) * (-std::expm1(-2.0 * M_PI * y * z)) / u;
    };
    return 0.5 + rotated_integral(alpha_, y, f) / (M_PI * alpha_);
}

StableLaw::StableLaw(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw std::invalid_argument("stable law: alpha must lie in (0,2]");
    if (alpha_ < 1.0) {
        table_ymax_ = 8.0;
        table_step_ = 1.0 / 256.0;
        std::size_t m = static_cast<std::size_t>(table_ymax_ / table_step_) + 1;
        table_cdf_.resize(m);
        table_pdf_.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            double y = static_cast<double>(i) * table_step_;
            table_cdf_[i] = y == 0.0 ? 0.5 : cdf_contour(y);
            table_pdf_[i] = pdf_contour(y);
        }
    }
}

double StableLaw::tail(double y) const {
    if (!(y > 0.0)) throw std::invalid_argument("stable tail: y must be positive");
    if (alpha_ == 2.0) return 0.5 * std::erfc(M_PI * y);  // Gaussian with var 1/(2 pi^2)
    if (alpha_ == 1.0) return 0.5 - std::atan(2.0 * M_PI * y) / M_PI;
    return stable_series(alpha_, y, StableSeries::tail);
}

double StableLaw::tail_constant() const {
    if (alpha_ >= 2.0) return 0.0;
    return levy_constant(alpha_);
}

double StableLaw::cdf(double y) const {
    if (alpha_ == 1.0) return 0.5 + std::atan(2.0 * M_PI * y) / M_PI;
    if (alpha_ == 2.0) return 0.5 * std::erfc(-M_PI * y);
    double ay = std::abs(y);
    if (alpha_ < 1.0 && ay <= table_ymax_) {
        // cubic Hermite on the precomputed table; slope = pdf
        double pos = ay / table_step_;
        std::size_t i = std::min(static_cast<std::size_t>(pos), table_cdf_.size() - 2);
        double s = pos - static_cast<double>(i);
        double h = table_step_;
        double p0 = table_cdf_[i], p1 = table_cdf_[i + 1];
        double m0 = table_pdf_[i] * h, m1 = table_pdf_[i + 1] * h;
        double s2 = s * s, s3 = s2 * s;
        double v = (2 * s3 - 3 * s2 + 1) * p0 + (s3 - 2 * s2 + s) * m0 +
                   (-2 * s3 + 3 * s2) * p1 + (s3 - s2) * m1;
        return y >= 0.0 ? v : 1.0 - v;
    }
    if (ay >= 8.0) {
        double t = stable_series(alpha_, ay, StableSeries::tail);
        return y >= 0.0 ? 1.0 - t : t;
    }
    throw std::invalid_argument("stable cdf: mid-range evaluation needs alpha <= 1");
}

double StableLaw::pdf(double y) const {
    if (alpha_ == 1.0) {
        double d = 2.0 * M_PI * y;
        return 2.0 / (1.0 + d * d);
    }
    if (alpha_ == 2.0) return std::sqrt(M_PI) * std::exp(-M_PI * M_PI * y * y);
    double ay = std::abs(y);
    if (alpha_ < 1.0 && ay <= table_ymax_) {
        double pos = ay / table_step_;
        std::size_t i = std::min(static_cast<std::size_t>(pos), table_pdf_.size() - 2);
        double s = pos - static_cast<double>(i);
        return (1.0 - s) * table_pdf_[i] + s * table_pdf_[i + 1];
    }
    if (ay >= 8.0) return stable_series(alpha_, ay, StableSeries::density);
    throw std::invalid_argument("stable pdf: mid-range evaluation needs alpha <= 1");
}

std::shared_ptr<const StableLaw> stable_law(double alpha) {
    static std::mutex mu;
    static std::map<long long, std::shared_ptr<const StableLaw>> cache;
    auto key = static_cast<long long>(std::llround(alpha * 1e12));
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[key];
    if (!slot) slot = std::make_shared<StableLaw>(alpha);
    return slot;
}

}  // namespace fracb
