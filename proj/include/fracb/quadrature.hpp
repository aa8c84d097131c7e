#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace fracb {

struct QuadRule {
    std::vector<double> nodes;    // on (-1, 1)
    std::vector<double> weights;  // sum = 2
};

// Gauss-Legendre rule computed by Newton iteration on the Legendre recurrence.
inline const QuadRule& gauss_legendre(std::size_t m) {
    static thread_local std::vector<QuadRule> cache(64);
    if (m == 0 || m >= cache.size()) throw std::invalid_argument("gauss_legendre: bad order");
    QuadRule& r = cache[m];
    if (!r.nodes.empty()) return r;
    r.nodes.resize(m);
    r.weights.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        // Chebyshev-like initial guess
        double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(m) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= m; ++k) {
                double pk = ((2.0 * static_cast<double>(k) - 1.0) * x * p1 -
                             (static_cast<double>(k) - 1.0) * p0) /
                            static_cast<double>(k);
                p0 = p1;
                p1 = pk;
            }
            dp = static_cast<double>(m) * (x * p1 - p0) / (x * x - 1.0);
            double dxn = p1 / dp;
            x -= dxn;
            if (std::abs(dxn) < 1e-15) break;
        }
        r.nodes[m - 1 - i] = x;
        r.weights[m - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

// integral of f over [a, b] with an m-point Gauss rule
inline double gauss_integrate(const std::function<double(double)>& f, double a, double b,
                              std::size_t m = 15) {
    const QuadRule& r = gauss_legendre(m);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += r.weights[i] * f(mid + half * r.nodes[i]);
    return s * half;
}

// Cubic Hermite interpolant between p0 at s=0 and p1 at s=1, slopes d0, d1
// given per unit x over a cell of width h.
inline double cubic_hermite(double p0, double p1, double d0, double d1, double h, double s) {
    double m0 = d0 * h, m1 = d1 * h;
    double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * p0 + (s3 - 2 * s2 + s) * m0 + (-2 * s3 + 3 * s2) * p1 +
           (s3 - s2) * m1;
}

// derivative in x of the interpolant above
inline double cubic_hermite_deriv(double p0, double p1, double d0, double d1, double h,
                                  double s) {
    double m0 = d0 * h, m1 = d1 * h;
    double s2 = s * s;
    return ((6 * s2 - 6 * s) * p0 + (3 * s2 - 4 * s + 1) * m0 + (-6 * s2 + 6 * s) * p1 +
            (3 * s2 - 2 * s) * m1) /
           h;
}

// C^infinity bump: value exp(1 - 1/(1-s^2)) on |s|<1, zero outside; peak 1.
inline double mollifier(double s) {
    if (std::abs(s) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

inline double mollifier_deriv(double s) {
    if (std::abs(s) >= 1.0) return 0.0;
    double d = 1.0 - s * s;
    return mollifier(s) * (-2.0 * s / (d * d));
}

// Space-time test bump phi(x,t) = B((x-x0)/wx) * B((t-t0)/wt); smooth and
// compactly supported, as the entropy inequality requires.
struct TestBump {
    double x0 = 0.0, wx = 1.0, t0 = 1.0, wt = 0.5;

    double value(double x, double t) const {
        return mollifier((x - x0) / wx) * mollifier((t - t0) / wt);
    }
    double dx(double x, double t) const {
        return mollifier_deriv((x - x0) / wx) / wx * mollifier((t - t0) / wt);
    }
    double dt(double x, double t) const {
        return mollifier((x - x0) / wx) * mollifier_deriv((t - t0) / wt) / wt;
    }
};

}  // namespace fracb
