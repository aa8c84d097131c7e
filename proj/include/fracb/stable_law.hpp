#pragma once

#include <memory>
#include <vector>

namespace fracb {

// Point evaluators for the symmetric stable law with characteristic function
// exp(-|xi|^alpha) under the cycles convention:
//   pdf(y) = int exp(2 pi i y xi - |xi|^alpha) dxi,   cdf(y) = int_{-inf}^y pdf.
// alpha = 1 and 2 use the closed forms (Cauchy / Gaussian). For alpha < 1 the
// Fourier integral is rotated onto the imaginary axis, where it is smooth and
// non-oscillatory; mid-range values come from a cubic-Hermite table built from
// that contour integral. Tails for every alpha use the power series in
// y^{-alpha} (convergent for alpha < 1, optimally truncated otherwise).
// These are independent of the FFT synthesis path, so they double as oracles.
class StableLaw {
  public:
    explicit StableLaw(double alpha);

    double alpha() const { return alpha_; }
    double pdf(double y) const;
    double cdf(double y) const;
    // P(X > y) for y > 0; series route, usable for every alpha in (0,2].
    double tail(double y) const;
    // leading tail constant: pdf(y) ~ tail_constant * |y|^{-1-alpha}
    double tail_constant() const;

  private:
    double alpha_;
    double table_step_ = 0.0;
    double table_ymax_ = 0.0;
    std::vector<double> table_cdf_, table_pdf_;

    double pdf_contour(double y) const;
    double cdf_contour(double y) const;
};

// Shared, cached instance per alpha.
std::shared_ptr<const StableLaw> stable_law(double alpha);

// Large-argument power series in y^{-alpha} (convergent for alpha < 1,
// optimally truncated otherwise), three flavors sharing one term recurrence:
//   density     p_alpha(y,1)
//   tail        int_y^inf p_alpha(.,1)
//   lambda_cum  int_{-inf}^y Lambda^alpha p_alpha(.,1)   (~ G_alpha/alpha y^-alpha)
// Requires y >= ~8; the leading term of each is the G_alpha power law.
enum class StableSeries { density, tail, lambda_cum };
double stable_series(double alpha, double y, StableSeries kind);

// Levy-Khintchine normalization G_alpha = alpha Gamma((1+alpha)/2) /
// (2 pi^{1/2+alpha} Gamma(1-alpha/2)); makes the singular-integral operator
// match the |xi|^alpha multiplier in cycles units. G_1 = 1/(2 pi^2).
double levy_constant(double alpha);

}  // namespace fracb
