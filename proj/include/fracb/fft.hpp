#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "fracb/grid.hpp"

namespace fracb {

// Transform layer, fixed convention:
//   f_hat(xi) = int exp(-2 pi i x xi) f(x) dx,   xi_k = k/(2L).
// Spectra are half-complex (real input), index k = 0..n/2. The grid offset
// x_0 = -L shows up as a (-1)^k phase relative to the raw DFT; spectrum() and
// synthesize() include it, multiplier application cancels it internally.

using Spectrum = std::vector<std::complex<double>>;

Spectrum spectrum(const Grid& g, std::span<const double> f);
std::vector<double> synthesize(const Grid& g, const Spectrum& fhat);

// Apply a Fourier multiplier m(xi): returns samples of the function whose
// transform is m(xi_k) f_hat(xi_k). m is evaluated at xi >= 0; negative
// frequencies follow by conjugate symmetry (real output). Odd-imaginary
// symbols (derivatives) are fine; the Nyquist bin keeps only Re(m).
std::vector<double> apply_symbol(const Grid& g, std::span<const double> f,
                                 const std::function<std::complex<double>(double)>& m);

// out[i] = sum_{k>=1} w[k] * (f[i+k] + f[i-k]), out-of-range samples taken as
// zero. Used by the quadrature path; the FFT evaluation zero-pads to 2n so the
// correlation is linear, not circular. apply_direct is the O(n m) reference.
class SymmetricConvolver {
  public:
    SymmetricConvolver(const Grid& g, std::span<const double> weights);
    std::vector<double> apply(std::span<const double> f) const;
    std::vector<double> apply_direct(std::span<const double> f) const;
    const std::vector<double>& weights() const { return w_; }

  private:
    Grid grid_;
    std::vector<double> w_;              // w_[k], k = 0..n-1, w_[0] = 0
    std::vector<double> kernel_spec_;    // real spectrum of the padded symmetric kernel
};

}  // namespace fracb
