#include "fracb/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace fracb {

namespace {

std::mutex planner_mutex;  // FFTW's planner is not thread-safe

struct PlanPair {
    std::size_t n = 0;
    double* rbuf = nullptr;
    fftw_complex* cbuf = nullptr;
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;

    explicit PlanPair(std::size_t n_) : n(n_) {
        rbuf = fftw_alloc_real(n);
        cbuf = fftw_alloc_complex(n / 2 + 1);
        std::lock_guard<std::mutex> lock(planner_mutex);
        r2c = fftw_plan_dft_r2c_1d(static_cast<int>(n), rbuf, cbuf, FFTW_ESTIMATE);
        c2r = fftw_plan_dft_c2r_1d(static_cast<int>(n), cbuf, rbuf, FFTW_ESTIMATE);
    }
    ~PlanPair() {
        std::lock_guard<std::mutex> lock(planner_mutex);
        fftw_destroy_plan(r2c);
        fftw_destroy_plan(c2r);
        fftw_free(rbuf);
        fftw_free(cbuf);
    }
    PlanPair(const PlanPair&) = delete;
    PlanPair& operator=(const PlanPair&) = delete;
};

PlanPair& plans_for(std::size_t n) {
    thread_local std::map<std::size_t, std::unique_ptr<PlanPair>> cache;
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<PlanPair>(n);
    return *slot;
}

}  // namespace

Spectrum spectrum(const Grid& g, std::span<const double> f) {
    if (f.size() != g.n) throw std::invalid_argument("spectrum: sample count != grid size");
    auto& p = plans_for(g.n);
    std::memcpy(p.rbuf, f.data(), g.n * sizeof(double));
    fftw_execute(p.r2c);
    Spectrum out(g.n / 2 + 1);
    for (std::size_t k = 0; k <= g.n / 2; ++k) {
        double sign = (k % 2 == 0) ? 1.0 : -1.0;  // x_0 = -L phase
        out[k] = sign * g.dx * std::complex<double>(p.cbuf[k][0], p.cbuf[k][1]);
    }
    return out;
}

std::vector<double> synthesize(const Grid& g, const Spectrum& fhat) {
    if (fhat.size() != g.n / 2 + 1) throw std::invalid_argument("synthesize: bad spectrum size");
    auto& p = plans_for(g.n);
    for (std::size_t k = 0; k <= g.n / 2; ++k) {
        double sign = (k % 2 == 0) ? 1.0 : -1.0;
        std::complex<double> v = sign * fhat[k] / g.dx;
        p.cbuf[k][0] = v.real();
        p.cbuf[k][1] = v.imag();
    }
    p.cbuf[g.n / 2][1] = 0.0;  // real output: Nyquist bin must be real
    fftw_execute(p.c2r);
    std::vector<double> out(g.n);
    const double scale = 1.0 / static_cast<double>(g.n);
    for (std::size_t j = 0; j < g.n; ++j) out[j] = p.rbuf[j] * scale;
    return out;
}

std::vector<double> apply_symbol(const Grid& g, std::span<const double> f,
                                 const std::function<std::complex<double>(double)>& m) {
    if (f.size() != g.n) throw std::invalid_argument("apply_symbol: sample count != grid size");
    auto& p = plans_for(g.n);
    std::memcpy(p.rbuf, f.data(), g.n * sizeof(double));
    fftw_execute(p.r2c);
    const double dxi = g.freq_spacing();
    for (std::size_t k = 0; k <= g.n / 2; ++k) {
        std::complex<double> coeff(p.cbuf[k][0], p.cbuf[k][1]);
        std::complex<double> v = m(static_cast<double>(k) * dxi) * coeff;
        p.cbuf[k][0] = v.real();
        p.cbuf[k][1] = v.imag();
    }
    p.cbuf[g.n / 2][1] = 0.0;
    fftw_execute(p.c2r);
    std::vector<double> out(g.n);
    const double scale = 1.0 / static_cast<double>(g.n);
    for (std::size_t j = 0; j < g.n; ++j) out[j] = p.rbuf[j] * scale;
    return out;
}

SymmetricConvolver::SymmetricConvolver(const Grid& g, std::span<const double> weights)
    : grid_(g), w_(weights.begin(), weights.end()) {
    if (w_.size() != g.n) throw std::invalid_argument("convolver: weights size != grid size");
    w_[0] = 0.0;
    const std::size_t m = 2 * g.n;
    auto& p = plans_for(m);
    std::memset(p.rbuf, 0, m * sizeof(double));
    for (std::size_t k = 1; k < g.n; ++k) {
        p.rbuf[k] = w_[k];
        p.rbuf[m - k] = w_[k];
    }
    fftw_execute(p.r2c);
    kernel_spec_.resize(m / 2 + 1);
    for (std::size_t k = 0; k <= m / 2; ++k) kernel_spec_[k] = p.cbuf[k][0];  // even kernel
}

std::vector<double> SymmetricConvolver::apply(std::span<const double> f) const {
    if (f.size() != grid_.n) throw std::invalid_argument("convolver: sample count mismatch");
    const std::size_t m = 2 * grid_.n;
    auto& p = plans_for(m);
    std::memcpy(p.rbuf, f.data(), grid_.n * sizeof(double));
    std::memset(p.rbuf + grid_.n, 0, grid_.n * sizeof(double));
    fftw_execute(p.r2c);
    for (std::size_t k = 0; k <= m / 2; ++k) {
        p.cbuf[k][0] *= kernel_spec_[k];
        p.cbuf[k][1] *= kernel_spec_[k];
    }
    fftw_execute(p.c2r);
    std::vector<double> out(grid_.n);
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t j = 0; j < grid_.n; ++j) out[j] = p.rbuf[j] * scale;
    return out;
}

std::vector<double> SymmetricConvolver::apply_direct(std::span<const double> f) const {
    if (f.size() != grid_.n) throw std::invalid_argument("convolver: sample count mismatch");
    const std::size_t n = grid_.n;
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t k = 1; k < n; ++k) {
            double s = 0.0;
            if (i + k < n) s += f[i + k];
            if (i >= k) s += f[i - k];
            if (s != 0.0) acc += w_[k] * s;
        }
        out[i] = acc;
    }
    return out;
}

}  // namespace fracb
