#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "fracb/field.hpp"
#include "fracb/frac_laplacian.hpp"
#include "fracb/kernels.hpp"
#include "fracb/quadrature.hpp"

namespace fracb {

// Convex flux with its sonic point (argmin); Godunov needs nothing else.
struct FluxModel {
    std::function<double(double)> f;
    std::function<double(double)> df;
    double sonic = 0.0;
};

FluxModel burgers_flux();

double godunov_flux(double ul, double ur, const FluxModel& m);

enum class LapPath { spectral, quadrature };
enum class Stepper { euler, ssp_rk2 };

struct SolverConfig {
    LapPath path = LapPath::quadrature;
    Stepper stepper = Stepper::ssp_rk2;
    double cfl = 0.4;
    // Levy-Khintchine radius for the quadrature path; 0 picks 4 dx.
    double split_radius = 0.0;
    // cos^2 relaxation toward the moving reference over the outermost band of
    // this width; < 0 picks the default (8 dx spectral, none on the quadrature
    // path, whose constant far-field closures keep the map monotone). Long
    // rate runs want it on the quadrature path too: the constant closures slave
    // the rim to u_± while the true tail still carries O(t/|x|^alpha).
    double sponge_width = -1.0;
    // Optional sponge attractor (t, x) -> value; defaults to the moving
    // reference. Lets a driver pin the rim to the attractor it fits against.
    std::function<double(double, double)> sponge_target;
    std::vector<double> snapshot_times;  // strictly increasing, each <= t_end
};

// The state carries u itself (no background split); u.ref_scale / ref_gauss
// advance with t, so u's step reference H_alpha(., ref_scale) stays the exact
// linear-flow companion. The spectral path applies its multiplier to
// u - reference at each stage and adds the analytic Lambda of the reference.
struct SolverState {
    double alpha = 1.0;
    double eps = 0.0;
    double t = 0.0;
    Field u;
    FluxModel flux;
    std::shared_ptr<const LevyKhintchineSplit> split;  // quadrature path
    std::shared_ptr<const ReferenceLaw> law;           // step-like data
    std::vector<double> sponge;                        // mask, empty = off
};

SolverState make_state(const Field& u0, double alpha, double eps, const SolverConfig& cfg,
                       FluxModel flux = burgers_flux());

// largest stable dt at the current state:
//   dt * ( max|f'| / dx + lambda_alpha + 2 eps / dx^2 ) <= cfl,
// lambda_alpha the operator row sum (quadrature) or |xi_max|^alpha (spectral).
double cfl_dt(const SolverState& s, const SolverConfig& cfg);

// one forward-Euler or Heun (SSP-RK2) step; throws on non-finite values
void step(SolverState& s, const SolverConfig& cfg, double dt);

struct Snapshot {
    double t = 0.0;
    Field u;
    double l1_v = 0.0;      // ||u - reference||_1
    double linf_ux = 0.0;   // max forward difference quotient
    double min_u = 0.0, max_u = 0.0;
};

std::vector<Snapshot> evolve(const Field& u0, double alpha, double eps,
                             const SolverConfig& cfg, double t_end,
                             FluxModel flux = burgers_flux());

// Two runs advanced in lockstep (common dt, same discrete map) with the
// L1-distance and total-variation tables, plus the non-increase flags the
// monotone path is expected to satisfy to roundoff.
struct ContractionReport {
    std::vector<double> times;
    std::vector<double> l1_diff, tv_a, tv_b;
    double l1_initial = 0.0;
    double tv_a_initial = 0.0, tv_b_initial = 0.0;
    bool contraction_ok = false;
    bool tv_ok = false;
};

ContractionReport contraction_check(const Field& a0, const Field& b0, double alpha,
                                    double eps, const SolverConfig& cfg,
                                    const std::vector<double>& times,
                                    FluxModel flux = burgers_flux());

// int_{-R}^{R} |u - v|(t) minus int_{-R-Lt}^{R+Lt} S^eps_alpha(t)|u0 - v0|,
// L = max |f'| over the data range; <= 0 up to discretization.
double domain_dependence_check(const Field& a0, const Field& b0, double alpha, double eps,
                               double R, double t, const SolverConfig& cfg,
                               FluxModel flux = burgers_flux());

// Kruzhkov entropy production of a run against eta_k = |u - k|, tested with a
// smooth space-time bump:
//   int int eta phi_t + q phi_x - eta L^{inner}_r phi - sign(u-k) phi L^{outer}_r u
// over the snapshots (trapezoid in t); >= 0 up to quadrature for the monotone
// path. The bump's time support must lie inside the snapshot range.
double entropy_residual(const std::vector<Snapshot>& snaps, double alpha, double k,
                        const TestBump& phi, double r = 0.0,
                        const FluxModel& flux = burgers_flux());

}  // namespace fracb
