#pragma once

#include <vector>

#include "decaylab/frac_time.hpp"

namespace decaylab {

enum class BarrierVariant { MixedPower, Exponential, ClassicalPower };

// Explicit supersolutions of lambda1 D^alpha w + lambda2 w' = -k w^gamma.
//
//   MixedPower:     w = u0 on [0, t0], then K t^(-alpha/gamma), K = u0 t0^(alpha/gamma)
//   Exponential:    w = (w0^(1-gamma) - (1-gamma) t / C)^(1/(1-gamma)) on [0, t0],
//                   then theta0 exp((t0 - t)/C)      (gamma <= 1; t0 = 0 when gamma = 1)
//   ClassicalPower: w = w0 on [0, 1], then w0 t^(-1/(gamma-1))   (gamma > 1)
struct BarrierSpec {
    BarrierVariant variant = BarrierVariant::Exponential;
    double u0_or_w0 = 1.0;
    double t0 = 0.0;
    double K = 0.0;      // MixedPower only
    double theta0 = 0.0; // Exponential only
    double C = 1.0;
    double gamma = 1.0;
    double alpha = 0.5;  // MixedPower only

    double eval(double t) const;
    double deriv(double t) const; // defined away from the kink at t0
    // tightest envelope constant c with w(t) <= c / (1 + t^(alpha/gamma))
    double envelope_constant() const;
};

// Barrier for the mixed equation with forcing -nu w^gamma. The switch time t0
// is the maximum of the two sufficient conditions (one for the fractional
// part, one for the classical part), so the same object is a supersolution
// for every convex combination of the derivatives.
BarrierSpec mixed_power_barrier(double u0, double alpha, double gamma, double nu);

// Barrier for the classical equation w' = -w^gamma / C: exponential shape for
// gamma <= 1, power shape with the max{...} floor on w0 for gamma > 1.
BarrierSpec classical_barrier(double w0_norm, double gamma, double C);

struct SupersolutionReport {
    bool pass = false;
    double min_residual = 0.0;      // min over the grid of r(t)
    double min_margin = 0.0;        // min of r(t) + tol(t); >= 0 iff pass
    std::vector<double> t;
    std::vector<double> residual;   // r(t) = lambda1 D^alpha w + lambda2 w' + k w^gamma
};

// Checks the supersolution inequality r(t) >= -tol(t) on t_grid with
// tol(t) = 0.01 k w(t)^gamma. The Caputo term is evaluated numerically
// (caputo_pointwise) on a dense uniform sampling of w; t_grid must stay
// clear of the kink at t0, where w is not differentiable.
SupersolutionReport verify_supersolution(const BarrierSpec& b, const MixedDerivativeSpec& spec,
                                         double k, double gamma, const std::vector<double>& t_grid,
                                         int dense_steps = 4000);

// Samples a barrier on an explicit time mesh (t[0] = 0).
ScalarHistory barrier_history(const BarrierSpec& b, const std::vector<double>& t);

// True iff w stays strictly above v on the common mesh. Requires identical
// meshes and w(0) > v(0).
bool compare_series(const ScalarHistory& w, const ScalarHistory& v);

} // namespace decaylab
