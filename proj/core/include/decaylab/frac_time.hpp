#pragma once

#include <vector>

#include "decaylab/errors.hpp"

namespace decaylab {

// Convex combination lambda1 * d^alpha/dt^alpha + lambda2 * d/dt.
// The normalization lambda1 + lambda2 = 1 is enforced at construction.
struct MixedDerivativeSpec {
    double lambda1 = 0.0;
    double lambda2 = 1.0;
    double alpha = 0.5;

    MixedDerivativeSpec() = default;
    MixedDerivativeSpec(double l1, double l2, double a);
};

// Scalar trajectory sampled on an increasing time mesh starting at t = 0.
struct ScalarHistory {
    std::vector<double> t;
    std::vector<double> v;

    ScalarHistory() = default;
    ScalarHistory(std::vector<double> t_, std::vector<double> v_);

    int steps() const { return static_cast<int>(t.size()) - 1; }
    double dt() const;
};

// Caputo derivative of order alpha at the final time of the history,
// normalized with the 1/Gamma(1-alpha) prefactor so that alpha -> 1
// recovers the classical derivative.
//
// L1 form: convolution of increments with weights
// b_k = (k+1)^(1-alpha) - k^(1-alpha). Requires a uniform mesh.
double caputo_l1(const ScalarHistory& hist, double alpha);

// Same derivative written as
//   (1/Gamma(1-alpha)) [ (v(t)-v(0))/t^alpha
//                        + alpha * int_0^t (v(t)-v(tau))/(t-tau)^(1+alpha) dtau ],
// the kernel integrated in closed form against the piecewise-linear
// interpolant of the history (the last, singular cell included).
double caputo_pointwise(const ScalarHistory& hist, double alpha);

// lambda1 * caputo_l1 + lambda2 * (backward difference at the final time).
double mixed_apply(const ScalarHistory& hist, const MixedDerivativeSpec& spec);

// E_alpha(z) for alpha in (0,1], z <= 0 (the relaxation branch).
// Power series for small |z|, a spectral (complete-monotonicity) integral
// in the middle range, and the divergent asymptotic expansion
// -sum_k z^(-k)/Gamma(1-alpha k) for large |z|.
double mittag_leffler(double alpha, double z);

// Time-march lambda1 D^alpha v + lambda2 v' = -k v^gamma, v(0) = v0,
// on a uniform mesh of step dt up to final time T. The L1 history term is
// explicit; the new value solves the scalar implicit relation by a
// safeguarded Newton iteration (<= 50 iterations, tolerance 1e-12).
// The solution is clamped at 0 if an iterate undershoots.
ScalarHistory solve_scalar_mixed(const MixedDerivativeSpec& spec, double k, double gamma,
                                 double v0, double T, double dt);

} // namespace decaylab
