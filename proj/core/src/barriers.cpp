#include "decaylab/barriers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace decaylab {

double BarrierSpec::eval(double t) const {
    switch (variant) {
        case BarrierVariant::MixedPower:
            return t <= t0 ? u0_or_w0 : K * std::pow(t, -alpha / gamma);
        case BarrierVariant::Exponential:
            if (gamma < 1.0 && t < t0) // power head; absent when gamma = 1
                return std::pow(std::pow(u0_or_w0, 1.0 - gamma) - (1.0 - gamma) * t / C,
                                1.0 / (1.0 - gamma));
            return theta0 * std::exp((t0 - t) / C);
        case BarrierVariant::ClassicalPower:
            return t <= 1.0 ? u0_or_w0 : u0_or_w0 * std::pow(t, -1.0 / (gamma - 1.0));
    }
    return 0.0;
}

double BarrierSpec::deriv(double t) const {
    switch (variant) {
        case BarrierVariant::MixedPower:
            if (t < t0) return 0.0;
            return -(alpha / gamma) * K * std::pow(t, -alpha / gamma - 1.0);
        case BarrierVariant::Exponential:
            if (gamma < 1.0 && t < t0)
                return -(1.0 / C) * std::pow(std::pow(u0_or_w0, 1.0 - gamma) - (1.0 - gamma) * t / C,
                                             gamma / (1.0 - gamma));
            return -(theta0 / C) * std::exp((t0 - t) / C);
        case BarrierVariant::ClassicalPower:
            if (t < 1.0) return 0.0;
            return -u0_or_w0 / (gamma - 1.0) * std::pow(t, -1.0 / (gamma - 1.0) - 1.0);
    }
    return 0.0;
}

double BarrierSpec::envelope_constant() const {
    switch (variant) {
        case BarrierVariant::MixedPower:
            return u0_or_w0 * (1.0 + std::pow(t0, alpha / gamma));
        case BarrierVariant::ClassicalPower:
            return 2.0 * u0_or_w0;
        case BarrierVariant::Exponential:
            return theta0 * std::exp(t0 / C); // w(t) <= this * exp(-t/C) past t0
    }
    return 0.0;
}

BarrierSpec mixed_power_barrier(double u0, double alpha, double gamma, double nu) {
    if (!(u0 > 0.0)) throw parameter_error("mixed_power_barrier: require u0 > 0");
    if (!(nu > 0.0)) throw parameter_error("mixed_power_barrier: require nu > 0");
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw parameter_error("mixed_power_barrier: require alpha in (0,1)");
    if (!(gamma > 0.0)) throw parameter_error("mixed_power_barrier: require gamma > 0");

    const double upow = std::pow(u0, 1.0 - gamma);
    const double frac_cond = upow / nu *
        (std::pow(2.0, alpha) / std::tgamma(1.0 - alpha) +
         (alpha / gamma) * std::pow(2.0, alpha + alpha / gamma) / std::tgamma(2.0 - alpha));
    const double classic_cond = (alpha / (gamma * nu)) * upow;
    const double t0 = std::max({frac_cond, 1.0, classic_cond});

    BarrierSpec b;
    b.variant = BarrierVariant::MixedPower;
    b.u0_or_w0 = u0;
    b.t0 = t0;
    b.K = u0 * std::pow(t0, alpha / gamma);
    b.C = 1.0 / nu;
    b.gamma = gamma;
    b.alpha = alpha;
    return b;
}

BarrierSpec classical_barrier(double w0_norm, double gamma, double C) {
    if (w0_norm < 0.0) throw parameter_error("classical_barrier: require w0 >= 0");
    if (!(C > 0.0)) throw parameter_error("classical_barrier: require C > 0");
    if (!(gamma > 0.0)) throw parameter_error("classical_barrier: require gamma > 0");

    BarrierSpec b;
    b.C = C;
    b.gamma = gamma;
    if (gamma > 1.0) {
        b.variant = BarrierVariant::ClassicalPower;
        b.u0_or_w0 = std::max(w0_norm, std::pow(C / (gamma - 1.0), 1.0 / (gamma - 1.0)));
        b.t0 = 1.0;
        return b;
    }
    b.variant = BarrierVariant::Exponential;
    b.u0_or_w0 = w0_norm;
    if (gamma == 1.0) {
        b.t0 = 0.0;
        b.theta0 = w0_norm;
    } else {
        b.t0 = std::max(0.0, C * (std::pow(w0_norm, 1.0 - gamma) - 1.0) / (1.0 - gamma));
        // continuity at t0 pins theta0; it never exceeds 1 for gamma < 1
        b.theta0 = std::pow(std::pow(w0_norm, 1.0 - gamma) - (1.0 - gamma) * b.t0 / C,
                            1.0 / (1.0 - gamma));
    }
    return b;
}

SupersolutionReport verify_supersolution(const BarrierSpec& b, const MixedDerivativeSpec& spec,
                                         double k, double gamma, const std::vector<double>& t_grid,
                                         int dense_steps) {
    if (!(k > 0.0)) throw parameter_error("verify_supersolution: require k > 0");
    if (t_grid.empty()) throw parameter_error("verify_supersolution: empty time grid");
    if (dense_steps < 16) throw parameter_error("verify_supersolution: dense_steps too small");

    SupersolutionReport rep;
    rep.min_residual = std::numeric_limits<double>::infinity();
    rep.min_margin = std::numeric_limits<double>::infinity();
    for (double t : t_grid) {
        if (!(t > 0.0)) throw parameter_error("verify_supersolution: grid times must be positive");
        const double dt = t / dense_steps;
        if (b.t0 > 0.0 && std::abs(t - b.t0) < dt)
            throw parameter_error("verify_supersolution: grid time too close to the kink t0");

        double cap = 0.0;
        if (spec.lambda1 > 0.0) {
            std::vector<double> ts(dense_steps + 1), vs(dense_steps + 1);
            for (int i = 0; i <= dense_steps; ++i) {
                ts[i] = i * dt;
                vs[i] = b.eval(ts[i]);
            }
            cap = caputo_pointwise(ScalarHistory(std::move(ts), std::move(vs)), spec.alpha);
        }
        const double w = b.eval(t);
        const double force = k * std::pow(w, gamma);
        const double r = spec.lambda1 * cap + spec.lambda2 * b.deriv(t) + force;
        const double margin = r + 1e-2 * force;
        rep.t.push_back(t);
        rep.residual.push_back(r);
        rep.min_residual = std::min(rep.min_residual, r);
        rep.min_margin = std::min(rep.min_margin, margin);
    }
    rep.pass = rep.min_margin >= 0.0;
    return rep;
}

ScalarHistory barrier_history(const BarrierSpec& b, const std::vector<double>& t) {
    std::vector<double> v(t.size());
    for (size_t i = 0; i < t.size(); ++i) v[i] = b.eval(t[i]);
    return ScalarHistory(std::vector<double>(t), std::move(v));
}

bool compare_series(const ScalarHistory& w, const ScalarHistory& v) {
    if (w.t.size() != v.t.size()) throw shape_error("compare_series: mesh size mismatch");
    for (size_t i = 0; i < w.t.size(); ++i)
        if (std::abs(w.t[i] - v.t[i]) > 1e-12 * (1.0 + std::abs(w.t[i])))
            throw shape_error("compare_series: meshes differ");
    if (!(w.v[0] > v.v[0]))
        throw parameter_error("compare_series: require w(0) > v(0)");
    for (size_t i = 0; i < w.v.size(); ++i)
        if (!(w.v[i] > v.v[i])) return false;
    return true;
}

} // namespace decaylab
