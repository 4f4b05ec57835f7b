#include "decaylab/frac_time.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace decaylab {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_alpha_open(double alpha, const char* who) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw parameter_error(std::string(who) + ": require alpha in (0,1)");
}

// Uniform step of the history mesh; rejects graded meshes.
double uniform_dt(const ScalarHistory& hist, const char* who) {
    const int m = hist.steps();
    if (m < 1) throw parameter_error(std::string(who) + ": need at least two history points");
    const double dt = hist.t[1] - hist.t[0];
    for (int i = 1; i < m; ++i) {
        const double d = hist.t[i + 1] - hist.t[i];
        if (std::abs(d - dt) > 1e-8 * dt)
            throw parameter_error(std::string(who) + ": nonuniform time step");
    }
    return dt;
}

// 1/Gamma(y), zero at the poles y = 0, -1, -2, ...
double gamma_recip(double y) {
    if (y > 0.5) return 1.0 / std::tgamma(y);
    if (y == std::rint(y)) return 0.0;
    return std::sin(kPi * y) * std::tgamma(1.0 - y) / kPi;
}

// Power series sum z^k / Gamma(alpha k + 1). Safe while |z|^(1/alpha) stays
// small; cancellation otherwise overwhelms binary64.
double ml_series(double alpha, double z) {
    double acc = 0.0;
    const double lx = std::log(std::abs(z));
    for (int k = 0; k <= 400; ++k) {
        double term;
        if (k == 0) {
            term = 1.0;
        } else {
            term = std::exp(k * lx - std::lgamma(alpha * k + 1.0));
            if (k % 2 == 1 && z < 0.0) term = -term;
        }
        acc += term;
        if (k > 2 && std::abs(term) < 1e-18 * std::max(std::abs(acc), 1e-300)) break;
    }
    return acc;
}

// E_alpha(-x) = int_0^infty exp(-r x^(1/alpha)) K(r) dr with the spectral
// density K(r) = (sin(pi alpha)/pi) r^(alpha-1) / (r^(2 alpha)
// + 2 r^alpha cos(pi alpha) + 1). Trapezoid in u = log r; both tails decay
// at least exponentially in u, so the rule converges geometrically.
double ml_spectral(double alpha, double x) {
    const double that = std::pow(x, 1.0 / alpha);
    const double s = std::sin(kPi * alpha) / kPi;
    const double c = std::cos(kPi * alpha);
    // left tail ~ exp(alpha u), right tail ~ exp(-that * e^u)
    const double u_lo = std::log(1e-18) / alpha;
    const double u_hi = std::log(42.0 / that);
    const double du = 0.02;
    const int n = static_cast<int>((u_hi - u_lo) / du) + 1;
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double u = u_lo + i * du;
        const double ea = std::exp(alpha * u);
        const double dens = s * ea / (ea * ea + 2.0 * ea * c + 1.0);
        double f = dens * std::exp(-that * std::exp(u));
        if (i == 0 || i == n) f *= 0.5;
        acc += f;
    }
    return acc * du;
}

// -sum_{k>=1} z^(-k) / Gamma(1 - alpha k), truncated at the smallest term.
double ml_asymptotic(double alpha, double x) {
    double acc = 0.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 20; ++k) {
        const double coeff = gamma_recip(1.0 - alpha * k);
        const double term = (k % 2 == 1 ? 1.0 : -1.0) * std::pow(x, -static_cast<double>(k)) * coeff;
        const double mag = std::abs(term);
        if (mag > prev) break; // divergent tail reached
        acc += term;
        if (mag > 0.0) prev = mag;
    }
    return acc;
}

} // namespace

MixedDerivativeSpec::MixedDerivativeSpec(double l1, double l2, double a)
    : lambda1(l1), lambda2(l2), alpha(a) {
    if (lambda1 < 0.0 || lambda2 < 0.0)
        throw parameter_error("MixedDerivativeSpec: lambda1, lambda2 must be nonnegative");
    if (std::abs(lambda1 + lambda2 - 1.0) > 1e-12)
        throw parameter_error("MixedDerivativeSpec: require lambda1 + lambda2 = 1");
    check_alpha_open(alpha, "MixedDerivativeSpec");
}

ScalarHistory::ScalarHistory(std::vector<double> t_, std::vector<double> v_)
    : t(std::move(t_)), v(std::move(v_)) {
    if (t.size() != v.size()) throw shape_error("ScalarHistory: t/v length mismatch");
    if (t.empty()) throw parameter_error("ScalarHistory: empty history");
    if (t[0] != 0.0) throw parameter_error("ScalarHistory: mesh must start at t = 0");
    for (size_t i = 0; i + 1 < t.size(); ++i)
        if (!(t[i + 1] > t[i])) throw parameter_error("ScalarHistory: mesh not increasing");
    for (double x : v)
        if (!std::isfinite(x)) throw parameter_error("ScalarHistory: non-finite value");
}

double ScalarHistory::dt() const { return uniform_dt(*this, "ScalarHistory"); }

double caputo_l1(const ScalarHistory& hist, double alpha) {
    check_alpha_open(alpha, "caputo_l1");
    const double dt = uniform_dt(hist, "caputo_l1");
    const int m = hist.steps();
    double acc = 0.0;
    for (int k = 0; k < m; ++k) {
        const double b = std::pow(k + 1.0, 1.0 - alpha) - std::pow(static_cast<double>(k), 1.0 - alpha);
        acc += b * (hist.v[m - k] - hist.v[m - k - 1]);
    }
    return std::pow(dt, -alpha) / std::tgamma(2.0 - alpha) * acc;
}

double caputo_pointwise(const ScalarHistory& hist, double alpha) {
    check_alpha_open(alpha, "caputo_pointwise");
    uniform_dt(hist, "caputo_pointwise");
    const int m = hist.steps();
    const double t = hist.t[m];
    const double vm = hist.v[m];

    double q = 0.0;
    for (int k = 0; k + 1 < m; ++k) {
        // cell [t_k, t_{k+1}]; rho = t - tau in [rho2, rho1]
        const double rho1 = t - hist.t[k];
        const double rho2 = t - hist.t[k + 1];
        const double slope = (hist.v[k + 1] - hist.v[k]) / (hist.t[k + 1] - hist.t[k]);
        const double c = vm - hist.v[k] - slope * rho1;
        q += c * (std::pow(rho2, -alpha) - std::pow(rho1, -alpha)) / alpha;
        q += slope * (std::pow(rho1, 1.0 - alpha) - std::pow(rho2, 1.0 - alpha)) / (1.0 - alpha);
    }
    // singular last cell: v_m - v(tau) = slope * rho exactly
    {
        const double rho1 = t - hist.t[m - 1];
        const double slope = (vm - hist.v[m - 1]) / rho1;
        q += slope * std::pow(rho1, 1.0 - alpha) / (1.0 - alpha);
    }
    const double boundary = (vm - hist.v[0]) / std::pow(t, alpha);
    return (boundary + alpha * q) / std::tgamma(1.0 - alpha);
}

double mixed_apply(const ScalarHistory& hist, const MixedDerivativeSpec& spec) {
    const double dt = uniform_dt(hist, "mixed_apply");
    const int m = hist.steps();
    double out = 0.0;
    if (spec.lambda1 > 0.0) out += spec.lambda1 * caputo_l1(hist, spec.alpha);
    if (spec.lambda2 > 0.0) out += spec.lambda2 * (hist.v[m] - hist.v[m - 1]) / dt;
    return out;
}

double mittag_leffler(double alpha, double z) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw parameter_error("mittag_leffler: require alpha in (0,1]");
    if (z > 0.0) throw parameter_error("mittag_leffler: only z <= 0 supported");
    if (z == 0.0) return 1.0;
    if (alpha == 1.0) return std::exp(z);

    const double x = -z;
    // series is cancellation-safe while x^(1/alpha) <= 5
    if (x <= std::pow(5.0, alpha)) return ml_series(alpha, z);
    if (x >= 50.0) return ml_asymptotic(alpha, x);
    return ml_spectral(alpha, x);
}

ScalarHistory solve_scalar_mixed(const MixedDerivativeSpec& spec, double k, double gamma,
                                 double v0, double T, double dt) {
    if (!(k > 0.0)) throw parameter_error("solve_scalar_mixed: require k > 0");
    if (!(gamma > 0.0)) throw parameter_error("solve_scalar_mixed: require gamma > 0");
    if (v0 < 0.0) throw parameter_error("solve_scalar_mixed: require v0 >= 0");
    if (!(dt > 0.0) || dt > T) throw parameter_error("solve_scalar_mixed: require 0 < dt <= T");

    const int M = static_cast<int>(std::llround(T / dt));
    const double c1 = spec.lambda1 > 0.0
                          ? spec.lambda1 * std::pow(dt, -spec.alpha) / std::tgamma(2.0 - spec.alpha)
                          : 0.0;
    const double c2 = spec.lambda2 / dt;
    const double A = c1 + c2;

    std::vector<double> b(M, 0.0);
    if (spec.lambda1 > 0.0)
        for (int j = 0; j < M; ++j)
            b[j] = std::pow(j + 1.0, 1.0 - spec.alpha) - std::pow(static_cast<double>(j), 1.0 - spec.alpha);

    std::vector<double> t(M + 1), v(M + 1);
    t[0] = 0.0;
    v[0] = v0;
    for (int m = 1; m <= M; ++m) {
        t[m] = m * dt;
        double H = 0.0;
        if (spec.lambda1 > 0.0)
            for (int j = 1; j < m; ++j) H += b[j] * (v[m - j] - v[m - j - 1]);

        const auto F = [&](double y) { return A * (y - v[m - 1]) + c1 * H + k * std::pow(y, gamma); };
        if (F(0.0) >= 0.0) { // monotone F, root at or below zero
            v[m] = 0.0;
            continue;
        }
        double lo = 0.0, hi = std::max(v[m - 1], 1e-300);
        for (int e = 0; e < 200 && F(hi) < 0.0; ++e) hi *= 2.0;
        double y = std::clamp(v[m - 1], lo, hi);
        bool done = false;
        for (int it = 0; it < 50; ++it) {
            const double f = F(y);
            if (f >= 0.0) hi = y; else lo = y;
            const double fp = A + k * gamma * std::pow(y, gamma - 1.0);
            double ynext = y - f / fp;
            if (!(ynext > lo) || !(ynext < hi)) ynext = 0.5 * (lo + hi);
            if (std::abs(ynext - y) <= 1e-12 * std::max(1.0, std::abs(y))) {
                y = ynext;
                done = true;
                break;
            }
            y = ynext;
        }
        if (!done)
            throw solver_error("solve_scalar_mixed: Newton did not converge at step " + std::to_string(m));
        v[m] = std::max(y, 0.0);
    }
    return ScalarHistory(std::move(t), std::move(v));
}

} // namespace decaylab
