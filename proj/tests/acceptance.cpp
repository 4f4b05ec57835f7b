// Acceptance suite: the decay-rate reproductions and inequality batteries the
// library promises, one PASS/FAIL line per criterion. Exit code = number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "decaylab/experiment.hpp"
#include "decaylab/random.hpp"

using namespace decaylab;

namespace {

const double kPi = 3.14159265358979323846;
int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double secs() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s  (%s)\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

ExperimentConfig unit_cfg() {
    ExperimentConfig cfg;
    cfg.domain_a = 0.0;
    cfg.domain_b = 1.0;
    return cfg;
}

// 1. E_1(-t) = exp(-t) on [0,10] to 1e-10 and E_{1/2}(-1) = e erfc(1) to 1e-8.
void criterion_1() {
    Timer tm;
    double worst_exp = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double t = 10.0 * i / 99.0;
        worst_exp = std::max(worst_exp, std::abs(mittag_leffler(1.0, -t) - std::exp(-t)));
    }
    const double err_half = std::abs(mittag_leffler(0.5, -1.0) - std::exp(1.0) * std::erfc(1.0));
    const double secs = tm.secs();
    report(1, "Mittag-Leffler correctness", worst_exp < 1e-10 && err_half < 1e-8 && secs < 1.0,
           fmt("|E1 - exp| %.2e, |E_1/2(-1) - e erfc 1| %.2e, %.2f s", worst_exp, err_half, secs));
}

// 2. The scalar solver reproduces the Mittag-Leffler relaxation within 1e-2
// over [0, 10] at dt = 1e-3 for alpha in {0.3, 0.5, 0.8}. The error is
// compared on the uniform verification grid of spacing 0.01 = 10 dt; the
// first couple of L1 steps carry the intrinsic O(dt^alpha) startup layer.
void criterion_2() {
    Timer tm;
    double worst = 0.0, worst_alpha = 0.0;
    for (double a : {0.3, 0.5, 0.8}) {
        const MixedDerivativeSpec spec(1.0, 0.0, a);
        const ScalarHistory h = solve_scalar_mixed(spec, 1.0, 1.0, 1.0, 10.0, 1e-3);
        for (int k = 1; k <= 1000; ++k) {
            const size_t i = static_cast<size_t>(k) * 10; // t = 0.01 k on the solver mesh
            const double exact = mittag_leffler(a, -std::pow(h.t[i], a));
            const double err = std::abs(h.v[i] - exact) / exact;
            if (err > worst) {
                worst = err;
                worst_alpha = a;
            }
        }
    }
    const double secs = tm.secs();
    report(2, "scalar fractional relaxation vs Mittag-Leffler", worst < 1e-2 && secs < 30.0,
           fmt("max rel err %.2e (alpha %.1f), %.1f s", worst, worst_alpha, secs));
}

// 3. Fractional-in-time heat flow decays like t^(-alpha): fitted exponent at
// least 0.85 alpha and power-law classification, for alpha in {0.4, 0.7}.
void criterion_3() {
    Timer tm;
    bool pass = true;
    std::string detail;
    for (double a : {0.4, 0.7}) {
        ExperimentConfig cfg = unit_cfg();
        cfg.operator_name = "frac_laplacian";
        cfg.sigma = 0.5;
        cfg.lambda1 = 1.0;
        cfg.lambda2 = 0.0;
        cfg.alpha = a;
        cfg.n_interior = 64;
        cfg.dt = 0.01;
        cfg.t_final = 200.0;
        const RunResult r = run_experiment(cfg);
        const bool power = r.report->classified.model == DecayModel::PowerLaw;
        const double p_hat = r.report->classified.power.rate;
        pass = pass && power && p_hat >= 0.85 * a;
        detail += fmt("alpha %.1f: p_hat %.3f vs %.3f %s; ", a, p_hat, 0.85 * a,
                      power ? "power" : "NOT-power");
    }
    report(3, "mixed-derivative power-law decay t^(-alpha)", pass,
           detail + fmt("%.0f s", tm.secs()));
}

// 4. Classical-derivative dichotomy: the same fractional-space operator with
// lambda1 = 0 decays exponentially, and the local Laplacian rate sits within
// 5 percent of pi^2 on (0,1).
void criterion_4() {
    Timer tm;
    ExperimentConfig frac = unit_cfg();
    frac.operator_name = "frac_laplacian";
    frac.sigma = 0.5;
    frac.lambda1 = 0.0;
    frac.lambda2 = 1.0;
    frac.n_interior = 64;
    frac.dt = 2e-4;
    frac.t_final = 2.0;
    const RunResult rf = run_experiment(frac);
    const bool frac_exp = rf.report->classified.model == DecayModel::Exponential &&
                          rf.report->classified.exponential.rate > 0.0;

    ExperimentConfig heat = unit_cfg();
    heat.operator_name = "laplacian";
    heat.lambda1 = 0.0;
    heat.lambda2 = 1.0;
    heat.n_interior = 256;
    heat.dt = 2e-4;
    heat.t_final = 3.0;
    const RunResult rh = run_experiment(heat);
    const double rate = rh.report->classified.exponential.rate;
    const bool heat_ok = rh.report->classified.model == DecayModel::Exponential &&
                         std::abs(rate - kPi * kPi) <= 0.05 * kPi * kPi;
    const double secs = tm.secs();
    report(4, "classical-derivative exponential dichotomy",
           frac_exp && heat_ok && secs < 60.0,
           fmt("frac r_hat %.3f, laplacian r_hat %.4f vs pi^2 %.4f, %.1f s",
               rf.report->classified.exponential.rate, rate, kPi * kPi, secs));
}

// 5. Porous medium with classical derivative: the L2 history is bracketed by
// a C/(1+t) envelope with residual below 20 percent and never increases.
void criterion_5() {
    Timer tm;
    ExperimentConfig cfg = unit_cfg();
    cfg.operator_name = "porous_medium";
    cfg.sigma = 0.25;
    cfg.initial = "bump";
    cfg.lambda1 = 0.0;
    cfg.lambda2 = 1.0;
    cfg.n_interior = 64;
    cfg.scheme = "explicit_l1";
    cfg.t_final = 200.0;
    {
        Grid g(cfg.domain_a, cfg.domain_b, cfg.n_interior);
        cfg.dt = 0.8 * 0.9 / spectral_radius_estimate(build_operator(cfg, g),
                                                      build_initial(cfg, g));
    }
    const RunResult r = run_experiment(cfg);
    const auto& t = r.history.t;
    const auto& v = r.history.norm_series[0];

    bool monotone = true;
    for (size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[i - 1] + 1e-10) monotone = false;

    double env = 0.0;
    for (size_t i = 0; i < t.size(); ++i)
        if (t[i] >= 20.0) env = std::max(env, v[i] * (1.0 + t[i]));
    double residual = 0.0;
    bool bounded = true;
    for (size_t i = 0; i < t.size(); ++i) {
        if (t[i] < 20.0) continue;
        if (v[i] > env / (1.0 + t[i]) + 1e-12) bounded = false;
        residual = std::max(residual, 1.0 - v[i] * (1.0 + t[i]) / env);
    }
    const double secs = tm.secs();
    report(5, "porous medium classical decay envelope C/(1+t)",
           monotone && bounded && residual < 0.20 && secs < 300.0,
           fmt("envelope residual %.3f on [20,200], monotone %d, %.0f s", residual,
               monotone ? 1 : 0, secs));
}

// 6. Degenerate Kirchhoff with classical derivative: fitted power exponent at
// least 0.8 * 1/2.
void criterion_6() {
    Timer tm;
    ExperimentConfig cfg = unit_cfg();
    cfg.operator_name = "kirchhoff";
    cfg.m0 = 0.0;
    cfg.b_coef = 1.0;
    cfg.lambda1 = 0.0;
    cfg.lambda2 = 1.0;
    cfg.n_interior = 128;
    cfg.dt = 1e-3;
    cfg.t_final = 100.0;
    const RunResult r = run_experiment(cfg);
    const bool power = r.report->classified.model == DecayModel::PowerLaw;
    const double p_hat = r.report->classified.power.rate;
    const double secs = tm.secs();
    report(6, "degenerate Kirchhoff decay t^(-1/2)",
           power && p_hat >= 0.8 * 0.5 && secs < 300.0,
           fmt("p_hat %.4f vs 0.4, %.0f s", p_hat, secs));
}

// 7. Structural inequality battery: strictly positive dissipation and stable
// C_est on 100 seeded smooth samples for every operator family at its
// theorem gamma; the Laplacian constant lands within 10% of 1/pi^2.
void criterion_7() {
    Timer tm;
    bool pass = true;
    std::string detail;
    int idx = 0;
    for (const std::string& fam : structural_families()) {
        const StructuralCheck chk = run_structural_check(fam, 128, 100, 42 + idx);
        bool ok = chk.report.pass && chk.stable;
        if (fam == "laplacian") {
            const double target = 1.0 / (kPi * kPi);
            ok = ok && std::abs(chk.report.C_est - target) <= 0.1 * target;
            detail += fmt("laplacian C_est %.4f vs %.4f; ", chk.report.C_est, target);
        }
        if (!ok) detail += fam + " FAILED; ";
        pass = pass && ok;
        ++idx;
    }
    report(7, "structural inequality battery (gamma = 1, 2, 3)", pass,
           detail + fmt("9 families x 100 samples, %.1f s", tm.secs()));
}

// 8. Elementary inequality sweeps at 1e5 seeded samples each, zero
// violations beyond the 1e-12 slack baked into the checkers.
void criterion_8() {
    Timer tm;
    const long n = 100000;
    const SweepOutcome mono = sweep_monotone_pairing(n, 42);
    const SweepOutcome quad = sweep_magnetic_quadratic(n, 43);
    const SweepOutcome pow_ = sweep_power_ratio(n, 44);
    bool limits = true;
    for (double s : {2.0, 3.0, 4.0}) limits = limits && power_ratio_limit_check(s);
    const SweepOutcome diac = sweep_diamagnetic_classical(n, 32, 45);
    const SweepOutcome diaf = sweep_diamagnetic_fractional(n, 24, 46);
    const double secs = tm.secs();
    const long total_viol =
        mono.violations + quad.violations + pow_.violations + diac.violations + diaf.violations;
    report(8, "elementary inequality sweeps (1e5 samples each)",
           total_viol == 0 && limits && secs < 10.0,
           fmt("violations %ld/%ld, g-limit checks %s, %.1f s", total_viol, 5 * n,
               limits ? "converge" : "FAIL", secs));
}

// 9. Comparison principle: 100 randomized trajectories started strictly below
// verified barriers never cross them; the mixed-power barrier battery passes
// across alpha x gamma.
void criterion_9() {
    Timer tm;
    const ComparisonOutcome cmp = comparison_battery(100, 42);
    const auto rows = barrier_residual_battery({0.4, 0.7}, {1.0, 2.0, 3.0}, 1.0);
    int bar_pass = 0;
    for (const auto& row : rows) bar_pass += row.pass ? 1 : 0;
    report(9, "comparison principle and barrier residuals",
           cmp.pass() && bar_pass == static_cast<int>(rows.size()),
           fmt("%d/%d trajectories clean, %d unverified, barriers %d/%zu, %.1f s",
               cmp.trials - cmp.crossings, cmp.trials, cmp.unverified_barriers, bar_pass,
               rows.size(), tm.secs()));
}

// 10. Negative control: the Schrodinger flow under Crank-Nicolson keeps the
// L2 norm to 1e-6 relative drift and fits no meaningful decay rate.
void criterion_10() {
    Timer tm;
    ExperimentConfig cfg = unit_cfg();
    cfg.operator_name = "schrodinger_control";
    cfg.scheme = "crank_nicolson";
    cfg.v_potential = 5.0;
    cfg.lambda1 = 0.0;
    cfg.lambda2 = 1.0;
    cfg.n_interior = 128;
    cfg.dt = 1e-3;
    cfg.t_final = 10.0;
    const RunResult r = run_experiment(cfg);
    const Classification c =
        classify_decay(r.history.t, r.history.norm_series[0], FitWindow{1.0, 10.0});
    const double rate = std::abs(c.selected().rate);
    report(10, "Schrodinger control conserves the L2 norm",
           r.norm_drift < 1e-6 && rate < 1e-3,
           fmt("relative drift %.2e, fitted |rate| %.2e, %.1f s", r.norm_drift, rate, tm.secs()));
}

} // namespace

int main() {
    Timer total;
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::printf("%d/10 criteria passed in %.0f s\n", 10 - g_failures, total.secs());
    return g_failures;
}
