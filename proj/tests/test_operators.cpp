#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "decaylab/experiment.hpp"
#include "decaylab/operators.hpp"
#include "decaylab/random.hpp"

using namespace decaylab;

namespace {
const double kPi = 3.14159265358979323846;

Grid unit_grid(int n) { return Grid(0.0, 1.0, n); }

double rel_diff(const GridFunction& a, const GridFunction& b) {
    double num = 0.0, den = 0.0;
    for (int j = 0; j < a.size(); ++j) {
        num = std::max(num, std::abs(a.values[j] - b.values[j]));
        den = std::max(den, std::abs(a.values[j]));
    }
    return den > 0.0 ? num / den : num;
}
} // namespace

TEST_CASE("coefficient reductions collapse to the base operators") {
    Grid g = unit_grid(64);
    Rng rng(5);
    GridFunction ur = random_smooth_real(g, rng);
    GridFunction uc = random_smooth_complex(g, rng);
    const auto zero_field = [](double) { return 0.0; };

    CHECK(rel_diff(decaylab::apply(Kirchhoff{1.0, 0.0}, ur), decaylab::apply(Laplacian{}, ur)) <
          1e-12);
    CHECK(rel_diff(decaylab::apply(FracKirchhoff{0.5, 1.0, 0.0}, ur),
                   decaylab::apply(FracLaplacian{0.5}, ur)) < 1e-12);
    CHECK(rel_diff(decaylab::apply(Magnetic{zero_field}, ur), decaylab::apply(Laplacian{}, ur)) <
          1e-12);
    CHECK(rel_diff(decaylab::apply(Magnetic{zero_field}, uc), decaylab::apply(Laplacian{}, uc)) <
          1e-12);
    CHECK(rel_diff(decaylab::apply(FracMagnetic{0.5, zero_field}, uc),
                   decaylab::apply(FracLaplacian{0.5}, uc)) < 1e-12);
}

TEST_CASE("laplacian eigenfunction with second-order accuracy") {
    double errs[2];
    int idx = 0;
    for (int n : {64, 128}) {
        Grid g = unit_grid(n);
        GridFunction s = GridFunction::sample_real(g, [](double x) { return std::sin(kPi * x); });
        GridFunction Ls = decaylab::apply(Laplacian{}, s);
        double worst = 0.0;
        for (int j = 0; j < n; ++j)
            worst = std::max(worst, std::abs(Ls.values[j].real() -
                                             kPi * kPi * std::sin(kPi * g.node(j))));
        errs[idx++] = worst;
    }
    CHECK(errs[0] / errs[1] > 3.0);
    CHECK(errs[0] / errs[1] < 5.0);
}

TEST_CASE("real-only operators reject complex input") {
    Grid g = unit_grid(32);
    Rng rng(9);
    GridFunction uc = random_smooth_complex(g, rng);
    CHECK_THROWS_AS(decaylab::apply(PorousMedium{0.25, g.h, 1.0}, uc), type_error);
    CHECK_THROWS_AS(decaylab::apply(Kirchhoff{1.0, 0.0}, uc), type_error);
    CHECK_THROWS_AS(decaylab::apply(FracKirchhoff{0.5, 1.0, 0.0}, uc), type_error);
}

TEST_CASE("operator parameter validation") {
    Grid g = unit_grid(32);
    Rng rng(9);
    GridFunction ur = random_smooth_real(g, rng);
    CHECK_THROWS_AS(decaylab::apply(PorousMedium{0.7, g.h, 1.0}, ur), parameter_error);
    CHECK_THROWS_AS(decaylab::apply(PorousMedium{0.25, 0.0, 1.0}, ur), parameter_error);
    CHECK_THROWS_AS(decaylab::apply(FracLaplacian{1.2}, ur), parameter_error);
    CHECK_THROWS_AS(decaylab::apply(Kirchhoff{0.0, 0.0}, ur), parameter_error);
}

TEST_CASE("dissipation of the laplacian saturates the dirichlet identity") {
    Grid g = unit_grid(256);
    GridFunction s = GridFunction::sample_real(g, [](double x) { return std::sin(kPi * x); });
    // sum u (-Lap u) h telescopes into the forward-difference energy, which
    // sits at pi^2 ||u||^2 = pi^2/2 up to O(h^2)
    CHECK(dissipation(Laplacian{}, s, 2.0) == doctest::Approx(kPi * kPi / 2.0).epsilon(1e-3));
    CHECK(dissipation(Laplacian{}, s, 2.0) == doctest::Approx(dirichlet_energy(s)).epsilon(1e-12));
}

TEST_CASE("dissipation is strictly positive across the operator suite") {
    Grid g = unit_grid(48);
    Rng rng(23);
    const auto afield = [](double x) { return 1.0 + 0.5 * std::sin(2.0 * kPi * x); };
    const std::vector<OperatorSpec> suite = {
        Laplacian{},          FracLaplacian{0.5},         PorousMedium{0.25, g.h, 1.0},
        Kirchhoff{1.0, 0.5},  Kirchhoff{0.0, 1.0},        FracKirchhoff{0.5, 1.0, 0.5},
        FracKirchhoff{0.5, 0.0, 1.0}, Magnetic{afield},   FracMagnetic{0.5, afield}};
    for (const auto& op : suite)
        for (int trial = 0; trial < 100; ++trial) {
            GridFunction u = random_smooth_nonneg(g, rng);
            INFO("operator ", operator_name(op), " trial ", trial);
            CHECK(dissipation(op, u, 2.0) > 0.0);
        }
}

TEST_CASE("fractional dissipation matches the Gagliardo energy as h -> 0") {
    // sum conj(u) (-Lap)^sigma u h equals half the ordered-pair seminorm up
    // to the O(h) difference between the window quadrature of the exterior
    // and its closed-form tail
    double prev_worst = 1.0;
    for (int n : {32, 64, 128}) {
        Grid g = unit_grid(n);
        Rng rng(4); // same draw sequence at every resolution
        double worst = 0.0;
        for (int i = 0; i < 30; ++i) {
            GridFunction u = random_smooth_complex(g, rng);
            const double d = dissipation(FracLaplacian{0.5}, u, 2.0);
            CHECK(d >= 0.0);
            const double z = gagliardo_seminorm(u, 0.5);
            worst = std::max(worst, std::abs(d - 0.5 * z * z) / (0.5 * z * z));
        }
        CHECK(worst <= 4.0 * g.h);
        CHECK(worst < prev_worst / 1.7); // first-order decrease
        prev_worst = worst;
    }
}

TEST_CASE("schrodinger control does not dissipate") {
    Grid g = unit_grid(64);
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        GridFunction u = random_smooth_complex(g, rng);
        const double d = dissipation(SchrodingerControl{3.0}, u, 2.0);
        const double scale = lebesgue_norm(u, 2.0) * lebesgue_norm(decaylab::apply(SchrodingerControl{3.0}, u), 2.0);
        CHECK(std::abs(d) <= 1e-12 * (1.0 + scale));
    }
}

TEST_CASE("porous medium conserves mass away from the boundary") {
    Grid g = unit_grid(96);
    // compactly supported bump: flux telescoping leaves only boundary terms,
    // which vanish with the field
    GridFunction u = GridFunction::sample_real(g, [](double x) {
        const double xi = (x - 0.5) / 0.2;
        return std::abs(xi) < 1.0 ? std::exp(-1.0 / (1.0 - xi * xi)) : 0.0;
    });
    GridFunction Nu = decaylab::apply(PorousMedium{0.25, g.h, 1.0}, u);
    double mass = 0.0, l1 = 0.0;
    for (int j = 0; j < g.n_interior; ++j) {
        mass += Nu.values[j].real() * g.h;
        l1 += std::abs(u.values[j]) * g.h;
    }
    CHECK(std::abs(mass) <= 1e-8 * l1 / g.h);
}

TEST_CASE("porous medium dissipation is nonnegative on nonnegative fields") {
    Grid g = unit_grid(64);
    Rng rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        GridFunction u = random_smooth_nonneg(g, rng);
        CHECK(dissipation(PorousMedium{0.25, g.h, 1.0}, u, 2.0) >= 0.0);
    }
}

TEST_CASE("gagliardo seminorm basics") {
    Grid g = unit_grid(64);
    GridFunction zero(g);
    CHECK(gagliardo_seminorm(zero, 0.4) == 0.0);

    Rng rng(13);
    GridFunction u = random_smooth_complex(g, rng);
    GridFunction u3(g);
    for (int j = 0; j < g.n_interior; ++j) u3.values[j] = complexd{-3.0, 0.0} * u.values[j];
    CHECK(gagliardo_seminorm(u3, 0.4) ==
          doctest::Approx(3.0 * gagliardo_seminorm(u, 0.4)).epsilon(1e-12));

    // refinement study on a fixed hat profile: values settle down
    double prev = -1.0;
    for (int n : {32, 64, 128}) {
        Grid gg = unit_grid(n);
        GridFunction hat = GridFunction::sample_real(
            gg, [](double x) { return std::max(0.0, 1.0 - 4.0 * std::abs(x - 0.5)); });
        const double v = gagliardo_seminorm(hat, 0.3);
        if (prev > 0.0) CHECK(std::abs(v - prev) / prev < 0.1);
        prev = v;
    }
    CHECK_THROWS_AS(gagliardo_seminorm(u, 1.5), parameter_error);
}

TEST_CASE("structural constant estimates") {
    Grid g = unit_grid(256);
    GridFunction s = GridFunction::sample_real(g, [](double x) { return std::sin(kPi * x); });

    // the first eigenfunction saturates the spectral constant 1/pi^2
    StructuralReport rep = estimate_structural_constant(Laplacian{}, 1.0, 2.0, {s});
    CHECK(rep.pass);
    CHECK(rep.C_est == doctest::Approx(1.0 / (kPi * kPi)).epsilon(0.01));

    // random smooth samples stay below the spectral bound
    Rng rng(42);
    std::vector<GridFunction> samples;
    for (int i = 0; i < 100; ++i) samples.push_back(random_smooth_real(g, rng));
    StructuralReport rnd = estimate_structural_constant(Laplacian{}, 1.0, 2.0, samples);
    CHECK(rnd.pass);
    CHECK(rnd.C_est <= (1.0 / (kPi * kPi)) * (1.0 + 5.0 * g.h));

    // non-degenerate Kirchhoff rescales the constant by at most 1/m0
    const double m0 = 2.0;
    StructuralReport kir = estimate_structural_constant(Kirchhoff{m0, 1.0}, 1.0, 2.0, samples);
    CHECK(kir.pass);
    CHECK(kir.C_est <= rnd.C_est / m0 * (1.0 + 1e-12));

    // zero-dissipation sample yields a counterexample report
    StructuralReport bad = estimate_structural_constant(SchrodingerControl{0.0}, 1.0, 2.0, {s});
    CHECK_FALSE(bad.pass);
    CHECK(bad.counterexample == 0);

    CHECK_THROWS_AS(estimate_structural_constant(Laplacian{}, 1.0, 2.0, {}), parameter_error);
}

TEST_CASE("structural battery families are stable under the seeded sampler") {
    for (const std::string& fam : structural_families()) {
        StructuralCheck chk = run_structural_check(fam, 96, 60, 42);
        INFO("family ", fam);
        CHECK(chk.report.pass);
        CHECK(chk.stable);
    }
}

TEST_CASE("monotone pairing checker") {
    CHECK(check_monotone_pairing(1.0, 1.0, 3.0));
    CHECK(check_monotone_pairing(1.0, -1.0, 3.0)); // product = 4
    CHECK(check_monotone_pairing(0.0, -2.0, 1.5));
    Rng rng(2);
    for (int i = 0; i < 10000; ++i)
        CHECK(check_monotone_pairing(rng.normal() * 10.0, rng.normal() * 10.0,
                                     rng.uniform(1.0, 6.0)));
    CHECK_THROWS_AS(check_monotone_pairing(1.0, 2.0, 0.5), parameter_error);
}

TEST_CASE("magnetic quadratic checker") {
    CHECK(check_magnetic_quadratic(0.0, 0.0, {1.0}, {2.0}, {3.0}));
    // the minimizer t = (a beta - b alpha)/(a^2+b^2) brings equality
    const double a = 1.3, b = -0.4;
    std::vector<double> al{0.5, -1.0}, be{2.0, 0.3};
    std::vector<double> tv(2);
    for (int j = 0; j < 2; ++j) tv[j] = (a * be[j] - b * al[j]) / (a * a + b * b);
    CHECK(check_magnetic_quadratic(a, b, al, be, tv));
    CHECK_THROWS_AS(check_magnetic_quadratic(1.0, 1.0, {1.0}, {1.0, 2.0}, {1.0}), shape_error);
}

TEST_CASE("power ratio g stays bounded") {
    CHECK(power_ratio_g(3.0, 2.0, 0.0) == doctest::Approx(1.0));
    CHECK(power_ratio_g(3.0, 2.0, -1.0 + 1e-9) < 1e-6); // g(-1) = 0
    std::vector<double> grid;
    for (int i = -999; i <= 999; ++i) grid.push_back(i / 1000.0);
    const double gmax = check_power_ratio_bound(3.0, 2.5, grid);
    CHECK(std::isfinite(gmax));
    CHECK(gmax > 0.0);
    CHECK_THROWS_AS(check_power_ratio_bound(3.0, 1.5, grid), parameter_error);
    CHECK_THROWS_AS(power_ratio_g(3.0, 2.0, 1.0), parameter_error);

    for (double s : {2.0, 3.0, 4.0}) CHECK(power_ratio_limit_check(s));
}

TEST_CASE("diamagnetic comparisons") {
    Grid g = unit_grid(48);
    Rng rng(77);
    const auto zero_field = [](double) { return 0.0; };

    // A = 0 on a nonnegative real field: equality to rounding
    GridFunction pos = random_smooth_nonneg(g, rng);
    CHECK(check_diamagnetic(pos, zero_field, std::nullopt, 2.0));
    CHECK(check_diamagnetic(pos, zero_field, 0.5, 2.0));

    // random complex fields against bounded fields
    for (int trial = 0; trial < 100; ++trial) {
        GridFunction u = random_smooth_complex(g, rng);
        const double amp = rng.normal() * 2.0;
        const auto A = [amp](double x) { return amp * std::cos(3.0 * x); };
        CHECK(check_diamagnetic(u, A, std::nullopt, rng.uniform(1.2, 4.0)));
        CHECK(check_diamagnetic(u, A, rng.uniform(0.2, 0.8), rng.uniform(1.2, 4.0)));
    }

    // steep phase: strict inequality
    GridFunction ph = GridFunction::sample(g, [](double x) {
        return std::polar(std::sin(kPi * x), 40.0 * x * x);
    });
    const double lhs = dissipation(Magnetic{zero_field}, ph, 2.0);
    GridFunction mod(g);
    for (int j = 0; j < g.n_interior; ++j) mod.values[j] = std::abs(ph.values[j]);
    CHECK(lhs > dirichlet_energy(mod) * 1.5);
    CHECK(check_diamagnetic(ph, zero_field, std::nullopt, 2.0));
}

TEST_CASE("gauge-link magnetic operator is second-order consistent") {
    // compare against the expanded continuum action
    // -u'' + A^2 u - i(A' u + 2 A u') on u = sin(pi x) exp(3 i x^2)
    const auto A = [](double x) { return 1.0 + 0.5 * std::sin(2.0 * kPi * x); };
    const auto Ap = [](double x) { return kPi * std::cos(2.0 * kPi * x); };
    double errs[2];
    int idx = 0;
    for (int n : {64, 128}) {
        Grid g = unit_grid(n);
        GridFunction u = GridFunction::sample(
            g, [](double x) { return std::polar(std::sin(kPi * x), 3.0 * x * x); });
        GridFunction Nu = decaylab::apply(Magnetic{A}, u);
        double worst = 0.0;
        for (int j = 2; j < n - 2; ++j) {
            const double x = g.node(j);
            const double f = std::sin(kPi * x), fp = kPi * std::cos(kPi * x),
                         fpp = -kPi * kPi * std::sin(kPi * x);
            const double ph = 3.0 * x * x, php = 6.0 * x, phpp = 6.0;
            const complexd eig = std::polar(1.0, ph);
            const complexd up = (fp + complexd(0, 1) * f * php) * eig;
            const complexd upp =
                (fpp + 2.0 * complexd(0, 1) * fp * php + complexd(0, 1) * f * phpp -
                 f * php * php) * eig;
            const complexd exact =
                -upp + A(x) * A(x) * f * eig - complexd(0, 1) * (Ap(x) * f * eig + 2.0 * A(x) * up);
            worst = std::max(worst, std::abs(Nu.values[j] - exact));
        }
        errs[idx++] = worst;
    }
    CHECK(errs[0] / errs[1] > 3.0);
    CHECK(errs[0] / errs[1] < 5.0);
    CHECK(errs[1] < 0.05);
}

TEST_CASE("admissible exponents for the degenerate estimates") {
    Grid g = unit_grid(32);
    Rng rng(1);
    std::vector<GridFunction> samples{random_smooth_real(g, rng)};

    // one dimension: every s is admissible
    CHECK_NOTHROW(validate_structural_exponent(Kirchhoff{0.0, 1.0}, 3.0, 9.0, 1));
    // n = 6 classical: cap 2n/(n-4) = 6
    CHECK_NOTHROW(validate_structural_exponent(Kirchhoff{0.0, 1.0}, 3.0, 6.0, 6));
    CHECK_THROWS_AS(validate_structural_exponent(Kirchhoff{0.0, 1.0}, 3.0, 7.0, 6),
                    parameter_error);
    // n = 6, sigma = 0.3 fractional: cap 2n/(n-4 sigma) = 2.5
    CHECK_NOTHROW(validate_structural_exponent(FracKirchhoff{0.3, 0.0, 1.0}, 3.0, 2.0, 6));
    CHECK_THROWS_AS(validate_structural_exponent(FracKirchhoff{0.3, 0.0, 1.0}, 3.0, 3.0, 6),
                    parameter_error);
    // non-degenerate claims are not capped
    CHECK_NOTHROW(validate_structural_exponent(Kirchhoff{1.0, 0.0}, 1.0, 9.0, 6));

    CHECK_THROWS_AS(
        estimate_structural_constant(FracKirchhoff{0.3, 0.0, 1.0}, 3.0, 3.0, samples, 6),
        parameter_error);
    CHECK_NOTHROW(estimate_structural_constant(Kirchhoff{0.0, 1.0}, 3.0, 2.0, samples, 6));
}

TEST_CASE("spectral radius estimate matches the laplacian bound") {
    Grid g = unit_grid(64);
    GridFunction s = GridFunction::sample_real(g, [](double x) { return std::sin(kPi * x); });
    const double rho = spectral_radius_estimate(Laplacian{}, s);
    const double lam_max = 2.0 / (g.h * g.h) * (1.0 - std::cos(kPi * g.n_interior * g.h));
    CHECK(rho == doctest::Approx(lam_max).epsilon(0.1));
}
