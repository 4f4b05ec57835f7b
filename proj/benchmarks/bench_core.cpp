#include <benchmark/benchmark.h>

#include <cmath>

#include "decaylab/evolve.hpp"
#include "decaylab/experiment.hpp"
#include "decaylab/random.hpp"

using namespace decaylab;

namespace {
const double kPi = 3.14159265358979323846;
}

static void BM_MittagLefflerSeries(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(mittag_leffler(0.5, -1.0));
}
BENCHMARK(BM_MittagLefflerSeries);

static void BM_MittagLefflerSpectral(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(mittag_leffler(0.5, -10.0));
}
BENCHMARK(BM_MittagLefflerSpectral);

static void BM_MittagLefflerAsymptotic(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(mittag_leffler(0.5, -500.0));
}
BENCHMARK(BM_MittagLefflerAsymptotic);

// one L1 evaluation touches the whole history: linear per call
static void BM_CaputoL1(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    std::vector<double> t(m + 1), v(m + 1);
    for (int i = 0; i <= m; ++i) {
        t[i] = i / double(m);
        v[i] = std::exp(-t[i]);
    }
    ScalarHistory hist(t, v);
    for (auto _ : state) benchmark::DoNotOptimize(caputo_l1(hist, 0.5));
    state.SetComplexityN(m);
}
BENCHMARK(BM_CaputoL1)->RangeMultiplier(4)->Range(256, 16384)->Complexity(benchmark::oN);

// the scalar march sums all previous increments every step: quadratic total
static void BM_SolveScalarMixed(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const MixedDerivativeSpec spec(1.0, 0.0, 0.5);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_scalar_mixed(spec, 1.0, 1.0, 1.0, 1.0, 1.0 / m));
    state.SetComplexityN(m);
}
BENCHMARK(BM_SolveScalarMixed)->RangeMultiplier(4)->Range(256, 16384)->Complexity(benchmark::oNSquared);

static void BM_ApplyLaplacian(benchmark::State& state) {
    Grid g(0.0, 1.0, static_cast<int>(state.range(0)));
    GridFunction u = GridFunction::sample_real(g, [](double x) { return std::sin(kPi * x); });
    for (auto _ : state) benchmark::DoNotOptimize(decaylab::apply(Laplacian{}, u));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ApplyLaplacian)->RangeMultiplier(2)->Range(64, 512)->Complexity(benchmark::oN);

static void BM_ApplyFracLaplacian(benchmark::State& state) {
    Grid g(0.0, 1.0, static_cast<int>(state.range(0)));
    GridFunction u = GridFunction::sample_real(g, [](double x) { return std::sin(kPi * x); });
    for (auto _ : state) benchmark::DoNotOptimize(decaylab::apply(FracLaplacian{0.5}, u));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ApplyFracLaplacian)->RangeMultiplier(2)->Range(64, 512)->Complexity(benchmark::oNSquared);

static void BM_ApplyFracMagnetic(benchmark::State& state) {
    Grid g(0.0, 1.0, static_cast<int>(state.range(0)));
    Rng rng(1);
    GridFunction u = random_smooth_complex(g, rng);
    const auto A = [](double x) { return 1.0 + 0.5 * std::sin(2.0 * kPi * x); };
    for (auto _ : state) benchmark::DoNotOptimize(decaylab::apply(FracMagnetic{0.5, A}, u));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ApplyFracMagnetic)->RangeMultiplier(2)->Range(64, 256)->Complexity(benchmark::oNSquared);

// full fractional march: the memory term makes the run quadratic in steps
static void BM_FractionalHeatRun(benchmark::State& state) {
    const int steps = static_cast<int>(state.range(0));
    Grid g(0.0, 1.0, 32);
    ProblemSpec p;
    p.mixed = MixedDerivativeSpec(1.0, 0.0, 0.5);
    p.op = FracLaplacian{0.5};
    p.u0 = GridFunction::sample_real(g, [](double x) { return std::sin(kPi * x); });
    p.dt = 1.0 / steps;
    p.t_final = 1.0;
    p.scheme = Scheme::SemiImplicitL1;
    for (auto _ : state) benchmark::DoNotOptimize(run(p));
    state.SetComplexityN(steps);
}
BENCHMARK(BM_FractionalHeatRun)->RangeMultiplier(2)->Range(512, 4096)->Complexity(benchmark::oNSquared);

BENCHMARK_MAIN();
