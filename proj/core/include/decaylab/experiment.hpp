#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "decaylab/analysis.hpp"
#include "decaylab/barriers.hpp"
#include "decaylab/config.hpp"
#include "decaylab/evolve.hpp"
#include "decaylab/operators.hpp"

namespace decaylab {

// --- problem construction from a parsed config ---

OperatorSpec build_operator(const ExperimentConfig& cfg, const Grid& g);
GridFunction build_initial(const ExperimentConfig& cfg, const Grid& g);
ProblemSpec build_problem(const ExperimentConfig& cfg);
FitWindow resolve_window(const ExperimentConfig& cfg, const TimeHistory& hist);

// --- single runs, sweeps ---

struct RunResult {
    TimeHistory history;
    std::optional<DecayReport> report; // absent for the Schrodinger control
    double norm_drift = 0.0;           // max relative drift of the first tracked norm
    bool pass = true;
};

RunResult run_experiment(const ExperimentConfig& cfg);

// Emits history.csv / report.txt / decay.svg under dir (17 significant
// digits in the CSV, bit-stable for a fixed config and seed).
void emit_artifacts(const ExperimentConfig& cfg, const RunResult& res, const std::string& dir,
                    bool svg_enabled);

struct SweepCell {
    std::string name;
    ExperimentConfig cfg;
    bool ok = false;
    std::string error;
    std::optional<DecayReport> report;
};

std::vector<SweepCell> plan_sweep(const ExperimentConfig& cfg);
// Runs cells concurrently (worker pool); one failing cell does not abort the
// siblings. Returns the cells with outcomes; summary.csv goes under out_dir.
std::vector<SweepCell> run_sweep(const ExperimentConfig& cfg, const std::string& out_dir,
                                 int workers, bool svg_enabled);

// --- inequality sweeps and batteries (cmd_verify and the acceptance suite) ---

struct SweepOutcome {
    long samples = 0;
    long violations = 0;
    double worst = 0.0; // most negative margin seen
    bool pass() const { return violations == 0; }
};

SweepOutcome sweep_monotone_pairing(long n, std::uint64_t seed);
SweepOutcome sweep_magnetic_quadratic(long n, std::uint64_t seed);
SweepOutcome sweep_power_ratio(long n, std::uint64_t seed);
SweepOutcome sweep_diamagnetic_classical(long n, int n_interior, std::uint64_t seed);
SweepOutcome sweep_diamagnetic_fractional(long n, int n_interior, std::uint64_t seed);

// Convergence of g(lambda) toward its finite limit ((s+2)/4)^4/(s-1) at
// lambda -> 1^- for p = 2, probed at lambda = 1 - 10^-k, k = 2..6.
bool power_ratio_limit_check(double s, double rel_tol = 0.05);

struct StructuralCheck {
    std::string family;
    StructuralReport report;
    double first_half_max = 0.0;
    double second_half_max = 0.0;
    bool stable = false; // second-half max <= 1.1 * first-half max
    bool pass = false;   // positivity + stability
};

// family is one of: laplacian, frac_laplacian, porous_medium,
// kirchhoff_nondegenerate, kirchhoff_degenerate, frac_kirchhoff_nondegenerate,
// frac_kirchhoff_degenerate, magnetic, frac_magnetic.
StructuralCheck run_structural_check(const std::string& family, int n_interior, int n_samples,
                                     std::uint64_t seed, int sobolev_dimension = 1);
std::vector<std::string> structural_families();

struct BarrierCheck {
    double alpha = 0.0;
    double gamma = 0.0;
    double lambda1 = 0.0;
    bool pass = false;
    double min_residual = 0.0;
};

// Residual checks of the mixed power barrier over an (alpha, gamma) grid for
// pure-fractional, pure-classical and half-half derivative weights.
std::vector<BarrierCheck> barrier_residual_battery(const std::vector<double>& alphas,
                                                   const std::vector<double>& gammas, double nu);

struct ComparisonOutcome {
    int trials = 0;
    int crossings = 0;
    int unverified_barriers = 0;
    bool pass() const { return crossings == 0 && unverified_barriers == 0; }
};

// Random scalar trajectories started strictly below verified barriers; counts
// any crossing of trajectory over barrier.
ComparisonOutcome comparison_battery(int trials, std::uint64_t seed);

struct CheckRow {
    std::string name;
    bool pass = false;
    std::string detail;
};

// The full verification table behind `decaylab verify`.
std::vector<CheckRow> verify_battery(const ExperimentConfig& cfg);

} // namespace decaylab
