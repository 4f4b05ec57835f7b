#pragma once

#include <utility>
#include <vector>

#include "decaylab/frac_time.hpp"
#include "decaylab/grid.hpp"
#include "decaylab/operators.hpp"

namespace decaylab {

enum class Scheme { ExplicitL1, SemiImplicitL1, CrankNicolson };

// Discrete Cauchy problem: (lambda1 D^alpha + lambda2 d/dt) u + N[u] = 0 with
// exterior-zero data. ExplicitL1 requires dt * spectral_radius <= 0.9 at
// construction; CrankNicolson is reserved for the Schrodinger control (and
// vice versa), where it is exactly norm-preserving.
struct ProblemSpec {
    MixedDerivativeSpec mixed;
    OperatorSpec op;
    GridFunction u0;
    double dt = 1e-3;
    double t_final = 1.0;
    Scheme scheme = Scheme::SemiImplicitL1;
    std::vector<double> s_list{2.0};
    int max_snapshots = 50;
};

void validate_problem(const ProblemSpec& p);

struct TimeHistory {
    std::vector<double> t;
    std::vector<double> s_values;
    std::vector<std::vector<double>> norm_series; // norm_series[i] tracks s_values[i]
    std::vector<std::pair<double, GridFunction>> snapshots;
    // count of stored time levels touched by the L1 memory term; the
    // documented Theta(M^2) cost contract of the fractional runs
    unsigned long long history_terms = 0;

    const std::vector<double>& norms(double s) const;
};

// Marches the problem to t_final, recording every tracked norm each step and
// at most max_snapshots field snapshots. Deterministic for a fixed spec.
TimeHistory run(const ProblemSpec& p);

} // namespace decaylab
