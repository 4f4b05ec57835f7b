#pragma once

#include <cmath>
#include <cstdint>

#include "decaylab/grid.hpp"

namespace decaylab {

// Deterministic generator (xoshiro-free, plain splitmix/LCG mix) so that
// seeded sweeps produce byte-identical output across standard libraries;
// std::normal_distribution sequences are implementation-defined.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ULL) {
        next_u64(); // decouple small seeds
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0,1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Box-Muller; one value per call, the pair partner is discarded for
    // reproducibility independent of call parity
    double normal() {
        double u1 = uniform();
        while (u1 == 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

  private:
    std::uint64_t state_;
};

// Random smooth fields used by the structural batteries and property sweeps.
// Low sine modes with amplitude decay k^-q keep the samples smooth and give
// the spectral ratios a good chance of approaching their suprema.
inline GridFunction random_smooth_real(const Grid& g, Rng& rng, int max_mode = 12,
                                       double q = 2.5) {
    const double pi = 3.14159265358979323846;
    std::vector<double> amp(max_mode);
    for (int k = 0; k < max_mode; ++k) amp[k] = rng.normal() * std::pow(k + 1.0, -q);
    GridFunction u(g);
    for (int j = 0; j < g.n_interior; ++j) {
        const double xi = (g.node(j) - g.a) / g.length();
        double acc = 0.0;
        for (int k = 0; k < max_mode; ++k) acc += amp[k] * std::sin((k + 1) * pi * xi);
        u.values[j] = complexd{acc, 0.0};
    }
    return u;
}

inline GridFunction random_smooth_complex(const Grid& g, Rng& rng, int max_mode = 12,
                                          double q = 2.5) {
    GridFunction re = random_smooth_real(g, rng, max_mode, q);
    GridFunction im = random_smooth_real(g, rng, max_mode, q);
    GridFunction u(g);
    for (int j = 0; j < g.n_interior; ++j)
        u.values[j] = complexd{re.values[j].real(), im.values[j].real()};
    return u;
}

// Strictly positive in the interior and smooth; bump modulated by a bounded
// random low-mode perturbation. Suits the porous-medium operator.
inline GridFunction random_smooth_nonneg(const Grid& g, Rng& rng, int max_mode = 6) {
    const double pi = 3.14159265358979323846;
    std::vector<double> amp(max_mode);
    double total = 0.0;
    for (int k = 0; k < max_mode; ++k) {
        amp[k] = rng.normal() * std::pow(k + 1.0, -2.0);
        total += std::abs(amp[k]);
    }
    const double scale = total > 0.0 ? 0.4 / total : 0.0;
    GridFunction u(g);
    for (int j = 0; j < g.n_interior; ++j) {
        const double xi = (g.node(j) - g.a) / g.length();
        const double bump = std::sin(pi * xi) * std::sin(pi * xi);
        double pert = 0.0;
        for (int k = 0; k < max_mode; ++k) pert += amp[k] * std::sin((k + 1) * pi * xi);
        u.values[j] = complexd{bump * (1.0 + scale * pert), 0.0};
    }
    return u;
}

} // namespace decaylab
