#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "decaylab/errors.hpp"

namespace decaylab {

using complexd = std::complex<double>;

// Uniform 1-D grid of interior nodes on a bounded interval (a, b).
// Fields extend by zero outside the interval: node 0 and node n_interior+1
// (the endpoints) and everything beyond carry the value 0.
struct Grid {
    double a = 0.0;
    double b = 1.0;
    int n_interior = 0;
    double h = 0.0;

    Grid() = default;
    Grid(double a_, double b_, int n_interior_);

    // x_j = a + (j+1) h for the 0-based interior index j in [0, n_interior).
    double node(int j) const { return a + (j + 1) * h; }
    double length() const { return b - a; }

    bool operator==(const Grid& o) const {
        return a == o.a && b == o.b && n_interior == o.n_interior;
    }
};

// Complex-valued field on the interior nodes, identically zero outside (a, b).
struct GridFunction {
    Grid grid;
    std::vector<complexd> values;

    GridFunction() = default;
    explicit GridFunction(const Grid& g) : grid(g), values(g.n_interior, complexd{0.0, 0.0}) {}
    GridFunction(const Grid& g, std::vector<complexd> v);

    static GridFunction sample(const Grid& g, const std::function<complexd(double)>& f);
    static GridFunction sample_real(const Grid& g, const std::function<double(double)>& f);

    int size() const { return static_cast<int>(values.size()); }
    bool is_real() const;
    double max_abs() const;
};

// (h * sum |u_j|^s)^(1/s); requires s >= 1.
double lebesgue_norm(const GridFunction& u, double s);

// h * sum |u_j|^(s-2) Re{conj(u_j) v_j}.
// The weight |u_j|^(s-2) is taken as 0 where u_j = 0 and s < 2.
double weighted_pairing(const GridFunction& u, const GridFunction& v, double s);

// Centered differences with the exterior-zero extension at both endpoints.
GridFunction discrete_gradient(const GridFunction& u);

// ||u||_L2 / ||grad u||_L2; requires u not identically zero.
double poincare_ratio(const GridFunction& u);

} // namespace decaylab
