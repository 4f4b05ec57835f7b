#include "decaylab/grid.hpp"

#include <cmath>

namespace decaylab {

Grid::Grid(double a_, double b_, int n_interior_) : a(a_), b(b_), n_interior(n_interior_) {
    if (!(a < b)) throw parameter_error("Grid: require a < b");
    if (n_interior < 1) throw parameter_error("Grid: require at least one interior node");
    h = (b - a) / (n_interior + 1);
}

GridFunction::GridFunction(const Grid& g, std::vector<complexd> v) : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != g.n_interior)
        throw shape_error("GridFunction: value count does not match grid");
    for (const complexd& z : values)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw parameter_error("GridFunction: non-finite entry");
}

GridFunction GridFunction::sample(const Grid& g, const std::function<complexd(double)>& f) {
    GridFunction u(g);
    for (int j = 0; j < g.n_interior; ++j) {
        u.values[j] = f(g.node(j));
        if (!std::isfinite(u.values[j].real()) || !std::isfinite(u.values[j].imag()))
            throw parameter_error("GridFunction::sample: non-finite value");
    }
    return u;
}

GridFunction GridFunction::sample_real(const Grid& g, const std::function<double(double)>& f) {
    GridFunction u(g);
    for (int j = 0; j < g.n_interior; ++j) {
        const double v = f(g.node(j));
        if (!std::isfinite(v)) throw parameter_error("GridFunction::sample_real: non-finite value");
        u.values[j] = complexd{v, 0.0};
    }
    return u;
}

bool GridFunction::is_real() const {
    for (const complexd& z : values)
        if (z.imag() != 0.0) return false;
    return true;
}

double GridFunction::max_abs() const {
    double m = 0.0;
    for (const complexd& z : values) m = std::max(m, std::abs(z));
    return m;
}

double lebesgue_norm(const GridFunction& u, double s) {
    if (s < 1.0) throw parameter_error("lebesgue_norm: require s >= 1");
    double acc = 0.0;
    for (const complexd& z : u.values) acc += std::pow(std::abs(z), s);
    return std::pow(u.grid.h * acc, 1.0 / s);
}

double weighted_pairing(const GridFunction& u, const GridFunction& v, double s) {
    if (s < 1.0) throw parameter_error("weighted_pairing: require s >= 1");
    if (!(u.grid == v.grid)) throw shape_error("weighted_pairing: grid mismatch");
    double acc = 0.0;
    for (int j = 0; j < u.size(); ++j) {
        const double mag = std::abs(u.values[j]);
        double w;
        if (s == 2.0) {
            w = 1.0;
        } else if (mag == 0.0) {
            if (s < 2.0) continue; // weight defined as 0 at the singular point
            w = 0.0;
        } else {
            w = std::pow(mag, s - 2.0);
        }
        acc += w * (std::conj(u.values[j]) * v.values[j]).real();
    }
    return u.grid.h * acc;
}

GridFunction discrete_gradient(const GridFunction& u) {
    const int n = u.size();
    GridFunction g(u.grid);
    const double inv2h = 1.0 / (2.0 * u.grid.h);
    for (int j = 0; j < n; ++j) {
        const complexd up = (j + 1 < n) ? u.values[j + 1] : complexd{0.0, 0.0};
        const complexd um = (j - 1 >= 0) ? u.values[j - 1] : complexd{0.0, 0.0};
        g.values[j] = (up - um) * inv2h;
    }
    return g;
}

double poincare_ratio(const GridFunction& u) {
    const double nu = lebesgue_norm(u, 2.0);
    if (nu == 0.0) throw parameter_error("poincare_ratio: undefined for the zero function");
    const double ng = lebesgue_norm(discrete_gradient(u), 2.0);
    return nu / ng;
}

} // namespace decaylab
