#include "decaylab/evolve.hpp"

#include <algorithm>
#include <cmath>

#include "linalg.hpp"

namespace decaylab {

namespace {

using linalg::cd;

struct Tridiag {
    std::vector<cd> lower, diag, upper;
};

// Tridiagonal part of A0 I + coeff * (-Laplace).
Tridiag shifted_laplacian(const Grid& g, cd A0, double coeff) {
    const int n = g.n_interior;
    const double invh2 = 1.0 / (g.h * g.h);
    Tridiag T{std::vector<cd>(n, -coeff * invh2), std::vector<cd>(n, A0 + 2.0 * coeff * invh2),
              std::vector<cd>(n, -coeff * invh2)};
    return T;
}

Tridiag shifted_magnetic(const Grid& g, cd A0, const Magnetic& op) {
    const int n = g.n_interior;
    const double invh2 = 1.0 / (g.h * g.h);
    Tridiag T{std::vector<cd>(n), std::vector<cd>(n, A0 + 2.0 * invh2), std::vector<cd>(n)};
    for (int j = 0; j < n; ++j) {
        // link phases above and below node j, matching the operator kernel
        const cd ph_up = std::polar(1.0, g.h * op.a_field(g.a + (j + 1.5) * g.h));
        const cd ph_dn = std::polar(1.0, g.h * op.a_field(g.a + (j + 0.5) * g.h));
        T.upper[j] = -ph_up * invh2;
        T.lower[j] = -std::conj(ph_dn) * invh2;
    }
    return T;
}

// Frozen-transport porous matrix: A0 I - d/dx( . * v ) with v = d/dx K(u_frozen).
Tridiag shifted_porous(const GridFunction& frozen, const PorousMedium& op, cd A0) {
    const Grid& g = frozen.grid;
    const int n = g.n_interior;
    const double expo = (1.0 - 2.0 * op.sigma) / 2.0;
    std::vector<double> K(n + 2, 0.0);
    for (int p = 0; p <= n + 1; ++p) {
        const double X = g.a + p * g.h;
        double acc = 0.0;
        for (int k = 0; k < n; ++k) {
            const double d = X - g.node(k);
            acc += frozen.values[k].real() / std::pow(d * d + op.epsilon * op.epsilon, expo);
        }
        K[p] = op.c_kernel * g.h * acc;
    }
    std::vector<double> vlink(n + 1);
    for (int i = 0; i <= n; ++i) vlink[i] = (K[i + 1] - K[i]) / g.h;

    Tridiag T{std::vector<cd>(n), std::vector<cd>(n), std::vector<cd>(n)};
    const double inv2h = 1.0 / (2.0 * g.h);
    for (int j = 0; j < n; ++j) {
        const int i = j + 1;
        T.diag[j] = A0 - (vlink[i] - vlink[i - 1]) * inv2h;
        if (j + 1 < n) T.upper[j] = cd{-vlink[i] * inv2h, 0.0};
        if (j - 1 >= 0) T.lower[j] = cd{vlink[i - 1] * inv2h, 0.0};
    }
    return T;
}

// Dense A0 I + L for the nonlocal linear operators, assembled column by column.
std::vector<cd> dense_shifted(const OperatorSpec& op, const Grid& g, cd A0, double coeff) {
    const int n = g.n_interior;
    std::vector<cd> A(static_cast<size_t>(n) * n, cd{0.0, 0.0});
    GridFunction e(g);
    for (int col = 0; col < n; ++col) {
        std::fill(e.values.begin(), e.values.end(), cd{0.0, 0.0});
        e.values[col] = cd{1.0, 0.0};
        GridFunction Le = decaylab::apply(op, e);
        for (int row = 0; row < n; ++row) A[static_cast<size_t>(row) * n + col] = coeff * Le.values[row];
    }
    for (int i = 0; i < n; ++i) A[static_cast<size_t>(i) * n + i] += A0;
    return A;
}

} // namespace

const std::vector<double>& TimeHistory::norms(double s) const {
    for (size_t i = 0; i < s_values.size(); ++i)
        if (std::abs(s_values[i] - s) <= 1e-12 * (1.0 + std::abs(s))) return norm_series[i];
    throw parameter_error("TimeHistory: norm series for requested s was not tracked");
}

void validate_problem(const ProblemSpec& p) {
    validate_operator(p.op, p.u0.grid);
    if (!(p.dt > 0.0)) throw parameter_error("ProblemSpec: require dt > 0");
    if (p.t_final < 0.0) throw parameter_error("ProblemSpec: require t_final >= 0");
    if (p.s_list.empty()) throw parameter_error("ProblemSpec: track at least one norm");
    for (double s : p.s_list)
        if (s < 1.0) throw parameter_error("ProblemSpec: tracked s must be >= 1");

    const bool schro = std::holds_alternative<SchrodingerControl>(p.op);
    if (p.scheme == Scheme::CrankNicolson) {
        if (!schro)
            throw parameter_error("ProblemSpec: Crank-Nicolson is reserved for the Schrodinger control");
        if (p.mixed.lambda1 != 0.0)
            throw parameter_error("ProblemSpec: Crank-Nicolson requires lambda1 = 0");
    } else if (schro) {
        throw parameter_error("ProblemSpec: the Schrodinger control runs with Crank-Nicolson only");
    }
    if (p.scheme == Scheme::ExplicitL1) {
        const double rho = spectral_radius_estimate(p.op, p.u0);
        if (p.dt * rho > 0.9)
            throw parameter_error("ProblemSpec: explicit step violates dt * spectral_radius <= 0.9");
    }
}

TimeHistory run(const ProblemSpec& p) {
    validate_problem(p);
    const Grid& g = p.u0.grid;
    const int n = g.n_interior;
    const int M = static_cast<int>(std::llround(p.t_final / p.dt));
    const double alpha = p.mixed.alpha;
    const bool frac = p.mixed.lambda1 > 0.0;
    const cd c1{frac ? p.mixed.lambda1 * std::pow(p.dt, -alpha) / std::tgamma(2.0 - alpha) : 0.0, 0.0};
    const cd c2{p.mixed.lambda2 / p.dt, 0.0};
    const cd A0 = c1 + c2;

    TimeHistory hist;
    hist.s_values = p.s_list;
    hist.norm_series.assign(p.s_list.size(), {});
    const auto record = [&](double t, const GridFunction& u) {
        hist.t.push_back(t);
        for (size_t i = 0; i < p.s_list.size(); ++i)
            hist.norm_series[i].push_back(lebesgue_norm(u, p.s_list[i]));
    };
    const int snap_every = std::max(1, p.max_snapshots > 0 ? M / p.max_snapshots : M + 1);

    GridFunction u = p.u0;
    record(0.0, u);
    hist.snapshots.emplace_back(0.0, u);
    if (M == 0) return hist;

    // L1 weights and stored increments u_m - u_{m-1} for the memory term
    std::vector<double> b;
    std::vector<std::vector<cd>> incr;
    if (frac) {
        b.resize(M);
        for (int j = 0; j < M; ++j)
            b[j] = std::pow(j + 1.0, 1.0 - alpha) - std::pow(static_cast<double>(j), 1.0 - alpha);
        incr.reserve(M);
    }
    std::vector<cd> Hbuf(n);

    // frozen per-run solver data for the linear cases
    Tridiag tri;
    bool use_tri = false;
    linalg::DenseLU lu;
    bool use_lu = false;
    if (p.scheme == Scheme::SemiImplicitL1) {
        if (std::holds_alternative<Laplacian>(p.op)) {
            tri = shifted_laplacian(g, A0, 1.0);
            use_tri = true;
        } else if (std::holds_alternative<Magnetic>(p.op)) {
            tri = shifted_magnetic(g, A0, std::get<Magnetic>(p.op));
            use_tri = true;
        } else if (std::holds_alternative<FracLaplacian>(p.op) ||
                   std::holds_alternative<FracMagnetic>(p.op)) {
            lu = linalg::DenseLU(dense_shifted(p.op, g, A0, 1.0), n);
            use_lu = true;
        }
    }

    for (int m = 1; m <= M; ++m) {
        // memory term c1 * sum_k b_k (u_{m-k} - u_{m-k-1})
        std::fill(Hbuf.begin(), Hbuf.end(), cd{0.0, 0.0});
        if (frac) {
            for (int k = 1; k < m; ++k) {
                const double bk = b[k];
                const std::vector<cd>& d = incr[m - k - 1]; // increment at step m-k
                for (int j = 0; j < n; ++j) Hbuf[j] += bk * d[j];
            }
            hist.history_terms += static_cast<unsigned long long>(m - 1);
        }

        GridFunction unew(g);
        switch (p.scheme) {
            case Scheme::ExplicitL1: {
                GridFunction Nu = decaylab::apply(p.op, u);
                for (int j = 0; j < n; ++j)
                    unew.values[j] = u.values[j] - (c1 * Hbuf[j] + Nu.values[j]) / A0;
                break;
            }
            case Scheme::SemiImplicitL1: {
                std::vector<cd> rhs(n);
                for (int j = 0; j < n; ++j) rhs[j] = A0 * u.values[j] - c1 * Hbuf[j];
                if (use_tri) {
                    unew.values = linalg::solve_tridiag(tri.lower, tri.diag, tri.upper, rhs);
                } else if (use_lu) {
                    unew.values = lu.solve(rhs);
                } else if (std::holds_alternative<Kirchhoff>(p.op)) {
                    const auto& kop = std::get<Kirchhoff>(p.op);
                    const double coeff = kop.m0 + kop.b * dirichlet_energy(u);
                    Tridiag T = shifted_laplacian(g, A0, coeff);
                    unew.values = linalg::solve_tridiag(T.lower, T.diag, T.upper, rhs);
                } else if (std::holds_alternative<PorousMedium>(p.op)) {
                    Tridiag T = shifted_porous(u, std::get<PorousMedium>(p.op), A0);
                    unew.values = linalg::solve_tridiag(T.lower, T.diag, T.upper, rhs);
                } else { // FracKirchhoff: coefficient frozen, dense refactor
                    const auto& kop = std::get<FracKirchhoff>(p.op);
                    const double zn = gagliardo_seminorm(u, kop.sigma);
                    const double coeff = kop.m0 + kop.b * zn * zn;
                    linalg::DenseLU step_lu(
                        dense_shifted(FracLaplacian{kop.sigma}, g, A0, coeff), n);
                    unew.values = step_lu.solve(rhs);
                }
                break;
            }
            case Scheme::CrankNicolson: {
                // (I + dt/2 N) u_new = (I - dt/2 N) u_old, unitary for N = -i(Lap+V)
                const auto& sop = std::get<SchrodingerControl>(p.op);
                const double invh2 = 1.0 / (g.h * g.h);
                const cd mi{0.0, -1.0};
                const cd off = mi * (p.dt * 0.5) * invh2;
                const cd dia = mi * (p.dt * 0.5) * (-2.0 * invh2 + sop.v_potential);
                std::vector<cd> lower(n, off), diag(n, cd{1.0, 0.0} + dia), upper(n, off);
                std::vector<cd> rhs(n);
                for (int j = 0; j < n; ++j) {
                    const cd up = (j + 1 < n) ? u.values[j + 1] : cd{0.0, 0.0};
                    const cd um = (j - 1 >= 0) ? u.values[j - 1] : cd{0.0, 0.0};
                    rhs[j] = u.values[j] - dia * u.values[j] - off * (up + um);
                }
                unew.values = linalg::solve_tridiag(std::move(lower), std::move(diag),
                                                    std::move(upper), std::move(rhs));
                break;
            }
        }

        if (frac) {
            std::vector<cd> d(n);
            for (int j = 0; j < n; ++j) d[j] = unew.values[j] - u.values[j];
            incr.push_back(std::move(d));
        }
        u = std::move(unew);
        record(m * p.dt, u);
        if (m % snap_every == 0 || m == M) hist.snapshots.emplace_back(m * p.dt, u);
    }
    return hist;
}

} // namespace decaylab
