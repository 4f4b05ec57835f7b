#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "decaylab/errors.hpp"

// Small direct solvers for the implicit time steps. Sizes stay at desk scale
// (a few hundred unknowns), so dense LU with partial pivoting is plenty.

namespace decaylab::linalg {

using cd = std::complex<double>;

// Tridiagonal system: lower[i] u[i-1] + diag[i] u[i] + upper[i] u[i+1] = rhs[i].
inline std::vector<cd> solve_tridiag(std::vector<cd> lower, std::vector<cd> diag,
                                     std::vector<cd> upper, std::vector<cd> rhs) {
    const int n = static_cast<int>(diag.size());
    for (int i = 1; i < n; ++i) {
        if (std::abs(diag[i - 1]) == 0.0) throw solver_error("solve_tridiag: zero pivot");
        const cd w = lower[i] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    if (std::abs(diag[n - 1]) == 0.0) throw solver_error("solve_tridiag: zero pivot");
    std::vector<cd> u(n);
    u[n - 1] = rhs[n - 1] / diag[n - 1];
    for (int i = n - 2; i >= 0; --i) u[i] = (rhs[i] - upper[i] * u[i + 1]) / diag[i];
    return u;
}

// Dense LU with partial pivoting, row-major storage.
struct DenseLU {
    int n = 0;
    std::vector<cd> a;
    std::vector<int> piv;

    DenseLU() = default;
    explicit DenseLU(std::vector<cd> matrix, int n_) : n(n_), a(std::move(matrix)), piv(n_) {
        for (int i = 0; i < n; ++i) piv[i] = i;
        for (int col = 0; col < n; ++col) {
            int p = col;
            double best = std::abs(a[col * n + col]);
            for (int r = col + 1; r < n; ++r) {
                const double m = std::abs(a[r * n + col]);
                if (m > best) { best = m; p = r; }
            }
            if (best == 0.0) throw solver_error("DenseLU: singular matrix");
            if (p != col) {
                for (int c = 0; c < n; ++c) std::swap(a[p * n + c], a[col * n + c]);
                std::swap(piv[p], piv[col]);
            }
            const cd d = a[col * n + col];
            for (int r = col + 1; r < n; ++r) {
                const cd f = a[r * n + col] / d;
                a[r * n + col] = f;
                for (int c = col + 1; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
            }
        }
    }

    std::vector<cd> solve(const std::vector<cd>& rhs) const {
        std::vector<cd> x(n);
        for (int i = 0; i < n; ++i) x[i] = rhs[piv[i]];
        for (int r = 1; r < n; ++r) {
            cd acc = x[r];
            for (int c = 0; c < r; ++c) acc -= a[r * n + c] * x[c];
            x[r] = acc;
        }
        for (int r = n - 1; r >= 0; --r) {
            cd acc = x[r];
            for (int c = r + 1; c < n; ++c) acc -= a[r * n + c] * x[c];
            x[r] = acc / a[r * n + r];
        }
        return x;
    }
};

} // namespace decaylab::linalg
