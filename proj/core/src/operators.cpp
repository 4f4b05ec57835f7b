#include "decaylab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace decaylab {

namespace {

// sign(x) |x|^q with the convention 0 at x = 0 (matters for q <= 0).
double signed_pow(double x, double q) {
    if (x == 0.0) return 0.0;
    return std::copysign(std::pow(std::abs(x), q), x);
}

double pos_pow(double x, double q) {
    if (x == 0.0) return 0.0;
    return std::pow(x, q);
}

void require_real(const GridFunction& u, const char* who) {
    if (!u.is_real()) throw type_error(std::string(who) + ": requires a real-valued field");
}

void check_sigma(double sigma, const char* who) {
    if (!(sigma > 0.0) || !(sigma < 1.0))
        throw parameter_error(std::string(who) + ": require sigma in (0,1)");
}

// Kernel weights for the singular sums: w_m = h / (m h)^(1+2 sigma) for the
// explicit window |y| <= R = b - a, plus the integrated far tail
// (2/(2 sigma)) R^(-2 sigma) multiplying u(x).
struct FracKernel {
    std::vector<double> w; // w[m-1], m = 1..Mr
    double tail;
    int Mr;

    FracKernel(const Grid& g, double sigma) {
        const double R = g.length();
        Mr = g.n_interior + 1;
        w.resize(Mr);
        for (int m = 1; m <= Mr; ++m) w[m - 1] = g.h / std::pow(m * g.h, 1.0 + 2.0 * sigma);
        tail = std::pow(R, -2.0 * sigma) / sigma;
    }
};

// PV sum of the symmetric second difference against the kernel: the discrete
// (-Laplace)^sigma with exterior zeros.
GridFunction frac_laplacian_core(const GridFunction& u, double sigma) {
    const int n = u.size();
    const FracKernel ker(u.grid, sigma);
    GridFunction out(u.grid);
    for (int j = 0; j < n; ++j) {
        complexd acc = ker.tail * u.values[j];
        for (int m = 1; m <= ker.Mr; ++m) {
            const complexd up = (j + m < n) ? u.values[j + m] : complexd{0.0, 0.0};
            const complexd um = (j - m >= 0) ? u.values[j - m] : complexd{0.0, 0.0};
            acc += (2.0 * u.values[j] - up - um) * ker.w[m - 1];
        }
        out.values[j] = acc;
    }
    return out;
}

GridFunction laplacian_core(const GridFunction& u) {
    const int n = u.size();
    GridFunction out(u.grid);
    const double invh2 = 1.0 / (u.grid.h * u.grid.h);
    for (int j = 0; j < n; ++j) {
        const complexd up = (j + 1 < n) ? u.values[j + 1] : complexd{0.0, 0.0};
        const complexd um = (j - 1 >= 0) ? u.values[j - 1] : complexd{0.0, 0.0};
        out.values[j] = (2.0 * u.values[j] - up - um) * invh2;
    }
    return out;
}

GridFunction porous_core(const GridFunction& u, const PorousMedium& op) {
    require_real(u, "porous medium");
    const Grid& g = u.grid;
    const int n = g.n_interior;
    const double expo = (1.0 - 2.0 * op.sigma) / 2.0;

    // K u at every extended node a + p h, p = 0..n+1 (endpoints feed the
    // boundary half-link gradients)
    std::vector<double> K(n + 2, 0.0);
    for (int p = 0; p <= n + 1; ++p) {
        const double X = g.a + p * g.h;
        double acc = 0.0;
        for (int k = 0; k < n; ++k) {
            const double d = X - g.node(k);
            acc += u.values[k].real() / std::pow(d * d + op.epsilon * op.epsilon, expo);
        }
        K[p] = op.c_kernel * g.h * acc;
    }

    // conservative flux form: F_{i+1/2} = avg(u) * dK/dx at the half node
    std::vector<double> flux(n + 1, 0.0);
    const auto ext = [&](int i) { return (i >= 1 && i <= n) ? u.values[i - 1].real() : 0.0; };
    for (int i = 0; i <= n; ++i)
        flux[i] = 0.5 * (ext(i) + ext(i + 1)) * (K[i + 1] - K[i]) / g.h;

    GridFunction out(g);
    for (int j = 0; j < n; ++j)
        out.values[j] = complexd{-(flux[j + 1] - flux[j]) / g.h, 0.0};
    return out;
}

GridFunction magnetic_core(const GridFunction& u, const Magnetic& op) {
    const Grid& g = u.grid;
    const int n = g.n_interior;
    const double invh2 = 1.0 / (g.h * g.h);
    // link phases exp(i h A) at half nodes a + (i + 1/2) h, i = 0..n
    std::vector<complexd> phase(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double x = g.a + (i + 0.5) * g.h;
        phase[i] = std::polar(1.0, g.h * op.a_field(x));
    }
    GridFunction out(g);
    for (int j = 0; j < n; ++j) {
        const int i = j + 1; // extended node index
        const complexd up = (j + 1 < n) ? u.values[j + 1] : complexd{0.0, 0.0};
        const complexd um = (j - 1 >= 0) ? u.values[j - 1] : complexd{0.0, 0.0};
        out.values[j] = (2.0 * u.values[j] - phase[i] * up - std::conj(phase[i - 1]) * um) * invh2;
    }
    return out;
}

GridFunction frac_magnetic_core(const GridFunction& u, const FracMagnetic& op) {
    const Grid& g = u.grid;
    const int n = g.n_interior;
    const FracKernel ker(g, op.sigma);
    // A at pair midpoints (x_j + x_k)/2 = a + (j + k + 2) h / 2
    std::vector<double> amid(std::max(2 * n - 1, 1));
    for (int l = 0; l < static_cast<int>(amid.size()); ++l)
        amid[l] = op.a_field(g.a + (l + 2) * g.h * 0.5);

    GridFunction out(g);
    for (int j = 0; j < n; ++j) {
        complexd acc = ker.tail * u.values[j];
        for (int m = 1; m <= ker.Mr; ++m) {
            const double w = ker.w[m - 1];
            for (const int k : {j + m, j - m}) {
                if (k >= 0 && k < n) {
                    const double theta = (j - k) * g.h * amid[j + k];
                    acc += (u.values[j] - std::polar(1.0, theta) * u.values[k]) * w;
                } else {
                    acc += u.values[j] * w; // exterior zero, no phase needed
                }
            }
        }
        out.values[j] = acc;
    }
    return out;
}

GridFunction schrodinger_core(const GridFunction& u, const SchrodingerControl& op) {
    GridFunction lap = laplacian_core(u); // this is -Laplace u
    GridFunction out(u.grid);
    const complexd mi{0.0, -1.0};
    for (int j = 0; j < u.size(); ++j)
        out.values[j] = mi * (-lap.values[j] + op.v_potential * u.values[j]);
    return out;
}

} // namespace

std::string operator_name(const OperatorSpec& op) {
    return std::visit(
        [](const auto& o) -> std::string {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, Laplacian>) return "laplacian";
            else if constexpr (std::is_same_v<T, FracLaplacian>) return "frac_laplacian";
            else if constexpr (std::is_same_v<T, PorousMedium>) return "porous_medium";
            else if constexpr (std::is_same_v<T, Kirchhoff>) return "kirchhoff";
            else if constexpr (std::is_same_v<T, FracKirchhoff>) return "frac_kirchhoff";
            else if constexpr (std::is_same_v<T, Magnetic>) return "magnetic";
            else if constexpr (std::is_same_v<T, FracMagnetic>) return "frac_magnetic";
            else return "schrodinger_control";
        },
        op);
}

bool is_linear(const OperatorSpec& op) {
    return std::holds_alternative<Laplacian>(op) || std::holds_alternative<FracLaplacian>(op) ||
           std::holds_alternative<Magnetic>(op) || std::holds_alternative<FracMagnetic>(op) ||
           std::holds_alternative<SchrodingerControl>(op);
}

void validate_operator(const OperatorSpec& op, const Grid&) {
    std::visit(
        [](const auto& o) {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, FracLaplacian>) {
                check_sigma(o.sigma, "frac_laplacian");
            } else if constexpr (std::is_same_v<T, PorousMedium>) {
                if (!(o.sigma > 0.0) || !(o.sigma < 0.5))
                    throw parameter_error(
                        "porous_medium: require sigma in (0,1/2) so the 1-D kernel exponent 1-2sigma is positive");
                if (!(o.epsilon > 0.0)) throw parameter_error("porous_medium: require epsilon > 0");
                if (!(o.c_kernel > 0.0)) throw parameter_error("porous_medium: require c_kernel > 0");
            } else if constexpr (std::is_same_v<T, Kirchhoff>) {
                if (o.m0 < 0.0 || o.b < 0.0 || !(o.m0 + o.b > 0.0))
                    throw parameter_error("kirchhoff: require m0, b >= 0 with m0 + b > 0");
            } else if constexpr (std::is_same_v<T, FracKirchhoff>) {
                check_sigma(o.sigma, "frac_kirchhoff");
                if (o.m0 < 0.0 || o.b < 0.0 || !(o.m0 + o.b > 0.0))
                    throw parameter_error("frac_kirchhoff: require m0, b >= 0 with m0 + b > 0");
            } else if constexpr (std::is_same_v<T, Magnetic>) {
                if (!o.a_field) throw parameter_error("magnetic: missing field A");
            } else if constexpr (std::is_same_v<T, FracMagnetic>) {
                check_sigma(o.sigma, "frac_magnetic");
                if (!o.a_field) throw parameter_error("frac_magnetic: missing field A");
            } else if constexpr (std::is_same_v<T, SchrodingerControl>) {
                if (!std::isfinite(o.v_potential))
                    throw parameter_error("schrodinger_control: non-finite potential");
            }
        },
        op);
}

GridFunction apply(const OperatorSpec& op, const GridFunction& u) {
    validate_operator(op, u.grid);
    return std::visit(
        [&](const auto& o) -> GridFunction {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, Laplacian>) {
                return laplacian_core(u);
            } else if constexpr (std::is_same_v<T, FracLaplacian>) {
                return frac_laplacian_core(u, o.sigma);
            } else if constexpr (std::is_same_v<T, PorousMedium>) {
                return porous_core(u, o);
            } else if constexpr (std::is_same_v<T, Kirchhoff>) {
                require_real(u, "kirchhoff");
                GridFunction out = laplacian_core(u);
                const double coeff = o.m0 + o.b * dirichlet_energy(u);
                for (auto& z : out.values) z *= coeff;
                return out;
            } else if constexpr (std::is_same_v<T, FracKirchhoff>) {
                require_real(u, "frac_kirchhoff");
                GridFunction out = frac_laplacian_core(u, o.sigma);
                const double zn = gagliardo_seminorm(u, o.sigma);
                const double coeff = o.m0 + o.b * zn * zn;
                for (auto& z : out.values) z *= coeff;
                return out;
            } else if constexpr (std::is_same_v<T, Magnetic>) {
                return magnetic_core(u, o);
            } else if constexpr (std::is_same_v<T, FracMagnetic>) {
                return frac_magnetic_core(u, o);
            } else {
                return schrodinger_core(u, o);
            }
        },
        op);
}

double dirichlet_energy(const GridFunction& u) {
    const int n = u.size();
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        const complexd hi = (i < n) ? u.values[i] : complexd{0.0, 0.0};
        const complexd lo = (i - 1 >= 0) ? u.values[i - 1] : complexd{0.0, 0.0};
        acc += std::norm(hi - lo);
    }
    return acc / u.grid.h;
}

double gagliardo_seminorm(const GridFunction& u, double sigma) {
    check_sigma(sigma, "gagliardo_seminorm");
    const Grid& g = u.grid;
    const int n = g.n_interior;
    const double h2 = g.h * g.h;
    double interior = 0.0;
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k)
            interior += std::norm(u.values[j] - u.values[k]) * h2 /
                        std::pow((k - j) * g.h, 1.0 + 2.0 * sigma);
    interior *= 2.0; // ordered pairs

    double exterior = 0.0;
    for (int j = 0; j < n; ++j) {
        const double x = g.node(j);
        exterior += std::norm(u.values[j]) *
                    (std::pow(x - g.a, -2.0 * sigma) + std::pow(g.b - x, -2.0 * sigma));
    }
    exterior *= 2.0 * g.h / (2.0 * sigma);
    return std::sqrt(interior + exterior);
}

double dissipation(const OperatorSpec& op, const GridFunction& u, double s) {
    return weighted_pairing(u, decaylab::apply(op, u), s);
}

void validate_structural_exponent(const OperatorSpec& op, double gamma, double s, int dimension) {
    if (dimension < 1) throw parameter_error("validate_structural_exponent: dimension >= 1");
    if (s < 1.0) throw parameter_error("validate_structural_exponent: require s >= 1");
    if (gamma != 3.0) return; // only the degenerate-coefficient estimates are capped
    const double n = dimension;
    if (std::holds_alternative<Kirchhoff>(op)) {
        if (n > 4.0 && s > 2.0 * n / (n - 4.0))
            throw parameter_error(
                "validate_structural_exponent: kirchhoff gamma=3 needs s <= 2n/(n-4) past n = 4");
    } else if (std::holds_alternative<FracKirchhoff>(op)) {
        const double sig = std::get<FracKirchhoff>(op).sigma;
        if (n > 4.0 * sig && s > 2.0 * n / (n - 4.0 * sig))
            throw parameter_error(
                "validate_structural_exponent: frac_kirchhoff gamma=3 needs s <= 2n/(n-4 sigma)");
    }
}

StructuralReport estimate_structural_constant(const OperatorSpec& op, double gamma, double s,
                                              const std::vector<GridFunction>& samples,
                                              int dimension) {
    if (samples.empty()) throw parameter_error("estimate_structural_constant: no samples");
    if (!(gamma > 0.0)) throw parameter_error("estimate_structural_constant: require gamma > 0");
    validate_structural_exponent(op, gamma, s, dimension);
    StructuralReport rep;
    rep.gamma = gamma;
    rep.n_samples = static_cast<int>(samples.size());
    rep.min_dissipation = std::numeric_limits<double>::infinity();
    rep.pass = true;
    for (size_t i = 0; i < samples.size(); ++i) {
        const double nrm = lebesgue_norm(samples[i], s);
        if (nrm == 0.0) throw parameter_error("estimate_structural_constant: zero sample");
        const double d = dissipation(op, samples[i], s);
        rep.min_dissipation = std::min(rep.min_dissipation, d);
        if (d <= 0.0) {
            rep.pass = false;
            if (rep.counterexample < 0) rep.counterexample = static_cast<int>(i);
            rep.ratios.push_back(std::numeric_limits<double>::infinity());
            continue;
        }
        const double ratio = std::pow(nrm, s - 1.0 + gamma) / d;
        rep.ratios.push_back(ratio);
        rep.C_est = std::max(rep.C_est, ratio);
    }
    return rep;
}

bool check_monotone_pairing(double a, double b, double s) {
    if (s < 1.0) throw parameter_error("check_monotone_pairing: require s >= 1");
    const double pa = signed_pow(a, s - 1.0);
    const double pb = signed_pow(b, s - 1.0);
    const double prod = (a - b) * (pa - pb);
    return prod >= -1e-12 * (std::abs(a - b) * (std::abs(pa) + std::abs(pb)));
}

bool check_magnetic_quadratic(double a, double b, const std::vector<double>& alpha_v,
                              const std::vector<double>& beta_v, const std::vector<double>& t_v) {
    if (alpha_v.size() != beta_v.size() || alpha_v.size() != t_v.size())
        throw shape_error("check_magnetic_quadratic: vector length mismatch");
    double q1 = 0.0, q2 = 0.0, rhs = 0.0;
    for (size_t i = 0; i < t_v.size(); ++i) {
        const double d1 = a * t_v[i] - beta_v[i];
        const double d2 = b * t_v[i] + alpha_v[i];
        const double r = a * alpha_v[i] + b * beta_v[i];
        q1 += d1 * d1;
        q2 += d2 * d2;
        rhs += r * r;
    }
    const double lhs = (a * a + b * b) * (q1 + q2);
    return lhs >= rhs - 1e-12 * (1.0 + rhs);
}

double power_ratio_g(double s, double p, double lambda) {
    if (!(p >= 2.0)) throw parameter_error("power_ratio_g: require p >= 2");
    if (!(lambda > -1.0) || !(lambda < 1.0))
        throw parameter_error("power_ratio_g: require lambda in (-1,1)");
    const double al = std::abs(lambda);
    const double num = std::pow(1.0 - std::pow(al, (s + 2.0) / (2.0 * p)), 2.0 * p);
    const double den = std::pow(1.0 - lambda, 3.0) * (1.0 - signed_pow(lambda, s - 1.0));
    return num / den;
}

double check_power_ratio_bound(double s, double p, const std::vector<double>& lambda_grid) {
    if (!(p >= 2.0)) throw parameter_error("check_power_ratio_bound: require p >= 2");
    if (lambda_grid.empty()) throw parameter_error("check_power_ratio_bound: empty grid");
    double gmax = -std::numeric_limits<double>::infinity();
    for (double l : lambda_grid) gmax = std::max(gmax, power_ratio_g(s, p, l));
    return gmax;
}

bool check_diamagnetic(const GridFunction& u, const std::function<double(double)>& a_field,
                       std::optional<double> sigma, double s) {
    if (s < 1.0) throw parameter_error("check_diamagnetic: require s >= 1");
    GridFunction g(u.grid);
    for (int j = 0; j < u.size(); ++j) g.values[j] = complexd{std::abs(u.values[j]), 0.0};

    double lhs, rhs;
    if (sigma) {
        lhs = dissipation(FracMagnetic{*sigma, a_field}, u, s);
        rhs = dissipation(FracLaplacian{*sigma}, g, s);
    } else {
        lhs = dissipation(Magnetic{a_field}, u, s);
        // grad |u|^(s-1) . grad |u| with the forward-difference form
        const int n = u.size();
        double acc = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double hi = (i < n) ? g.values[i].real() : 0.0;
            const double lo = (i - 1 >= 0) ? g.values[i - 1].real() : 0.0;
            acc += (pos_pow(hi, s - 1.0) - pos_pow(lo, s - 1.0)) * (hi - lo);
        }
        rhs = acc / u.grid.h;
    }
    return lhs >= rhs - 1e-12 * (1.0 + std::abs(lhs) + std::abs(rhs));
}

double spectral_radius_estimate(const OperatorSpec& op, const GridFunction& u0, int iters) {
    const int n = u0.size();
    const bool linear = is_linear(op);
    const double delta = linear ? 1.0 : 1e-6 * (1.0 + u0.max_abs());

    // deterministic start vector
    GridFunction z(u0.grid);
    unsigned long long state = 0x9e3779b97f4a7c15ULL ^ static_cast<unsigned long long>(n);
    for (int j = 0; j < n; ++j) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        z.values[j] = complexd{static_cast<double>(state >> 11) / 9007199254740992.0 - 0.5, 0.0};
    }

    const auto matvec = [&](const GridFunction& x) -> GridFunction {
        if (linear) return decaylab::apply(op, x);
        GridFunction up(u0.grid), dn(u0.grid);
        for (int j = 0; j < n; ++j) {
            up.values[j] = u0.values[j] + delta * x.values[j];
            dn.values[j] = u0.values[j] - delta * x.values[j];
        }
        GridFunction fu = decaylab::apply(op, up);
        GridFunction fd = decaylab::apply(op, dn);
        GridFunction out(u0.grid);
        for (int j = 0; j < n; ++j) out.values[j] = (fu.values[j] - fd.values[j]) / (2.0 * delta);
        return out;
    };

    double rho = 0.0;
    for (int it = 0; it < iters; ++it) {
        GridFunction w = matvec(z);
        double nw = 0.0;
        for (const auto& c : w.values) nw = std::max(nw, std::abs(c));
        if (nw == 0.0) return 0.0;
        rho = nw; // z is kept at unit max-norm
        for (auto& c : w.values) c /= nw;
        z = std::move(w);
    }
    return rho;
}

} // namespace decaylab
