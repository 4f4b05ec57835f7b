#pragma once

#include <optional>
#include <string>
#include <vector>

#include "decaylab/errors.hpp"

namespace decaylab {

// Flat `key = value` grammar with [section] headers; sections: problem,
// analysis, output, sweep, verify. Unknown keys, range violations and missing
// required keys are reported with line numbers instead of throwing.
struct Diagnostic {
    int line = 0;
    std::string key;
    std::string message;
};

struct ExperimentConfig {
    // [problem]
    std::string operator_name = "laplacian";
    double alpha = 0.5;
    double lambda1 = 0.0;
    double lambda2 = 1.0;
    double domain_a = 0.0;
    double domain_b = 1.0;
    int n_interior = 128;
    double dt = 1e-3;
    double t_final = 1.0;
    std::string scheme = "semi_implicit_l1";
    std::vector<double> s_list{2.0};
    std::string initial = "sine";
    double amplitude = 1.0;
    double bump_width = 0.5;
    double sigma = 0.5;
    double m0 = 1.0;
    double b_coef = 0.0;
    double epsilon = 0.0; // 0 = grid spacing h, resolved when the problem is built
    double c_kernel = 1.0;
    double v_potential = 0.0;
    double a_amplitude = 1.0;
    std::string a_profile = "constant";

    // [analysis]
    std::optional<double> window_lo;
    std::optional<double> window_hi;
    double power_tol = 0.15;
    double degenerate_tol = 0.20;
    std::optional<double> gamma_theorem; // default: derived from the operator

    // [output]
    std::string out_dir = "out";
    bool emit_csv = true;
    bool emit_report = true;
    bool emit_svg = true;

    // [sweep]
    std::vector<double> alpha_list;
    std::vector<double> sigma_list;
    std::vector<double> s_scan;
    std::vector<double> gamma_list;
    int workers = 1;

    // [verify]
    std::uint64_t seed = 42;
    int samples = 100;
    long sweep_samples = 100000;
    int structural_n = 128;
    int diamagnetic_n = 24;
    int sobolev_dimension = 1; // exponent bookkeeping for the gamma = 3 estimates

    // decay exponent gamma for the configured operator (1, 2 or 3)
    double effective_gamma() const;
};

struct ConfigResult {
    std::optional<ExperimentConfig> config;
    std::vector<Diagnostic> diagnostics;
    bool ok() const { return config.has_value() && diagnostics.empty(); }
};

ConfigResult parse_config(const std::string& text);
ConfigResult parse_config_file(const std::string& path);

// Honors the DECAYLAB_OUT environment variable as an output-directory
// override; command-line flags still take precedence over it.
void apply_env_overrides(ExperimentConfig& cfg);

} // namespace decaylab
