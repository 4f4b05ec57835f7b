#include "decaylab/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace decaylab {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& v, double& out) {
    try {
        size_t pos = 0;
        out = std::stod(v, &pos);
        return pos == v.size() && std::isfinite(out);
    } catch (...) {
        return false;
    }
}

bool parse_list(const std::string& v, std::vector<double>& out) {
    out.clear();
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        double x;
        if (!parse_double(trim(item), x)) return false;
        out.push_back(x);
    }
    return !out.empty();
}

struct Entry {
    std::string value;
    int line;
};

const std::set<std::string> kKnownOperators = {
    "laplacian",      "frac_laplacian", "porous_medium", "kirchhoff",
    "frac_kirchhoff", "magnetic",       "frac_magnetic", "schrodinger_control"};

} // namespace

double ExperimentConfig::effective_gamma() const {
    if (gamma_theorem) return *gamma_theorem;
    if (operator_name == "porous_medium") return 2.0;
    if ((operator_name == "kirchhoff" || operator_name == "frac_kirchhoff") && m0 == 0.0)
        return 3.0;
    return 1.0;
}

ConfigResult parse_config(const std::string& text) {
    ConfigResult res;
    ExperimentConfig cfg;
    std::vector<Diagnostic>& diags = res.diagnostics;

    std::map<std::string, Entry> entries;
    {
        std::stringstream ss(text);
        std::string raw;
        std::string section;
        int lineno = 0;
        while (std::getline(ss, raw)) {
            ++lineno;
            std::string line = raw;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']') {
                    diags.push_back({lineno, "", "malformed section header"});
                    continue;
                }
                section = trim(line.substr(1, line.size() - 2));
                if (section != "problem" && section != "analysis" && section != "output" &&
                    section != "sweep" && section != "verify")
                    diags.push_back({lineno, section, "unknown section"});
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                diags.push_back({lineno, "", "expected key = value"});
                continue;
            }
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (section.empty()) {
                diags.push_back({lineno, key, "key outside any [section]"});
                continue;
            }
            const std::string full = section + "." + key;
            if (entries.count(full))
                diags.push_back({lineno, full, "duplicate key (first wins)"});
            else
                entries[full] = Entry{value, lineno};
        }
    }

    const auto take = [&](const std::string& full) -> std::optional<Entry> {
        auto it = entries.find(full);
        if (it == entries.end()) return std::nullopt;
        Entry e = it->second;
        entries.erase(it);
        return e;
    };
    const auto num = [&](const std::string& full, double& slot, auto&& check,
                         const std::string& what) {
        if (auto e = take(full)) {
            double x;
            if (!parse_double(e->value, x)) {
                diags.push_back({e->line, full, "not a number"});
            } else if (!check(x)) {
                diags.push_back({e->line, full, what});
            } else {
                slot = x;
            }
        }
    };
    const auto any = [](double) { return true; };

    // [problem]
    if (auto e = take("problem.operator")) {
        if (!kKnownOperators.count(e->value))
            diags.push_back({e->line, "problem.operator", "unknown operator '" + e->value + "'"});
        else
            cfg.operator_name = e->value;
    }
    num("problem.alpha", cfg.alpha, [](double x) { return x > 0.0 && x < 1.0; },
        "alpha must lie in (0,1)");
    num("problem.lambda1", cfg.lambda1, [](double x) { return x >= 0.0; }, "lambda1 must be >= 0");
    num("problem.lambda2", cfg.lambda2, [](double x) { return x >= 0.0; }, "lambda2 must be >= 0");
    num("problem.a", cfg.domain_a, any, "");
    num("problem.b", cfg.domain_b, any, "");
    if (auto e = take("problem.n_interior")) {
        double x;
        if (!parse_double(e->value, x) || x < 1 || x != std::floor(x) || x > 100000)
            diags.push_back({e->line, "problem.n_interior", "need an integer in [1, 100000]"});
        else
            cfg.n_interior = static_cast<int>(x);
    }
    num("problem.dt", cfg.dt, [](double x) { return x > 0.0; }, "dt must be positive");
    num("problem.t_final", cfg.t_final, [](double x) { return x >= 0.0; },
        "t_final must be nonnegative");
    if (auto e = take("problem.scheme")) {
        if (e->value != "explicit_l1" && e->value != "semi_implicit_l1" &&
            e->value != "crank_nicolson")
            diags.push_back({e->line, "problem.scheme", "unknown scheme '" + e->value + "'"});
        else
            cfg.scheme = e->value;
    }
    if (auto e = take("problem.s")) {
        std::vector<double> xs;
        if (!parse_list(e->value, xs))
            diags.push_back({e->line, "problem.s", "need a comma-separated list of numbers"});
        else {
            bool ok = true;
            for (double s : xs)
                if (s < 1.0) ok = false;
            if (!ok)
                diags.push_back({e->line, "problem.s", "every tracked s must be >= 1"});
            else
                cfg.s_list = xs;
        }
    }
    if (auto e = take("problem.initial")) {
        if (e->value != "sine" && e->value != "bump")
            diags.push_back({e->line, "problem.initial", "unknown initial datum '" + e->value + "'"});
        else
            cfg.initial = e->value;
    }
    num("problem.amplitude", cfg.amplitude, [](double x) { return x > 0.0; },
        "amplitude must be positive");
    num("problem.bump_width", cfg.bump_width, [](double x) { return x > 0.0 && x <= 1.0; },
        "bump_width must lie in (0,1]");
    num("problem.sigma", cfg.sigma, [](double x) { return x > 0.0 && x < 1.0; },
        "sigma must lie in (0,1)");
    num("problem.m0", cfg.m0, [](double x) { return x >= 0.0; }, "m0 must be >= 0");
    num("problem.b_coef", cfg.b_coef, [](double x) { return x >= 0.0; }, "b_coef must be >= 0");
    num("problem.epsilon", cfg.epsilon, [](double x) { return x >= 0.0; },
        "epsilon must be >= 0 (0 selects the grid spacing)");
    num("problem.c_kernel", cfg.c_kernel, [](double x) { return x > 0.0; },
        "c_kernel must be positive");
    num("problem.v_potential", cfg.v_potential, any, "");
    num("problem.a_amplitude", cfg.a_amplitude, any, "");
    if (auto e = take("problem.a_profile")) {
        if (e->value != "constant" && e->value != "sine")
            diags.push_back({e->line, "problem.a_profile", "unknown profile '" + e->value + "'"});
        else
            cfg.a_profile = e->value;
    }

    // [analysis]
    if (auto e = take("analysis.window_lo")) {
        double x;
        if (!parse_double(e->value, x) || !(x >= 0.0))
            diags.push_back({e->line, "analysis.window_lo", "need a nonnegative number"});
        else
            cfg.window_lo = x;
    }
    if (auto e = take("analysis.window_hi")) {
        double x;
        if (!parse_double(e->value, x) || !(x > 0.0))
            diags.push_back({e->line, "analysis.window_hi", "need a positive number"});
        else
            cfg.window_hi = x;
    }
    num("analysis.power_tol", cfg.power_tol, [](double x) { return x > 0.0 && x < 1.0; },
        "power_tol must lie in (0,1)");
    num("analysis.degenerate_tol", cfg.degenerate_tol, [](double x) { return x > 0.0 && x < 1.0; },
        "degenerate_tol must lie in (0,1)");
    if (auto e = take("analysis.gamma_theorem")) {
        double x;
        if (!parse_double(e->value, x) || (x != 1.0 && x != 2.0 && x != 3.0))
            diags.push_back({e->line, "analysis.gamma_theorem", "gamma_theorem must be 1, 2 or 3"});
        else
            cfg.gamma_theorem = x;
    }

    // [output]
    if (auto e = take("output.dir")) cfg.out_dir = e->value;
    if (auto e = take("output.formats")) {
        cfg.emit_csv = cfg.emit_report = cfg.emit_svg = false;
        std::stringstream ss(e->value);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item == "csv") cfg.emit_csv = true;
            else if (item == "report") cfg.emit_report = true;
            else if (item == "svg") cfg.emit_svg = true;
            else diags.push_back({e->line, "output.formats", "unknown format '" + item + "'"});
        }
    }

    // [sweep]
    const auto list_key = [&](const std::string& full, std::vector<double>& slot) {
        if (auto e = take(full)) {
            std::vector<double> xs;
            if (!parse_list(e->value, xs))
                diags.push_back({e->line, full, "need a comma-separated list of numbers"});
            else
                slot = xs;
        }
    };
    list_key("sweep.alpha_list", cfg.alpha_list);
    list_key("sweep.sigma_list", cfg.sigma_list);
    list_key("sweep.s_scan", cfg.s_scan);
    list_key("sweep.gamma_list", cfg.gamma_list);
    if (auto e = take("sweep.workers")) {
        double x;
        if (!parse_double(e->value, x) || x < 1 || x != std::floor(x) || x > 256)
            diags.push_back({e->line, "sweep.workers", "need an integer in [1, 256]"});
        else
            cfg.workers = static_cast<int>(x);
    }

    // [verify]
    if (auto e = take("verify.seed")) {
        double x;
        if (!parse_double(e->value, x) || x < 0 || x != std::floor(x))
            diags.push_back({e->line, "verify.seed", "need a nonnegative integer"});
        else
            cfg.seed = static_cast<std::uint64_t>(x);
    }
    if (auto e = take("verify.samples")) {
        double x;
        if (!parse_double(e->value, x) || x < 1 || x != std::floor(x))
            diags.push_back({e->line, "verify.samples", "need a positive integer"});
        else
            cfg.samples = static_cast<int>(x);
    }
    if (auto e = take("verify.sweep_samples")) {
        double x;
        if (!parse_double(e->value, x) || x < 1 || x != std::floor(x))
            diags.push_back({e->line, "verify.sweep_samples", "need a positive integer"});
        else
            cfg.sweep_samples = static_cast<long>(x);
    }
    if (auto e = take("verify.structural_n")) {
        double x;
        if (!parse_double(e->value, x) || x < 8 || x != std::floor(x))
            diags.push_back({e->line, "verify.structural_n", "need an integer >= 8"});
        else
            cfg.structural_n = static_cast<int>(x);
    }
    if (auto e = take("verify.diamagnetic_n")) {
        double x;
        if (!parse_double(e->value, x) || x < 8 || x != std::floor(x))
            diags.push_back({e->line, "verify.diamagnetic_n", "need an integer >= 8"});
        else
            cfg.diamagnetic_n = static_cast<int>(x);
    }
    if (auto e = take("verify.sobolev_dimension")) {
        double x;
        if (!parse_double(e->value, x) || x < 1 || x != std::floor(x) || x > 64)
            diags.push_back({e->line, "verify.sobolev_dimension", "need an integer in [1, 64]"});
        else
            cfg.sobolev_dimension = static_cast<int>(x);
    }

    // leftovers are unknown keys
    for (const auto& [full, e] : entries)
        diags.push_back({e.line, full, "unknown key"});

    // cross-field checks, reported against the file as a whole (line 0)
    if (!(cfg.domain_a < cfg.domain_b))
        diags.push_back({0, "problem.a/problem.b", "require a < b"});
    if (std::abs(cfg.lambda1 + cfg.lambda2 - 1.0) > 1e-12)
        diags.push_back({0, "problem.lambda1/lambda2", "require lambda1 + lambda2 = 1"});
    if (cfg.operator_name == "porous_medium" && cfg.sigma >= 0.5)
        diags.push_back({0, "problem.sigma",
                         "porous_medium needs sigma < 1/2: the 1-D kernel exponent 1-2sigma "
                         "must stay positive"});
    if ((cfg.operator_name == "kirchhoff" || cfg.operator_name == "frac_kirchhoff") &&
        cfg.m0 == 0.0 && cfg.b_coef == 0.0)
        diags.push_back({0, "problem.m0/b_coef", "kirchhoff coefficient must satisfy m0 + b > 0"});
    if (cfg.operator_name == "schrodinger_control" && cfg.scheme != "crank_nicolson")
        diags.push_back({0, "problem.scheme",
                         "schrodinger_control integrates with crank_nicolson only"});
    if (cfg.scheme == "crank_nicolson" && cfg.operator_name != "schrodinger_control")
        diags.push_back({0, "problem.scheme",
                         "crank_nicolson is reserved for the schrodinger_control operator"});
    if (cfg.window_lo && cfg.window_hi && !(*cfg.window_lo < *cfg.window_hi))
        diags.push_back({0, "analysis.window_lo/window_hi", "require window_lo < window_hi"});

    if (diags.empty()) res.config = cfg;
    return res;
}

void apply_env_overrides(ExperimentConfig& cfg) {
    if (const char* env = std::getenv("DECAYLAB_OUT"))
        if (*env) cfg.out_dir = env;
}

ConfigResult parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        ConfigResult res;
        res.diagnostics.push_back({0, path, "cannot open config file"});
        return res;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace decaylab
