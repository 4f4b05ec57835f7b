// Command-line front end: `run` marches one configured problem and writes
// history.csv / report.txt / decay.svg, `sweep` runs a cartesian parameter
// grid concurrently, `verify` executes the inequality and barrier batteries.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "decaylab/experiment.hpp"

namespace {

struct CliOverrides {
    std::string out_dir;
    int workers = 0;
    long long seed = -1;
    bool no_svg = false;
};

int load_config(const std::string& path, const CliOverrides& o, decaylab::ExperimentConfig& cfg) {
    const decaylab::ConfigResult res = decaylab::parse_config_file(path);
    if (!res.ok()) {
        for (const decaylab::Diagnostic& d : res.diagnostics)
            std::cerr << path << ":" << d.line << ": " << (d.key.empty() ? "" : d.key + ": ")
                      << d.message << "\n";
        return 2;
    }
    cfg = *res.config;
    decaylab::apply_env_overrides(cfg);
    if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
    if (o.workers > 0) cfg.workers = o.workers;
    if (o.seed >= 0) cfg.seed = static_cast<std::uint64_t>(o.seed);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"decaylab: time-decay laboratory for classical and nonlocal evolution equations"};
    app.require_subcommand(1);

    CliOverrides o;
    const auto add_common = [&o](CLI::App* cmd) {
        cmd->add_option("--out", o.out_dir, "output directory (overrides config and DECAYLAB_OUT)");
        cmd->add_option("--workers", o.workers, "sweep worker count");
        cmd->add_option("--seed", o.seed, "seed for the randomized batteries");
        cmd->add_flag("--no-svg", o.no_svg, "skip SVG plots");
    };

    std::string run_cfg, sweep_cfg, verify_cfg;
    CLI::App* cmd_run = app.add_subcommand("run", "run one experiment");
    cmd_run->add_option("config", run_cfg, "config file")->required();
    add_common(cmd_run);
    CLI::App* cmd_sweep = app.add_subcommand("sweep", "run a parameter sweep");
    cmd_sweep->add_option("config", sweep_cfg, "config file")->required();
    add_common(cmd_sweep);
    CLI::App* cmd_verify = app.add_subcommand("verify", "run the verification battery");
    cmd_verify->add_option("config", verify_cfg, "config file")->required();
    add_common(cmd_verify);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_run->parsed()) {
            decaylab::ExperimentConfig cfg;
            if (const int rc = load_config(run_cfg, o, cfg)) return rc;
            const decaylab::RunResult res = decaylab::run_experiment(cfg);
            decaylab::emit_artifacts(cfg, res, cfg.out_dir, !o.no_svg);
            if (res.report) {
                const auto& r = *res.report;
                std::cout << (r.pass ? "PASS" : "FAIL") << ": "
                          << (r.classified.model == decaylab::DecayModel::PowerLaw
                                  ? "power-law rate "
                                  : "exponential rate ")
                          << r.classified.selected().rate << " (" << r.note << ")\n";
            } else {
                std::cout << "control run: max relative norm drift " << res.norm_drift << "\n";
            }
            std::cout << "artifacts in " << cfg.out_dir << "\n";
            return res.pass ? 0 : 1;
        }
        if (cmd_sweep->parsed()) {
            decaylab::ExperimentConfig cfg;
            if (const int rc = load_config(sweep_cfg, o, cfg)) return rc;
            const auto cells = decaylab::run_sweep(cfg, cfg.out_dir, cfg.workers, !o.no_svg);
            int failures = 0;
            for (const auto& cell : cells) {
                const bool pass = cell.ok && (!cell.report || cell.report->pass);
                if (!pass) ++failures;
                std::cout << (pass ? "PASS " : "FAIL ") << cell.name;
                if (!cell.ok) std::cout << "  (" << cell.error << ")";
                std::cout << "\n";
            }
            std::cout << cells.size() - failures << "/" << cells.size() << " cells passed; summary in "
                      << cfg.out_dir << "/summary.csv\n";
            return failures == 0 ? 0 : 1;
        }
        decaylab::ExperimentConfig cfg;
        if (const int rc = load_config(verify_cfg, o, cfg)) return rc;
        const auto rows = decaylab::verify_battery(cfg);
        int failures = 0;
        for (const auto& row : rows) {
            if (!row.pass) ++failures;
            std::cout << (row.pass ? "PASS  " : "FAIL  ") << row.name << "  [" << row.detail
                      << "]\n";
        }
        std::cout << rows.size() - failures << "/" << rows.size() << " checks passed\n";
        return failures == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
