// Command-line front end: single-point evaluation, parameter sweeps,
// figure presets, the exact-vs-simulation validation grid, and the
// harvesting-fraction scan. All numeric output is CSV with a `#` metadata
// header that fully determines the run.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "ehrelay/errors.hpp"
#include "ehrelay/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitNonConvergence = 2;
constexpr int kExitValidationFailure = 3;

struct CommonOptions {
    std::string config_path;
    std::string output_path;
    std::optional<std::int64_t> trials;
    std::optional<std::int64_t> seed;
    std::optional<double> rel_tol;
    std::optional<double> abs_tol;
    std::optional<std::string> engines;
    int workers = 4;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_config) {
    if (with_config) {
        cmd->add_option("--config", opts.config_path, "Path to a key = value config file");
    }
    cmd->add_option("--output", opts.output_path, "Output CSV path (default: stdout)");
    cmd->add_option("--trials", opts.trials, "Monte Carlo trials per point");
    cmd->add_option("--seed", opts.seed, "Base seed for counter-based trial streams");
    cmd->add_option("--tol", opts.rel_tol, "Relative quadrature tolerance");
    cmd->add_option("--abs-tol", opts.abs_tol, "Absolute quadrature tolerance");
    cmd->add_option("--engines", opts.engines,
                    "Comma list from {exact,asymptotic,montecarlo}");
    cmd->add_option("--workers", opts.workers, "Worker threads for independent points")
        ->check(CLI::Range(1, 256));
}

ehrelay::RunConfig load_run_config(const CommonOptions& opts) {
    if (opts.config_path.empty()) {
        throw ehrelay::ConfigError(
            "this command needs --config; path_loss_exponent has no default");
    }
    ehrelay::RunConfig rc =
        ehrelay::run_config_from(ehrelay::ConfigMap::parse_file(opts.config_path));
    if (opts.trials) rc.trials = *opts.trials;
    if (opts.seed) rc.base_seed = static_cast<std::uint64_t>(*opts.seed);
    if (opts.rel_tol) rc.quad.rel_tol = *opts.rel_tol;
    if (opts.abs_tol) rc.quad.abs_tol = *opts.abs_tol;
    if (opts.engines) rc.engines = ehrelay::parse_engines(*opts.engines);
    rc.quad.validate();
    return rc;
}

int emit(const CommonOptions& opts, const std::string& text) {
    if (opts.output_path.empty()) {
        std::cout << text;
        return kExitOk;
    }
    std::ofstream out(opts.output_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file " << opts.output_path << "\n";
        return kExitConfigError;
    }
    out << text;
    return kExitOk;
}

void report_notes(const ehrelay::SweepResult& result) {
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        for (const std::string& note : result.rows[i].notes) {
            std::cerr << "warning: row " << i + 1 << ": " << note << "\n";
        }
    }
}

int run_eval(const CommonOptions& opts) {
    const ehrelay::RunConfig rc = load_run_config(opts);
    ehrelay::SweepResult result;
    result.variable_column = "gamma_th_db";
    result.metadata.emplace_back("tool", "ehrelay");
    result.metadata.emplace_back("command", "eval");
    const ehrelay::ConfigMap resolved = ehrelay::to_config(rc);
    for (const auto& entry : resolved.entries()) result.metadata.push_back(entry);
    ehrelay::SweepRow row = ehrelay::run_point(rc);
    std::ostringstream display;
    display << rc.gamma_th_db;
    row.variable_display = display.str();
    result.rows.push_back(std::move(row));
    result.any_engine_error = !result.rows.front().notes.empty();

    std::ostringstream text;
    ehrelay::write_sweep_csv(text, result);
    const int code = emit(opts, text.str());
    report_notes(result);
    if (code != kExitOk) return code;
    return result.any_engine_error ? kExitNonConvergence : kExitOk;
}

int run_sweep_cmd(const CommonOptions& opts) {
    if (opts.config_path.empty()) {
        throw ehrelay::ConfigError("sweep needs --config with the sweep_* keys");
    }
    const ehrelay::ConfigMap cfg = ehrelay::ConfigMap::parse_file(opts.config_path);
    ehrelay::SweepSpec spec = ehrelay::sweep_spec_from(cfg);
    if (opts.trials) spec.base.trials = *opts.trials;
    if (opts.seed) spec.base.base_seed = static_cast<std::uint64_t>(*opts.seed);
    if (opts.rel_tol) spec.base.quad.rel_tol = *opts.rel_tol;
    if (opts.abs_tol) spec.base.quad.abs_tol = *opts.abs_tol;
    if (opts.engines) spec.base.engines = ehrelay::parse_engines(*opts.engines);
    spec.base.quad.validate();

    const ehrelay::SweepResult result = ehrelay::run_sweep(spec, opts.workers);
    std::ostringstream text;
    ehrelay::write_sweep_csv(text, result);
    const int code = emit(opts, text.str());
    report_notes(result);
    if (code != kExitOk) return code;
    return result.any_engine_error ? kExitNonConvergence : kExitOk;
}

int run_figure(const CommonOptions& opts, const std::string& id) {
    ehrelay::PresetOverrides overrides;
    if (opts.trials) overrides.trials = *opts.trials;
    if (opts.seed) overrides.seed = static_cast<std::uint64_t>(*opts.seed);
    if (opts.rel_tol || opts.abs_tol) {
        ehrelay::QuadratureSettings q;
        if (opts.rel_tol) q.rel_tol = *opts.rel_tol;
        if (opts.abs_tol) q.abs_tol = *opts.abs_tol;
        q.validate();
        overrides.quad = q;
    }
    if (opts.engines) overrides.engines = ehrelay::parse_engines(*opts.engines);

    const ehrelay::SweepResult result = ehrelay::figure_preset(id, overrides, opts.workers);
    std::ostringstream text;
    ehrelay::write_sweep_csv(text, result);
    const int code = emit(opts, text.str());
    report_notes(result);
    if (code != kExitOk) return code;
    return result.any_engine_error ? kExitNonConvergence : kExitOk;
}

int run_validate_cmd(const CommonOptions& opts) {
    ehrelay::QuadratureSettings quad;
    if (opts.rel_tol) quad.rel_tol = *opts.rel_tol;
    if (opts.abs_tol) quad.abs_tol = *opts.abs_tol;
    quad.validate();
    const std::int64_t trials = opts.trials.value_or(1'000'000);
    const std::uint64_t seed = static_cast<std::uint64_t>(opts.seed.value_or(1729));

    const ehrelay::ValidateReport report =
        ehrelay::run_validate(trials, seed, opts.workers, quad);
    std::ostringstream text;
    ehrelay::write_validate_csv(text, report);
    const int code = emit(opts, text.str());
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        for (const std::string& note : report.rows[i].notes) {
            std::cerr << "warning: point " << i + 1 << ": " << note << "\n";
        }
    }
    if (code != kExitOk) return code;
    if (!report.all_pass) {
        std::cerr << "validate: FAILED\n";
        return kExitValidationFailure;
    }
    std::cerr << "validate: all " << report.rows.size() << " points pass\n";
    return kExitOk;
}

int run_alpha_scan(const CommonOptions& opts, const std::string& mode_name, double alpha_min,
                   double alpha_max, int steps) {
    const ehrelay::RunConfig rc = load_run_config(opts);
    ehrelay::ThroughputMode mode;
    if (mode_name == "delay_sensitive" || mode_name == "ds") {
        mode = ehrelay::ThroughputMode::kDelaySensitive;
    } else if (mode_name == "delay_tolerant" || mode_name == "dt") {
        mode = ehrelay::ThroughputMode::kDelayTolerant;
    } else {
        throw ehrelay::ConfigError("unknown mode '" + mode_name +
                                   "' (expected delay_sensitive or delay_tolerant)");
    }

    const ehrelay::AlphaScanResult result =
        ehrelay::alpha_scan(rc, mode, alpha_min, alpha_max, steps, opts.workers);
    std::ostringstream text;
    ehrelay::write_alpha_scan_csv(text, result);
    const int code = emit(opts, text.str());
    if (code != kExitOk) return code;
    if (!opts.output_path.empty()) {
        std::cout << "best_alpha = " << result.best_alpha
                  << "  best_value = " << result.best_value << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Outage and throughput analysis of an energy-harvesting underlay relay "
                 "network: exact quadrature, large-system closed forms, and a seeded Monte "
                 "Carlo cross-check"};
    app.require_subcommand(1);

    CommonOptions eval_opts, sweep_opts, figure_opts, validate_opts, scan_opts;
    std::string figure_id;
    std::string scan_mode = "delay_tolerant";
    double scan_min = 0.02;
    double scan_max = 0.98;
    int scan_steps = 25;

    CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate one parameter point");
    add_common(eval_cmd, eval_opts, true);

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Sweep one variable over a grid");
    add_common(sweep_cmd, sweep_opts, true);

    CLI::App* figure_cmd =
        app.add_subcommand("figure", "Run a named preset (fig3..fig9) and emit its CSV");
    figure_cmd->add_option("id", figure_id, "Preset id: fig3, fig4, ... fig9")->required();
    add_common(figure_cmd, figure_opts, false);

    CLI::App* validate_cmd = app.add_subcommand(
        "validate", "Run the 30-point exact-vs-Monte-Carlo agreement grid");
    add_common(validate_cmd, validate_opts, false);

    CLI::App* scan_cmd =
        app.add_subcommand("alpha-scan", "Scan throughput over the harvesting fraction");
    add_common(scan_cmd, scan_opts, true);
    scan_cmd->add_option("--mode", scan_mode, "delay_sensitive (ds) or delay_tolerant (dt)");
    scan_cmd->add_option("--alpha-min", scan_min, "Lower scan bound");
    scan_cmd->add_option("--alpha-max", scan_max, "Upper scan bound");
    scan_cmd->add_option("--steps", scan_steps, "Grid points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (eval_cmd->parsed()) return run_eval(eval_opts);
        if (sweep_cmd->parsed()) return run_sweep_cmd(sweep_opts);
        if (figure_cmd->parsed()) return run_figure(figure_opts, figure_id);
        if (validate_cmd->parsed()) return run_validate_cmd(validate_opts);
        if (scan_cmd->parsed()) {
            return run_alpha_scan(scan_opts, scan_mode, scan_min, scan_max, scan_steps);
        }
    } catch (const ehrelay::NonConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNonConvergence;
    } catch (const ehrelay::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    return kExitOk;
}
