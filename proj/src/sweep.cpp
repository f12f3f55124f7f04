#include "ehrelay/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <thread>

#include "ehrelay/analytic.hpp"
#include "ehrelay/asymptotic.hpp"
#include "ehrelay/errors.hpp"

namespace ehrelay {

namespace {

// Shortest decimal form that parses back to the identical double, so a
// resolved configuration replays bit-for-bit.
std::string format_exact(double v) {
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, end);
}

std::string format_point_config(Point p) {
    return format_exact(p.x) + "," + format_exact(p.y);
}

std::string format_point_display(Point p) {
    return format_exact(p.x) + ":" + format_exact(p.y);
}

template <class Fn>
void parallel_indexed(int n, int workers, Fn fn) {
    if (workers <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    auto drain = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    const int count = std::min(workers, n);
    pool.reserve(static_cast<std::size_t>(count));
    for (int w = 0; w < count; ++w) pool.emplace_back(drain);
    for (auto& th : pool) th.join();
}

std::vector<double> linear_grid(double start, double stop, int steps) {
    std::vector<double> grid(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        grid[static_cast<std::size_t>(i)] = start + (stop - start) * i / (steps - 1);
    }
    return grid;
}

}  // namespace

double db_to_linear(double db) {
    return std::pow(10.0, db / 10.0);
}

double RunConfig::gamma_th_linear() const {
    return db_to_linear(gamma_th_db);
}

double RunConfig::p_interference_watts() const {
    return db_to_linear(p_interference_dbw);
}

double RunConfig::p_putx_watts() const {
    return db_to_linear(p_putx_dbw);
}

EngineSet parse_engines(const std::string& spec) {
    EngineSet out{false, false, false};
    std::istringstream in(spec);
    std::string token;
    while (std::getline(in, token, ',')) {
        token.erase(std::remove_if(token.begin(), token.end(), ::isspace), token.end());
        if (token.empty()) continue;
        if (token == "exact") {
            out.exact = true;
        } else if (token == "asymptotic") {
            out.asymptotic = true;
        } else if (token == "montecarlo") {
            out.monte_carlo = true;
        } else {
            throw ConfigError("unknown engine '" + token +
                              "' (expected exact, asymptotic, montecarlo)");
        }
    }
    if (!out.exact && !out.asymptotic && !out.monte_carlo) {
        throw ConfigError("engine list is empty");
    }
    return out;
}

std::string engines_to_string(const EngineSet& engines) {
    std::string out;
    auto append = [&out](const char* name) {
        if (!out.empty()) out += ",";
        out += name;
    };
    if (engines.exact) append("exact");
    if (engines.asymptotic) append("asymptotic");
    if (engines.monte_carlo) append("montecarlo");
    return out;
}

RunConfig run_config_from(const ConfigMap& cfg) {
    RunConfig rc;
    rc.alpha = cfg.get_double("alpha", rc.alpha);
    rc.eta = cfg.get_double("eta", rc.eta);
    rc.gamma_th_db = cfg.get_double("gamma_th_db", rc.gamma_th_db);
    rc.p_interference_dbw = cfg.get_double("p_interference_dbw", rc.p_interference_dbw);
    rc.p_putx_dbw = cfg.get_double("p_putx_dbw", rc.p_putx_dbw);
    rc.m_receivers = static_cast<int>(cfg.get_int("m_receivers", rc.m_receivers));
    rc.n_transmitters = static_cast<int>(cfg.get_int("n_transmitters", rc.n_transmitters));
    rc.path_loss_exponent = cfg.get_double("path_loss_exponent");
    rc.layout.ss = cfg.get_point("ss", rc.layout.ss);
    rc.layout.sr = cfg.get_point("sr", rc.layout.sr);
    rc.layout.sd = cfg.get_point("sd", rc.layout.sd);
    rc.layout.pu_tx_center = cfg.get_point("pu_tx_center", rc.layout.pu_tx_center);
    rc.layout.pu_rx_center = cfg.get_point("pu_rx_center", rc.layout.pu_rx_center);
    if (cfg.contains("engines")) rc.engines = parse_engines(cfg.get_string("engines"));
    rc.throughput_columns = cfg.get_bool("throughput", rc.throughput_columns);
    rc.trials = cfg.get_int("trials", rc.trials);
    rc.base_seed = static_cast<std::uint64_t>(cfg.get_int("base_seed", static_cast<std::int64_t>(rc.base_seed)));
    rc.quad.rel_tol = cfg.get_double("rel_tol", rc.quad.rel_tol);
    rc.quad.abs_tol = cfg.get_double("abs_tol", rc.quad.abs_tol);
    rc.quad.max_depth = static_cast<int>(cfg.get_int("max_depth", rc.quad.max_depth));
    rc.quad.validate();
    return rc;
}

ConfigMap to_config(const RunConfig& rc) {
    ConfigMap cfg;
    cfg.set("alpha", format_exact(rc.alpha));
    cfg.set("eta", format_exact(rc.eta));
    cfg.set("gamma_th_db", format_exact(rc.gamma_th_db));
    cfg.set("p_interference_dbw", format_exact(rc.p_interference_dbw));
    cfg.set("p_putx_dbw", format_exact(rc.p_putx_dbw));
    cfg.set("m_receivers", std::to_string(rc.m_receivers));
    cfg.set("n_transmitters", std::to_string(rc.n_transmitters));
    cfg.set("path_loss_exponent", format_exact(rc.path_loss_exponent));
    cfg.set("ss", format_point_config(rc.layout.ss));
    cfg.set("sr", format_point_config(rc.layout.sr));
    cfg.set("sd", format_point_config(rc.layout.sd));
    cfg.set("pu_tx_center", format_point_config(rc.layout.pu_tx_center));
    cfg.set("pu_rx_center", format_point_config(rc.layout.pu_rx_center));
    cfg.set("engines", engines_to_string(rc.engines));
    cfg.set("throughput", rc.throughput_columns ? "true" : "false");
    cfg.set("trials", std::to_string(rc.trials));
    cfg.set("base_seed", std::to_string(rc.base_seed));
    cfg.set("rel_tol", format_exact(rc.quad.rel_tol));
    cfg.set("abs_tol", format_exact(rc.quad.abs_tol));
    cfg.set("max_depth", std::to_string(rc.quad.max_depth));
    return cfg;
}

SystemParams make_system_params(const RunConfig& rc) {
    return SystemParams(rc.alpha, rc.eta, rc.p_interference_watts(), rc.p_putx_watts(),
                        rc.m_receivers, rc.n_transmitters,
                        channel_params(rc.layout, rc.path_loss_exponent));
}

SweepVariable parse_sweep_variable(const std::string& name) {
    if (name == "p_interference_dbw") return SweepVariable::kInterferenceDbw;
    if (name == "p_putx_dbw") return SweepVariable::kPuTxPowerDbw;
    if (name == "m_and_n") return SweepVariable::kMandN;
    if (name == "alpha") return SweepVariable::kAlpha;
    if (name == "gamma_th_db") return SweepVariable::kGammaThDb;
    if (name == "pu_tx_position") return SweepVariable::kPuTxPosition;
    throw ConfigError("unknown sweep variable '" + name + "'");
}

std::string sweep_variable_name(SweepVariable v) {
    switch (v) {
        case SweepVariable::kInterferenceDbw: return "p_interference_dbw";
        case SweepVariable::kPuTxPowerDbw: return "p_putx_dbw";
        case SweepVariable::kMandN: return "m_and_n";
        case SweepVariable::kAlpha: return "alpha";
        case SweepVariable::kGammaThDb: return "gamma_th_db";
        case SweepVariable::kPuTxPosition: return "pu_tx_position";
    }
    throw std::logic_error("unreachable");
}

SweepSpec sweep_spec_from(const ConfigMap& cfg) {
    SweepSpec spec;
    spec.base = run_config_from(cfg);
    spec.variable = parse_sweep_variable(cfg.get_string("sweep_variable"));
    if (spec.variable == SweepVariable::kPuTxPosition) {
        spec.positions = cfg.get_point_list("sweep_positions");
    } else {
        spec.start = cfg.get_double("sweep_start");
        spec.stop = cfg.get_double("sweep_stop");
        spec.steps = static_cast<int>(cfg.get_int("sweep_steps"));
        if (spec.steps < 2) throw ConfigError("sweep_steps must be >= 2");
    }
    return spec;
}

SweepRow run_point(const RunConfig& rc) {
    SweepRow row;
    std::optional<SystemParams> params;
    try {
        params.emplace(make_system_params(rc));
    } catch (const std::exception& e) {
        row.notes.push_back(std::string("params: ") + e.what());
        return row;
    }
    const SystemParams& p = *params;
    const double gamma = rc.gamma_th_linear();

    if (rc.engines.exact) {
        try {
            row.p_out_exact = outage_exact(gamma, p, rc.quad);
        } catch (const std::exception& e) {
            row.notes.push_back(std::string("exact: ") + e.what());
        }
    }
    if (rc.engines.asymptotic) {
        try {
            row.p_out_asymptotic = outage_asymptotic(gamma, p);
        } catch (const std::exception& e) {
            row.notes.push_back(std::string("asymptotic: ") + e.what());
        }
    }
    std::optional<MonteCarloEstimate> mc;
    if (rc.engines.monte_carlo) {
        try {
            mc = estimate_outage(gamma, p, rc.trials, rc.base_seed);
            row.p_out_mc = mc->mean;
            row.mc_std_error = mc->std_error;
        } catch (const std::exception& e) {
            row.notes.push_back(std::string("montecarlo: ") + e.what());
        }
    }
    if (rc.throughput_columns) {
        if (row.p_out_exact) {
            try {
                const double known = *row.p_out_exact;
                row.tau_ds_exact =
                    throughput_delay_sensitive(gamma, p, [known](double) { return known; },
                                               OutageSource::kExact)
                        .value;
                auto evaluator = [&p, &rc](double g) { return outage_exact(g, p, rc.quad); };
                const ThroughputResult dt =
                    throughput_delay_tolerant(p, evaluator, rc.quad, OutageSource::kExact);
                row.tau_dt_exact = dt.value;
                row.truncation_upper = dt.truncation_upper;
            } catch (const std::exception& e) {
                row.notes.push_back(std::string("throughput_exact: ") + e.what());
            }
        }
        if (mc) {
            try {
                const double known = mc->mean;
                row.tau_ds_mc =
                    throughput_delay_sensitive(gamma, p, [known](double) { return known; },
                                               OutageSource::kMonteCarlo)
                        .value;
                const MonteCarloEstimate cap =
                    estimate_ergodic_capacity(p, rc.trials, rc.base_seed);
                row.tau_dt_mc = 0.5 * (1.0 - rc.alpha) * cap.mean;
            } catch (const std::exception& e) {
                row.notes.push_back(std::string("throughput_mc: ") + e.what());
            }
        }
    }
    return row;
}

namespace {

struct SweepPoints {
    std::vector<RunConfig> configs;
    std::vector<std::string> displays;
};

SweepPoints expand(const SweepSpec& spec) {
    SweepPoints out;
    if (spec.variable == SweepVariable::kPuTxPosition) {
        if (spec.positions.empty()) throw ConfigError("position sweep needs at least one position");
        for (const Point& pos : spec.positions) {
            RunConfig rc = spec.base;
            rc.layout.pu_tx_center = pos;
            out.configs.push_back(rc);
            out.displays.push_back(format_point_display(pos));
        }
        return out;
    }
    if (spec.steps < 2) throw ConfigError("sweep needs steps >= 2");
    for (double v : linear_grid(spec.start, spec.stop, spec.steps)) {
        RunConfig rc = spec.base;
        switch (spec.variable) {
            case SweepVariable::kInterferenceDbw:
                rc.p_interference_dbw = v;
                break;
            case SweepVariable::kPuTxPowerDbw:
                rc.p_putx_dbw = v;
                break;
            case SweepVariable::kMandN: {
                const int count = static_cast<int>(std::lround(v));
                rc.m_receivers = count;
                rc.n_transmitters = count;
                out.configs.push_back(rc);
                out.displays.push_back(std::to_string(count));
                continue;
            }
            case SweepVariable::kAlpha:
                rc.alpha = v;
                break;
            case SweepVariable::kGammaThDb:
                rc.gamma_th_db = v;
                break;
            case SweepVariable::kPuTxPosition:
                break;  // handled above
        }
        out.configs.push_back(rc);
        out.displays.push_back(format_exact(v));
    }
    return out;
}

void append_config_metadata(std::vector<std::pair<std::string, std::string>>& meta,
                            const RunConfig& rc) {
    const ConfigMap cfg = to_config(rc);
    for (const auto& entry : cfg.entries()) meta.push_back(entry);
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, int workers) {
    const SweepPoints points = expand(spec);
    const int n = static_cast<int>(points.configs.size());

    SweepResult result;
    result.variable_column = sweep_variable_name(spec.variable);
    result.metadata.emplace_back("tool", "ehrelay");
    append_config_metadata(result.metadata, spec.base);
    result.metadata.emplace_back("sweep_variable", sweep_variable_name(spec.variable));
    if (spec.variable == SweepVariable::kPuTxPosition) {
        std::string list;
        for (const Point& pos : spec.positions) {
            if (!list.empty()) list += "; ";
            list += format_point_config(pos);
        }
        result.metadata.emplace_back("sweep_positions", list);
    } else {
        result.metadata.emplace_back("sweep_start", format_exact(spec.start));
        result.metadata.emplace_back("sweep_stop", format_exact(spec.stop));
        result.metadata.emplace_back("sweep_steps", std::to_string(spec.steps));
    }

    result.rows.resize(static_cast<std::size_t>(n));
    parallel_indexed(n, workers, [&](int i) {
        SweepRow row = run_point(points.configs[static_cast<std::size_t>(i)]);
        row.variable_display = points.displays[static_cast<std::size_t>(i)];
        result.rows[static_cast<std::size_t>(i)] = std::move(row);
    });
    for (const SweepRow& row : result.rows) {
        if (!row.notes.empty()) result.any_engine_error = true;
    }
    return result;
}

namespace {

RunConfig preset_base() {
    RunConfig rc;  // defaults already carry the documented baseline geometry
    rc.engines = {true, false, true};
    return rc;
}

void apply(const PresetOverrides& o, RunConfig& rc) {
    if (o.trials) rc.trials = *o.trials;
    if (o.seed) rc.base_seed = *o.seed;
    if (o.quad) rc.quad = *o.quad;
    if (o.engines) rc.engines = *o.engines;
}

struct CurveSpec {
    std::string id;
    SweepSpec sweep;
};

SweepResult run_curves(const std::string& figure, const std::vector<CurveSpec>& curves,
                       int workers) {
    SweepResult combined;
    combined.with_curve_column = true;
    bool first = true;
    for (const CurveSpec& curve : curves) {
        SweepResult part = run_sweep(curve.sweep, workers);
        if (first) {
            combined.variable_column = part.variable_column;
            combined.metadata.emplace_back("tool", "ehrelay");
            combined.metadata.emplace_back("figure", figure);
            combined.metadata.emplace_back(
                "note", "axis grids and legend sets are reconstructions; the source text "
                        "does not specify them");
            for (const auto& [k, v] : part.metadata) {
                if (k != "tool") combined.metadata.emplace_back(k, v);
            }
            first = false;
        }
        for (SweepRow& row : part.rows) {
            row.curve_id = curve.id;
            combined.rows.push_back(std::move(row));
        }
        combined.any_engine_error = combined.any_engine_error || part.any_engine_error;
    }
    return combined;
}

}  // namespace

SweepResult figure_preset(const std::string& id, const PresetOverrides& overrides, int workers) {
    std::vector<CurveSpec> curves;
    if (id == "fig3") {
        // Outage vs interference limit, one curve per SIR threshold.
        for (double gamma_db : {-10.0, 0.0, 10.0}) {
            RunConfig base = preset_base();
            base.gamma_th_db = gamma_db;
            base.p_putx_dbw = 0.0;
            apply(overrides, base);
            curves.push_back({"gamma_th_db=" + format_exact(gamma_db),
                              {SweepVariable::kInterferenceDbw, -10.0, 30.0, 21, {}, base}});
        }
    } else if (id == "fig4") {
        // Both throughput modes vs interference limit, per PU transmit power.
        for (double putx_db : {-10.0, 0.0, 10.0}) {
            RunConfig base = preset_base();
            base.gamma_th_db = 0.0;
            base.p_putx_dbw = putx_db;
            base.throughput_columns = true;
            base.quad = {1e-5, 1e-8, 50};
            apply(overrides, base);
            curves.push_back({"p_putx_dbw=" + format_exact(putx_db),
                              {SweepVariable::kInterferenceDbw, -10.0, 30.0, 21, {}, base}});
        }
    } else if (id == "fig5") {
        // Outage vs PU transmit power, per PU transmitter position.
        for (const Point pos : {Point{0.0, 1.0}, Point{0.5, 1.0}, Point{1.0, 1.0}, Point{2.0, 1.0}}) {
            RunConfig base = preset_base();
            base.gamma_th_db = -10.0;
            base.p_interference_dbw = 10.0;
            base.layout.pu_tx_center = pos;
            apply(overrides, base);
            curves.push_back({"pu_tx=" + format_point_display(pos),
                              {SweepVariable::kPuTxPowerDbw, -10.0, 30.0, 21, {}, base}});
        }
    } else if (id == "fig6") {
        // Outage vs PU transmit power, per interference limit.
        for (double pi_db : {0.0, 10.0, 20.0}) {
            RunConfig base = preset_base();
            base.gamma_th_db = -10.0;
            base.p_interference_dbw = pi_db;
            apply(overrides, base);
            curves.push_back({"p_interference_dbw=" + format_exact(pi_db),
                              {SweepVariable::kPuTxPowerDbw, -10.0, 30.0, 21, {}, base}});
        }
    } else if (id == "fig7") {
        // Both throughput modes vs PU transmit power, per interference limit.
        for (double pi_db : {0.0, 10.0, 20.0}) {
            RunConfig base = preset_base();
            base.gamma_th_db = 0.0;
            base.p_interference_dbw = pi_db;
            base.throughput_columns = true;
            base.quad = {1e-5, 1e-8, 50};
            apply(overrides, base);
            curves.push_back({"p_interference_dbw=" + format_exact(pi_db),
                              {SweepVariable::kPuTxPowerDbw, -10.0, 30.0, 21, {}, base}});
        }
    } else if (id == "fig8") {
        // Exact and large-system outage vs the transceiver count, per
        // PU transmitter position.
        for (const Point pos : {Point{0.0, 1.0}, Point{1.0, 1.0}}) {
            RunConfig base = preset_base();
            base.gamma_th_db = -10.0;
            base.p_interference_dbw = 10.0;
            base.p_putx_dbw = 0.0;
            base.layout.pu_tx_center = pos;
            base.engines = {true, true, false};
            apply(overrides, base);
            curves.push_back({"pu_tx=" + format_point_display(pos),
                              {SweepVariable::kMandN, 1.0, 100.0, 100, {}, base}});
        }
    } else if (id == "fig9") {
        // Both throughput modes vs harvesting fraction, per transceiver count.
        for (int count : {3, 15}) {
            RunConfig base = preset_base();
            base.gamma_th_db = 0.0;
            base.p_interference_dbw = 10.0;
            base.p_putx_dbw = 0.0;
            base.m_receivers = count;
            base.n_transmitters = count;
            base.engines = {true, false, false};
            base.throughput_columns = true;
            base.quad = {1e-5, 1e-8, 50};
            apply(overrides, base);
            curves.push_back({"m_and_n=" + std::to_string(count),
                              {SweepVariable::kAlpha, 0.05, 0.95, 19, {}, base}});
        }
    } else {
        throw ConfigError("unknown figure id '" + id + "' (expected fig3..fig9)");
    }
    return run_curves(id, curves, workers);
}

std::vector<RunConfig> validation_grid(std::int64_t trials, std::uint64_t seed,
                                       const QuadratureSettings& quad) {
    std::vector<RunConfig> rows;
    RunConfig base = preset_base();
    base.trials = trials;
    base.base_seed = seed;
    base.quad = quad;

    // Interference-limit family (threshold x limit).
    for (double gamma_db : {-10.0, 0.0, 10.0}) {
        for (double pi_db : {-10.0, 0.0, 10.0, 20.0, 30.0}) {
            RunConfig rc = base;
            rc.gamma_th_db = gamma_db;
            rc.p_interference_dbw = pi_db;
            rc.p_putx_dbw = 0.0;
            rows.push_back(rc);
        }
    }
    // PU power x PU transmitter position family.
    for (double putx_db : {-10.0, 0.0, 10.0, 20.0}) {
        for (const Point pos : {Point{0.0, 1.0}, Point{1.0, 1.0}, Point{2.0, 1.0}}) {
            RunConfig rc = base;
            rc.gamma_th_db = -10.0;
            rc.p_interference_dbw = 10.0;
            rc.p_putx_dbw = putx_db;
            rc.layout.pu_tx_center = pos;
            rows.push_back(rc);
        }
    }
    // Mixed corners.
    {
        RunConfig rc = base;
        rc.gamma_th_db = -10.0;
        rc.p_interference_dbw = 0.0;
        rc.p_putx_dbw = -5.0;
        rows.push_back(rc);
        rc.p_interference_dbw = 20.0;
        rc.p_putx_dbw = 15.0;
        rows.push_back(rc);
        rc.p_interference_dbw = 10.0;
        rc.p_putx_dbw = 5.0;
        rc.layout.pu_tx_center = {0.5, 1.0};
        rows.push_back(rc);
    }
    return rows;
}

ValidateReport run_validate(std::int64_t trials, std::uint64_t seed, int workers,
                            const QuadratureSettings& quad) {
    ValidateReport report;
    const std::vector<RunConfig> grid = validation_grid(trials, seed, quad);
    report.metadata.emplace_back("tool", "ehrelay");
    report.metadata.emplace_back("command", "validate");
    report.metadata.emplace_back("trials", std::to_string(trials));
    report.metadata.emplace_back("base_seed", std::to_string(seed));
    report.metadata.emplace_back("rel_tol", format_exact(quad.rel_tol));
    report.metadata.emplace_back("abs_tol", format_exact(quad.abs_tol));
    report.metadata.emplace_back("criterion", "|exact - mc| <= max(0.005, 3*std_error)");

    report.rows.resize(grid.size());
    parallel_indexed(static_cast<int>(grid.size()), workers, [&](int i) {
        ValidateRow row;
        row.cfg = grid[static_cast<std::size_t>(i)];
        row.exact = std::numeric_limits<double>::quiet_NaN();
        row.mc.mean = std::numeric_limits<double>::quiet_NaN();
        try {
            const SystemParams p = make_system_params(row.cfg);
            const double gamma = row.cfg.gamma_th_linear();
            row.exact = outage_exact(gamma, p, row.cfg.quad);
            row.mc = estimate_outage(gamma, p, row.cfg.trials, row.cfg.base_seed);
            row.tolerance = std::max(0.005, 3.0 * row.mc.std_error);
            row.abs_diff = std::abs(row.exact - row.mc.mean);
            row.pass = row.abs_diff <= row.tolerance;
        } catch (const std::exception& e) {
            row.notes.push_back(e.what());
            row.pass = false;
        }
        report.rows[static_cast<std::size_t>(i)] = std::move(row);
    });
    report.all_pass = std::all_of(report.rows.begin(), report.rows.end(),
                                  [](const ValidateRow& r) { return r.pass; });
    return report;
}

AlphaScanResult alpha_scan(const RunConfig& base, ThroughputMode mode, double alpha_min,
                           double alpha_max, int steps, int workers, ThroughputFn evaluate) {
    if (!(alpha_min > 0.0) || !(alpha_max < 1.0) || !(alpha_min < alpha_max)) {
        throw ConfigError("alpha scan bounds must satisfy 0 < min < max < 1");
    }
    if (steps < 2) throw ConfigError("alpha scan needs at least 2 grid points");
    if (!evaluate) {
        evaluate = [](const RunConfig& rc, ThroughputMode m) {
            const SystemParams p = make_system_params(rc);
            auto outage = [&p, &rc](double g) { return outage_exact(g, p, rc.quad); };
            if (m == ThroughputMode::kDelaySensitive) {
                return throughput_delay_sensitive(rc.gamma_th_linear(), p, outage,
                                                  OutageSource::kExact)
                    .value;
            }
            return throughput_delay_tolerant(p, outage, rc.quad, OutageSource::kExact).value;
        };
    }

    AlphaScanResult result;
    result.mode = mode;
    result.curve.resize(static_cast<std::size_t>(steps));
    const std::vector<double> grid = linear_grid(alpha_min, alpha_max, steps);
    parallel_indexed(steps, workers, [&](int i) {
        AlphaScanPoint pt;
        pt.alpha = grid[static_cast<std::size_t>(i)];
        try {
            RunConfig rc = base;
            rc.alpha = pt.alpha;
            pt.value = evaluate(rc, mode);
            pt.ok = true;
        } catch (const std::exception& e) {
            pt.note = e.what();
        }
        result.curve[static_cast<std::size_t>(i)] = std::move(pt);
    });

    bool found = false;
    for (const AlphaScanPoint& pt : result.curve) {
        // Strict comparison keeps the smallest alpha on ties.
        if (pt.ok && (!found || pt.value > result.best_value)) {
            result.best_alpha = pt.alpha;
            result.best_value = pt.value;
            found = true;
        }
    }
    if (!found) throw NonConvergenceError("alpha scan: every grid point failed");

    result.metadata.emplace_back("tool", "ehrelay");
    result.metadata.emplace_back("command", "alpha-scan");
    result.metadata.emplace_back(
        "mode", mode == ThroughputMode::kDelaySensitive ? "delay_sensitive" : "delay_tolerant");
    result.metadata.emplace_back("alpha_min", format_exact(alpha_min));
    result.metadata.emplace_back("alpha_max", format_exact(alpha_max));
    result.metadata.emplace_back("steps", std::to_string(steps));
    result.metadata.emplace_back("best_alpha", format_exact(result.best_alpha));
    result.metadata.emplace_back("best_value", format_exact(result.best_value));
    result.metadata.emplace_back("note",
                                 "best_alpha is the grid argmax; no unique optimum is claimed");
    append_config_metadata(result.metadata, base);
    return result;
}

std::string format_sig12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.11e", v);
    return buf;
}

namespace {

void write_metadata(std::ostream& out,
                    const std::vector<std::pair<std::string, std::string>>& metadata) {
    for (const auto& [key, value] : metadata) {
        out << "# " << key << " = " << value << "\n";
    }
}

std::string cell(const std::optional<double>& v) {
    return v ? format_sig12(*v) : std::string();
}

std::string cell(double v) {
    return std::isnan(v) ? std::string() : format_sig12(v);
}

}  // namespace

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
    write_metadata(out, result.metadata);
    if (result.with_curve_column) out << "curve,";
    out << result.variable_column
        << ",p_out_exact,p_out_asymptotic,p_out_mc,mc_std_error,tau_ds_exact,tau_dt_exact,"
           "tau_ds_mc,tau_dt_mc,truncation_upper\n";
    for (const SweepRow& row : result.rows) {
        if (result.with_curve_column) out << row.curve_id << ",";
        out << row.variable_display << "," << cell(row.p_out_exact) << ","
            << cell(row.p_out_asymptotic) << "," << cell(row.p_out_mc) << ","
            << cell(row.mc_std_error) << "," << cell(row.tau_ds_exact) << ","
            << cell(row.tau_dt_exact) << "," << cell(row.tau_ds_mc) << "," << cell(row.tau_dt_mc)
            << "," << cell(row.truncation_upper) << "\n";
    }
}

void write_validate_csv(std::ostream& out, const ValidateReport& report) {
    write_metadata(out, report.metadata);
    out << "point,gamma_th_db,p_interference_dbw,p_putx_dbw,pu_tx,m_and_n,p_out_exact,p_out_mc,"
           "mc_std_error,tolerance,abs_diff,pass\n";
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const ValidateRow& row = report.rows[i];
        out << i + 1 << "," << format_exact(row.cfg.gamma_th_db) << ","
            << format_exact(row.cfg.p_interference_dbw) << ","
            << format_exact(row.cfg.p_putx_dbw) << ","
            << format_point_display(row.cfg.layout.pu_tx_center) << "," << row.cfg.m_receivers
            << "," << cell(row.exact) << "," << cell(row.mc.mean) << "," << cell(row.mc.std_error)
            << "," << cell(row.tolerance) << "," << cell(row.abs_diff) << ","
            << (row.pass ? "pass" : "FAIL") << "\n";
    }
}

void write_alpha_scan_csv(std::ostream& out, const AlphaScanResult& result) {
    write_metadata(out, result.metadata);
    out << "alpha,"
        << (result.mode == ThroughputMode::kDelaySensitive ? "tau_ds" : "tau_dt") << "\n";
    for (const AlphaScanPoint& pt : result.curve) {
        out << format_exact(pt.alpha) << "," << (pt.ok ? format_sig12(pt.value) : std::string())
            << "\n";
    }
}

}  // namespace ehrelay
