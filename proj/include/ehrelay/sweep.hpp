#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ehrelay/config.hpp"
#include "ehrelay/montecarlo.hpp"
#include "ehrelay/quadrature.hpp"
#include "ehrelay/system_params.hpp"
#include "ehrelay/throughput.hpp"

namespace ehrelay {

struct EngineSet {
    bool exact = true;
    bool asymptotic = false;
    bool monte_carlo = true;
};

EngineSet parse_engines(const std::string& spec);
std::string engines_to_string(const EngineSet& engines);

// One fully specified evaluation point in display units (dB / dBW where
// the suffix says so). Conversion to linear watts happens exactly once,
// inside make_system_params() / the *_linear accessors.
struct RunConfig {
    double alpha = 0.5;
    double eta = 0.8;
    double gamma_th_db = -10.0;
    double p_interference_dbw = 10.0;
    double p_putx_dbw = 0.0;
    int m_receivers = 3;
    int n_transmitters = 3;
    double path_loss_exponent = 3.0;
    NodeLayout layout{};
    EngineSet engines{};
    bool throughput_columns = false;
    std::int64_t trials = 1'000'000;
    std::uint64_t base_seed = 1729;
    QuadratureSettings quad{};

    double gamma_th_linear() const;
    double p_interference_watts() const;
    double p_putx_watts() const;
};

double db_to_linear(double db);

// Builds a RunConfig from parsed configuration text. path_loss_exponent
// is mandatory: the d^(-m) exponent is a modeling choice the caller must
// own, so it never defaults silently.
RunConfig run_config_from(const ConfigMap& cfg);
// The fully resolved, round-trippable form of a RunConfig.
ConfigMap to_config(const RunConfig& rc);
SystemParams make_system_params(const RunConfig& rc);

enum class SweepVariable {
    kInterferenceDbw,
    kPuTxPowerDbw,
    kMandN,
    kAlpha,
    kGammaThDb,
    kPuTxPosition,
};

SweepVariable parse_sweep_variable(const std::string& name);
std::string sweep_variable_name(SweepVariable v);

struct SweepSpec {
    SweepVariable variable = SweepVariable::kInterferenceDbw;
    double start = -10.0;
    double stop = 30.0;
    int steps = 21;
    std::vector<Point> positions;  // kPuTxPosition only
    RunConfig base;
};

SweepSpec sweep_spec_from(const ConfigMap& cfg);

struct SweepRow {
    std::string curve_id;
    std::string variable_display;
    std::optional<double> p_out_exact;
    std::optional<double> p_out_asymptotic;
    std::optional<double> p_out_mc;
    std::optional<double> mc_std_error;
    std::optional<double> tau_ds_exact;
    std::optional<double> tau_dt_exact;
    std::optional<double> tau_ds_mc;
    std::optional<double> tau_dt_mc;
    std::optional<double> truncation_upper;
    std::vector<std::string> notes;  // per-field engine failures
};

// Evaluates every requested engine at one point. Engine failures are
// recorded in `notes` and leave their fields empty; the row is still
// produced.
SweepRow run_point(const RunConfig& rc);

struct SweepResult {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::string variable_column = "value";
    bool with_curve_column = false;
    std::vector<SweepRow> rows;
    bool any_engine_error = false;
};

SweepResult run_sweep(const SweepSpec& spec, int workers = 1);

struct PresetOverrides {
    std::optional<std::int64_t> trials;
    std::optional<std::uint64_t> seed;
    std::optional<QuadratureSettings> quad;
    std::optional<EngineSet> engines;
};

// Reconstructions of the published parameter studies (ids fig3..fig9).
// Axis grids and legend sets the source text does not spell out are
// frozen here and labeled as reconstructions in the output metadata.
SweepResult figure_preset(const std::string& id, const PresetOverrides& overrides = {},
                          int workers = 1);

struct ValidateRow {
    RunConfig cfg;
    double exact = 0.0;
    MonteCarloEstimate mc;
    double tolerance = 0.0;
    double abs_diff = 0.0;
    bool pass = false;
    std::vector<std::string> notes;
};

struct ValidateReport {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<ValidateRow> rows;
    bool all_pass = false;
};

// The 30-point cross-validation grid spanning the figure configurations.
std::vector<RunConfig> validation_grid(std::int64_t trials, std::uint64_t seed,
                                       const QuadratureSettings& quad);

// Runs the grid and checks |exact - MC| <= max(0.005, 3 std errors) at
// every point.
ValidateReport run_validate(std::int64_t trials, std::uint64_t seed, int workers,
                            const QuadratureSettings& quad);

struct AlphaScanPoint {
    double alpha = 0.0;
    double value = 0.0;
    bool ok = false;
    std::string note;
};

struct AlphaScanResult {
    ThroughputMode mode = ThroughputMode::kDelayTolerant;
    std::vector<AlphaScanPoint> curve;
    double best_alpha = 0.0;
    double best_value = 0.0;
    std::vector<std::pair<std::string, std::string>> metadata;
};

// Grid scan of throughput over the harvesting fraction. Reports the grid
// argmax (ties broken toward the smallest alpha) without claiming a
// unique optimum. `evaluate` is injectable for testing; the default uses
// the exact outage engine.
using ThroughputFn = std::function<double(const RunConfig&, ThroughputMode)>;
AlphaScanResult alpha_scan(const RunConfig& base, ThroughputMode mode, double alpha_min,
                           double alpha_max, int steps, int workers,
                           ThroughputFn evaluate = nullptr);

// CSV emission. Floating-point fields are written with 12 significant
// digits so files re-parse to the emitted values.
std::string format_sig12(double v);
void write_sweep_csv(std::ostream& out, const SweepResult& result);
void write_validate_csv(std::ostream& out, const ValidateReport& report);
void write_alpha_scan_csv(std::ostream& out, const AlphaScanResult& result);

}  // namespace ehrelay
