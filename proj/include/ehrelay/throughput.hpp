#pragma once

#include <functional>

#include "ehrelay/quadrature.hpp"
#include "ehrelay/system_params.hpp"

namespace ehrelay {

enum class ThroughputMode { kDelaySensitive, kDelayTolerant };
enum class OutageSource { kExact, kAsymptotic, kMonteCarlo };

struct ThroughputResult {
    double value = 0.0;  // bits/s/Hz
    ThroughputMode mode = ThroughputMode::kDelaySensitive;
    OutageSource outage_source = OutageSource::kExact;
    double truncation_upper = 0.0;  // gamma cut-off used (delay-tolerant only)
};

// Outage probability as a function of the linear SIR threshold. Both
// fixed-rate and rate-adaptive throughput are parameterized over this, so
// the exact, asymptotic, and simulated variants share one code path.
using OutageEvaluator = std::function<double(double gamma)>;

// Fixed-rate throughput (1-alpha)/2 * log2(1+gamma_th) * (1 - P_out).
// Requires gamma_th > 0; the mode is vacuous at a zero rate.
ThroughputResult throughput_delay_sensitive(double gamma_th, const SystemParams& p,
                                            const OutageEvaluator& outage, OutageSource source);

// Rate-adaptive throughput (1-alpha)/(2 ln 2) * Int_0^U (1-P_out(x))/(1+x) dx.
// The truncation point U is found by doubling from 1 until the success
// probability 1 - P_out(U) drops below 1e-6, and is recorded in the result.
ThroughputResult throughput_delay_tolerant(const SystemParams& p, const OutageEvaluator& outage,
                                           const QuadratureSettings& quad, OutageSource source);

}  // namespace ehrelay
