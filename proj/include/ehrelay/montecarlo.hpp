#pragma once

#include <cstdint>

#include "ehrelay/system_params.hpp"

namespace ehrelay {

// One realization of every fading aggregate in the model.
struct ChannelSample {
    double x1;  // SS->SR information link gain
    double x2;  // SR->SD information link gain
    double y1;  // strongest SS-side gain toward any PU receiver (max of M)
    double y2;  // strongest SR-side gain toward any PU receiver (max of M)
    double z1;  // aggregate PU power received at SS (sum of N, in W)
    double z2;  // aggregate PU power received at SR
    double z3;  // aggregate PU power received at SD
};

struct SirPair {
    double at_relay;
    double at_destination;
};

struct MonteCarloEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
};

// Draws one trial. The generator stream is derived from (base_seed,
// trial_index) alone, so a given trial produces the same sample no
// matter how trials are partitioned across workers. Draw order is fixed:
// x1, x2, the M draws behind y1, the M behind y2, then the N draws
// behind each of z1, z2, z3.
ChannelSample sample_network(const SystemParams& p, std::uint64_t trial_index,
                             std::uint64_t base_seed);

// Deterministic functions of a sample: harvested energy per unit slot
// duration and the resulting constrained transmit powers.
double harvested_energy_source(const ChannelSample& s, const SystemParams& p);
double harvested_energy_relay(const ChannelSample& s, const SystemParams& p);
double transmit_power_source(const ChannelSample& s, const SystemParams& p);
double transmit_power_relay(const ChannelSample& s, const SystemParams& p);

// Per-hop SIR of one trial. A zero aggregate interference power is
// rejected rather than read as infinite SIR.
SirPair sir(const ChannelSample& s, const SystemParams& p);

// Probability that either hop's SIR falls below gamma_th. Estimates are
// bit-identical for a fixed (base_seed, trials) across any worker count:
// trials are reduced in fixed-size chunks combined in index order.
MonteCarloEstimate estimate_outage(double gamma_th, const SystemParams& p, std::int64_t trials,
                                   std::uint64_t base_seed, int workers = 1);

// Sample mean of log2(1 + min per-hop SIR). Callers scale by (1-alpha)/2
// to obtain the delay-tolerant throughput.
MonteCarloEstimate estimate_ergodic_capacity(const SystemParams& p, std::int64_t trials,
                                             std::uint64_t base_seed, int workers = 1);

}  // namespace ehrelay
