#include "ehrelay/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "ehrelay/errors.hpp"
#include "ehrelay/rng.hpp"

namespace ehrelay {

ChannelSample sample_network(const SystemParams& p, std::uint64_t trial_index,
                             std::uint64_t base_seed) {
    CounterRng rng(base_seed, trial_index);
    ChannelSample s{};
    s.x1 = rng.next_exponential(p.channel.lambda1);
    s.x2 = rng.next_exponential(p.channel.lambda2);

    auto max_of = [&rng](int count, double mean) {
        double best = 0.0;
        for (int i = 0; i < count; ++i) best = std::max(best, rng.next_exponential(mean));
        return best;
    };
    auto sum_of = [&rng](int count, double mean) {
        double total = 0.0;
        for (int i = 0; i < count; ++i) total += rng.next_exponential(mean);
        return total;
    };

    s.y1 = max_of(p.m_receivers, p.channel.omega1);
    s.y2 = max_of(p.m_receivers, p.channel.omega2);
    s.z1 = p.p_putx * sum_of(p.n_transmitters, p.channel.nu1);
    s.z2 = p.p_putx * sum_of(p.n_transmitters, p.channel.nu2);
    s.z3 = p.p_putx * sum_of(p.n_transmitters, p.channel.nu3);
    return s;
}

double harvested_energy_source(const ChannelSample& s, const SystemParams& p) {
    return p.eta * p.alpha * s.z1;
}

double harvested_energy_relay(const ChannelSample& s, const SystemParams& p) {
    return p.eta * p.alpha * s.z2;
}

double transmit_power_source(const ChannelSample& s, const SystemParams& p) {
    return std::min(p.rho() * s.z1, p.p_interference / s.y1);
}

double transmit_power_relay(const ChannelSample& s, const SystemParams& p) {
    return std::min(p.rho() * s.z2, p.p_interference / s.y2);
}

SirPair sir(const ChannelSample& s, const SystemParams& p) {
    if (!(s.z2 > 0.0) || !(s.z3 > 0.0)) {
        throw ConfigError("sir: degenerate sample with zero aggregate interference power");
    }
    return {transmit_power_source(s, p) * s.x1 / s.z2,
            transmit_power_relay(s, p) * s.x2 / s.z3};
}

namespace {

constexpr std::int64_t kChunk = 8192;

// Evaluates `per_trial` for every trial index and reduces chunk sums in
// index order. Chunk boundaries are fixed by trial index, never by
// worker, which keeps floating-point sums bit-identical for any worker
// count.
template <class PerTrial>
std::pair<double, double> chunked_reduce(std::int64_t trials, int workers, PerTrial per_trial) {
    const std::int64_t n_chunks = (trials + kChunk - 1) / kChunk;
    std::vector<double> sums(static_cast<std::size_t>(n_chunks), 0.0);
    std::vector<double> sums_sq(static_cast<std::size_t>(n_chunks), 0.0);

    std::atomic<std::int64_t> next_chunk{0};
    auto run = [&] {
        for (;;) {
            const std::int64_t c = next_chunk.fetch_add(1);
            if (c >= n_chunks) return;
            const std::int64_t begin = c * kChunk;
            const std::int64_t end = std::min(trials, begin + kChunk);
            double sum = 0.0;
            double sum_sq = 0.0;
            for (std::int64_t t = begin; t < end; ++t) {
                const double v = per_trial(static_cast<std::uint64_t>(t));
                sum += v;
                sum_sq += v * v;
            }
            sums[static_cast<std::size_t>(c)] = sum;
            sums_sq[static_cast<std::size_t>(c)] = sum_sq;
        }
    };

    if (workers <= 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(run);
        for (auto& th : pool) th.join();
    }

    double total = 0.0;
    double total_sq = 0.0;
    for (std::int64_t c = 0; c < n_chunks; ++c) {
        total += sums[static_cast<std::size_t>(c)];
        total_sq += sums_sq[static_cast<std::size_t>(c)];
    }
    return {total, total_sq};
}

void require_trials(std::int64_t trials) {
    if (trials < 1000) {
        throw ConfigError("Monte Carlo estimates need at least 1000 trials for a usable "
                          "standard error");
    }
}

}  // namespace

MonteCarloEstimate estimate_outage(double gamma_th, const SystemParams& p, std::int64_t trials,
                                   std::uint64_t base_seed, int workers) {
    if (!(gamma_th >= 0.0)) throw std::invalid_argument("SIR threshold must be >= 0");
    require_trials(trials);
    auto per_trial = [&](std::uint64_t t) {
        const ChannelSample s = sample_network(p, t, base_seed);
        const SirPair g = sir(s, p);
        return std::min(g.at_relay, g.at_destination) < gamma_th ? 1.0 : 0.0;
    };
    const auto [count, count_sq] = chunked_reduce(trials, workers, per_trial);
    (void)count_sq;
    MonteCarloEstimate est;
    est.trials = trials;
    est.seed = base_seed;
    est.mean = count / static_cast<double>(trials);
    est.std_error = std::sqrt(est.mean * (1.0 - est.mean) / static_cast<double>(trials));
    return est;
}

MonteCarloEstimate estimate_ergodic_capacity(const SystemParams& p, std::int64_t trials,
                                             std::uint64_t base_seed, int workers) {
    require_trials(trials);
    auto per_trial = [&](std::uint64_t t) {
        const ChannelSample s = sample_network(p, t, base_seed);
        const SirPair g = sir(s, p);
        return std::log2(1.0 + std::min(g.at_relay, g.at_destination));
    };
    const auto [sum, sum_sq] = chunked_reduce(trials, workers, per_trial);
    MonteCarloEstimate est;
    est.trials = trials;
    est.seed = base_seed;
    est.mean = sum / static_cast<double>(trials);
    const double variance =
        std::max(0.0, sum_sq / static_cast<double>(trials) - est.mean * est.mean);
    est.std_error = std::sqrt(variance / static_cast<double>(trials));
    return est;
}

}  // namespace ehrelay
