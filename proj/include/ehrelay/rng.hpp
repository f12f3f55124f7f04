#pragma once

#include <array>
#include <cstdint>

namespace ehrelay {

// Counter-based generator (Philox 4x32-10, Salmon et al. SC'11).
//
// A stream is identified by (seed, stream_id). Values within a stream are
// indexed by a 64-bit block counter, so the sequence produced for a given
// (seed, stream_id) never depends on how work is partitioned across
// threads, and distinct stream ids can never overlap.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream_id) noexcept;

    std::uint64_t next_u64() noexcept;

    // Uniform in [0, 1), 53 random bits.
    double next_unit() noexcept;

    // Inverse-CDF exponential with the given mean.
    double next_exponential(double mean) noexcept;

    // Zero-mean normal via Box-Muller.
    double next_normal(double stddev) noexcept;

private:
    void refill() noexcept;

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint64_t block_counter_ = 0;
    std::array<std::uint32_t, 4> block_{};
    unsigned block_pos_ = 4;  // empty buffer; first use triggers refill
};

}  // namespace ehrelay
