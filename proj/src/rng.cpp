#include "ehrelay/rng.hpp"

#include <cmath>

namespace ehrelay {

namespace {

constexpr std::uint32_t kMulA = 0xD2511F53u;
constexpr std::uint32_t kMulB = 0xCD9E8D57u;
constexpr std::uint32_t kWeylA = 0x9E3779B9u;
constexpr std::uint32_t kWeylB = 0xBB67AE85u;

constexpr std::uint32_t lo32(std::uint64_t v) { return static_cast<std::uint32_t>(v); }
constexpr std::uint32_t hi32(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream_id) noexcept
    : key_{lo32(seed), hi32(seed)}, stream_(stream_id) {}

void CounterRng::refill() noexcept {
    // Counter layout: words 0..1 index the block within the stream,
    // words 2..3 carry the stream id.
    std::array<std::uint32_t, 4> ctr = {lo32(block_counter_), hi32(block_counter_),
                                        lo32(stream_), hi32(stream_)};
    std::array<std::uint32_t, 2> key = key_;
    for (int round = 0; round < 10; ++round) {
        if (round != 0) {
            key[0] += kWeylA;
            key[1] += kWeylB;
        }
        const std::uint64_t prod0 = static_cast<std::uint64_t>(kMulA) * ctr[0];
        const std::uint64_t prod1 = static_cast<std::uint64_t>(kMulB) * ctr[2];
        ctr = {hi32(prod1) ^ ctr[1] ^ key[0], lo32(prod1),
               hi32(prod0) ^ ctr[3] ^ key[1], lo32(prod0)};
    }
    block_ = ctr;
    ++block_counter_;
    block_pos_ = 0;
}

std::uint64_t CounterRng::next_u64() noexcept {
    if (block_pos_ >= 4) refill();
    const std::uint64_t lo = block_[block_pos_];
    const std::uint64_t hi = block_[block_pos_ + 1];
    block_pos_ += 2;
    return (hi << 32) | lo;
}

double CounterRng::next_unit() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::next_exponential(double mean) noexcept {
    // u < 1 always, so log1p(-u) is finite.
    return -mean * std::log1p(-next_unit());
}

double CounterRng::next_normal(double stddev) noexcept {
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double radius = std::sqrt(-2.0 * std::log1p(-u1));
    return stddev * radius * std::cos(6.283185307179586477 * u2);
}

}  // namespace ehrelay
