#pragma once

// Counter-based random numbers (Philox4x32-10, Salmon et al. SC'11).
//
// A stream is identified by (seed, stream id). Block `i` of a stream is a
// pure function of (seed, stream, i), so any trial of a Monte Carlo campaign
// can be replayed in isolation and independently of worker scheduling.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <utility>

namespace spikelab {

class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr int kRounds = 10;

    static constexpr Counter apply(Counter ctr, Key key) noexcept
    {
        for (int r = 0; r < kRounds; ++r) {
            if (r > 0) {
                key[0] += kW0;
                key[1] += kW1;
            }
            ctr = round(ctr, key);
        }
        return ctr;
    }

private:
    static constexpr std::uint32_t kM0 = 0xD2511F53u;
    static constexpr std::uint32_t kM1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kW0 = 0x9E3779B9u;
    static constexpr std::uint32_t kW1 = 0xBB67AE85u;

    static constexpr Counter round(const Counter& c, const Key& k) noexcept
    {
        const std::uint64_t p0 = std::uint64_t{kM0} * c[0];
        const std::uint64_t p1 = std::uint64_t{kM1} * c[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }
};

/// 128 random bits produced by one Philox invocation.
using RandomBlock = std::array<std::uint32_t, 4>;

/// Two uniforms on the open interval (0, 1), 52 bits each.
inline std::pair<double, double> block_uniforms(const RandomBlock& b) noexcept
{
    constexpr double scale = 1.0 / 4503599627370496.0;  // 2^-52
    const std::uint64_t w0 = (std::uint64_t{b[0]} << 32) | b[1];
    const std::uint64_t w1 = (std::uint64_t{b[2]} << 32) | b[3];
    return {(static_cast<double>(w0 >> 12) + 0.5) * scale,
            (static_cast<double>(w1 >> 12) + 0.5) * scale};
}

/// Two independent standard normals from one block (Box-Muller).
inline std::pair<double, double> block_normals(const RandomBlock& b) noexcept
{
    const auto [u0, u1] = block_uniforms(b);
    const double radius = std::sqrt(-2.0 * std::log(u0));
    const double angle = 2.0 * std::numbers::pi * u1;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

class CounterRng {
public:
    using result_type = std::uint64_t;

    CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_(stream)
    {}

    /// Block at an absolute index; does not move the cursor.
    RandomBlock block(std::uint64_t index) const noexcept
    {
        return Philox4x32::apply({static_cast<std::uint32_t>(index),
                                  static_cast<std::uint32_t>(index >> 32),
                                  static_cast<std::uint32_t>(stream_),
                                  static_cast<std::uint32_t>(stream_ >> 32)},
                                 key_);
    }

    RandomBlock next_block() noexcept { return block(cursor_++); }

    void seek(std::uint64_t index) noexcept
    {
        cursor_ = index;
        cached_ = false;
    }
    std::uint64_t position() const noexcept { return cursor_; }
    std::uint64_t stream() const noexcept { return stream_; }

    double uniform() noexcept
    {
        if (cached_) {
            cached_ = false;
            return spare_uniform_;
        }
        const auto [u0, u1] = block_uniforms(next_block());
        spare_uniform_ = u1;
        cached_ = true;
        return u0;
    }

    /// Standard normal; consumes one block per pair of draws.
    double normal() noexcept
    {
        if (normal_cached_) {
            normal_cached_ = false;
            return spare_normal_;
        }
        const auto [z0, z1] = block_normals(next_block());
        spare_normal_ = z1;
        normal_cached_ = true;
        return z0;
    }

    result_type operator()() noexcept
    {
        const auto b = next_block();
        return (std::uint64_t{b[0]} << 32) | b[1];
    }
    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

private:
    Philox4x32::Key key_;
    std::uint64_t stream_;
    std::uint64_t cursor_ = 0;
    double spare_uniform_ = 0.0;
    double spare_normal_ = 0.0;
    bool cached_ = false;
    bool normal_cached_ = false;
};

}  // namespace spikelab
