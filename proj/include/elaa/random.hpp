#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace elaa {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Output is a
/// pure function of (counter, key), so any trial can be regenerated without
/// replaying the ones before it.
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr Counter block(Counter ctr, Key key) noexcept
    {
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
            const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const auto lo0 = static_cast<std::uint32_t>(p0);
            const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const auto lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
            key[0] += 0x9E3779B9u;
            key[1] += 0xBB67AE85u;
        }
        return ctr;
    }
};

/// One independent random stream per (seed, stream) pair; draw i of the
/// stream is block i of Philox keyed by the seed.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_(stream)
    {
    }

    Philox4x32::Counter block(std::uint64_t index) const noexcept
    {
        return Philox4x32::block({static_cast<std::uint32_t>(index),
                                  static_cast<std::uint32_t>(index >> 32),
                                  static_cast<std::uint32_t>(stream_),
                                  static_cast<std::uint32_t>(stream_ >> 32)},
                                 key_);
    }

    /// Circularly symmetric CN(0, 1) sample: real and imaginary parts each
    /// have variance 1/2. Box-Muller on the two 53-bit uniforms of one block.
    std::complex<double> complex_normal(std::uint64_t index) const noexcept
    {
        const auto b = block(index);
        const double u1 = 1.0 - to_unit(b[0], b[1]);  // (0, 1]
        const double u2 = to_unit(b[2], b[3]);        // [0, 1)
        const double radius = std::sqrt(-std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

    static double to_unit(std::uint32_t hi, std::uint32_t lo) noexcept
    {
        const std::uint64_t bits = ((std::uint64_t{hi} << 32) | lo) >> 11;
        return static_cast<double>(bits) * 0x1.0p-53;
    }

private:
    Philox4x32::Key key_;
    std::uint64_t stream_;
};

}  // namespace elaa
