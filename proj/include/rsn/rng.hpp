// Seedable, splittable random streams.
//
// Every random draw in the library flows from a Stream. A stream is a
// xoshiro256** generator whose 256-bit state is filled by SplitMix64 from a
// key that mixes (seed, index). Parallel work item i always uses
// Stream(seed, i), so results never depend on how items are scheduled.

#ifndef RSN_RNG_HPP
#define RSN_RNG_HPP

#include <array>
#include <bit>
#include <cstdint>

namespace rsn {

/// SplitMix64 finalizer (Steele, Lea, Flood). Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * UINT64_C(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)) * UINT64_C(0x94D049BB133111EB);
    return z ^ (z >> 31);
}

class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t state) noexcept : state_{state} {}
    constexpr std::uint64_t next() noexcept {
        state_ += UINT64_C(0x9E3779B97F4A7C15);
        return mix64(state_);
    }

private:
    std::uint64_t state_;
};

/// xoshiro256** with a documented split rule.
///
/// Split rule: the key for (seed, index) is
///   mix64(seed) ^ mix64(index ^ 0xD1B54A32D192ED03)
/// and the four state words are the first four SplitMix64 outputs from that
/// key. The rule is part of the reproducibility contract of every CLI run.
class Stream {
public:
    using result_type = std::uint64_t;

    constexpr Stream(std::uint64_t seed, std::uint64_t index) noexcept {
        SplitMix64 sm{mix64(seed) ^ mix64(index ^ UINT64_C(0xD1B54A32D192ED03))};
        for (auto& w : s_) w = sm.next();
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    constexpr result_type operator()() noexcept {
        const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = std::rotl(s_[3], 45);
        return result;
    }

    /// Uniform integer in [0, bound), bound > 0. Lemire's multiply-shift
    /// with rejection, so the result is exactly uniform and platform-stable.
    std::uint64_t below(std::uint64_t bound) noexcept {
        unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<unsigned __int128>((*this)()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    /// Derive an independent child stream (used when one work item needs
    /// several sub-streams).
    Stream split(std::uint64_t child) noexcept { return Stream{(*this)(), child}; }

private:
    std::array<std::uint64_t, 4> s_{};
};

/// Fresh seed from the OS entropy source.
std::uint64_t entropy_seed();

}  // namespace rsn

#endif  // RSN_RNG_HPP
