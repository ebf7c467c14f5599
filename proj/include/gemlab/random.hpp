#pragma once

// Counter-based seeding for reproducible parallel sampling.
//
// Sample i of a run with seed S draws from a SplitMix64 stream whose initial
// state is
//     state_i = fmix64(S + 0x9E3779B97F4A7C15 * (i + 1))      (mod 2^64)
// where fmix64 is the SplitMix64 output finalizer
//     z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
//     z ^= z >> 27; z *= 0x94D049BB133111EB;
//     z ^= z >> 31.
// Each draw advances state by 0x9E3779B97F4A7C15 and returns fmix64(state).
// Bounded integers use rejection sampling on the raw 64-bit output, so the
// streams are bit-identical across platforms and worker counts.

#include <cstdint>
#include <span>
#include <utility>

#include "gemlab/arrangement.hpp"

namespace gemlab {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

inline constexpr std::uint64_t fmix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

inline constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
    return fmix64(seed + kGoldenGamma * (index + 1));
}

class SplitMix64 {
public:
    using result_type = std::uint64_t;
    explicit constexpr SplitMix64(std::uint64_t state) : state_(state) {}
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    constexpr result_type operator()() {
        state_ += kGoldenGamma;
        return fmix64(state_);
    }

    /// Uniform integer in [0, bound), bound >= 1.
    constexpr std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
        for (;;) {
            const std::uint64_t r = (*this)();
            if (r >= threshold) return r % bound;
        }
    }

private:
    std::uint64_t state_;
};

/// Fisher-Yates: for i = size-1 down to 1, swap slot i with a uniform slot in [0, i].
inline void shuffle(std::span<Value> values, SplitMix64& rng) {
    for (std::size_t i = values.size(); i-- > 1;) {
        const auto j = static_cast<std::size_t>(rng.below(i + 1));
        std::swap(values[i], values[j]);
    }
}

inline Arrangement random_arrangement(int n, SplitMix64& rng) {
    std::vector<Value> e(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < e.size(); ++k) e[k] = static_cast<Value>(k + 1);
    shuffle(e, rng);
    return Arrangement::validate(n, std::move(e));
}

}  // namespace gemlab
