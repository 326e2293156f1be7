#pragma once

#include <cmath>
#include <cstdint>
#include <span>

namespace natp {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// Standard splitmix64 finalizer.
inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
    std::uint64_t z = x + kGolden;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Folds base-2^64 limbs (least significant first) into a 64-bit state.
// The resulting finalized word is the membership uniform for that integer.
inline constexpr std::uint64_t fold_limbs(std::uint64_t seed, std::span<const std::uint64_t> limbs) {
    std::uint64_t s = seed;
    for (std::uint64_t limb : limbs) {
        s = splitmix64(s ^ (limb * kGolden));
    }
    return splitmix64(s);
}

inline constexpr std::uint64_t fold_u64(std::uint64_t seed, std::uint64_t value) {
    return splitmix64(splitmix64(seed ^ (value * kGolden)));
}

// Threshold T with z < T  <=>  z / 2^64 < p, for p in (0,1).
// Exact: p*2^64 needs at most 53 significant bits, which the x87 long
// double carries without rounding.
inline std::uint64_t uniform_threshold(double p) {
    long double scaled = static_cast<long double>(p) * 18446744073709551616.0L;
    return static_cast<std::uint64_t>(std::ceil(scaled));
}

// Small deterministic counter stream (splitmix64 sequence).
class SplitMixStream {
public:
    explicit SplitMixStream(std::uint64_t state) : state_(state) {}

    std::uint64_t next() {
        state_ += kGolden;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    bool next_bernoulli(std::uint64_t threshold) { return next() < threshold; }

private:
    std::uint64_t state_;
};

} // namespace natp
