#pragma once

#include <cstdint>
#include <vector>

#include "bigint.hpp"

namespace natp {

enum class PatternKind { FS_PROBE, FP_PROBE, QUADRUPLE, EXP_QUADRUPLE };

const char* pattern_kind_name(PatternKind kind);

// A concrete pattern occurrence: the generators it was built from and the
// full (sorted, deduplicated) element set whose joint membership defines the
// inclusion event. Generators are sorted except for QUADRUPLE, where the
// ordered pair (x, y) is preserved.
struct PatternInstance {
    PatternKind kind;
    std::vector<BigInt> generators;
    std::vector<BigInt> elements;
};

inline constexpr std::uint64_t kDefaultProbeBits = 1u << 20;
inline constexpr std::uint64_t kDefaultExpBits = 16384;
inline constexpr unsigned kMaxFsGenerators = 20;
inline constexpr unsigned kMaxFpGenerators = 12;

// Nonempty subset sums / products of distinct positive integers.
std::vector<BigInt> fs(const std::vector<BigInt>& xs);
std::vector<BigInt> fp(const std::vector<BigInt>& xs);

// Additive probe: generators 2^(L*j) * {1,2,...,2^(L-1)}, whose subset sums
// are exactly {s * 2^(L*j) : 1 <= s <= 2^L - 1}.
PatternInstance fs_probe(unsigned L, std::uint64_t j,
                         std::uint64_t max_bits = kDefaultProbeBits);

// Multiplicative probe on the j-th prime q: generators q^(2^(i-1)),
// elements {q^1, ..., q^(2^L - 1)}.
PatternInstance fp_probe(unsigned L, std::uint64_t j,
                         std::uint64_t max_bits = kDefaultProbeBits);

// Exponential quadruple {u, v, u*v, u^v} on the j-th pair of an alternating
// split of the odd primes: u_j = 3,7,13,..., v_j = 5,11,17,...
PatternInstance exp_probe(std::uint64_t j,
                          std::uint64_t max_bits = kDefaultExpBits);

// Sum-product quadruple {x, y, x+y, x*y}, coincident values collapsed.
PatternInstance quadruple(const BigInt& x, const BigInt& y);

} // namespace natp
