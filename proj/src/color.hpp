#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bigint.hpp"

namespace natp {

struct Coloring {
    std::uint64_t N = 0;
    unsigned c = 2;
    std::vector<std::uint8_t> colors;  // colors[i] is the color of i+1

    std::uint8_t color_of(std::uint64_t n) const { return colors[n - 1]; }
};

inline constexpr unsigned kMaxColors = 256;

// Independent uniform colors from the membership hash under a distinct
// derivation tag, so colorings never correlate with subset membership.
Coloring random_coloring(std::uint64_t N, unsigned c, std::uint64_t seed);

struct MonoFsWitness {
    std::vector<std::uint64_t> xs;  // increasing, with every subset sum <= N
    std::uint8_t color = 0;
};

// Lexicographically least increasing tuple whose full subset-sum closure is
// one color inside [1..N]. Depth-first with incremental pruning; L <= 6.
std::optional<MonoFsWitness> find_mono_fs(const Coloring& coloring, unsigned L);

struct MonoQuadruple {
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    std::uint8_t color = 0;
};

// Least ordered pair (x, y), both sums in range, whose distinct-element
// quadruple is monochromatic. strict additionally demands all four values
// distinct (x, y >= 2 and x != y), the deterministic-literature convention.
std::optional<MonoQuadruple> find_mono_quadruple(const Coloring& coloring,
                                                 bool strict = false);

struct ScanResult {
    std::uint64_t N = 0;
    bool strict = false;
    bool witness_found = false;           // some 2-coloring avoids the pattern
    std::vector<std::uint8_t> coloring;   // the avoiding coloring when found
    std::uint64_t nodes = 0;              // assignments explored, deterministic
    std::uint64_t constraint_count = 0;   // deduplicated element sets
};

inline constexpr std::uint64_t kMaxScanN = 30;

// Decides by backtracking whether some 2-coloring of [1..N] avoids every
// monochromatic quadruple, assigning the most-constrained positions first
// and fixing the first position's color by complement symmetry.
ScanResult exhaustive_2coloring_scan(std::uint64_t N, bool strict = false);

struct HindmanSequence {
    bool found = false;
    std::uint8_t color = 0;
    std::vector<BigInt> ys;  // monochromatic-FS witness, ready as weights
};

// find_mono_fs witness packaged for the weighted-sum simulator.
HindmanSequence hindman_sequence(const Coloring& coloring, unsigned L);

} // namespace natp
