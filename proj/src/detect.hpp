#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "model.hpp"
#include "patterns.hpp"

namespace natp {

// A parametrized family of pairwise-disjoint probes indexed by j.
// kind must be FS_PROBE or FP_PROBE.
struct ProbeFamily {
    PatternKind kind;
    unsigned L;
};

// Builds the j-th member of the family.
PatternInstance make_probe(const ProbeFamily& family, std::uint64_t j,
                           std::uint64_t max_bits = kDefaultProbeBits);

// Smallest valid probe index for the family: 0 for the additive kind, 1 for
// the multiplicative kind (prime indices start at 1).
std::uint64_t first_probe_index(const ProbeFamily& family);

struct ProbeHitReport {
    PatternKind kind = PatternKind::FS_PROBE;
    unsigned L = 0;
    std::uint64_t j_begin = 0;
    std::uint64_t j_end = 0;          // requested end (exclusive)
    std::uint64_t elements_per_probe = 0;
    std::vector<std::uint64_t> hits;  // sorted j with all probe elements present
    bool truncated = false;
    std::uint64_t truncated_at = 0;   // first untested j when truncated
};

// Tests every probe j in [j_begin, j_end) for full inclusion in the model,
// via lazy membership with short-circuit on the first missing element.
// Probes past the bit budget truncate the report instead of failing it.
ProbeHitReport probe_hits(const SubsetModel& model, const ProbeFamily& family,
                          std::uint64_t j_begin, std::uint64_t j_end,
                          unsigned workers = 1,
                          std::uint64_t max_bits = kDefaultProbeBits);

// Number of pairwise-disjoint probe copies found = number of hits, since
// distinct probes of one family never share an element.
std::uint64_t disjoint_probe_count(const SubsetModel& model, const ProbeFamily& family,
                                   std::uint64_t j_begin, std::uint64_t j_end,
                                   unsigned workers = 1,
                                   std::uint64_t max_bits = kDefaultProbeBits);

// Exhaustive search for an increasing tuple (x_1 < ... < x_L) <= search_bound
// with every nonempty subset sum inside the sample. Depth-first with
// incremental sum pruning; the first witness found is the lexicographically
// least one. L is capped at 6.
std::optional<std::vector<std::uint64_t>> find_fs(const DenseSample& sample, unsigned L,
                                                  std::uint64_t search_bound);

inline constexpr unsigned kMaxFsSearchLength = 6;

struct QuadrupleCount {
    std::uint64_t N = 0;
    std::uint64_t count = 0;                                // X_N
    std::vector<std::pair<std::uint64_t, std::uint64_t>> witnesses;  // capped
    bool witnesses_truncated = false;
};

// Required sample bound for counting all ordered pairs (x, y) in [1..N]^2.
inline std::uint64_t quadruple_bound(std::uint64_t N) {
    return std::max(2 * N, N * N);
}

// X_N = #{(x, y) in [1..N]^2 : x, y, x+y, x*y all in the sample}, ordered
// pairs with x = y included. Records up to witness_cap witnessing pairs.
QuadrupleCount count_quadruples(const DenseSample& sample, std::uint64_t N,
                                std::uint64_t witness_cap = 0);

// Early-exit variant of count_quadruples > 0.
bool any_quadruple(const DenseSample& sample, std::uint64_t N);

struct MinElementResult {
    std::optional<PatternInstance> probe;  // first hit with min element > M
    std::uint64_t first_j = 0;             // first candidate index tried
    std::uint64_t attempts = 0;            // probes tested
    bool truncated = false;                // stopped on bit budget, not cap
};

// Cap so a geometric search with success probability p^R fails with
// probability about e^-50.
std::uint64_t default_attempt_cap(double p, std::uint64_t R);

// Searches j upward from the smallest index whose probe lies entirely above
// M, until a fully-included probe or the attempt cap.
MinElementResult min_element_probe(const SubsetModel& model, const ProbeFamily& family,
                                   const BigInt& M, std::uint64_t attempt_cap = 0,
                                   std::uint64_t max_bits = kDefaultProbeBits);

} // namespace natp
