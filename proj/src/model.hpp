#pragma once

#include <cstdint>
#include <vector>

#include "bigint.hpp"
#include "hash.hpp"

namespace natp {

class DenseSample;

// Bernoulli(p) random subset of the naturals, fully determined by (p, seed).
// Membership of n is a pure hash of (seed, n), so queries work at any
// magnitude without materializing anything.
class SubsetModel {
public:
    SubsetModel(double p, std::uint64_t seed);

    double p() const { return p_; }
    std::uint64_t seed() const { return seed_; }

    bool contains(std::uint64_t n) const;
    bool contains(const BigInt& n) const;

    // Finalized membership word for n; compared against threshold().
    std::uint64_t membership_word(std::uint64_t n) const;
    std::uint64_t membership_word(const BigInt& n) const;
    std::uint64_t threshold() const { return threshold_; }

    static constexpr std::uint64_t kDefaultMemoryBudget = 1ull << 30;

    DenseSample materialize(std::uint64_t bound,
                            std::uint64_t memory_budget_bytes = kDefaultMemoryBudget) const;

private:
    double p_;
    std::uint64_t seed_;
    std::uint64_t threshold_;
};

// Bit vector over [1..bound] agreeing with the parent model's lazy queries.
class DenseSample {
public:
    DenseSample(std::uint64_t bound, std::vector<std::uint64_t> words)
        : bound_(bound), words_(std::move(words)) {}

    std::uint64_t bound() const { return bound_; }

    bool test(std::uint64_t n) const {
        return (words_[(n - 1) >> 6] >> ((n - 1) & 63)) & 1u;
    }

    std::uint64_t popcount() const;

    static DenseSample from_bits(const std::vector<bool>& bits);  // bits[0] is n=1

private:
    std::uint64_t bound_;
    std::vector<std::uint64_t> words_;
};

} // namespace natp
