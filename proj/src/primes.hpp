#pragma once

#include <cstdint>
#include <vector>

namespace natp {

// Incremental prime sieve. Extends itself by segment doubling; all lookups
// are 1-based (nth_prime(1) == 2).
class PrimeSieve {
public:
    std::uint64_t nth_prime(std::size_t index);

    // Index i (1-based) of the first prime with nth_prime(i) > bound.
    // Throws resource_error past the configured extent.
    std::size_t first_index_greater(std::uint64_t bound);

    // Largest value the sieve is willing to scan to. Bounds memory and the
    // cost of first_index_greater on adversarial inputs.
    static constexpr std::uint64_t kMaxExtent = 1ull << 28;

private:
    void extend_until(std::size_t count);
    void extend_limit(std::uint64_t limit);

    std::vector<std::uint64_t> primes_;
    std::uint64_t sieved_to_ = 1;
};

// Process-wide shared sieve (thread-safe).
std::uint64_t nth_prime(std::size_t index);
std::size_t first_prime_index_greater(std::uint64_t bound);

} // namespace natp
