#include "primes.hpp"

#include <algorithm>
#include <mutex>
#include <string>

#include "errors.hpp"

namespace natp {

void PrimeSieve::extend_limit(std::uint64_t limit) {
    if (limit <= sieved_to_) return;
    if (limit > kMaxExtent)
        throw resource_error("prime sieve extent " + std::to_string(limit) +
                             " exceeds limit " + std::to_string(kMaxExtent));

    // Sieve the segment (sieved_to_, limit] using the primes found so far;
    // odd composites only, trial primes up to sqrt(limit).
    std::uint64_t lo = sieved_to_ + 1;
    std::vector<bool> composite(limit - lo + 1, false);
    for (std::uint64_t d = 2; d * d <= limit; ++d) {
        std::uint64_t first = std::max(d * d, (lo + d - 1) / d * d);
        for (std::uint64_t m = first; m <= limit; m += d) composite[m - lo] = true;
    }
    for (std::uint64_t v = lo; v <= limit; ++v)
        if (v >= 2 && !composite[v - lo]) primes_.push_back(v);
    sieved_to_ = limit;
}

void PrimeSieve::extend_until(std::size_t count) {
    while (primes_.size() < count) {
        std::uint64_t next = std::max<std::uint64_t>(64, sieved_to_ * 2);
        extend_limit(std::min(next, kMaxExtent));
        if (sieved_to_ >= kMaxExtent && primes_.size() < count)
            throw resource_error("prime sieve cannot reach prime #" + std::to_string(count) +
                                 " within extent " + std::to_string(kMaxExtent));
    }
}

std::uint64_t PrimeSieve::nth_prime(std::size_t index) {
    if (index == 0) throw domain_error("prime index is 1-based");
    extend_until(index);
    return primes_[index - 1];
}

std::size_t PrimeSieve::first_index_greater(std::uint64_t bound) {
    if (bound >= kMaxExtent)
        throw resource_error("prime bound " + std::to_string(bound) + " exceeds sieve extent " +
                             std::to_string(kMaxExtent));
    extend_limit(std::max<std::uint64_t>(64, bound + 1));
    while (primes_.empty() || primes_.back() <= bound)
        extend_limit(std::min(sieved_to_ * 2, kMaxExtent));
    auto it = std::upper_bound(primes_.begin(), primes_.end(), bound);
    return static_cast<std::size_t>(it - primes_.begin()) + 1;
}

namespace {
std::mutex g_sieve_mutex;
PrimeSieve g_sieve;
} // namespace

std::uint64_t nth_prime(std::size_t index) {
    std::lock_guard lock(g_sieve_mutex);
    return g_sieve.nth_prime(index);
}

std::size_t first_prime_index_greater(std::uint64_t bound) {
    std::lock_guard lock(g_sieve_mutex);
    return g_sieve.first_index_greater(bound);
}

} // namespace natp
