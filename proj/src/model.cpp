#include "model.hpp"

#include <bit>
#include <stdexcept>
#include <string>

#include "errors.hpp"

namespace natp {

SubsetModel::SubsetModel(double p, std::uint64_t seed) : p_(p), seed_(seed) {
    if (!(p > 0.0) || !(p < 1.0))
        throw domain_error("density must lie strictly between 0 and 1, got " +
                           std::to_string(p));
    threshold_ = uniform_threshold(p);
}

std::uint64_t SubsetModel::membership_word(std::uint64_t n) const {
    if (n == 0) throw domain_error("membership is defined for n >= 1");
    return fold_u64(seed_, n);
}

std::uint64_t SubsetModel::membership_word(const BigInt& n) const {
    if (n <= 0) throw domain_error("membership is defined for n >= 1");
    // Walk GMP limbs in place; they are exactly the base-2^64 digits here.
    static_assert(GMP_NUMB_BITS == 64 && GMP_NAIL_BITS == 0,
                  "limb walk needs 64-bit nail-free limbs");
    const auto* z = n.get_mpz_t();
    std::size_t count = mpz_size(z);
    std::uint64_t s = seed_;
    for (std::size_t i = 0; i < count; ++i)
        s = splitmix64(s ^ (static_cast<std::uint64_t>(
                               mpz_getlimbn(z, static_cast<mp_size_t>(i))) *
                           kGolden));
    return splitmix64(s);
}

bool SubsetModel::contains(std::uint64_t n) const {
    return membership_word(n) < threshold_;
}

bool SubsetModel::contains(const BigInt& n) const {
    return membership_word(n) < threshold_;
}

DenseSample SubsetModel::materialize(std::uint64_t bound,
                                     std::uint64_t memory_budget_bytes) const {
    if (bound == 0) throw domain_error("materialize needs a bound >= 1");
    std::uint64_t nwords = (bound + 63) / 64;
    if (nwords > memory_budget_bytes / 8)
        throw resource_error("materializing [1.." + std::to_string(bound) +
                             "] needs " + std::to_string(nwords * 8) +
                             " bytes, over the " +
                             std::to_string(memory_budget_bytes) + " byte budget");
    std::vector<std::uint64_t> words(nwords, 0);
    for (std::uint64_t n = 1; n <= bound; ++n)
        if (contains(n)) words[(n - 1) >> 6] |= 1ull << ((n - 1) & 63);
    return DenseSample(bound, std::move(words));
}

std::uint64_t DenseSample::popcount() const {
    std::uint64_t total = 0;
    for (auto w : words_) total += std::popcount(w);
    return total;
}

DenseSample DenseSample::from_bits(const std::vector<bool>& bits) {
    std::uint64_t bound = bits.size();
    std::vector<std::uint64_t> words((bound + 63) / 64, 0);
    for (std::uint64_t i = 0; i < bound; ++i)
        if (bits[i]) words[i >> 6] |= 1ull << (i & 63);
    return DenseSample(bound, std::move(words));
}

} // namespace natp
