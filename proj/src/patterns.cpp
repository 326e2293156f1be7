#include "patterns.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "errors.hpp"
#include "primes.hpp"

namespace natp {

const char* pattern_kind_name(PatternKind kind) {
    switch (kind) {
        case PatternKind::FS_PROBE: return "fs";
        case PatternKind::FP_PROBE: return "fp";
        case PatternKind::QUADRUPLE: return "quadruple";
        case PatternKind::EXP_QUADRUPLE: return "exp";
    }
    return "?";
}

namespace {

void check_generators(const std::vector<BigInt>& xs, unsigned cap, const char* what) {
    if (xs.empty())
        throw domain_error(std::string(what) + " needs at least one generator");
    if (xs.size() > cap)
        throw domain_error(std::string(what) + " enumerates 2^" +
                           std::to_string(xs.size()) + " subsets; the cap is " +
                           std::to_string(cap) + " generators");
    for (const auto& x : xs)
        if (x <= 0) throw domain_error(std::string(what) + " generators must be positive");
    auto sorted = xs;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw domain_error(std::string(what) + " generators must be distinct");
}

std::vector<BigInt> sorted_dedup(std::vector<BigInt> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// Enumerate f over all nonempty subsets via the mask recurrence
// acc[m] = acc[m & (m-1)] op xs[ctz(m)].
template <typename Op>
std::vector<BigInt> subset_closure(const std::vector<BigInt>& xs, Op op) {
    std::size_t total = std::size_t(1) << xs.size();
    std::vector<BigInt> acc(total);
    for (std::size_t m = 1; m < total; ++m) {
        std::size_t rest = m & (m - 1);
        const BigInt& x = xs[std::countr_zero(m)];
        acc[m] = rest ? op(acc[rest], x) : x;
    }
    acc.erase(acc.begin());
    return sorted_dedup(std::move(acc));
}

} // namespace

std::vector<BigInt> fs(const std::vector<BigInt>& xs) {
    check_generators(xs, kMaxFsGenerators, "fs");
    return subset_closure(xs, [](const BigInt& a, const BigInt& b) -> BigInt { return a + b; });
}

std::vector<BigInt> fp(const std::vector<BigInt>& xs) {
    check_generators(xs, kMaxFpGenerators, "fp");
    return subset_closure(xs, [](const BigInt& a, const BigInt& b) -> BigInt { return a * b; });
}

PatternInstance fs_probe(unsigned L, std::uint64_t j, std::uint64_t max_bits) {
    if (L < 1 || L > kMaxFsGenerators)
        throw domain_error("fs_probe needs 1 <= L <= " + std::to_string(kMaxFsGenerators) +
                           ", got " + std::to_string(L));
    // Largest element is (2^L - 1) * 2^(L*j), of bit length L*j + L.
    if (j > max_bits / L || L * j + L > max_bits)
        throw resource_error("fs_probe(" + std::to_string(L) + ", " + std::to_string(j) +
                             ") needs " + std::to_string(double(L) * double(j) + L) +
                             " bits, over the " + std::to_string(max_bits) + " bit budget");
    BigInt base = BigInt(1) << (L * j);
    PatternInstance out;
    out.kind = PatternKind::FS_PROBE;
    for (unsigned i = 0; i < L; ++i) out.generators.push_back(base << i);
    std::uint64_t R = (std::uint64_t(1) << L) - 1;
    for (std::uint64_t s = 1; s <= R; ++s) out.elements.push_back(base * s);
    return out;
}

PatternInstance fp_probe(unsigned L, std::uint64_t j, std::uint64_t max_bits) {
    if (L < 1 || L > kMaxFpGenerators)
        throw domain_error("fp_probe needs 1 <= L <= " + std::to_string(kMaxFpGenerators) +
                           ", got " + std::to_string(L));
    if (j < 1) throw domain_error("fp_probe prime index starts at 1");
    BigInt q = nth_prime(j);
    std::uint64_t m = (std::uint64_t(1) << L) - 1;
    PatternInstance out;
    out.kind = PatternKind::FP_PROBE;
    BigInt cur = 1;
    for (std::uint64_t e = 1; e <= m; ++e) {
        cur *= q;
        if (bit_length(cur) > max_bits)
            throw resource_error("fp_probe(" + std::to_string(L) + ", " + std::to_string(j) +
                                 ") exceeds the " + std::to_string(max_bits) +
                                 " bit budget at exponent " + std::to_string(e));
        out.elements.push_back(cur);
    }
    for (unsigned i = 0; i < L; ++i)
        out.generators.push_back(out.elements[(std::size_t(1) << i) - 1]);
    return out;
}

PatternInstance exp_probe(std::uint64_t j, std::uint64_t max_bits) {
    if (j < 1) throw domain_error("exp_probe index starts at 1");
    // Alternating split of the odd primes 3,5,7,11,...: u_j walks 3,7,13,...
    // and v_j walks 5,11,17,..., so the two index sets never meet.
    std::uint64_t u = nth_prime(2 * j);
    std::uint64_t v = nth_prime(2 * j + 1);
    if (double(v) * std::log2(double(u)) > double(max_bits) + 64)
        throw resource_error("exp_probe(" + std::to_string(j) + "): " + std::to_string(u) +
                             "^" + std::to_string(v) + " exceeds the " +
                             std::to_string(max_bits) + " bit budget");
    BigInt power = pow_u64(BigInt(u), v);
    if (bit_length(power) > max_bits)
        throw resource_error("exp_probe(" + std::to_string(j) + "): " + std::to_string(u) +
                             "^" + std::to_string(v) + " has " +
                             std::to_string(bit_length(power)) + " bits, over the " +
                             std::to_string(max_bits) + " bit budget");
    PatternInstance out;
    out.kind = PatternKind::EXP_QUADRUPLE;
    out.generators = {BigInt(u), BigInt(v)};
    out.elements = sorted_dedup({BigInt(u), BigInt(v), BigInt(u) * v, power});
    return out;
}

PatternInstance quadruple(const BigInt& x, const BigInt& y) {
    if (x < 1 || y < 1) throw domain_error("quadruple generators must be >= 1");
    PatternInstance out;
    out.kind = PatternKind::QUADRUPLE;
    out.generators = {x, y};
    out.elements = sorted_dedup({x, y, x + y, x * y});
    return out;
}

} // namespace natp
