#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"

namespace natp {

using BigInt = mpz_class;
using Rat = mpq_class;

inline BigInt bigint_from_dec(const std::string& dec) {
    try {
        return BigInt(dec, 10);
    } catch (const std::invalid_argument&) {
        throw domain_error("not a decimal integer: '" + dec + "'");
    }
}

inline std::string to_dec(const BigInt& v) { return v.get_str(10); }

inline std::size_t bit_length(const BigInt& v) {
    if (v == 0) return 0;
    return mpz_sizeinbase(v.get_mpz_t(), 2);
}

inline BigInt pow_u64(const BigInt& base, std::uint64_t exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exp));
    return r;
}

// Base-2^64 limbs, least significant first. v must be >= 1.
inline std::vector<std::uint64_t> limbs_u64(const BigInt& v) {
    std::vector<std::uint64_t> out((mpz_sizeinbase(v.get_mpz_t(), 2) + 63) / 64);
    std::size_t written = 0;
    mpz_export(out.data(), &written, -1, sizeof(std::uint64_t), 0, 0, v.get_mpz_t());
    out.resize(written);
    return out;
}

// Exact rational from the double's binary value.
inline Rat rat_from_double(double p) {
    Rat r;
    mpq_set_d(r.get_mpq_t(), p);
    return r;
}

inline Rat rat_pow(const Rat& base, unsigned exp) {
    Rat r(1);
    for (unsigned i = 0; i < exp; ++i) r *= base;
    return r;
}

// Nearest double (+-inf when out of range).
inline double rat_to_double(const Rat& r) { return mpq_get_d(r.get_mpq_t()); }

// log2 of a positive rational, finite even when the double conversion is not.
inline double log2_rat(const Rat& r) {
    signed long en = 0, ed = 0;
    double dn = mpz_get_d_2exp(&en, mpq_numref(r.get_mpq_t()));
    double dd = mpz_get_d_2exp(&ed, mpq_denref(r.get_mpq_t()));
    return (std::log2(dn) + static_cast<double>(en)) -
           (std::log2(dd) + static_cast<double>(ed));
}

} // namespace natp
