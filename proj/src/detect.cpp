#include "detect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "errors.hpp"
#include "parallel.hpp"
#include "primes.hpp"

namespace natp {

namespace {

void check_family(const ProbeFamily& family) {
    if (family.kind != PatternKind::FS_PROBE && family.kind != PatternKind::FP_PROBE)
        throw domain_error("probe families are the additive and multiplicative kinds");
    unsigned cap = family.kind == PatternKind::FS_PROBE ? kMaxFsGenerators : kMaxFpGenerators;
    if (family.L < 1 || family.L > cap)
        throw domain_error("probe family needs 1 <= L <= " + std::to_string(cap) +
                           ", got " + std::to_string(family.L));
}

bool probe_included(const SubsetModel& model, const PatternInstance& probe) {
    for (const auto& e : probe.elements)
        if (!model.contains(e)) return false;
    return true;
}

} // namespace

PatternInstance make_probe(const ProbeFamily& family, std::uint64_t j, std::uint64_t max_bits) {
    check_family(family);
    return family.kind == PatternKind::FS_PROBE ? fs_probe(family.L, j, max_bits)
                                                : fp_probe(family.L, j, max_bits);
}

std::uint64_t first_probe_index(const ProbeFamily& family) {
    check_family(family);
    return family.kind == PatternKind::FS_PROBE ? 0 : 1;
}

ProbeHitReport probe_hits(const SubsetModel& model, const ProbeFamily& family,
                          std::uint64_t j_begin, std::uint64_t j_end, unsigned workers,
                          std::uint64_t max_bits) {
    check_family(family);
    if (j_begin < first_probe_index(family))
        throw domain_error("probe indices for this family start at " +
                           std::to_string(first_probe_index(family)));
    if (j_end < j_begin) throw domain_error("empty-or-forward index range required");

    ProbeHitReport report;
    report.kind = family.kind;
    report.L = family.L;
    report.j_begin = j_begin;
    report.j_end = j_end;
    report.elements_per_probe = (std::uint64_t(1) << family.L) - 1;

    std::uint64_t count = j_end - j_begin;
    enum : std::uint8_t { kMiss = 0, kHit = 1, kOverBudget = 2 };
    std::vector<std::uint8_t> status(count, kMiss);
    run_indexed(count, workers, [&](std::uint64_t i) {
        std::uint64_t j = j_begin + i;
        PatternInstance probe;
        try {
            probe = make_probe(family, j, max_bits);
        } catch (const resource_error&) {
            status[i] = kOverBudget;
            return;
        }
        if (probe_included(model, probe)) status[i] = kHit;
    });

    for (std::uint64_t i = 0; i < count; ++i) {
        if (status[i] == kOverBudget) {
            report.truncated = true;
            report.truncated_at = j_begin + i;
            break;
        }
        if (status[i] == kHit) report.hits.push_back(j_begin + i);
    }
    return report;
}

std::uint64_t disjoint_probe_count(const SubsetModel& model, const ProbeFamily& family,
                                   std::uint64_t j_begin, std::uint64_t j_end,
                                   unsigned workers, std::uint64_t max_bits) {
    return probe_hits(model, family, j_begin, j_end, workers, max_bits).hits.size();
}

namespace {

bool find_fs_from(const DenseSample& sample, unsigned L, std::uint64_t search_bound,
                  std::vector<std::uint64_t>& chosen, std::vector<std::uint64_t>& sums) {
    if (chosen.size() == L) return true;
    std::uint64_t lo = chosen.empty() ? 1 : chosen.back() + 1;
    for (std::uint64_t x = lo; x <= search_bound; ++x) {
        if (!sample.test(x)) continue;
        std::size_t base = sums.size();
        bool ok = true;
        for (std::size_t i = 0; i < base; ++i) {
            std::uint64_t s = sums[i] + x;
            if (s > sample.bound() || !sample.test(s)) {
                ok = false;
                break;
            }
            sums.push_back(s);
        }
        if (ok) {
            sums.push_back(x);
            chosen.push_back(x);
            if (find_fs_from(sample, L, search_bound, chosen, sums)) return true;
            chosen.pop_back();
        }
        sums.resize(base);
    }
    return false;
}

} // namespace

std::optional<std::vector<std::uint64_t>> find_fs(const DenseSample& sample, unsigned L,
                                                  std::uint64_t search_bound) {
    if (L < 1 || L > kMaxFsSearchLength)
        throw domain_error("exhaustive witness search needs 1 <= L <= " +
                           std::to_string(kMaxFsSearchLength));
    if (search_bound > sample.bound())
        throw domain_error("search bound " + std::to_string(search_bound) +
                           " exceeds the sample bound " + std::to_string(sample.bound()));
    std::vector<std::uint64_t> chosen, sums;
    chosen.reserve(L);
    sums.reserve((std::size_t(1) << L) - 1);
    if (find_fs_from(sample, L, search_bound, chosen, sums)) return chosen;
    return std::nullopt;
}

namespace {

void check_quadruple_bound(const DenseSample& sample, std::uint64_t N) {
    if (N < 1) throw domain_error("quadruple counting needs N >= 1");
    std::uint64_t required = quadruple_bound(N);
    if (required > sample.bound())
        throw domain_error("counting over [1.." + std::to_string(N) +
                           "]^2 needs sample bound >= max(2N, N^2) = " +
                           std::to_string(required) + ", have " +
                           std::to_string(sample.bound()));
}

} // namespace

QuadrupleCount count_quadruples(const DenseSample& sample, std::uint64_t N,
                                std::uint64_t witness_cap) {
    check_quadruple_bound(sample, N);
    QuadrupleCount out;
    out.N = N;
    for (std::uint64_t x = 1; x <= N; ++x) {
        if (!sample.test(x)) continue;
        for (std::uint64_t y = 1; y <= N; ++y) {
            if (!sample.test(y) || !sample.test(x + y) || !sample.test(x * y)) continue;
            ++out.count;
            if (out.witnesses.size() < witness_cap)
                out.witnesses.emplace_back(x, y);
            else if (witness_cap > 0)
                out.witnesses_truncated = true;
        }
    }
    return out;
}

bool any_quadruple(const DenseSample& sample, std::uint64_t N) {
    check_quadruple_bound(sample, N);
    for (std::uint64_t x = 1; x <= N; ++x) {
        if (!sample.test(x)) continue;
        for (std::uint64_t y = 1; y <= N; ++y)
            if (sample.test(y) && sample.test(x + y) && sample.test(x * y)) return true;
    }
    return false;
}

std::uint64_t default_attempt_cap(double p, std::uint64_t R) {
    double hit = std::pow(p, static_cast<double>(R));
    double cap = std::ceil(50.0 / hit);
    if (!(cap >= 1.0)) return 1;
    if (cap >= 9.2e18) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(cap);
}

MinElementResult min_element_probe(const SubsetModel& model, const ProbeFamily& family,
                                   const BigInt& M, std::uint64_t attempt_cap,
                                   std::uint64_t max_bits) {
    check_family(family);
    if (M < 1) throw domain_error("minimum-element threshold must be >= 1");
    std::uint64_t R = (std::uint64_t(1) << family.L) - 1;
    if (attempt_cap == 0) attempt_cap = default_attempt_cap(model.p(), R);

    MinElementResult out;
    if (family.kind == PatternKind::FS_PROBE) {
        // Min element of probe j is 2^(L*j); 2^(L*j) > M iff L*j >= bitlen(M).
        std::uint64_t bl = bit_length(M);
        out.first_j = (bl + family.L - 1) / family.L;
    } else {
        if (!M.fits_ulong_p())
            throw resource_error("prime search threshold must fit in 64 bits");
        out.first_j = first_prime_index_greater(M.get_ui());
    }

    for (std::uint64_t j = out.first_j; out.attempts < attempt_cap; ++j) {
        PatternInstance probe;
        try {
            probe = make_probe(family, j, max_bits);
        } catch (const resource_error&) {
            out.truncated = true;
            return out;
        }
        ++out.attempts;
        if (probe_included(model, probe)) {
            out.probe = std::move(probe);
            return out;
        }
    }
    return out;
}

} // namespace natp
