#include "color.hpp"

#include <algorithm>
#include <string>

#include "detect.hpp"
#include "errors.hpp"
#include "hash.hpp"

namespace natp {

namespace {

constexpr std::uint64_t kColoringTag = 0x636f6c6f72696e67ull;  // "coloring"

} // namespace

Coloring random_coloring(std::uint64_t N, unsigned c, std::uint64_t seed) {
    if (N < 1) throw domain_error("coloring needs N >= 1");
    if (c < 2 || c > kMaxColors)
        throw domain_error("color count must lie in [2, " + std::to_string(kMaxColors) + "]");
    if (N > (1ull << 30))
        throw resource_error("coloring [1.." + std::to_string(N) + "] needs " +
                             std::to_string(N) + " bytes, over the 2^30 byte budget");
    Coloring out;
    out.N = N;
    out.c = c;
    out.colors.resize(N);
    std::uint64_t tagged = seed ^ kColoringTag;
    for (std::uint64_t n = 1; n <= N; ++n) {
        std::uint64_t z = fold_u64(tagged, n);
        out.colors[n - 1] = static_cast<std::uint8_t>(
            (static_cast<unsigned __int128>(z) * c) >> 64);
    }
    return out;
}

namespace {

bool mono_fs_from(const Coloring& col, unsigned L, std::uint8_t target,
                  std::vector<std::uint64_t>& chosen, std::vector<std::uint64_t>& sums) {
    if (chosen.size() == L) return true;
    for (std::uint64_t x = chosen.back() + 1; x <= col.N; ++x) {
        if (col.color_of(x) != target) continue;
        std::size_t base = sums.size();
        bool ok = true;
        for (std::size_t i = 0; i < base; ++i) {
            std::uint64_t s = sums[i] + x;
            if (s > col.N || col.color_of(s) != target) {
                ok = false;
                break;
            }
            sums.push_back(s);
        }
        if (ok) {
            sums.push_back(x);
            chosen.push_back(x);
            if (mono_fs_from(col, L, target, chosen, sums)) return true;
            chosen.pop_back();
        }
        sums.resize(base);
    }
    return false;
}

} // namespace

std::optional<MonoFsWitness> find_mono_fs(const Coloring& coloring, unsigned L) {
    if (L < 1 || L > kMaxFsSearchLength)
        throw domain_error("monochromatic witness search needs 1 <= L <= " +
                           std::to_string(kMaxFsSearchLength));
    for (std::uint64_t x1 = 1; x1 <= coloring.N; ++x1) {
        std::uint8_t target = coloring.color_of(x1);
        std::vector<std::uint64_t> chosen = {x1};
        std::vector<std::uint64_t> sums = {x1};
        if (mono_fs_from(coloring, L, target, chosen, sums))
            return MonoFsWitness{std::move(chosen), target};
    }
    return std::nullopt;
}

std::optional<MonoQuadruple> find_mono_quadruple(const Coloring& coloring, bool strict) {
    for (std::uint64_t x = 1; x <= coloring.N; ++x) {
        for (std::uint64_t y = 1; y <= coloring.N; ++y) {
            if (x + y > coloring.N || x * y > coloring.N) break;
            if (strict && (x == y || x == 1 || y == 1)) continue;
            std::uint8_t col = coloring.color_of(x);
            if (coloring.color_of(y) == col && coloring.color_of(x + y) == col &&
                coloring.color_of(x * y) == col)
                return MonoQuadruple{x, y, col};
        }
    }
    return std::nullopt;
}

ScanResult exhaustive_2coloring_scan(std::uint64_t N, bool strict) {
    if (N < 1 || N > kMaxScanN)
        throw domain_error("exhaustive 2-coloring scan caps N at " + std::to_string(kMaxScanN));

    ScanResult out;
    out.N = N;
    out.strict = strict;

    // Deduplicated element sets of every in-range quadruple, as bitmasks.
    std::vector<std::uint32_t> constraints;
    for (std::uint64_t x = 1; x <= N; ++x)
        for (std::uint64_t y = x; y <= N; ++y) {  // (x,y)/(y,x) share a set
            if (x + y > N || x * y > N) break;
            if (strict && (x == y || x == 1)) continue;
            constraints.push_back((1u << (x - 1)) | (1u << (y - 1)) |
                                  (1u << (x + y - 1)) | (1u << (x * y - 1)));
        }
    std::sort(constraints.begin(), constraints.end());
    constraints.erase(std::unique(constraints.begin(), constraints.end()), constraints.end());
    out.constraint_count = constraints.size();

    // Most-involved positions first; each constraint is checked when its
    // last position in that order gets a color.
    std::vector<std::uint64_t> involvement(N, 0);
    for (auto mask : constraints)
        for (std::uint64_t v = 0; v < N; ++v)
            if (mask & (1u << v)) ++involvement[v];
    std::vector<std::uint64_t> order(N);
    for (std::uint64_t v = 0; v < N; ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
        return involvement[a] > involvement[b];
    });
    std::vector<std::uint64_t> rank(N);
    for (std::uint64_t r = 0; r < N; ++r) rank[order[r]] = r;
    std::vector<std::vector<std::uint32_t>> by_last(N);
    for (auto mask : constraints) {
        std::uint64_t last = N;
        for (std::uint64_t v = 0; v < N; ++v)
            if ((mask & (1u << v)) && (last == N || rank[v] > rank[last])) last = v;
        by_last[last].push_back(mask);
    }

    std::vector<std::uint8_t> colors(N, 0);
    std::uint32_t bits0 = 0, bits1 = 0;
    std::uint64_t nodes = 0;

    auto assign_ok = [&](std::uint64_t v) {
        for (auto mask : by_last[v])
            if ((mask & bits0) == mask || (mask & bits1) == mask) return false;
        return true;
    };

    // Depth-first over ranks; the first position's color is fixed to 0
    // because complementing every color preserves (non-)monochromaticity.
    auto dfs = [&](auto&& self, std::uint64_t r) -> bool {
        if (r == N) return true;
        std::uint64_t v = order[r];
        unsigned first = 0, lastc = r == 0 ? 0 : 1;
        for (unsigned col = first; col <= lastc; ++col) {
            ++nodes;
            colors[v] = static_cast<std::uint8_t>(col);
            std::uint32_t& bits = col == 0 ? bits0 : bits1;
            bits |= 1u << v;
            if (assign_ok(v) && self(self, r + 1)) return true;
            bits &= ~(1u << v);
        }
        return false;
    };

    out.witness_found = dfs(dfs, 0);
    out.nodes = nodes;
    if (out.witness_found) out.coloring = std::move(colors);
    return out;
}

HindmanSequence hindman_sequence(const Coloring& coloring, unsigned L) {
    HindmanSequence out;
    auto witness = find_mono_fs(coloring, L);
    if (!witness) return out;
    out.found = true;
    out.color = witness->color;
    out.ys.reserve(witness->xs.size());
    for (auto x : witness->xs) out.ys.emplace_back(x);
    return out;
}

} // namespace natp
