#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bigint.hpp"
#include "detect.hpp"
#include "model.hpp"
#include "patterns.hpp"

namespace natp {

// Binomial point estimate with a Wilson 95% score interval (z = 1.96).
struct Estimate {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double point = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};

Estimate make_estimate(std::uint64_t successes, std::uint64_t trials);

// P(all elements of `pattern` land in a density-p set), estimated over
// `trials` independent models seeded seed_base, seed_base+1, ...
Estimate estimate_event_prob(const PatternInstance& pattern, double p,
                             std::uint64_t trials, std::uint64_t seed_base,
                             unsigned workers = 1);

// Exact E[X_N] = sum over ordered pairs (x,y) in [1..N]^2 of p^d(x,y), where
// d is the number of distinct values among {x, y, x+y, x*y}, next to the
// idealized p^4 N^2 (exact only when every quadruple has 4 distinct values).
struct QuadrupleExpectation {
    std::uint64_t N = 0;
    Rat p;      // exact binary value of the input density
    Rat exact;  // coincidence-corrected expectation
    Rat idealized;  // p^4 N^2
    Rat diff;   // exact - idealized, O(N)
};

QuadrupleExpectation expected_quadruples_exact(std::uint64_t N, double p);

// Exhaustive distribution of X_N over all subsets of [1..max(2N, N^2)],
// each weighted p^|S| (1-p)^(U-|S|). Everything exact.
struct SecondMomentReport {
    std::uint64_t N = 0;
    std::uint64_t universe = 0;  // max(2N, N^2)
    Rat p;
    Rat exact_EX;
    Rat idealized_EX;                // p^4 N^2
    Rat exact_EX2;
    Rat exact_PX_pos;
    Rat pz_lower_bound;          // (E X)^2 / E[X^2], 0 when E[X^2] = 0
    bool pz_holds = false;       // pz_lower_bound <= P(X > 0), checked exactly
};

inline constexpr std::uint64_t kMaxExactUniverse = 24;

SecondMomentReport exact_small_universe(std::uint64_t N, double p);

// Monte Carlo P(X_N > 0) over independent samples of [1..max(2N, N^2)].
Estimate estimate_PX_pos(std::uint64_t N, double p, std::uint64_t trials,
                         std::uint64_t seed_base, unsigned workers = 1,
                         std::uint64_t memory_budget_bytes = SubsetModel::kDefaultMemoryBudget);

// Monte Carlo moments of X_N alongside the positivity estimate.
struct QuadrupleMoments {
    std::uint64_t N = 0;
    std::uint64_t trials = 0;
    double mean_X = 0.0;
    double mean_X2 = 0.0;
    Estimate px_pos;
};

QuadrupleMoments mc_quadruple_stats(std::uint64_t N, double p, std::uint64_t trials,
                                    std::uint64_t seed_base, unsigned workers = 1,
                                    std::uint64_t memory_budget_bytes = SubsetModel::kDefaultMemoryBudget);

// Bisection for the density p* where P(an L-generator witness exists in a
// sample of [1..N]) crosses `target`. Trials share seeds across p values, so
// the success indicator is exactly monotone in p (monotone coupling) and the
// bisection response is noise-coupled. Stops when the bracket is < 0.01 wide.
struct ThresholdEval {
    double p = 0.0;
    Estimate est;
};

struct ThresholdSweep {
    unsigned L = 0;
    std::uint64_t N = 0;
    double target = 0.0;
    std::uint64_t trials_per_p = 0;
    double lo = 0.0;  // final bracket [lo, hi], hi - lo < 0.01
    double hi = 0.0;
    Estimate est_lo;
    Estimate est_hi;
    std::vector<ThresholdEval> evals;  // every evaluated density, sorted by p
};

inline constexpr unsigned kMaxSweepLength = 4;

ThresholdSweep threshold_sweep(unsigned L, std::uint64_t N, double target,
                               std::uint64_t trials_per_p, std::uint64_t seed_base,
                               unsigned workers = 1);

} // namespace natp
