#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "patterns.hpp"
#include "stats.hpp"

using natp::BigInt;
using natp::Rat;

namespace {

constexpr double kEps = 1e-12;

// Independent per-pair expectation oracle: classify the quadruple of each
// ordered pair by its number of distinct values and sum p^d directly.
Rat expectation_oracle(std::uint64_t N, double p) {
    Rat rp = natp::rat_from_double(p);
    Rat total = 0;
    for (std::uint64_t x = 1; x <= N; ++x)
        for (std::uint64_t y = 1; y <= N; ++y) {
            std::vector<BigInt> values = {BigInt(x), BigInt(y), BigInt(x + y),
                                          BigInt(x * y)};
            std::sort(values.begin(), values.end());
            values.erase(std::unique(values.begin(), values.end()), values.end());
            total += natp::rat_pow(rp, values.size());
        }
    return total;
}

} // namespace

TEST_CASE("Wilson intervals match frozen reference values") {
    auto mid = natp::make_estimate(50, 100);
    CHECK(mid.point == doctest::Approx(0.5).epsilon(kEps));
    CHECK(mid.lo == doctest::Approx(0.40382982859014716).epsilon(kEps));
    CHECK(mid.hi == doctest::Approx(0.5961701714098528).epsilon(kEps));

    auto zero = natp::make_estimate(0, 100);
    CHECK(zero.lo == 0.0);
    CHECK(zero.hi == doctest::Approx(0.03699480747600191).epsilon(kEps));

    auto full = natp::make_estimate(100, 100);
    CHECK(full.hi == 1.0);
    CHECK(full.lo == doctest::Approx(1.0 - 0.03699480747600191).epsilon(kEps));

    CHECK_THROWS_AS(natp::make_estimate(0, 0), natp::domain_error);
    CHECK_THROWS_AS(natp::make_estimate(5, 4), natp::domain_error);
}

TEST_CASE("probe inclusion probability estimates recover p^R") {
    // Additive probe with 3 elements at p = 1/2: true probability 1/8.
    auto est = natp::estimate_event_prob(natp::fs_probe(2, 0), 0.5, 20000, 1);
    CHECK(est.trials == 20000);
    CHECK(est.lo <= 0.125);
    CHECK(0.125 <= est.hi);
    CHECK(std::fabs(est.point - 0.125) < 0.01);

    // Seven elements at p = 0.7: true probability 0.7^7 ~ 0.0824.
    auto est7 = natp::estimate_event_prob(natp::fs_probe(3, 0), 0.7, 20000, 1);
    double truth = std::pow(0.7, 7);
    CHECK(est7.lo <= truth);
    CHECK(truth <= est7.hi);
}

TEST_CASE("estimates are exactly reproducible and worker-independent") {
    auto probe = natp::fs_probe(2, 5);
    auto serial = natp::estimate_event_prob(probe, 0.3, 5000, 9, 1);
    for (unsigned workers : {2u, 8u}) {
        auto par = natp::estimate_event_prob(probe, 0.3, 5000, 9, workers);
        CHECK(par.successes == serial.successes);
        CHECK(par.point == serial.point);
    }
}

TEST_CASE("exact expectation handles coincident quadruple values") {
    // N = 1: only (1,1) with quadruple {1, 2}, so E[X] = p^2.
    auto one = natp::expected_quadruples_exact(1, 0.5);
    CHECK(one.exact == Rat(1, 4));
    CHECK(one.idealized == Rat(1, 16));
    CHECK(one.diff == Rat(3, 16));

    // N = 2: (1,1) and (2,2) give p^2 each, (1,2) and (2,1) give p^3.
    CHECK(natp::expected_quadruples_exact(2, 0.5).exact == Rat(3, 4));

    // N = 4 at p = 1/2: the classical 15/8.
    auto four = natp::expected_quadruples_exact(4, 0.5);
    CHECK(four.exact == Rat(15, 8));
    CHECK(four.idealized == Rat(1));
    CHECK(four.diff == Rat(7, 8));
}

TEST_CASE("exact expectation agrees with the per-pair oracle") {
    for (std::uint64_t N : {1ull, 2ull, 3ull, 4ull, 7ull, 12ull})
        for (double p : {0.3, 0.5, 0.7})
            CHECK(natp::expected_quadruples_exact(N, p).exact == expectation_oracle(N, p));
}

TEST_CASE("the expectation's deviation from the idealized form is O(N)") {
    // Coincidences only occur on pairs with x = y, x = 1, or y = 1, so the
    // exact-minus-idealized gap is at most 3N - 2 pairs' worth of mass.
    for (std::uint64_t N : {2ull, 5ull, 10ull, 20ull}) {
        auto report = natp::expected_quadruples_exact(N, 0.5);
        Rat gap = report.diff;
        CHECK(gap > 0);
        CHECK(gap < Rat(3 * N));
    }
}

TEST_CASE("exhaustive enumeration reproduces closed forms at N <= 2") {
    // N = 1, universe {1, 2}: X = 1 exactly when both elements are present.
    auto tiny = natp::exact_small_universe(1, 0.5);
    CHECK(tiny.universe == 2);
    CHECK(tiny.exact_EX == Rat(1, 4));
    CHECK(tiny.exact_EX2 == Rat(1, 4));
    CHECK(tiny.exact_PX_pos == Rat(1, 4));
    CHECK(tiny.pz_lower_bound == Rat(1, 4));
    CHECK(tiny.pz_holds);  // equality is allowed

    auto two = natp::exact_small_universe(2, 0.5);
    CHECK(two.universe == 4);
    CHECK(two.exact_EX == Rat(3, 4));
}

TEST_CASE("two independent oracles give the same expectation") {
    for (std::uint64_t N : {1ull, 2ull, 3ull, 4ull})
        for (double p : {0.3, 0.5, 0.7}) {
            auto enumerated = natp::exact_small_universe(N, p);
            auto summed = natp::expected_quadruples_exact(N, p);
            CHECK(enumerated.exact_EX == summed.exact);
            CHECK(enumerated.idealized_EX == summed.idealized);
        }
}

TEST_CASE("the Paley-Zygmund bound holds exactly on the small grid") {
    for (std::uint64_t N : {1ull, 2ull, 3ull, 4ull})
        for (double p : {0.3, 0.5, 0.7}) {
            auto report = natp::exact_small_universe(N, p);
            CHECK(report.pz_holds);
            CHECK(report.pz_lower_bound <= report.exact_PX_pos);
            CHECK(report.exact_PX_pos <= 1);
        }
}

TEST_CASE("enumeration refuses universes beyond the cap") {
    CHECK_THROWS_AS(natp::exact_small_universe(5, 0.5), natp::domain_error);  // 25 > 24
    CHECK_NOTHROW(natp::exact_small_universe(4, 0.5));
}

TEST_CASE("Monte Carlo positivity estimates cover the exact value") {
    auto exact = natp::exact_small_universe(2, 0.5).exact_PX_pos;
    auto est = natp::estimate_PX_pos(2, 0.5, 20000, 1);
    double truth = natp::rat_to_double(exact);
    CHECK(est.lo <= truth);
    CHECK(truth <= est.hi);
}

TEST_CASE("positivity is exactly monotone in N under shared seeds") {
    // The same seed materializes consistent nested samples, and X_N only
    // grows with N, so success counts are comparable without any tolerance.
    auto small = natp::estimate_PX_pos(10, 0.3, 500, 77);
    auto medium = natp::estimate_PX_pos(20, 0.3, 500, 77);
    auto large = natp::estimate_PX_pos(40, 0.3, 500, 77);
    CHECK(small.successes <= medium.successes);
    CHECK(medium.successes <= large.successes);
}

TEST_CASE("Monte Carlo moments sit inside their exact 4-sigma bands") {
    auto exact = natp::exact_small_universe(4, 0.5);
    double ex = natp::rat_to_double(exact.exact_EX);
    double ex2 = natp::rat_to_double(exact.exact_EX2);
    double var = ex2 - ex * ex;

    auto mc = natp::mc_quadruple_stats(4, 0.5, 20000, 5);
    CHECK(mc.trials == 20000);
    double sigma_mean = std::sqrt(var / 20000.0);
    CHECK(std::fabs(mc.mean_X - ex) < 4 * sigma_mean);
    CHECK(natp::rat_to_double(exact.exact_PX_pos) > mc.px_pos.lo);
    CHECK(natp::rat_to_double(exact.exact_PX_pos) < mc.px_pos.hi);
}

TEST_CASE("threshold sweeps bracket the closed-form crossing") {
    // L = 1 witnesses exist iff the sample is nonempty, so the target-1/2
    // density is exactly 1 - 2^(-1/N) ~ 0.0069 at N = 100.
    auto sweep = natp::threshold_sweep(1, 100, 0.5, 400, 3);
    CHECK(sweep.hi - sweep.lo < 0.01);
    CHECK(sweep.lo < sweep.hi);
    double closed_form = 1.0 - std::pow(2.0, -0.01);
    CHECK(std::fabs(0.5 * (sweep.lo + sweep.hi) - closed_form) < 0.02);

    // Bracket invariant: the response crosses the target inside [lo, hi].
    CHECK(sweep.est_lo.point < 0.5);
    CHECK(sweep.est_hi.point >= 0.5);
}

TEST_CASE("common random numbers make sweep responses exactly monotone") {
    auto sweep = natp::threshold_sweep(2, 60, 0.5, 300, 11);
    REQUIRE(sweep.evals.size() >= 2);
    for (std::size_t i = 0; i + 1 < sweep.evals.size(); ++i) {
        CHECK(sweep.evals[i].p < sweep.evals[i + 1].p);
        // Shared seeds + monotone membership coupling: success indicators
        // never flip downward as p grows.
        CHECK(sweep.evals[i].est.successes <= sweep.evals[i + 1].est.successes);
    }
}

TEST_CASE("sweep validation rejects bad shapes") {
    CHECK_THROWS_AS(natp::threshold_sweep(0, 10, 0.5, 10, 1), natp::domain_error);
    CHECK_THROWS_AS(natp::threshold_sweep(5, 10, 0.5, 10, 1), natp::domain_error);
    CHECK_THROWS_AS(natp::threshold_sweep(1, 0, 0.5, 10, 1), natp::domain_error);
    CHECK_THROWS_AS(natp::threshold_sweep(1, 10, 0.0, 10, 1), natp::domain_error);
    CHECK_THROWS_AS(natp::threshold_sweep(1, 10, 1.0, 10, 1), natp::domain_error);
    CHECK_THROWS_AS(natp::threshold_sweep(1, 10, 0.5, 0, 1), natp::domain_error);
}
