#include "stats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <string>

#include "errors.hpp"
#include "parallel.hpp"

namespace natp {

Estimate make_estimate(std::uint64_t successes, std::uint64_t trials) {
    if (trials == 0) throw domain_error("an estimate needs at least one trial");
    if (successes > trials) throw domain_error("successes exceed trials");
    Estimate e;
    e.trials = trials;
    e.successes = successes;
    double n = static_cast<double>(trials);
    double ph = static_cast<double>(successes) / n;
    e.point = ph;
    constexpr double z = 1.96;
    double denom = 1.0 + z * z / n;
    double center = (ph + z * z / (2.0 * n)) / denom;
    double half = (z / denom) * std::sqrt(ph * (1.0 - ph) / n + z * z / (4.0 * n * n));
    // Boundary cases are analytically exact; don't let rounding blur them.
    e.lo = successes == 0 ? 0.0 : std::max(0.0, center - half);
    e.hi = successes == trials ? 1.0 : std::min(1.0, center + half);
    return e;
}

namespace {

template <typename Trial>
std::uint64_t count_wins(std::uint64_t trials, unsigned workers, Trial&& trial) {
    std::vector<std::uint8_t> wins(trials, 0);
    run_indexed(trials, workers, [&](std::uint64_t t) { wins[t] = trial(t) ? 1 : 0; });
    std::uint64_t successes = 0;
    for (auto w : wins) successes += w;
    return successes;
}

} // namespace

Estimate estimate_event_prob(const PatternInstance& pattern, double p,
                             std::uint64_t trials, std::uint64_t seed_base,
                             unsigned workers) {
    if (trials < 1) throw domain_error("at least one trial required");
    if (pattern.elements.empty()) throw domain_error("pattern has no elements");
    std::uint64_t successes = count_wins(trials, workers, [&](std::uint64_t t) {
        SubsetModel model(p, seed_base + t);
        for (const auto& e : pattern.elements)
            if (!model.contains(e)) return false;
        return true;
    });
    return make_estimate(successes, trials);
}

QuadrupleExpectation expected_quadruples_exact(std::uint64_t N, double p) {
    if (N < 1) throw domain_error("expectation needs N >= 1");
    if (!(p > 0.0) || !(p < 1.0)) throw domain_error("density must lie strictly between 0 and 1");
    QuadrupleExpectation out;
    out.N = N;
    out.p = rat_from_double(p);
    // d(x,y) = 2 only for (1,1) and (2,2); d = 3 exactly when x = y >= 3,
    // x = 1 < y, or y = 1 < x; every other ordered pair has 4 distinct values.
    BigInt n2 = N >= 2 ? 2 : 1;
    BigInt n3 = 0;
    if (N >= 2) n3 += 2 * BigInt(N - 1);
    if (N >= 3) n3 += BigInt(N - 2);
    BigInt pairs = BigInt(N) * N;
    BigInt n4 = pairs - n2 - n3;
    Rat p2 = rat_pow(out.p, 2), p3 = rat_pow(out.p, 3), p4 = rat_pow(out.p, 4);
    out.exact = Rat(n2) * p2 + Rat(n3) * p3 + Rat(n4) * p4;
    out.idealized = Rat(pairs) * p4;
    out.diff = out.exact - out.idealized;
    return out;
}

SecondMomentReport exact_small_universe(std::uint64_t N, double p) {
    if (N < 1) throw domain_error("second-moment report needs N >= 1");
    if (!(p > 0.0) || !(p < 1.0)) throw domain_error("density must lie strictly between 0 and 1");
    std::uint64_t U = quadruple_bound(N);
    if (U > kMaxExactUniverse)
        throw domain_error("exhaustive enumeration caps the universe at " +
                           std::to_string(kMaxExactUniverse) + " elements; max(2N, N^2) = " +
                           std::to_string(U) + ". Use the Monte Carlo estimator instead.");

    // Membership mask each ordered pair needs: bits for x, y, x+y, x*y.
    std::vector<std::uint32_t> need;
    need.reserve(N * N);
    for (std::uint64_t x = 1; x <= N; ++x)
        for (std::uint64_t y = 1; y <= N; ++y)
            need.push_back((1u << (x - 1)) | (1u << (y - 1)) | (1u << (x + y - 1)) |
                           (1u << (x * y - 1)));

    // Accumulate sum of X, X^2 and the positivity count per subset size, so
    // the p-weighting stays a short exact-rational sum.
    std::vector<std::uint64_t> sum_x(U + 1, 0), sum_x2(U + 1, 0), n_pos(U + 1, 0);
    std::uint64_t total = std::uint64_t(1) << U;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        std::uint64_t x_count = 0;
        for (std::uint32_t nm : need)
            if ((mask & nm) == nm) ++x_count;
        unsigned k = static_cast<unsigned>(std::popcount(mask));
        sum_x[k] += x_count;
        sum_x2[k] += x_count * x_count;
        if (x_count > 0) ++n_pos[k];
    }

    SecondMomentReport out;
    out.N = N;
    out.universe = U;
    out.p = rat_from_double(p);
    Rat q = Rat(1) - out.p;
    Rat ex(0), ex2(0), pos(0);
    for (std::uint64_t k = 0; k <= U; ++k) {
        Rat weight = rat_pow(out.p, static_cast<unsigned>(k)) *
                     rat_pow(q, static_cast<unsigned>(U - k));
        ex += Rat(BigInt(sum_x[k])) * weight;
        ex2 += Rat(BigInt(sum_x2[k])) * weight;
        pos += Rat(BigInt(n_pos[k])) * weight;
    }
    out.exact_EX = ex;
    out.exact_EX2 = ex2;
    out.exact_PX_pos = pos;
    out.idealized_EX = expected_quadruples_exact(N, p).idealized;
    out.pz_lower_bound = ex2 > 0 ? Rat(ex * ex / ex2) : Rat(0);
    out.pz_holds = out.pz_lower_bound <= out.exact_PX_pos;
    return out;
}

Estimate estimate_PX_pos(std::uint64_t N, double p, std::uint64_t trials,
                         std::uint64_t seed_base, unsigned workers,
                         std::uint64_t memory_budget_bytes) {
    if (trials < 1) throw domain_error("at least one trial required");
    if (N < 1) throw domain_error("positivity estimate needs N >= 1");
    std::uint64_t bound = quadruple_bound(N);
    std::uint64_t successes = count_wins(trials, workers, [&](std::uint64_t t) {
        SubsetModel model(p, seed_base + t);
        DenseSample sample = model.materialize(bound, memory_budget_bytes);
        return any_quadruple(sample, N);
    });
    return make_estimate(successes, trials);
}

QuadrupleMoments mc_quadruple_stats(std::uint64_t N, double p, std::uint64_t trials,
                                    std::uint64_t seed_base, unsigned workers,
                                    std::uint64_t memory_budget_bytes) {
    if (trials < 1) throw domain_error("at least one trial required");
    if (N < 1) throw domain_error("moment estimate needs N >= 1");
    std::uint64_t bound = quadruple_bound(N);
    std::vector<std::uint64_t> counts(trials, 0);
    run_indexed(trials, workers, [&](std::uint64_t t) {
        SubsetModel model(p, seed_base + t);
        DenseSample sample = model.materialize(bound, memory_budget_bytes);
        counts[t] = count_quadruples(sample, N).count;
    });
    QuadrupleMoments out;
    out.N = N;
    out.trials = trials;
    long double sx = 0, sx2 = 0;
    std::uint64_t wins = 0;
    for (auto c : counts) {
        sx += c;
        sx2 += static_cast<long double>(c) * c;
        if (c > 0) ++wins;
    }
    out.mean_X = static_cast<double>(sx / trials);
    out.mean_X2 = static_cast<double>(sx2 / trials);
    out.px_pos = make_estimate(wins, trials);
    return out;
}

namespace {

Estimate sweep_eval(double p, unsigned L, std::uint64_t N, std::uint64_t trials,
                    std::uint64_t seed_base, unsigned workers) {
    std::vector<std::uint8_t> wins(trials, 0);
    run_indexed(trials, workers, [&](std::uint64_t t) {
        SubsetModel model(p, seed_base + t);
        DenseSample sample = model.materialize(N);
        wins[t] = find_fs(sample, L, N).has_value() ? 1 : 0;
    });
    std::uint64_t successes = 0;
    for (auto w : wins) successes += w;
    return make_estimate(successes, trials);
}

} // namespace

ThresholdSweep threshold_sweep(unsigned L, std::uint64_t N, double target,
                               std::uint64_t trials_per_p, std::uint64_t seed_base,
                               unsigned workers) {
    if (L < 1 || L > kMaxSweepLength)
        throw domain_error("threshold sweeps need 1 <= L <= " + std::to_string(kMaxSweepLength));
    if (N < 1) throw domain_error("sweep needs N >= 1");
    if (!(target > 0.0) || !(target < 1.0))
        throw domain_error("target probability must lie strictly between 0 and 1");
    if (trials_per_p < 1) throw domain_error("at least one trial per density required");

    ThresholdSweep out;
    out.L = L;
    out.N = N;
    out.target = target;
    out.trials_per_p = trials_per_p;

    std::map<double, Estimate> memo;
    auto eval = [&](double p) -> const Estimate& {
        auto it = memo.find(p);
        if (it == memo.end())
            it = memo.emplace(p, sweep_eval(p, L, N, trials_per_p, seed_base, workers)).first;
        return it->second;
    };

    double lo = 1.0 / 1024, hi = 1.0 - 1.0 / 1024;
    // Bracketing invariant: f(lo) < target <= f(hi). Widen once if violated.
    if (!(eval(lo).point < target)) lo = std::ldexp(1.0, -20);
    if (!(eval(hi).point >= target)) hi = 1.0 - std::ldexp(1.0, -20);
    if (!(eval(lo).point < target) || !(eval(hi).point >= target))
        throw domain_error("success probability does not cross " + std::to_string(target) +
                           " inside (0,1) for L=" + std::to_string(L) +
                           ", N=" + std::to_string(N));

    while (hi - lo >= 0.01) {
        double mid = 0.5 * (lo + hi);
        if (eval(mid).point >= target)
            hi = mid;
        else
            lo = mid;
    }

    out.lo = lo;
    out.hi = hi;
    out.est_lo = eval(lo);
    out.est_hi = eval(hi);
    for (const auto& [p, est] : memo) out.evals.push_back({p, est});
    return out;
}

} // namespace natp
