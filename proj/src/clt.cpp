#include "clt.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "errors.hpp"
#include "hash.hpp"
#include "parallel.hpp"
#include "patterns.hpp"

namespace natp {

namespace {

constexpr std::uint64_t kCltDrawTag = 0x636c746472617773ull;  // "cltdraws"
constexpr double kClampHuge = 1e308;

void check_weights(const std::vector<BigInt>& ys, std::size_t k) {
    if (k < 1) throw domain_error("stage k must be >= 1");
    if (ys.size() < k)
        throw domain_error("stage k = " + std::to_string(k) + " exceeds the " +
                           std::to_string(ys.size()) + " provided weights");
    for (std::size_t j = 0; j < k; ++j)
        if (ys[j] <= 0) throw domain_error("weights must be positive");
}

void check_density(double p) {
    if (!(p > 0.0) || !(p < 1.0))
        throw domain_error("density must lie strictly between 0 and 1");
}

std::size_t argmax_weight(const std::vector<BigInt>& ys, std::size_t k) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < k; ++j)
        if (ys[j] > ys[best]) best = j;
    return best;  // 0-based; smallest index on ties
}

} // namespace

std::vector<BigInt> family_linear(std::size_t count) {
    if (count < 1) throw domain_error("family needs at least one weight");
    std::vector<BigInt> ys;
    ys.reserve(count);
    for (std::size_t j = 1; j <= count; ++j) ys.emplace_back(j);
    return ys;
}

std::vector<BigInt> family_doubly_exponential(std::size_t count) {
    if (count < 1) throw domain_error("family needs at least one weight");
    if (count > kMaxDoublyExponential)
        throw domain_error("doubly-exponential weights cap at k = " +
                           std::to_string(kMaxDoublyExponential) +
                           " (2^(2^k) bits beyond that)");
    std::vector<BigInt> ys;
    ys.reserve(count);
    for (std::size_t j = 1; j <= count; ++j)
        ys.push_back(BigInt(1) << (std::size_t(1) << j));
    return ys;
}

RegimeDiagnostics diagnostics(const std::vector<BigInt>& ys, std::size_t k, double p) {
    if (k < 2) throw domain_error("regime diagnostics need k >= 2");
    check_weights(ys, k);
    check_density(p);

    RegimeDiagnostics d;
    std::size_t jk = argmax_weight(ys, k);
    d.j_k = jk + 1;

    BigInt total2 = 0, max2 = ys[jk] * ys[jk], second2 = 0;
    for (std::size_t j = 0; j < k; ++j) {
        BigInt sq = ys[j] * ys[j];
        total2 += sq;
        if (j != jk && sq > second2) second2 = sq;
    }
    BigInt residual2 = total2 - max2;

    Rat rp = rat_from_double(p);
    d.sigma2_exact = rp * (Rat(1) - rp) * Rat(total2);
    d.ratio_dom_exact = Rat(max2) / Rat(total2);
    d.ratio_maxres_exact = Rat(second2) / Rat(residual2);
    d.ratio_reinsert_exact = Rat(max2) / Rat(residual2);

    d.sigma2 = rat_to_double(d.sigma2_exact);
    d.log2_sigma2 = log2_rat(d.sigma2_exact);
    d.ratio_dom = rat_to_double(d.ratio_dom_exact);
    d.ratio_maxres = rat_to_double(d.ratio_maxres_exact);
    d.ratio_reinsert = rat_to_double(d.ratio_reinsert_exact);
    d.dominated = d.ratio_dom_exact > Rat(19, 20);
    d.trimmed_clt = d.ratio_maxres_exact < Rat(1, 20);
    return d;
}

SimulationResult simulate(const CltConfig& config, unsigned workers) {
    check_weights(config.ys, config.k);
    check_density(config.p);
    if (config.M < 1) throw domain_error("at least one replication required");

    std::size_t k = config.k;
    double p = config.p;
    std::size_t jk = argmax_weight(config.ys, k);

    // Weights relative to the maximum; the normalized sum is exactly
    // invariant under this division, and no huge raw sum is ever formed.
    Rat ymax(config.ys[jk]);
    std::vector<double> w(k);
    for (std::size_t j = 0; j < k; ++j) w[j] = rat_to_double(Rat(config.ys[j]) / ymax);
    double sum_w = 0, sum_w2 = 0;
    for (std::size_t j = 0; j < k; ++j) {
        sum_w += w[j];
        sum_w2 += w[j] * w[j];
    }
    double mu_w = p * sum_w;
    double sigma_w = std::sqrt(p * (1.0 - p) * sum_w2);

    // Trimmed weights relative to the residual maximum.
    bool has_trim = k >= 2;
    std::vector<double> v;
    double mu_v = 0, sigma_v = 1, c_reins = 0;
    if (has_trim) {
        std::size_t jk2 = jk == 0 ? 1 : 0;
        for (std::size_t j = 0; j < k; ++j)
            if (j != jk && config.ys[j] > config.ys[jk2]) jk2 = j;
        Rat ymax2(config.ys[jk2]);
        v.assign(k, 0.0);
        double sum_v = 0, sum_v2 = 0;
        for (std::size_t j = 0; j < k; ++j) {
            if (j == jk) continue;
            v[j] = rat_to_double(Rat(config.ys[j]) / ymax2);
            sum_v += v[j];
            sum_v2 += v[j] * v[j];
        }
        mu_v = p * sum_v;
        sigma_v = std::sqrt(p * (1.0 - p) * sum_v2);

        // c = y_{j_k} / sigma_trim, from its exact square; clamp the
        // non-reinsertable extreme to a representable magnitude.
        Rat rp = rat_from_double(p);
        BigInt residual2 = 0;
        for (std::size_t j = 0; j < k; ++j)
            if (j != jk) residual2 += config.ys[j] * config.ys[j];
        Rat c2 = Rat(config.ys[jk] * config.ys[jk]) / (rp * (Rat(1) - rp) * Rat(residual2));
        c_reins = std::sqrt(rat_to_double(c2));
        if (!std::isfinite(c_reins) || c_reins > kClampHuge) c_reins = kClampHuge;
    }

    std::uint64_t threshold = uniform_threshold(p);
    std::vector<double> full(config.M), trim, reins;
    if (has_trim) {
        trim.resize(config.M);
        reins.resize(config.M);
    }
    run_indexed(config.M, workers, [&](std::uint64_t m) {
        SplitMixStream draws(fold_u64(config.seed ^ kCltDrawTag, m));
        double s_w = 0, s_v = 0;
        bool eps_jk = false;
        for (std::size_t j = 0; j < k; ++j) {
            bool eps = draws.next_bernoulli(threshold);
            if (!eps) continue;
            s_w += w[j];
            if (j == jk)
                eps_jk = true;
            else if (has_trim)
                s_v += v[j];
        }
        full[m] = (s_w - mu_w) / sigma_w;
        if (has_trim) {
            trim[m] = (s_v - mu_v) / sigma_v;
            reins[m] = trim[m] + ((eps_jk ? 1.0 : 0.0) - p) * c_reins;
        }
    });

    SimulationResult out;
    std::sort(full.begin(), full.end());
    out.full = {Normalization::FULL, std::move(full)};
    if (has_trim) {
        std::sort(trim.begin(), trim.end());
        std::sort(reins.begin(), reins.end());
        out.trimmed = EmpiricalLaw{Normalization::TRIMMED, std::move(trim)};
        out.reinserted = EmpiricalLaw{Normalization::TRIMMED, std::move(reins)};
        out.diag = diagnostics(config.ys, k, p);
    }
    return out;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double ks_to_normal(const EmpiricalLaw& law) {
    if (law.values.empty()) throw domain_error("empty law");
    double n = static_cast<double>(law.values.size());
    double d = 0;
    for (std::size_t i = 0; i < law.values.size(); ++i) {
        double phi = normal_cdf(law.values[i]);
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - phi));
        d = std::max(d, std::abs(static_cast<double>(i) / n - phi));
    }
    return d;
}

double ks_two_sample(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw domain_error("empty law");
    double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0;
    while (i < a.size() && j < b.size()) {
        double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

TwoPointFit two_point_fit(const EmpiricalLaw& law, double p, double atom_tolerance) {
    if (law.values.empty()) throw domain_error("empty law");
    check_density(p);
    if (!(atom_tolerance > 0)) throw domain_error("atom tolerance must be positive");
    TwoPointFit fit;
    double s = std::sqrt(p * (1.0 - p));
    fit.atom_upper = (1.0 - p) / s;
    fit.atom_lower = -p / s;
    std::uint64_t up = 0, low = 0;
    for (double value : law.values) {
        double du = std::abs(value - fit.atom_upper);
        double dl = std::abs(value - fit.atom_lower);
        if (std::min(du, dl) > atom_tolerance) continue;
        if (du <= dl)
            ++up;
        else
            ++low;
    }
    double n = static_cast<double>(law.values.size());
    fit.mass_upper = up / n;
    fit.mass_lower = low / n;
    fit.escaped = (law.values.size() - up - low) / n;
    return fit;
}

ReinsertionReport reinsertion_check(const CltConfig& config, unsigned workers) {
    if (config.k < 2) throw domain_error("reinsertion needs k >= 2 (nonempty trimmed sum)");
    SimulationResult sim = simulate(config, workers);
    ReinsertionReport out;
    out.ks_distance = ks_two_sample(sim.reinserted->values, sim.trimmed->values);
    out.diag = *sim.diag;
    out.ratio_reinsert = out.diag.ratio_reinsert;
    return out;
}

AtomsReport atoms_in_fs_check(const std::vector<BigInt>& parent,
                              const std::vector<std::size_t>& subseq_indices) {
    if (parent.empty() || parent.size() > kMaxFsGenerators)
        throw domain_error("parent sequence needs 1.." + std::to_string(kMaxFsGenerators) +
                           " entries");
    if (subseq_indices.empty() || subseq_indices.size() > kMaxAtomsSubsequence)
        throw domain_error("subsequence needs 1.." + std::to_string(kMaxAtomsSubsequence) +
                           " entries");
    for (std::size_t i = 0; i < subseq_indices.size(); ++i) {
        if (subseq_indices[i] < 1 || subseq_indices[i] > parent.size())
            throw domain_error("subsequence index out of range");
        if (i > 0 && subseq_indices[i] <= subseq_indices[i - 1])
            throw domain_error("subsequence indices must be strictly increasing");
    }

    std::vector<BigInt> all_sums = fs(parent);
    std::vector<BigInt> ys;
    ys.reserve(subseq_indices.size());
    for (auto idx : subseq_indices) ys.push_back(parent[idx - 1]);

    AtomsReport report;
    std::size_t total = std::size_t(1) << ys.size();
    report.patterns_checked = total - 1;
    std::vector<BigInt> acc(total);
    for (std::size_t mask = 1; mask < total; ++mask) {
        std::size_t rest = mask & (mask - 1);
        const BigInt& y = ys[std::countr_zero(mask)];
        acc[mask] = rest ? BigInt(acc[rest] + y) : y;
        if (!std::binary_search(all_sums.begin(), all_sums.end(), acc[mask]))
            report.violations.push_back(acc[mask]);
    }
    std::sort(report.violations.begin(), report.violations.end());
    report.violations.erase(std::unique(report.violations.begin(), report.violations.end()),
                            report.violations.end());
    report.all_atoms_in_fs = report.violations.empty();
    return report;
}

} // namespace natp
