#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "bigint.hpp"

namespace natp {

// Weight families for the Bernoulli-weighted sums S_k = sum eps_j y_j.
std::vector<BigInt> family_linear(std::size_t count);               // y_j = j
std::vector<BigInt> family_doubly_exponential(std::size_t count);   // y_j = 2^(2^j)

inline constexpr std::size_t kMaxDoublyExponential = 20;

struct CltConfig {
    std::vector<BigInt> ys;  // at least k positive entries
    double p = 0.5;
    std::size_t k = 2;       // stage: first k weights are used
    std::uint64_t M = 1;     // replications
    std::uint64_t seed = 0;
};

// Variance bookkeeping that separates the two limit regimes: a single
// dominant weight versus a Lindeberg-small residual array. Ratios are exact
// rationals; the double views may round to 0/1/inf for extreme families.
struct RegimeDiagnostics {
    std::size_t j_k = 0;            // 1-based argmax of y_j^2, ties to smallest
    Rat sigma2_exact;               // p(1-p) * sum_{j<=k} y_j^2
    Rat ratio_dom_exact;            // y_{j_k}^2 / sum y_j^2
    Rat ratio_maxres_exact;         // max_{j != j_k} y_j^2 / R_k
    Rat ratio_reinsert_exact;       // y_{j_k}^2 / R_k
    double sigma2 = 0.0;
    double log2_sigma2 = 0.0;
    double ratio_dom = 0.0;
    double ratio_maxres = 0.0;
    double ratio_reinsert = 0.0;
    bool dominated = false;         // ratio_dom > 0.95 (label of convenience)
    bool trimmed_clt = false;       // ratio_maxres < 0.05 (label of convenience)
};

RegimeDiagnostics diagnostics(const std::vector<BigInt>& ys, std::size_t k, double p);

enum class Normalization { FULL, TRIMMED };

struct EmpiricalLaw {
    Normalization norm = Normalization::FULL;
    std::vector<double> values;  // sorted ascending, one per replication
};

// Laws simulated from common Bernoulli draws per replication:
//   full:       (S_k - E S_k) / sigma_k
//   trimmed:    argmax term removed, normalized by its own sigma (k >= 2)
//   reinserted: trimmed value + (eps_{j_k} - p) * y_{j_k} / sigma_trim
// Sums are taken over weights pre-divided by the relevant maximum, which
// leaves the normalized values exactly invariant and never forms huge sums.
struct SimulationResult {
    EmpiricalLaw full;
    std::optional<EmpiricalLaw> trimmed;
    std::optional<EmpiricalLaw> reinserted;
    std::optional<RegimeDiagnostics> diag;  // absent when k = 1
};

SimulationResult simulate(const CltConfig& config, unsigned workers = 1);

double normal_cdf(double x);

// Kolmogorov-Smirnov distance of the law to N(0,1), both one-sided steps.
double ks_to_normal(const EmpiricalLaw& law);

// Two-sample KS distance between sorted samples.
double ks_two_sample(const std::vector<double>& a, const std::vector<double>& b);

// Fraction of the law within atom_tolerance of the two-point atoms
// (1-p)/sqrt(p(1-p)) and -p/sqrt(p(1-p)); ties go to the nearer atom.
struct TwoPointFit {
    double atom_upper = 0.0;
    double atom_lower = 0.0;
    double mass_upper = 0.0;
    double mass_lower = 0.0;
    double escaped = 0.0;
};

TwoPointFit two_point_fit(const EmpiricalLaw& law, double p, double atom_tolerance = 0.05);

// KS distance between the reinserted and trimmed laws under common draws,
// next to the ratio that predicts whether reinsertion is harmless.
struct ReinsertionReport {
    double ks_distance = 0.0;
    double ratio_reinsert = 0.0;
    RegimeDiagnostics diag;
};

ReinsertionReport reinsertion_check(const CltConfig& config, unsigned workers = 1);

// Exhaustively realizes every nonempty Bernoulli pattern on a subsequence of
// a parent sequence and verifies each realized sum is a subset sum of the
// parent. Caps: parent <= 20 entries, subsequence <= 12.
struct AtomsReport {
    std::uint64_t patterns_checked = 0;
    bool all_atoms_in_fs = false;
    std::vector<BigInt> violations;
};

inline constexpr std::size_t kMaxAtomsSubsequence = 12;

AtomsReport atoms_in_fs_check(const std::vector<BigInt>& parent,
                              const std::vector<std::size_t>& subseq_indices);  // 1-based

} // namespace natp
