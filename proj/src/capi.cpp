#include "natp.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "clt.hpp"
#include "color.hpp"
#include "detect.hpp"
#include "errors.hpp"
#include "model.hpp"
#include "patterns.hpp"
#include "stats.hpp"

using natp::BigInt;
using natp::Rat;

struct natp_model {
    natp::SubsetModel impl;
};
struct natp_sample {
    natp::DenseSample impl;
};
struct natp_pattern {
    natp::PatternInstance impl;
};
struct natp_hits {
    natp::ProbeHitReport impl;
};
struct natp_quadcount {
    natp::QuadrupleCount impl;
};
struct natp_minelem {
    natp::MinElementResult impl;
    natp_pattern view;
};
struct natp_secmom {
    natp::SecondMomentReport impl;
};
struct natp_sweep {
    natp::ThresholdSweep impl;
};
struct natp_clt {
    natp::SimulationResult impl;
    double p;
};
struct natp_coloring {
    natp::Coloring impl;
};
struct natp_scan {
    natp::ScanResult impl;
};

namespace {

thread_local std::string t_last_error;

void set_error(const char* what) { t_last_error = what ? what : "unknown error"; }

template <typename Fn>
natp_status wrap(Fn&& fn) noexcept {
    try {
        fn();
        return NATP_OK;
    } catch (const natp::domain_error& e) {
        set_error(e.what());
        return NATP_ERR_DOMAIN;
    } catch (const natp::resource_error& e) {
        set_error(e.what());
        return NATP_ERR_RESOURCE;
    } catch (const std::bad_alloc&) {
        set_error("out of memory");
        return NATP_ERR_RESOURCE;
    } catch (const std::exception& e) {
        set_error(e.what());
        return NATP_ERR_INTERNAL;
    } catch (...) {
        set_error("unknown error");
        return NATP_ERR_INTERNAL;
    }
}

natp_status bad_arg(const char* what) {
    set_error(what);
    return NATP_ERR_BADARG;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

char** dup_string_array(const std::vector<std::string>& strings) {
    char** out = static_cast<char**>(std::calloc(strings.size() ? strings.size() : 1,
                                                 sizeof(char*)));
    if (!out) throw std::bad_alloc();
    try {
        for (std::size_t i = 0; i < strings.size(); ++i) out[i] = dup_string(strings[i]);
    } catch (...) {
        natp_string_array_free(out, strings.size());
        throw;
    }
    return out;
}

std::vector<BigInt> parse_bigints(const char* const* dec, uint64_t count) {
    if (!dec) throw natp::domain_error("null input array");
    std::vector<BigInt> out;
    out.reserve(count);
    for (uint64_t i = 0; i < count; ++i) {
        if (!dec[i]) throw natp::domain_error("null input string");
        out.push_back(natp::bigint_from_dec(dec[i]));
    }
    return out;
}

natp::PatternKind to_kind(natp_pattern_kind kind) {
    switch (kind) {
        case NATP_PATTERN_FS: return natp::PatternKind::FS_PROBE;
        case NATP_PATTERN_FP: return natp::PatternKind::FP_PROBE;
        case NATP_PATTERN_QUADRUPLE: return natp::PatternKind::QUADRUPLE;
        case NATP_PATTERN_EXP: return natp::PatternKind::EXP_QUADRUPLE;
    }
    throw natp::domain_error("unknown pattern kind");
}

natp_pattern_kind from_kind(natp::PatternKind kind) {
    switch (kind) {
        case natp::PatternKind::FS_PROBE: return NATP_PATTERN_FS;
        case natp::PatternKind::FP_PROBE: return NATP_PATTERN_FP;
        case natp::PatternKind::QUADRUPLE: return NATP_PATTERN_QUADRUPLE;
        case natp::PatternKind::EXP_QUADRUPLE: return NATP_PATTERN_EXP;
    }
    return NATP_PATTERN_FS;
}

natp_estimate to_estimate(const natp::Estimate& e) {
    return natp_estimate{e.trials, e.successes, e.point, e.lo, e.hi};
}

std::string rat_str(const Rat& r) { return r.get_str(); }

const natp::EmpiricalLaw* select_law(const natp_clt* clt, natp_clt_law which) {
    switch (which) {
        case NATP_LAW_FULL: return &clt->impl.full;
        case NATP_LAW_TRIMMED:
            return clt->impl.trimmed ? &*clt->impl.trimmed : nullptr;
        case NATP_LAW_REINSERTED:
            return clt->impl.reinserted ? &*clt->impl.reinserted : nullptr;
    }
    return nullptr;
}

} // namespace

extern "C" {

const char* natp_last_error(void) { return t_last_error.c_str(); }

const char* natp_version(void) { return "1.0.0"; }

void natp_string_free(char* s) { std::free(s); }

void natp_string_array_free(char** strings, uint64_t count) {
    if (!strings) return;
    for (uint64_t i = 0; i < count; ++i) std::free(strings[i]);
    std::free(strings);
}

/* ----- model ------------------------------------------------------- */

natp_model* natp_model_create(double p, uint64_t seed) {
    natp_model* out = nullptr;
    wrap([&] { out = new natp_model{natp::SubsetModel(p, seed)}; });
    return out;
}

void natp_model_free(natp_model* model) { delete model; }

natp_status natp_model_contains(const natp_model* model, uint64_t n, int* out) {
    if (!model || !out) return bad_arg("null model or output");
    return wrap([&] { *out = model->impl.contains(n) ? 1 : 0; });
}

natp_status natp_model_contains_dec(const natp_model* model, const char* n_dec, int* out) {
    if (!model || !n_dec || !out) return bad_arg("null model, input, or output");
    return wrap([&] { *out = model->impl.contains(natp::bigint_from_dec(n_dec)) ? 1 : 0; });
}

natp_status natp_model_materialize(const natp_model* model, uint64_t bound,
                                   uint64_t memory_budget_bytes, natp_sample** out) {
    if (!model || !out) return bad_arg("null model or output");
    return wrap([&] {
        uint64_t budget = memory_budget_bytes ? memory_budget_bytes
                                              : natp::SubsetModel::kDefaultMemoryBudget;
        *out = new natp_sample{model->impl.materialize(bound, budget)};
    });
}

void natp_sample_free(natp_sample* sample) { delete sample; }

uint64_t natp_sample_bound(const natp_sample* sample) {
    return sample ? sample->impl.bound() : 0;
}

natp_status natp_sample_test(const natp_sample* sample, uint64_t n, int* out) {
    if (!sample || !out) return bad_arg("null sample or output");
    if (n < 1 || n > sample->impl.bound()) {
        set_error("membership query outside [1..bound]");
        return NATP_ERR_DOMAIN;
    }
    *out = sample->impl.test(n) ? 1 : 0;
    return NATP_OK;
}

natp_status natp_sample_popcount(const natp_sample* sample, uint64_t* out) {
    if (!sample || !out) return bad_arg("null sample or output");
    return wrap([&] { *out = sample->impl.popcount(); });
}

/* ----- patterns ---------------------------------------------------- */

natp_status natp_closure(const char* const* xs_dec, uint64_t xs_count, int multiplicative,
                         char*** out_elements, uint64_t* out_count) {
    if (!out_elements || !out_count) return bad_arg("null output");
    return wrap([&] {
        auto xs = parse_bigints(xs_dec, xs_count);
        auto elems = multiplicative ? natp::fp(xs) : natp::fs(xs);
        std::vector<std::string> strings;
        strings.reserve(elems.size());
        for (const auto& e : elems) strings.push_back(natp::to_dec(e));
        *out_elements = dup_string_array(strings);
        *out_count = strings.size();
    });
}

natp_status natp_pattern_fs_probe(unsigned L, uint64_t j, uint64_t max_bits,
                                  natp_pattern** out) {
    if (!out) return bad_arg("null output");
    return wrap([&] {
        *out = new natp_pattern{
            natp::fs_probe(L, j, max_bits ? max_bits : natp::kDefaultProbeBits)};
    });
}

natp_status natp_pattern_fp_probe(unsigned L, uint64_t j, uint64_t max_bits,
                                  natp_pattern** out) {
    if (!out) return bad_arg("null output");
    return wrap([&] {
        *out = new natp_pattern{
            natp::fp_probe(L, j, max_bits ? max_bits : natp::kDefaultProbeBits)};
    });
}

natp_status natp_pattern_exp_probe(uint64_t j, uint64_t max_bits, natp_pattern** out) {
    if (!out) return bad_arg("null output");
    return wrap([&] {
        *out = new natp_pattern{
            natp::exp_probe(j, max_bits ? max_bits : natp::kDefaultExpBits)};
    });
}

natp_status natp_pattern_quadruple(const char* x_dec, const char* y_dec, natp_pattern** out) {
    if (!x_dec || !y_dec || !out) return bad_arg("null input or output");
    return wrap([&] {
        *out = new natp_pattern{
            natp::quadruple(natp::bigint_from_dec(x_dec), natp::bigint_from_dec(y_dec))};
    });
}

void natp_pattern_free(natp_pattern* pattern) { delete pattern; }

natp_pattern_kind natp_pattern_kind_of(const natp_pattern* pattern) {
    return pattern ? from_kind(pattern->impl.kind) : NATP_PATTERN_FS;
}

uint64_t natp_pattern_generator_count(const natp_pattern* pattern) {
    return pattern ? pattern->impl.generators.size() : 0;
}

uint64_t natp_pattern_element_count(const natp_pattern* pattern) {
    return pattern ? pattern->impl.elements.size() : 0;
}

natp_status natp_pattern_generator(const natp_pattern* pattern, uint64_t index,
                                   char** out_dec) {
    if (!pattern || !out_dec) return bad_arg("null pattern or output");
    if (index >= pattern->impl.generators.size()) {
        set_error("generator index out of range");
        return NATP_ERR_DOMAIN;
    }
    return wrap([&] { *out_dec = dup_string(natp::to_dec(pattern->impl.generators[index])); });
}

natp_status natp_pattern_element(const natp_pattern* pattern, uint64_t index, char** out_dec) {
    if (!pattern || !out_dec) return bad_arg("null pattern or output");
    if (index >= pattern->impl.elements.size()) {
        set_error("element index out of range");
        return NATP_ERR_DOMAIN;
    }
    return wrap([&] { *out_dec = dup_string(natp::to_dec(pattern->impl.elements[index])); });
}

/* ----- detection ---------------------------------------------------- */

natp_status natp_probe_hits(const natp_model* model, natp_pattern_kind kind, unsigned L,
                            uint64_t j_begin, uint64_t j_end, unsigned workers,
                            uint64_t max_bits, natp_hits** out) {
    if (!model || !out) return bad_arg("null model or output");
    return wrap([&] {
        natp::ProbeFamily family{to_kind(kind), L};
        *out = new natp_hits{natp::probe_hits(model->impl, family, j_begin, j_end, workers,
                                              max_bits ? max_bits : natp::kDefaultProbeBits)};
    });
}

void natp_hits_free(natp_hits* hits) { delete hits; }

uint64_t natp_hits_count(const natp_hits* hits) { return hits ? hits->impl.hits.size() : 0; }

natp_status natp_hits_get(const natp_hits* hits, uint64_t index, uint64_t* out_j) {
    if (!hits || !out_j) return bad_arg("null report or output");
    if (index >= hits->impl.hits.size()) {
        set_error("hit index out of range");
        return NATP_ERR_DOMAIN;
    }
    *out_j = hits->impl.hits[index];
    return NATP_OK;
}

uint64_t natp_hits_elements_per_probe(const natp_hits* hits) {
    return hits ? hits->impl.elements_per_probe : 0;
}

int natp_hits_truncated(const natp_hits* hits, uint64_t* out_first_untested) {
    if (!hits || !hits->impl.truncated) return 0;
    if (out_first_untested) *out_first_untested = hits->impl.truncated_at;
    return 1;
}

natp_status natp_find_fs(const natp_sample* sample, unsigned L, uint64_t search_bound,
                         int* out_found, uint64_t* out_witness) {
    if (!sample || !out_found || !out_witness) return bad_arg("null sample or output");
    return wrap([&] {
        auto witness = natp::find_fs(sample->impl, L, search_bound);
        *out_found = witness.has_value() ? 1 : 0;
        if (witness)
            for (unsigned i = 0; i < L; ++i) out_witness[i] = (*witness)[i];
    });
}

natp_status natp_count_quadruples(const natp_sample* sample, uint64_t N,
                                  uint64_t witness_cap, natp_quadcount** out) {
    if (!sample || !out) return bad_arg("null sample or output");
    return wrap([&] {
        *out = new natp_quadcount{natp::count_quadruples(sample->impl, N, witness_cap)};
    });
}

void natp_quadcount_free(natp_quadcount* qc) { delete qc; }

uint64_t natp_quadcount_value(const natp_quadcount* qc) { return qc ? qc->impl.count : 0; }

uint64_t natp_quadcount_witness_count(const natp_quadcount* qc) {
    return qc ? qc->impl.witnesses.size() : 0;
}

natp_status natp_quadcount_witness(const natp_quadcount* qc, uint64_t index, uint64_t* out_x,
                                   uint64_t* out_y) {
    if (!qc || !out_x || !out_y) return bad_arg("null report or output");
    if (index >= qc->impl.witnesses.size()) {
        set_error("witness index out of range");
        return NATP_ERR_DOMAIN;
    }
    *out_x = qc->impl.witnesses[index].first;
    *out_y = qc->impl.witnesses[index].second;
    return NATP_OK;
}

int natp_quadcount_witnesses_truncated(const natp_quadcount* qc) {
    return qc && qc->impl.witnesses_truncated ? 1 : 0;
}

natp_status natp_min_element_probe(const natp_model* model, natp_pattern_kind kind,
                                   unsigned L, const char* m_dec, uint64_t attempt_cap,
                                   uint64_t max_bits, natp_minelem** out) {
    if (!model || !m_dec || !out) return bad_arg("null model, input, or output");
    return wrap([&] {
        natp::ProbeFamily family{to_kind(kind), L};
        auto result = natp::min_element_probe(model->impl, family,
                                              natp::bigint_from_dec(m_dec), attempt_cap,
                                              max_bits ? max_bits : natp::kDefaultProbeBits);
        auto* handle = new natp_minelem{std::move(result), {}};
        if (handle->impl.probe) handle->view.impl = *handle->impl.probe;
        *out = handle;
    });
}

void natp_minelem_free(natp_minelem* me) { delete me; }

int natp_minelem_found(const natp_minelem* me) {
    return me && me->impl.probe.has_value() ? 1 : 0;
}

const natp_pattern* natp_minelem_pattern(const natp_minelem* me) {
    return me && me->impl.probe.has_value() ? &me->view : nullptr;
}

uint64_t natp_minelem_first_j(const natp_minelem* me) { return me ? me->impl.first_j : 0; }

uint64_t natp_minelem_attempts(const natp_minelem* me) { return me ? me->impl.attempts : 0; }

int natp_minelem_truncated(const natp_minelem* me) {
    return me && me->impl.truncated ? 1 : 0;
}

/* ----- statistics ---------------------------------------------------- */

natp_status natp_estimate_event_prob(const natp_pattern* pattern, double p, uint64_t trials,
                                     uint64_t seed_base, unsigned workers,
                                     natp_estimate* out) {
    if (!pattern || !out) return bad_arg("null pattern or output");
    return wrap([&] {
        *out = to_estimate(
            natp::estimate_event_prob(pattern->impl, p, trials, seed_base, workers));
    });
}

natp_status natp_expected_quadruples(uint64_t N, double p, char** out_exact_rat,
                                     char** out_idealized_rat, char** out_diff_rat,
                                     double* out_exact, double* out_idealized, double* out_diff) {
    return wrap([&] {
        auto report = natp::expected_quadruples_exact(N, p);
        if (out_exact_rat) *out_exact_rat = dup_string(rat_str(report.exact));
        if (out_idealized_rat) *out_idealized_rat = dup_string(rat_str(report.idealized));
        if (out_diff_rat) *out_diff_rat = dup_string(rat_str(report.diff));
        if (out_exact) *out_exact = natp::rat_to_double(report.exact);
        if (out_idealized) *out_idealized = natp::rat_to_double(report.idealized);
        if (out_diff) *out_diff = natp::rat_to_double(report.diff);
    });
}

natp_status natp_exact_small_universe(uint64_t N, double p, natp_secmom** out) {
    if (!out) return bad_arg("null output");
    return wrap([&] { *out = new natp_secmom{natp::exact_small_universe(N, p)}; });
}

void natp_secmom_free(natp_secmom* sm) { delete sm; }

uint64_t natp_secmom_universe(const natp_secmom* sm) { return sm ? sm->impl.universe : 0; }

natp_status natp_secmom_value(const natp_secmom* sm, natp_secmom_field field, char** out_rat,
                              double* out_approx) {
    if (!sm) return bad_arg("null report");
    return wrap([&] {
        const Rat* r = nullptr;
        switch (field) {
            case NATP_SM_EX: r = &sm->impl.exact_EX; break;
            case NATP_SM_EX2: r = &sm->impl.exact_EX2; break;
            case NATP_SM_PXPOS: r = &sm->impl.exact_PX_pos; break;
            case NATP_SM_PZ: r = &sm->impl.pz_lower_bound; break;
            case NATP_SM_IDEALIZED: r = &sm->impl.idealized_EX; break;
        }
        if (!r) throw natp::domain_error("unknown report field");
        if (out_rat) *out_rat = dup_string(rat_str(*r));
        if (out_approx) *out_approx = natp::rat_to_double(*r);
    });
}

int natp_secmom_pz_holds(const natp_secmom* sm) { return sm && sm->impl.pz_holds ? 1 : 0; }

natp_status natp_estimate_px_pos(uint64_t N, double p, uint64_t trials, uint64_t seed_base,
                                 unsigned workers, uint64_t memory_budget_bytes,
                                 natp_estimate* out) {
    if (!out) return bad_arg("null output");
    return wrap([&] {
        uint64_t budget = memory_budget_bytes ? memory_budget_bytes
                                              : natp::SubsetModel::kDefaultMemoryBudget;
        *out = to_estimate(natp::estimate_PX_pos(N, p, trials, seed_base, workers, budget));
    });
}

natp_status natp_mc_quadruples(uint64_t N, double p, uint64_t trials, uint64_t seed_base,
                               unsigned workers, uint64_t memory_budget_bytes,
                               double* out_mean_x, double* out_mean_x2,
                               natp_estimate* out_px_pos) {
    return wrap([&] {
        uint64_t budget = memory_budget_bytes ? memory_budget_bytes
                                              : natp::SubsetModel::kDefaultMemoryBudget;
        auto report = natp::mc_quadruple_stats(N, p, trials, seed_base, workers, budget);
        if (out_mean_x) *out_mean_x = report.mean_X;
        if (out_mean_x2) *out_mean_x2 = report.mean_X2;
        if (out_px_pos) *out_px_pos = to_estimate(report.px_pos);
    });
}

natp_status natp_threshold_sweep(unsigned L, uint64_t N, double target,
                                 uint64_t trials_per_p, uint64_t seed_base, unsigned workers,
                                 natp_sweep** out) {
    if (!out) return bad_arg("null output");
    return wrap([&] {
        *out = new natp_sweep{
            natp::threshold_sweep(L, N, target, trials_per_p, seed_base, workers)};
    });
}

void natp_sweep_free(natp_sweep* sweep) { delete sweep; }

double natp_sweep_lo(const natp_sweep* sweep) { return sweep ? sweep->impl.lo : 0.0; }

double natp_sweep_hi(const natp_sweep* sweep) { return sweep ? sweep->impl.hi : 0.0; }

natp_status natp_sweep_estimate_lo(const natp_sweep* sweep, natp_estimate* out) {
    if (!sweep || !out) return bad_arg("null sweep or output");
    *out = to_estimate(sweep->impl.est_lo);
    return NATP_OK;
}

natp_status natp_sweep_estimate_hi(const natp_sweep* sweep, natp_estimate* out) {
    if (!sweep || !out) return bad_arg("null sweep or output");
    *out = to_estimate(sweep->impl.est_hi);
    return NATP_OK;
}

uint64_t natp_sweep_eval_count(const natp_sweep* sweep) {
    return sweep ? sweep->impl.evals.size() : 0;
}

natp_status natp_sweep_eval(const natp_sweep* sweep, uint64_t index, double* out_p,
                            natp_estimate* out_est) {
    if (!sweep) return bad_arg("null sweep");
    if (index >= sweep->impl.evals.size()) {
        set_error("evaluation index out of range");
        return NATP_ERR_DOMAIN;
    }
    if (out_p) *out_p = sweep->impl.evals[index].p;
    if (out_est) *out_est = to_estimate(sweep->impl.evals[index].est);
    return NATP_OK;
}

/* ----- weighted sums ------------------------------------------------- */

natp_status natp_clt_run(const char* const* ys_dec, uint64_t ys_count, double p, uint64_t k,
                         uint64_t M, uint64_t seed, unsigned workers, natp_clt** out) {
    if (!out) return bad_arg("null output");
    return wrap([&] {
        natp::CltConfig config;
        config.ys = parse_bigints(ys_dec, ys_count);
        config.p = p;
        config.k = static_cast<std::size_t>(k);
        config.M = M;
        config.seed = seed;
        *out = new natp_clt{natp::simulate(config, workers), p};
    });
}

natp_status natp_clt_run_family(const char* family, double p, uint64_t k, uint64_t M,
                                uint64_t seed, unsigned workers, natp_clt** out) {
    if (!family || !out) return bad_arg("null family or output");
    return wrap([&] {
        natp::CltConfig config;
        std::string name(family);
        if (name == "linear")
            config.ys = natp::family_linear(static_cast<std::size_t>(k));
        else if (name == "doubly-exponential")
            config.ys = natp::family_doubly_exponential(static_cast<std::size_t>(k));
        else
            throw natp::domain_error("unknown weight family '" + name +
                                     "' (expected linear or doubly-exponential)");
        config.p = p;
        config.k = static_cast<std::size_t>(k);
        config.M = M;
        config.seed = seed;
        *out = new natp_clt{natp::simulate(config, workers), p};
    });
}

void natp_clt_free(natp_clt* clt) { delete clt; }

uint64_t natp_clt_replications(const natp_clt* clt) {
    return clt ? clt->impl.full.values.size() : 0;
}

int natp_clt_has_trimmed(const natp_clt* clt) {
    return clt && clt->impl.trimmed.has_value() ? 1 : 0;
}

natp_status natp_clt_get_diagnostics(const natp_clt* clt, natp_clt_diagnostics* out) {
    if (!clt || !out) return bad_arg("null run or output");
    if (!clt->impl.diag) {
        set_error("diagnostics need k >= 2");
        return NATP_ERR_DOMAIN;
    }
    const auto& d = *clt->impl.diag;
    out->j_k = d.j_k;
    out->sigma2 = d.sigma2;
    out->log2_sigma2 = d.log2_sigma2;
    out->ratio_dom = d.ratio_dom;
    out->ratio_maxres = d.ratio_maxres;
    out->ratio_reinsert = d.ratio_reinsert;
    out->dominated = d.dominated ? 1 : 0;
    out->trimmed_clt = d.trimmed_clt ? 1 : 0;
    return NATP_OK;
}

natp_status natp_clt_diag_exact(const natp_clt* clt, natp_clt_ratio which, char** out_rat) {
    if (!clt || !out_rat) return bad_arg("null run or output");
    if (!clt->impl.diag) {
        set_error("diagnostics need k >= 2");
        return NATP_ERR_DOMAIN;
    }
    return wrap([&] {
        const auto& d = *clt->impl.diag;
        const Rat* r = nullptr;
        switch (which) {
            case NATP_RATIO_SIGMA2: r = &d.sigma2_exact; break;
            case NATP_RATIO_DOM: r = &d.ratio_dom_exact; break;
            case NATP_RATIO_MAXRES: r = &d.ratio_maxres_exact; break;
            case NATP_RATIO_REINSERT: r = &d.ratio_reinsert_exact; break;
        }
        if (!r) throw natp::domain_error("unknown diagnostic ratio");
        *out_rat = dup_string(rat_str(*r));
    });
}

natp_status natp_clt_law_values(const natp_clt* clt, natp_clt_law which,
                                const double** out_values, uint64_t* out_count) {
    if (!clt || !out_values || !out_count) return bad_arg("null run or output");
    const natp::EmpiricalLaw* law = select_law(clt, which);
    if (!law) {
        set_error("trimmed and reinserted laws need k >= 2");
        return NATP_ERR_DOMAIN;
    }
    *out_values = law->values.data();
    *out_count = law->values.size();
    return NATP_OK;
}

natp_status natp_clt_ks_normal(const natp_clt* clt, natp_clt_law which, double* out) {
    if (!clt || !out) return bad_arg("null run or output");
    const natp::EmpiricalLaw* law = select_law(clt, which);
    if (!law) {
        set_error("trimmed and reinserted laws need k >= 2");
        return NATP_ERR_DOMAIN;
    }
    return wrap([&] { *out = natp::ks_to_normal(*law); });
}

natp_status natp_clt_two_point(const natp_clt* clt, double atom_tolerance,
                               double* out_atom_upper, double* out_atom_lower,
                               double* out_mass_upper, double* out_mass_lower,
                               double* out_escaped) {
    if (!clt) return bad_arg("null run");
    return wrap([&] {
        auto fit = natp::two_point_fit(clt->impl.full, clt->p, atom_tolerance);
        if (out_atom_upper) *out_atom_upper = fit.atom_upper;
        if (out_atom_lower) *out_atom_lower = fit.atom_lower;
        if (out_mass_upper) *out_mass_upper = fit.mass_upper;
        if (out_mass_lower) *out_mass_lower = fit.mass_lower;
        if (out_escaped) *out_escaped = fit.escaped;
    });
}

natp_status natp_clt_reinsertion_ks(const natp_clt* clt, double* out) {
    if (!clt || !out) return bad_arg("null run or output");
    if (!clt->impl.trimmed || !clt->impl.reinserted) {
        set_error("reinsertion needs k >= 2 (nonempty trimmed sum)");
        return NATP_ERR_DOMAIN;
    }
    return wrap([&] {
        *out = natp::ks_two_sample(clt->impl.reinserted->values, clt->impl.trimmed->values);
    });
}

natp_status natp_atoms_check(const char* const* parent_dec, uint64_t parent_count,
                             const uint64_t* subseq_1based, uint64_t subseq_count,
                             uint64_t* out_patterns_checked, int* out_all_in,
                             char*** out_violations, uint64_t* out_violation_count) {
    if (!subseq_1based) return bad_arg("null subsequence");
    return wrap([&] {
        auto parent = parse_bigints(parent_dec, parent_count);
        std::vector<std::size_t> subseq(subseq_1based, subseq_1based + subseq_count);
        auto report = natp::atoms_in_fs_check(parent, subseq);
        if (out_patterns_checked) *out_patterns_checked = report.patterns_checked;
        if (out_all_in) *out_all_in = report.all_atoms_in_fs ? 1 : 0;
        if (out_violations && out_violation_count) {
            std::vector<std::string> strings;
            strings.reserve(report.violations.size());
            for (const auto& v : report.violations) strings.push_back(natp::to_dec(v));
            *out_violations = dup_string_array(strings);
            *out_violation_count = strings.size();
        }
    });
}

/* ----- colorings ------------------------------------------------------ */

natp_status natp_coloring_create(uint64_t N, unsigned c, uint64_t seed, natp_coloring** out) {
    if (!out) return bad_arg("null output");
    return wrap([&] { *out = new natp_coloring{natp::random_coloring(N, c, seed)}; });
}

void natp_coloring_free(natp_coloring* coloring) { delete coloring; }

uint64_t natp_coloring_bound(const natp_coloring* coloring) {
    return coloring ? coloring->impl.N : 0;
}

unsigned natp_coloring_colors(const natp_coloring* coloring) {
    return coloring ? coloring->impl.c : 0;
}

natp_status natp_coloring_get(const natp_coloring* coloring, uint64_t n, unsigned* out) {
    if (!coloring || !out) return bad_arg("null coloring or output");
    if (n < 1 || n > coloring->impl.N) {
        set_error("color query outside [1..N]");
        return NATP_ERR_DOMAIN;
    }
    *out = coloring->impl.color_of(n);
    return NATP_OK;
}

natp_status natp_find_mono_fs(const natp_coloring* coloring, unsigned L, int* out_found,
                              uint64_t* out_witness, unsigned* out_color) {
    if (!coloring || !out_found || !out_witness || !out_color)
        return bad_arg("null coloring or output");
    return wrap([&] {
        auto witness = natp::find_mono_fs(coloring->impl, L);
        *out_found = witness.has_value() ? 1 : 0;
        if (witness) {
            for (unsigned i = 0; i < L; ++i) out_witness[i] = witness->xs[i];
            *out_color = witness->color;
        }
    });
}

natp_status natp_find_mono_quadruple(const natp_coloring* coloring, int strict,
                                     int* out_found, uint64_t* out_x, uint64_t* out_y,
                                     unsigned* out_color) {
    if (!coloring || !out_found || !out_x || !out_y || !out_color)
        return bad_arg("null coloring or output");
    return wrap([&] {
        auto witness = natp::find_mono_quadruple(coloring->impl, strict != 0);
        *out_found = witness.has_value() ? 1 : 0;
        if (witness) {
            *out_x = witness->x;
            *out_y = witness->y;
            *out_color = witness->color;
        }
    });
}

natp_status natp_scan_2colorings(uint64_t N, int strict, natp_scan** out) {
    if (!out) return bad_arg("null output");
    return wrap([&] {
        *out = new natp_scan{natp::exhaustive_2coloring_scan(N, strict != 0)};
    });
}

void natp_scan_free(natp_scan* scan) { delete scan; }

int natp_scan_witness_found(const natp_scan* scan) {
    return scan && scan->impl.witness_found ? 1 : 0;
}

uint64_t natp_scan_nodes(const natp_scan* scan) { return scan ? scan->impl.nodes : 0; }

uint64_t natp_scan_constraints(const natp_scan* scan) {
    return scan ? scan->impl.constraint_count : 0;
}

natp_status natp_scan_color(const natp_scan* scan, uint64_t n, unsigned* out) {
    if (!scan || !out) return bad_arg("null scan or output");
    if (!scan->impl.witness_found) {
        set_error("scan found no avoiding coloring");
        return NATP_ERR_DOMAIN;
    }
    if (n < 1 || n > scan->impl.coloring.size()) {
        set_error("color query outside [1..N]");
        return NATP_ERR_DOMAIN;
    }
    *out = scan->impl.coloring[n - 1];
    return NATP_OK;
}

natp_status natp_hindman_sequence(const natp_coloring* coloring, unsigned L, int* out_found,
                                  unsigned* out_color, char*** out_ys, uint64_t* out_count) {
    if (!coloring || !out_found || !out_ys || !out_count)
        return bad_arg("null coloring or output");
    return wrap([&] {
        auto seq = natp::hindman_sequence(coloring->impl, L);
        *out_found = seq.found ? 1 : 0;
        if (out_color && seq.found) *out_color = seq.color;
        std::vector<std::string> strings;
        strings.reserve(seq.ys.size());
        for (const auto& y : seq.ys) strings.push_back(natp::to_dec(y));
        *out_ys = dup_string_array(strings);
        *out_count = strings.size();
    });
}

} /* extern "C" */
