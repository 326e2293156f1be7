/* natp: random additive/multiplicative structure laboratory.
 *
 * C interface over opaque handles. Every function that can fail returns a
 * natp_status; on failure natp_last_error() (thread-local) describes what
 * went wrong. Big integers and exact rationals cross this boundary as
 * decimal strings ("123", "3/16"); free them with natp_string_free.
 * Pointers returned as "borrowed" stay valid until their handle is freed.
 */
#ifndef NATP_H
#define NATP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum natp_status {
    NATP_OK = 0,
    NATP_ERR_DOMAIN = 1,   /* precondition violated / bad parameter */
    NATP_ERR_RESOURCE = 2, /* memory, bit budget, or sieve extent exceeded */
    NATP_ERR_BADARG = 3,   /* null handle or output pointer */
    NATP_ERR_INTERNAL = 4
} natp_status;

const char* natp_last_error(void);
const char* natp_version(void);

void natp_string_free(char* s);
void natp_string_array_free(char** strings, uint64_t count);

/* ------------------------------------------------------------------ */
/* Random subset model and dense samples                               */

typedef struct natp_model natp_model;
typedef struct natp_sample natp_sample;

/* Bernoulli(p) subset of the naturals determined by (p, seed). */
natp_model* natp_model_create(double p, uint64_t seed);
void natp_model_free(natp_model* model);

natp_status natp_model_contains(const natp_model* model, uint64_t n, int* out);
natp_status natp_model_contains_dec(const natp_model* model, const char* n_dec, int* out);

/* Bit vector over [1..bound]; memory_budget_bytes 0 means the 2^30 default. */
natp_status natp_model_materialize(const natp_model* model, uint64_t bound,
                                   uint64_t memory_budget_bytes, natp_sample** out);
void natp_sample_free(natp_sample* sample);

uint64_t natp_sample_bound(const natp_sample* sample);
natp_status natp_sample_test(const natp_sample* sample, uint64_t n, int* out);
natp_status natp_sample_popcount(const natp_sample* sample, uint64_t* out);

/* ------------------------------------------------------------------ */
/* Patterns                                                            */

typedef enum natp_pattern_kind {
    NATP_PATTERN_FS = 0,
    NATP_PATTERN_FP = 1,
    NATP_PATTERN_QUADRUPLE = 2,
    NATP_PATTERN_EXP = 3
} natp_pattern_kind;

typedef struct natp_pattern natp_pattern;

/* Nonempty subset sums (multiplicative=0) or products (=1) of distinct
 * positive integers; out_elements/out_count receive a decimal-string array. */
natp_status natp_closure(const char* const* xs_dec, uint64_t xs_count, int multiplicative,
                         char*** out_elements, uint64_t* out_count);

/* max_bits 0 means the default budget (2^20 bits; 16384 for exp). */
natp_status natp_pattern_fs_probe(unsigned L, uint64_t j, uint64_t max_bits,
                                  natp_pattern** out);
natp_status natp_pattern_fp_probe(unsigned L, uint64_t j, uint64_t max_bits,
                                  natp_pattern** out);
natp_status natp_pattern_exp_probe(uint64_t j, uint64_t max_bits, natp_pattern** out);
natp_status natp_pattern_quadruple(const char* x_dec, const char* y_dec, natp_pattern** out);
void natp_pattern_free(natp_pattern* pattern);

natp_pattern_kind natp_pattern_kind_of(const natp_pattern* pattern);
uint64_t natp_pattern_generator_count(const natp_pattern* pattern);
uint64_t natp_pattern_element_count(const natp_pattern* pattern);
natp_status natp_pattern_generator(const natp_pattern* pattern, uint64_t index, char** out_dec);
natp_status natp_pattern_element(const natp_pattern* pattern, uint64_t index, char** out_dec);

/* ------------------------------------------------------------------ */
/* Detection                                                           */

typedef struct natp_hits natp_hits;

/* Tests probes j in [j_begin, j_end) for full inclusion in the model.
 * kind is NATP_PATTERN_FS or NATP_PATTERN_FP; workers 0 or 1 is serial. */
natp_status natp_probe_hits(const natp_model* model, natp_pattern_kind kind, unsigned L,
                            uint64_t j_begin, uint64_t j_end, unsigned workers,
                            uint64_t max_bits, natp_hits** out);
void natp_hits_free(natp_hits* hits);

uint64_t natp_hits_count(const natp_hits* hits);
natp_status natp_hits_get(const natp_hits* hits, uint64_t index, uint64_t* out_j);
uint64_t natp_hits_elements_per_probe(const natp_hits* hits);
/* Returns 1 and fills out_first_untested when the scan hit the bit budget. */
int natp_hits_truncated(const natp_hits* hits, uint64_t* out_first_untested);

/* Lexicographically least increasing L-tuple with every subset sum in the
 * sample; out_witness must hold L entries. *out_found is 0 when absent. */
natp_status natp_find_fs(const natp_sample* sample, unsigned L, uint64_t search_bound,
                         int* out_found, uint64_t* out_witness);

typedef struct natp_quadcount natp_quadcount;

natp_status natp_count_quadruples(const natp_sample* sample, uint64_t N,
                                  uint64_t witness_cap, natp_quadcount** out);
void natp_quadcount_free(natp_quadcount* qc);
uint64_t natp_quadcount_value(const natp_quadcount* qc);
uint64_t natp_quadcount_witness_count(const natp_quadcount* qc);
natp_status natp_quadcount_witness(const natp_quadcount* qc, uint64_t index,
                                   uint64_t* out_x, uint64_t* out_y);
int natp_quadcount_witnesses_truncated(const natp_quadcount* qc);

typedef struct natp_minelem natp_minelem;

/* First fully included probe of the family whose elements all exceed M;
 * attempt_cap 0 picks ceil(50 / p^R). */
natp_status natp_min_element_probe(const natp_model* model, natp_pattern_kind kind,
                                   unsigned L, const char* m_dec, uint64_t attempt_cap,
                                   uint64_t max_bits, natp_minelem** out);
void natp_minelem_free(natp_minelem* me);
int natp_minelem_found(const natp_minelem* me);
/* Borrowed; NULL when not found. */
const natp_pattern* natp_minelem_pattern(const natp_minelem* me);
uint64_t natp_minelem_first_j(const natp_minelem* me);
uint64_t natp_minelem_attempts(const natp_minelem* me);
int natp_minelem_truncated(const natp_minelem* me);

/* ------------------------------------------------------------------ */
/* Statistics                                                          */

typedef struct natp_estimate {
    uint64_t trials;
    uint64_t successes;
    double point;
    double lo; /* Wilson 95% score interval */
    double hi;
} natp_estimate;

/* P(every pattern element is in a density-p set) over independent models
 * seeded seed_base, seed_base+1, ... */
natp_status natp_estimate_event_prob(const natp_pattern* pattern, double p, uint64_t trials,
                                     uint64_t seed_base, unsigned workers,
                                     natp_estimate* out);

/* Exact E[X_N] next to the idealized p^4 N^2; any output may be NULL.
 * Rationals are "num/den" strings. */
natp_status natp_expected_quadruples(uint64_t N, double p, char** out_exact_rat,
                                     char** out_idealized_rat, char** out_diff_rat,
                                     double* out_exact, double* out_idealized, double* out_diff);

typedef struct natp_secmom natp_secmom;

typedef enum natp_secmom_field {
    NATP_SM_EX = 0,     /* E[X_N] */
    NATP_SM_EX2 = 1,    /* E[X_N^2] */
    NATP_SM_PXPOS = 2,  /* P(X_N > 0) */
    NATP_SM_PZ = 3,     /* (E X)^2 / E[X^2] */
    NATP_SM_IDEALIZED = 4   /* p^4 N^2 */
} natp_secmom_field;

/* Exhaustive exact distribution over all subsets of [1..max(2N, N^2)]. */
natp_status natp_exact_small_universe(uint64_t N, double p, natp_secmom** out);
void natp_secmom_free(natp_secmom* sm);
uint64_t natp_secmom_universe(const natp_secmom* sm);
/* Either output may be NULL. */
natp_status natp_secmom_value(const natp_secmom* sm, natp_secmom_field field,
                              char** out_rat, double* out_approx);
int natp_secmom_pz_holds(const natp_secmom* sm);

natp_status natp_estimate_px_pos(uint64_t N, double p, uint64_t trials, uint64_t seed_base,
                                 unsigned workers, uint64_t memory_budget_bytes,
                                 natp_estimate* out);

natp_status natp_mc_quadruples(uint64_t N, double p, uint64_t trials, uint64_t seed_base,
                               unsigned workers, uint64_t memory_budget_bytes,
                               double* out_mean_x, double* out_mean_x2,
                               natp_estimate* out_px_pos);

typedef struct natp_sweep natp_sweep;

/* Bisection with common random numbers for the density where the witness
 * probability crosses target; final bracket is narrower than 0.01. */
natp_status natp_threshold_sweep(unsigned L, uint64_t N, double target,
                                 uint64_t trials_per_p, uint64_t seed_base,
                                 unsigned workers, natp_sweep** out);
void natp_sweep_free(natp_sweep* sweep);
double natp_sweep_lo(const natp_sweep* sweep);
double natp_sweep_hi(const natp_sweep* sweep);
natp_status natp_sweep_estimate_lo(const natp_sweep* sweep, natp_estimate* out);
natp_status natp_sweep_estimate_hi(const natp_sweep* sweep, natp_estimate* out);
uint64_t natp_sweep_eval_count(const natp_sweep* sweep);
natp_status natp_sweep_eval(const natp_sweep* sweep, uint64_t index, double* out_p,
                            natp_estimate* out_est);

/* ------------------------------------------------------------------ */
/* Weighted Bernoulli sums                                             */

typedef struct natp_clt natp_clt;

typedef struct natp_clt_diagnostics {
    uint64_t j_k;          /* 1-based argmax of y_j^2 */
    double sigma2;         /* may round to inf for extreme families */
    double log2_sigma2;    /* always finite */
    double ratio_dom;
    double ratio_maxres;
    double ratio_reinsert; /* may round to inf */
    int dominated;         /* ratio_dom > 0.95 */
    int trimmed_clt;       /* ratio_maxres < 0.05 */
} natp_clt_diagnostics;

typedef enum natp_clt_law {
    NATP_LAW_FULL = 0,
    NATP_LAW_TRIMMED = 1,
    NATP_LAW_REINSERTED = 2
} natp_clt_law;

typedef enum natp_clt_ratio {
    NATP_RATIO_SIGMA2 = 0,
    NATP_RATIO_DOM = 1,
    NATP_RATIO_MAXRES = 2,
    NATP_RATIO_REINSERT = 3
} natp_clt_ratio;

/* M replications of the stage-k normalized sum with the first k of ys_count
 * weights (decimal strings). Trimmed/reinserted laws exist only for k >= 2. */
natp_status natp_clt_run(const char* const* ys_dec, uint64_t ys_count, double p, uint64_t k,
                         uint64_t M, uint64_t seed, unsigned workers, natp_clt** out);
/* family is "linear" or "doubly-exponential"; weights are built internally. */
natp_status natp_clt_run_family(const char* family, double p, uint64_t k, uint64_t M,
                                uint64_t seed, unsigned workers, natp_clt** out);
void natp_clt_free(natp_clt* clt);

uint64_t natp_clt_replications(const natp_clt* clt);
int natp_clt_has_trimmed(const natp_clt* clt);
natp_status natp_clt_get_diagnostics(const natp_clt* clt, natp_clt_diagnostics* out);
/* Exact rational behind a diagnostic ratio, as "num/den". */
natp_status natp_clt_diag_exact(const natp_clt* clt, natp_clt_ratio which, char** out_rat);
/* Borrowed pointer to the sorted law values (length = replications). */
natp_status natp_clt_law_values(const natp_clt* clt, natp_clt_law which,
                                const double** out_values, uint64_t* out_count);
natp_status natp_clt_ks_normal(const natp_clt* clt, natp_clt_law which, double* out);
natp_status natp_clt_two_point(const natp_clt* clt, double atom_tolerance,
                               double* out_atom_upper, double* out_atom_lower,
                               double* out_mass_upper, double* out_mass_lower,
                               double* out_escaped);
/* Two-sample KS between reinserted and trimmed laws (common draws). */
natp_status natp_clt_reinsertion_ks(const natp_clt* clt, double* out);

/* Realizes every nonempty Bernoulli pattern on the 1-based subsequence of
 * parent and checks each realized sum against the parent's subset sums. */
natp_status natp_atoms_check(const char* const* parent_dec, uint64_t parent_count,
                             const uint64_t* subseq_1based, uint64_t subseq_count,
                             uint64_t* out_patterns_checked, int* out_all_in,
                             char*** out_violations, uint64_t* out_violation_count);

/* ------------------------------------------------------------------ */
/* Colorings                                                           */

typedef struct natp_coloring natp_coloring;
typedef struct natp_scan natp_scan;

natp_status natp_coloring_create(uint64_t N, unsigned c, uint64_t seed, natp_coloring** out);
void natp_coloring_free(natp_coloring* coloring);
uint64_t natp_coloring_bound(const natp_coloring* coloring);
unsigned natp_coloring_colors(const natp_coloring* coloring);
natp_status natp_coloring_get(const natp_coloring* coloring, uint64_t n, unsigned* out);

/* out_witness must hold L entries; *out_found 0 means absent (not an error). */
natp_status natp_find_mono_fs(const natp_coloring* coloring, unsigned L, int* out_found,
                              uint64_t* out_witness, unsigned* out_color);
natp_status natp_find_mono_quadruple(const natp_coloring* coloring, int strict,
                                     int* out_found, uint64_t* out_x, uint64_t* out_y,
                                     unsigned* out_color);

/* Backtracking over all 2-colorings of [1..N] (N <= 30). */
natp_status natp_scan_2colorings(uint64_t N, int strict, natp_scan** out);
void natp_scan_free(natp_scan* scan);
int natp_scan_witness_found(const natp_scan* scan);
uint64_t natp_scan_nodes(const natp_scan* scan);
uint64_t natp_scan_constraints(const natp_scan* scan);
natp_status natp_scan_color(const natp_scan* scan, uint64_t n, unsigned* out);

/* Monochromatic-FS witness packaged as decimal weights for natp_clt_run. */
natp_status natp_hindman_sequence(const natp_coloring* coloring, unsigned L, int* out_found,
                                  unsigned* out_color, char*** out_ys, uint64_t* out_count);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* NATP_H */
