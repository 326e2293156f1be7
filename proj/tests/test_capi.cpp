#include "doctest.h"

#include <cstring>
#include <string>
#include <vector>

#include "natp.h"

namespace {

std::string grab(char* s) {
    REQUIRE(s != nullptr);
    std::string out = s;
    natp_string_free(s);
    return out;
}

} // namespace

TEST_CASE("status codes separate bad handles from domain errors") {
    CHECK(natp_model_create(1.5, 1) == nullptr);
    CHECK(std::strlen(natp_last_error()) > 0);
    CHECK(natp_model_create(0.0, 1) == nullptr);

    int out = 0;
    CHECK(natp_model_contains(nullptr, 1, &out) == NATP_ERR_BADARG);

    natp_model* model = natp_model_create(0.5, 42);
    REQUIRE(model != nullptr);
    CHECK(natp_model_contains(model, 1, nullptr) == NATP_ERR_BADARG);
    CHECK(natp_model_contains(model, 0, &out) == NATP_ERR_DOMAIN);
    CHECK(std::strlen(natp_last_error()) > 0);
    natp_model_free(model);
}

TEST_CASE("membership round-trips through the C surface") {
    natp_model* model = natp_model_create(0.5, 42);
    REQUIRE(model != nullptr);

    // Golden bits for seed 42 at p = 1/2: n = 2 is in, n = 1 and 3 are out.
    int out = -1;
    CHECK(natp_model_contains(model, 2, &out) == NATP_OK);
    CHECK(out == 1);
    CHECK(natp_model_contains(model, 1, &out) == NATP_OK);
    CHECK(out == 0);
    CHECK(natp_model_contains_dec(model, "3", &out) == NATP_OK);
    CHECK(out == 0);
    CHECK(natp_model_contains_dec(model, "not-a-number", &out) != NATP_OK);

    natp_sample* sample = nullptr;
    REQUIRE(natp_model_materialize(model, 1000, 0, &sample) == NATP_OK);
    CHECK(natp_sample_bound(sample) == 1000);
    CHECK(natp_sample_test(sample, 2, &out) == NATP_OK);
    CHECK(out == 1);
    CHECK(natp_sample_test(sample, 0, &out) == NATP_ERR_DOMAIN);
    CHECK(natp_sample_test(sample, 1001, &out) == NATP_ERR_DOMAIN);

    std::uint64_t members = 0;
    CHECK(natp_sample_popcount(sample, &members) == NATP_OK);
    CHECK(members > 400);
    CHECK(members < 600);
    natp_sample_free(sample);

    natp_sample* refused = nullptr;
    CHECK(natp_model_materialize(model, 1000000, 8, &refused) == NATP_ERR_RESOURCE);
    natp_model_free(model);
}

TEST_CASE("patterns cross the boundary as decimal strings") {
    natp_pattern* probe = nullptr;
    REQUIRE(natp_pattern_fs_probe(2, 1, 0, &probe) == NATP_OK);
    CHECK(natp_pattern_kind_of(probe) == NATP_PATTERN_FS);
    CHECK(natp_pattern_generator_count(probe) == 2);
    REQUIRE(natp_pattern_element_count(probe) == 3);
    char* s = nullptr;
    REQUIRE(natp_pattern_element(probe, 0, &s) == NATP_OK);
    CHECK(grab(s) == "4");
    REQUIRE(natp_pattern_element(probe, 2, &s) == NATP_OK);
    CHECK(grab(s) == "12");
    CHECK(natp_pattern_element(probe, 3, &s) == NATP_ERR_DOMAIN);
    natp_pattern_free(probe);

    natp_pattern* quad = nullptr;
    REQUIRE(natp_pattern_quadruple("3", "3", &quad) == NATP_OK);
    CHECK(natp_pattern_kind_of(quad) == NATP_PATTERN_QUADRUPLE);
    CHECK(natp_pattern_element_count(quad) == 3);  // {3, 6, 9}
    natp_pattern_free(quad);

    CHECK(natp_pattern_fs_probe(0, 0, 0, &probe) == NATP_ERR_DOMAIN);
    CHECK(natp_pattern_fs_probe(2, 1u << 30, 64, &probe) == NATP_ERR_RESOURCE);
}

TEST_CASE("closures are returned as string arrays") {
    const char* xs[] = {"1", "2", "4"};
    char** elements = nullptr;
    std::uint64_t count = 0;
    REQUIRE(natp_closure(xs, 3, 0, &elements, &count) == NATP_OK);
    REQUIRE(count == 7);
    CHECK(std::string(elements[0]) == "1");
    CHECK(std::string(elements[6]) == "7");
    natp_string_array_free(elements, count);

    const char* small[] = {"2", "3"};
    REQUIRE(natp_closure(small, 2, 1, &elements, &count) == NATP_OK);
    REQUIRE(count == 3);
    CHECK(std::string(elements[2]) == "6");
    natp_string_array_free(elements, count);

    const char* dup[] = {"2", "2"};
    CHECK(natp_closure(dup, 2, 0, &elements, &count) == NATP_ERR_DOMAIN);
}

TEST_CASE("hit scans and witness searches work through handles") {
    natp_model* model = natp_model_create(0.5, 42);
    REQUIRE(model != nullptr);
    natp_hits* hits = nullptr;
    REQUIRE(natp_probe_hits(model, NATP_PATTERN_FS, 2, 0, 2000, 2, 0, &hits) == NATP_OK);
    CHECK(natp_hits_elements_per_probe(hits) == 3);
    std::uint64_t first_untested = 0;
    CHECK(natp_hits_truncated(hits, &first_untested) == 0);
    std::uint64_t n_hits = natp_hits_count(hits);
    CHECK(n_hits > 150);
    CHECK(n_hits < 350);
    std::uint64_t j = 0;
    REQUIRE(natp_hits_get(hits, 0, &j) == NATP_OK);
    CHECK(natp_hits_get(hits, n_hits, &j) == NATP_ERR_DOMAIN);
    natp_hits_free(hits);

    natp_sample* sample = nullptr;
    REQUIRE(natp_model_materialize(model, 100, 0, &sample) == NATP_OK);
    int found = 0;
    std::uint64_t witness[2] = {0, 0};
    REQUIRE(natp_find_fs(sample, 2, 100, &found, witness) == NATP_OK);
    if (found) {
        int a = 0, b = 0, c = 0;
        CHECK(natp_sample_test(sample, witness[0], &a) == NATP_OK);
        CHECK(natp_sample_test(sample, witness[1], &b) == NATP_OK);
        CHECK(natp_sample_test(sample, witness[0] + witness[1], &c) == NATP_OK);
        CHECK(a * b * c == 1);
    }

    natp_quadcount* qc = nullptr;
    REQUIRE(natp_count_quadruples(sample, 10, 5, &qc) == NATP_OK);
    std::uint64_t count = natp_quadcount_value(qc);
    std::uint64_t recorded = natp_quadcount_witness_count(qc);
    CHECK(recorded <= 5);
    if (count <= 5) CHECK_FALSE(natp_quadcount_witnesses_truncated(qc));
    if (recorded > 0) {
        std::uint64_t x = 0, y = 0;
        CHECK(natp_quadcount_witness(qc, 0, &x, &y) == NATP_OK);
        CHECK(x >= 1);
        CHECK(y >= 1);
    }
    natp_quadcount_free(qc);
    natp_sample_free(sample);

    natp_minelem* me = nullptr;
    REQUIRE(natp_min_element_probe(model, NATP_PATTERN_FS, 1, "1000", 0, 0, &me) == NATP_OK);
    if (natp_minelem_found(me)) {
        const natp_pattern* p = natp_minelem_pattern(me);
        REQUIRE(p != nullptr);
        char* s = nullptr;
        REQUIRE(natp_pattern_element(p, 0, &s) == NATP_OK);
        CHECK(std::stoull(grab(s)) > 1000);
    }
    CHECK(natp_minelem_first_j(me) == 10);
    natp_minelem_free(me);
    natp_model_free(model);
}

TEST_CASE("statistics handles expose exact rationals") {
    natp_pattern* probe = nullptr;
    REQUIRE(natp_pattern_fs_probe(2, 0, 0, &probe) == NATP_OK);
    natp_estimate est{};
    REQUIRE(natp_estimate_event_prob(probe, 0.5, 4000, 1, 2, &est) == NATP_OK);
    CHECK(est.trials == 4000);
    CHECK(est.lo <= 0.125);
    CHECK(0.125 <= est.hi);
    natp_pattern_free(probe);

    char* exact = nullptr;
    char* idealized = nullptr;
    char* diff = nullptr;
    double approx = 0;
    REQUIRE(natp_expected_quadruples(4, 0.5, &exact, &idealized, &diff, &approx, nullptr,
                                     nullptr) == NATP_OK);
    CHECK(grab(exact) == "15/8");
    CHECK(grab(idealized) == "1");
    CHECK(grab(diff) == "7/8");
    CHECK(approx == doctest::Approx(1.875));

    natp_secmom* sm = nullptr;
    REQUIRE(natp_exact_small_universe(2, 0.5, &sm) == NATP_OK);
    CHECK(natp_secmom_universe(sm) == 4);
    char* rat = nullptr;
    REQUIRE(natp_secmom_value(sm, NATP_SM_EX, &rat, &approx) == NATP_OK);
    CHECK(grab(rat) == "3/4");
    CHECK(natp_secmom_pz_holds(sm) == 1);
    natp_secmom_free(sm);
    CHECK(natp_exact_small_universe(5, 0.5, &sm) == NATP_ERR_DOMAIN);

    natp_sweep* sweep = nullptr;
    REQUIRE(natp_threshold_sweep(1, 50, 0.5, 200, 1, 2, &sweep) == NATP_OK);
    CHECK(natp_sweep_hi(sweep) - natp_sweep_lo(sweep) < 0.01);
    REQUIRE(natp_sweep_eval_count(sweep) >= 2);
    double p0 = 0;
    natp_estimate e0{};
    REQUIRE(natp_sweep_eval(sweep, 0, &p0, &e0) == NATP_OK);
    CHECK(e0.trials == 200);
    natp_sweep_free(sweep);
}

TEST_CASE("weighted-sum runs expose laws, diagnostics, and fits") {
    natp_clt* run = nullptr;
    REQUIRE(natp_clt_run_family("linear", 0.5, 50, 2000, 1, 2, &run) == NATP_OK);
    CHECK(natp_clt_replications(run) == 2000);
    CHECK(natp_clt_has_trimmed(run) == 1);

    natp_clt_diagnostics diag{};
    REQUIRE(natp_clt_get_diagnostics(run, &diag) == NATP_OK);
    CHECK(diag.j_k == 50);
    CHECK(diag.dominated == 0);
    CHECK(diag.ratio_maxres == doctest::Approx(2401.0 / 40425.0));

    char* rat = nullptr;
    REQUIRE(natp_clt_diag_exact(run, NATP_RATIO_DOM, &rat) == NATP_OK);
    CHECK(grab(rat) == "100/1717");  // 50^2 / sum_{j<=50} j^2 in lowest terms
    natp_clt_free(run);

    const char* ys[] = {"7"};
    REQUIRE(natp_clt_run(ys, 1, 0.5, 1, 500, 3, 1, &run) == NATP_OK);
    CHECK(natp_clt_has_trimmed(run) == 0);
    CHECK(natp_clt_get_diagnostics(run, &diag) == NATP_ERR_DOMAIN);
    const double* values = nullptr;
    std::uint64_t count = 0;
    CHECK(natp_clt_law_values(run, NATP_LAW_TRIMMED, &values, &count) == NATP_ERR_DOMAIN);
    REQUIRE(natp_clt_law_values(run, NATP_LAW_FULL, &values, &count) == NATP_OK);
    REQUIRE(count == 500);
    for (std::uint64_t i = 1; i < count; ++i) CHECK(values[i - 1] <= values[i]);

    double au = 0, al = 0, mu = 0, ml = 0, esc = 0;
    REQUIRE(natp_clt_two_point(run, 0.05, &au, &al, &mu, &ml, &esc) == NATP_OK);
    CHECK(esc == 0.0);
    CHECK(mu + ml == doctest::Approx(1.0));
    double ks = 0;
    CHECK(natp_clt_reinsertion_ks(run, &ks) == NATP_ERR_DOMAIN);
    natp_clt_free(run);

    CHECK(natp_clt_run_family("cubic", 0.5, 3, 10, 1, 1, &run) == NATP_ERR_DOMAIN);
}

TEST_CASE("atoms checks and colorings work through the C surface") {
    const char* parent[] = {"1", "2", "4"};
    std::uint64_t subseq[] = {1, 2, 3};
    std::uint64_t patterns = 0;
    int all_in = 0;
    char** violations = nullptr;
    std::uint64_t violation_count = 0;
    REQUIRE(natp_atoms_check(parent, 3, subseq, 3, &patterns, &all_in, &violations,
                             &violation_count) == NATP_OK);
    CHECK(patterns == 7);
    CHECK(all_in == 1);
    CHECK(violation_count == 0);
    natp_string_array_free(violations, violation_count);

    natp_coloring* coloring = nullptr;
    REQUIRE(natp_coloring_create(50, 2, 1, &coloring) == NATP_OK);
    CHECK(natp_coloring_bound(coloring) == 50);
    CHECK(natp_coloring_colors(coloring) == 2);
    unsigned color = 99;
    REQUIRE(natp_coloring_get(coloring, 1, &color) == NATP_OK);
    CHECK(color < 2);
    CHECK(natp_coloring_get(coloring, 51, &color) == NATP_ERR_DOMAIN);

    int found = 0;
    std::uint64_t witness[2] = {0, 0};
    REQUIRE(natp_find_mono_fs(coloring, 2, &found, witness, &color) == NATP_OK);
    if (found) {
        unsigned c1 = 0, c2 = 0, c3 = 0;
        REQUIRE(natp_coloring_get(coloring, witness[0], &c1) == NATP_OK);
        REQUIRE(natp_coloring_get(coloring, witness[1], &c2) == NATP_OK);
        REQUIRE(natp_coloring_get(coloring, witness[0] + witness[1], &c3) == NATP_OK);
        CHECK(c1 == color);
        CHECK(c2 == color);
        CHECK(c3 == color);
    }

    std::uint64_t x = 0, y = 0;
    REQUIRE(natp_find_mono_quadruple(coloring, 0, &found, &x, &y, &color) == NATP_OK);
    natp_coloring_free(coloring);

    natp_scan* scan = nullptr;
    REQUIRE(natp_scan_2colorings(4, 0, &scan) == NATP_OK);
    CHECK(natp_scan_witness_found(scan) == 1);
    CHECK(natp_scan_nodes(scan) > 0);
    unsigned c = 9;
    REQUIRE(natp_scan_color(scan, 1, &c) == NATP_OK);
    CHECK(c < 2);
    natp_scan_free(scan);
    CHECK(natp_scan_2colorings(31, 0, &scan) == NATP_ERR_DOMAIN);
}

TEST_CASE("version and error text are always available") {
    CHECK(natp_version() != nullptr);
    CHECK(std::string(natp_version()).find('.') != std::string::npos);
    CHECK(natp_last_error() != nullptr);
}
