// natp command-line front end. Talks to the core exclusively through the
// C API in natp.h. Payload goes to --out (or stdout); a one-line summary
// with wall time goes to the other stream. Output files never contain
// timing, so reruns with the same config are byte-identical.
#include "natp.h"

#include <cerrno>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;
constexpr std::uint64_t kDefaultSeed = 42;

template <auto Free>
struct FnDeleter {
    template <typename T>
    void operator()(T* t) const {
        Free(t);
    }
};
using ModelPtr = std::unique_ptr<natp_model, FnDeleter<natp_model_free>>;
using SamplePtr = std::unique_ptr<natp_sample, FnDeleter<natp_sample_free>>;
using PatternPtr = std::unique_ptr<natp_pattern, FnDeleter<natp_pattern_free>>;
using HitsPtr = std::unique_ptr<natp_hits, FnDeleter<natp_hits_free>>;
using QuadPtr = std::unique_ptr<natp_quadcount, FnDeleter<natp_quadcount_free>>;
using MinElemPtr = std::unique_ptr<natp_minelem, FnDeleter<natp_minelem_free>>;
using SecMomPtr = std::unique_ptr<natp_secmom, FnDeleter<natp_secmom_free>>;
using SweepPtr = std::unique_ptr<natp_sweep, FnDeleter<natp_sweep_free>>;
using CltPtr = std::unique_ptr<natp_clt, FnDeleter<natp_clt_free>>;
using ColoringPtr = std::unique_ptr<natp_coloring, FnDeleter<natp_coloring_free>>;
using ScanPtr = std::unique_ptr<natp_scan, FnDeleter<natp_scan_free>>;

int status_to_exit(natp_status st) {
    switch (st) {
        case NATP_OK: return 0;
        case NATP_ERR_DOMAIN:
        case NATP_ERR_BADARG: return 1;
        case NATP_ERR_RESOURCE:
        case NATP_ERR_INTERNAL: return 2;
    }
    return 2;
}

[[noreturn]] void die(natp_status st) {
    std::fprintf(stderr, "error: %s\n", natp_last_error());
    std::exit(status_to_exit(st));
}

[[noreturn]] void die_usage(const std::string& message) {
    std::fprintf(stderr, "error: %s\n", message.c_str());
    std::exit(1);
}

void check(natp_status st) {
    if (st != NATP_OK) die(st);
}

std::string take_string(char* s) {
    std::string out = s ? s : "";
    natp_string_free(s);
    return out;
}

std::vector<std::string> take_string_array(char** strings, std::uint64_t count) {
    std::vector<std::string> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) out.emplace_back(strings[i] ? strings[i] : "");
    natp_string_array_free(strings, count);
    return out;
}

std::uint64_t env_mem_budget() {
    const char* v = std::getenv("NATP_MEM_BUDGET");
    if (!v || !*v) return 0; // 0 = library default
    char* end = nullptr;
    errno = 0;
    unsigned long long parsed = std::strtoull(v, &end, 10);
    if (errno != 0 || end == v || *end != '\0')
        die_usage("NATP_MEM_BUDGET must be a byte count, got '" + std::string(v) + "'");
    return parsed;
}

std::uint64_t effective_budget_echo(std::uint64_t budget) {
    return budget ? budget : (std::uint64_t{1} << 30);
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Shorter form for human-facing summary lines only (never in payload files).
std::string fmt_short(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

// Payload to --out (or stdout); summary plus wall time to the other stream.
void emit(const std::string& out_path, const std::string& payload,
          const std::string& summary, const Timer& timer) {
    char line[32];
    std::snprintf(line, sizeof line, " [%.2fs]", timer.seconds());
    if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) die_usage("cannot open output file '" + out_path + "'");
        f << payload;
        f.flush();
        if (!f) {
            std::fprintf(stderr, "error: write to '%s' failed\n", out_path.c_str());
            std::exit(2);
        }
        std::printf("%s -> %s%s\n", summary.c_str(), out_path.c_str(), line);
    } else {
        std::fwrite(payload.data(), 1, payload.size(), stdout);
        std::fprintf(stderr, "%s%s\n", summary.c_str(), line);
    }
}

using KeyValues = std::vector<std::pair<std::string, std::string>>;

std::string csv_header(const std::string& command, const KeyValues& config) {
    std::string h = "# schema-version=" + std::to_string(kSchemaVersion) + "\n";
    h += "# command=" + command + "\n";
    for (const auto& [k, v] : config) h += "# " + k + "=" + v + "\n";
    return h;
}

json json_report(const std::string& command, const json& config) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["config"] = config;
    return j;
}

json estimate_json(const natp_estimate& e) {
    return json{{"trials", e.trials},
                {"successes", e.successes},
                {"point", e.point},
                {"lo", e.lo},
                {"hi", e.hi}};
}

std::string estimate_csv_cells(const natp_estimate& e) {
    return std::to_string(e.trials) + "," + std::to_string(e.successes) + "," +
           fmt_double(e.point) + "," + fmt_double(e.lo) + "," + fmt_double(e.hi);
}

natp_pattern_kind parse_probe_kind(const std::string& kind) {
    if (kind == "fs") return NATP_PATTERN_FS;
    if (kind == "fp") return NATP_PATTERN_FP;
    if (kind == "exp") return NATP_PATTERN_EXP;
    die_usage("unknown probe kind '" + kind + "' (expected fs, fp, or exp)");
}

std::vector<std::string> split_commas(const std::string& joined) {
    std::vector<std::string> out;
    std::size_t begin = 0;
    while (begin <= joined.size()) {
        std::size_t comma = joined.find(',', begin);
        if (comma == std::string::npos) comma = joined.size();
        std::string item = joined.substr(begin, comma - begin);
        if (item.empty()) die_usage("empty item in comma-separated list");
        out.push_back(item);
        begin = comma + 1;
        if (comma == joined.size()) break;
    }
    return out;
}

std::vector<const char*> c_view(const std::vector<std::string>& strings) {
    std::vector<const char*> out;
    out.reserve(strings.size());
    for (const auto& s : strings) out.push_back(s.c_str());
    return out;
}

/* ----- sample -------------------------------------------------------- */

struct SampleArgs {
    double p = 0.5;
    std::uint64_t bound = 0;
    std::uint64_t seed = kDefaultSeed;
    std::string out;
};

int run_sample(const SampleArgs& args) {
    Timer timer;
    std::uint64_t budget = env_mem_budget();
    ModelPtr model(natp_model_create(args.p, args.seed));
    if (!model) die(NATP_ERR_DOMAIN);
    natp_sample* raw = nullptr;
    check(natp_model_materialize(model.get(), args.bound, budget, &raw));
    SamplePtr sample(raw);
    std::uint64_t members = 0;
    check(natp_sample_popcount(sample.get(), &members));

    std::string payload = csv_header(
        "sample", {{"p", fmt_double(args.p)},
                   {"N", std::to_string(args.bound)},
                   {"seed", std::to_string(args.seed)},
                   {"memory-budget", std::to_string(effective_budget_echo(budget))}});
    payload += "n\n";
    for (std::uint64_t n = 1; n <= args.bound; ++n) {
        int in = 0;
        check(natp_sample_test(sample.get(), n, &in));
        if (in) {
            payload += std::to_string(n);
            payload += '\n';
        }
    }
    std::string summary = "sample: " + std::to_string(members) + " of " +
                          std::to_string(args.bound) + " members (p=" + fmt_short(args.p) +
                          ", seed=" + std::to_string(args.seed) + ")";
    emit(args.out, payload, summary, timer);
    return 0;
}

/* ----- probes -------------------------------------------------------- */

struct ProbesArgs {
    std::string kind = "fs";
    unsigned L = 2;
    double p = 0.5;
    bool j_set = false;
    std::uint64_t j = 0;
    std::uint64_t j_count = 10000;
    std::uint64_t seed = kDefaultSeed;
    unsigned workers = 1;
    std::uint64_t max_bits = 0;
    bool hits = false;
    bool j_begin_set = false;
    std::uint64_t j_begin = 0;
    std::uint64_t j_end = 0;
    std::string min_element;
    std::uint64_t attempt_cap = 0;
    std::string out;
};

std::uint64_t family_first_index(natp_pattern_kind kind) {
    return kind == NATP_PATTERN_FS ? 0 : 1;
}

PatternPtr build_probe(natp_pattern_kind kind, unsigned L, std::uint64_t j,
                       std::uint64_t max_bits) {
    natp_pattern* raw = nullptr;
    switch (kind) {
        case NATP_PATTERN_FS: check(natp_pattern_fs_probe(L, j, max_bits, &raw)); break;
        case NATP_PATTERN_FP: check(natp_pattern_fp_probe(L, j, max_bits, &raw)); break;
        case NATP_PATTERN_EXP: check(natp_pattern_exp_probe(j, max_bits, &raw)); break;
        default: die_usage("quadruple is not a probe family");
    }
    return PatternPtr(raw);
}

json pattern_json(const natp_pattern* pattern) {
    json gens = json::array();
    json elems = json::array();
    for (std::uint64_t i = 0; i < natp_pattern_generator_count(pattern); ++i) {
        char* s = nullptr;
        check(natp_pattern_generator(pattern, i, &s));
        gens.push_back(take_string(s));
    }
    for (std::uint64_t i = 0; i < natp_pattern_element_count(pattern); ++i) {
        char* s = nullptr;
        check(natp_pattern_element(pattern, i, &s));
        elems.push_back(take_string(s));
    }
    return json{{"generators", gens}, {"elements", elems}};
}

int run_probes_estimate(const ProbesArgs& args, natp_pattern_kind kind) {
    Timer timer;
    std::uint64_t j = args.j_set ? args.j : family_first_index(kind);
    PatternPtr pattern = build_probe(kind, args.L, j, args.max_bits);
    natp_estimate est{};
    check(natp_estimate_event_prob(pattern.get(), args.p, args.j_count, args.seed,
                                   args.workers, &est));

    bool has_L = kind != NATP_PATTERN_EXP;
    std::uint64_t bits = args.max_bits ? args.max_bits
                                       : (kind == NATP_PATTERN_EXP ? 16384 : 1048576);
    KeyValues config{{"kind", args.kind}};
    if (has_L) config.emplace_back("L", std::to_string(args.L));
    config.emplace_back("j", std::to_string(j));
    config.emplace_back("p", fmt_double(args.p));
    config.emplace_back("j-count", std::to_string(args.j_count));
    config.emplace_back("seed", std::to_string(args.seed));
    config.emplace_back("max-bits", std::to_string(bits));
    std::string payload = csv_header("probes", config);
    payload += "kind,L,j,p,trials,successes,point,lo,hi\n";
    payload += args.kind + "," + (has_L ? std::to_string(args.L) : std::string{}) + "," +
               std::to_string(j) + "," + fmt_double(args.p) + "," + estimate_csv_cells(est) +
               "\n";

    std::string summary = "probes: P(hit) ~= " + fmt_short(est.point) + " in [" +
                          fmt_short(est.lo) + ", " + fmt_short(est.hi) + "] over " +
                          std::to_string(est.trials) + " trials";
    emit(args.out, payload, summary, timer);
    return 0;
}

int run_probes_hits(const ProbesArgs& args, natp_pattern_kind kind) {
    Timer timer;
    if (kind == NATP_PATTERN_EXP)
        die_usage("--hits supports fs and fp families (exp probes have no index range)");
    if (args.j_end == 0) die_usage("--hits needs --j-end");
    std::uint64_t j_begin = args.j_begin_set ? args.j_begin : family_first_index(kind);
    ModelPtr model(natp_model_create(args.p, args.seed));
    if (!model) die(NATP_ERR_DOMAIN);
    natp_hits* raw = nullptr;
    check(natp_probe_hits(model.get(), kind, args.L, j_begin, args.j_end, args.workers,
                          args.max_bits, &raw));
    HitsPtr hits(raw);

    std::uint64_t first_untested = 0;
    int truncated = natp_hits_truncated(hits.get(), &first_untested);
    std::uint64_t count = natp_hits_count(hits.get());
    KeyValues config{{"kind", args.kind},
                     {"L", std::to_string(args.L)},
                     {"p", fmt_double(args.p)},
                     {"seed", std::to_string(args.seed)},
                     {"max-bits", std::to_string(args.max_bits ? args.max_bits : 1048576)},
                     {"j-begin", std::to_string(j_begin)},
                     {"j-end", std::to_string(args.j_end)},
                     {"elements-per-probe",
                      std::to_string(natp_hits_elements_per_probe(hits.get()))},
                     {"hits", std::to_string(count)},
                     {"truncated", std::to_string(truncated)}};
    if (truncated) config.emplace_back("first-untested", std::to_string(first_untested));
    std::string payload = csv_header("probes", config);
    payload += "j\n";
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t j = 0;
        check(natp_hits_get(hits.get(), i, &j));
        payload += std::to_string(j);
        payload += '\n';
    }
    std::string summary = "probes: " + std::to_string(count) + " hits in [" +
                          std::to_string(j_begin) + ", " + std::to_string(args.j_end) + ")" +
                          (truncated ? " (truncated)" : "");
    emit(args.out, payload, summary, timer);
    return 0;
}

int run_probes_min_element(const ProbesArgs& args, natp_pattern_kind kind) {
    Timer timer;
    if (kind == NATP_PATTERN_EXP)
        die_usage("--min-element supports fs and fp families");
    ModelPtr model(natp_model_create(args.p, args.seed));
    if (!model) die(NATP_ERR_DOMAIN);
    natp_minelem* raw = nullptr;
    check(natp_min_element_probe(model.get(), kind, args.L, args.min_element.c_str(),
                                 args.attempt_cap, args.max_bits, &raw));
    MinElemPtr me(raw);

    json config{{"kind", args.kind},
                {"L", args.L},
                {"p", args.p},
                {"seed", args.seed},
                {"min-element", args.min_element},
                {"attempt-cap", args.attempt_cap},
                {"max-bits", args.max_bits ? args.max_bits : 1048576}};
    json report = json_report("probes", config);
    report["mode"] = "min-element";
    bool found = natp_minelem_found(me.get()) != 0;
    report["found"] = found;
    report["first_j"] = natp_minelem_first_j(me.get());
    report["attempts"] = natp_minelem_attempts(me.get());
    report["truncated"] = natp_minelem_truncated(me.get()) != 0;
    if (found) {
        report["j"] = natp_minelem_first_j(me.get()) + natp_minelem_attempts(me.get()) - 1;
        report["probe"] = pattern_json(natp_minelem_pattern(me.get()));
    }
    std::string payload = report.dump(2) + "\n";
    std::string summary =
        found ? "probes: found probe at j=" + report["j"].dump() + " after " +
                    std::to_string(natp_minelem_attempts(me.get())) + " attempts"
              : "probes: no probe found (cap " +
                    std::to_string(natp_minelem_attempts(me.get())) + " attempts)";
    emit(args.out, payload, summary, timer);
    return 0;
}

int run_probes(const ProbesArgs& args) {
    natp_pattern_kind kind = parse_probe_kind(args.kind);
    if (!args.min_element.empty() && args.hits)
        die_usage("--hits and --min-element are mutually exclusive");
    if (!args.min_element.empty()) return run_probes_min_element(args, kind);
    if (args.hits) return run_probes_hits(args, kind);
    return run_probes_estimate(args, kind);
}

/* ----- quadruples ----------------------------------------------------- */

struct QuadruplesArgs {
    std::uint64_t N = 0;
    double p = 0.5;
    std::uint64_t seed = kDefaultSeed;
    std::uint64_t witness_cap = 100;
    std::string out;
};

json expected_quadruples_json(std::uint64_t N, double p) {
    char* exact_rat = nullptr;
    char* idealized_rat = nullptr;
    char* diff_rat = nullptr;
    double exact = 0, idealized = 0, diff = 0;
    check(natp_expected_quadruples(N, p, &exact_rat, &idealized_rat, &diff_rat, &exact, &idealized,
                                   &diff));
    return json{{"exact", take_string(exact_rat)},   {"exact_approx", exact},
                {"idealized", take_string(idealized_rat)}, {"idealized_approx", idealized},
                {"diff", take_string(diff_rat)},     {"diff_approx", diff}};
}

int run_quadruples(const QuadruplesArgs& args) {
    Timer timer;
    if (args.N == 0) die_usage("-N must be at least 1");
    if (args.N > (std::uint64_t{1} << 32)) {
        std::fprintf(stderr, "error: N too large to materialize the universe\n");
        std::exit(2);
    }
    std::uint64_t universe = std::max(2 * args.N, args.N * args.N);
    std::uint64_t budget = env_mem_budget();
    ModelPtr model(natp_model_create(args.p, args.seed));
    if (!model) die(NATP_ERR_DOMAIN);
    natp_sample* raw_sample = nullptr;
    check(natp_model_materialize(model.get(), universe, budget, &raw_sample));
    SamplePtr sample(raw_sample);
    natp_quadcount* raw = nullptr;
    check(natp_count_quadruples(sample.get(), args.N, args.witness_cap, &raw));
    QuadPtr qc(raw);

    std::uint64_t members = 0;
    check(natp_sample_popcount(sample.get(), &members));
    json config{{"N", args.N},
                {"p", args.p},
                {"seed", args.seed},
                {"witness-cap", args.witness_cap},
                {"memory-budget", effective_budget_echo(budget)}};
    json report = json_report("quadruples", config);
    report["universe"] = universe;
    report["members"] = members;
    report["count"] = natp_quadcount_value(qc.get());
    json witnesses = json::array();
    for (std::uint64_t i = 0; i < natp_quadcount_witness_count(qc.get()); ++i) {
        std::uint64_t x = 0, y = 0;
        check(natp_quadcount_witness(qc.get(), i, &x, &y));
        witnesses.push_back(json::array({x, y}));
    }
    report["witnesses"] = witnesses;
    report["witnesses_truncated"] = natp_quadcount_witnesses_truncated(qc.get()) != 0;
    report["expected"] = expected_quadruples_json(args.N, args.p);

    std::string payload = report.dump(2) + "\n";
    std::string summary = "quadruples: X=" + std::to_string(natp_quadcount_value(qc.get())) +
                          " (N=" + std::to_string(args.N) + ", p=" + fmt_short(args.p) +
                          ", seed=" + std::to_string(args.seed) + "), E[X]=" +
                          fmt_short(report["expected"]["exact_approx"].get<double>());
    emit(args.out, payload, summary, timer);
    return 0;
}

/* ----- second-moment --------------------------------------------------- */

struct SecondMomentArgs {
    std::uint64_t N = 0;
    double p = 0.5;
    bool exact = false;
    std::uint64_t trials = 10000;
    std::uint64_t seed = kDefaultSeed;
    unsigned workers = 1;
    std::string out;
};

json secmom_field_json(const natp_secmom* sm, natp_secmom_field field) {
    char* rat = nullptr;
    double approx = 0;
    check(natp_secmom_value(sm, field, &rat, &approx));
    return json{{"exact", take_string(rat)}, {"approx", approx}};
}

int run_second_moment(const SecondMomentArgs& args) {
    Timer timer;
    if (args.exact) {
        natp_secmom* raw = nullptr;
        check(natp_exact_small_universe(args.N, args.p, &raw));
        SecMomPtr sm(raw);
        json config{{"N", args.N}, {"p", args.p}};
        json report = json_report("second-moment", config);
        report["mode"] = "exact";
        report["universe"] = natp_secmom_universe(sm.get());
        report["ex"] = secmom_field_json(sm.get(), NATP_SM_EX);
        report["ex2"] = secmom_field_json(sm.get(), NATP_SM_EX2);
        report["px_pos"] = secmom_field_json(sm.get(), NATP_SM_PXPOS);
        report["pz_lower_bound"] = secmom_field_json(sm.get(), NATP_SM_PZ);
        report["idealized_ex"] = secmom_field_json(sm.get(), NATP_SM_IDEALIZED);
        report["pz_holds"] = natp_secmom_pz_holds(sm.get()) != 0;
        std::string payload = report.dump(2) + "\n";
        std::string summary =
            "second-moment: exact E[X]=" + fmt_short(report["ex"]["approx"].get<double>()) +
            ", P(X>0)=" + fmt_short(report["px_pos"]["approx"].get<double>()) +
            ", PZ bound " + (natp_secmom_pz_holds(sm.get()) ? "holds" : "FAILS");
        emit(args.out, payload, summary, timer);
        return 0;
    }

    std::uint64_t budget = env_mem_budget();
    double mean_x = 0, mean_x2 = 0;
    natp_estimate px_pos{};
    check(natp_mc_quadruples(args.N, args.p, args.trials, args.seed, args.workers, budget,
                             &mean_x, &mean_x2, &px_pos));
    json config{{"N", args.N},
                {"p", args.p},
                {"trials", args.trials},
                {"seed", args.seed},
                {"memory-budget", effective_budget_echo(budget)}};
    json report = json_report("second-moment", config);
    report["mode"] = "mc";
    report["mean_x"] = mean_x;
    report["mean_x2"] = mean_x2;
    report["px_pos"] = estimate_json(px_pos);
    report["expected"] = expected_quadruples_json(args.N, args.p);
    std::string payload = report.dump(2) + "\n";
    std::string summary = "second-moment: mean X=" + fmt_short(mean_x) + ", mean X^2=" +
                          fmt_short(mean_x2) + ", P(X>0) ~= " + fmt_short(px_pos.point) +
                          " over " + std::to_string(args.trials) + " samples";
    emit(args.out, payload, summary, timer);
    return 0;
}

/* ----- clt -------------------------------------------------------------- */

struct CltArgs {
    std::string family;
    std::string ys_joined;
    std::uint64_t k = 0;
    double p = 0.5;
    std::uint64_t M = 1000;
    std::uint64_t seed = kDefaultSeed;
    unsigned workers = 1;
    std::uint64_t color_N = 0;
    unsigned color_c = 2;
    std::uint64_t color_seed = kDefaultSeed;
    bool atoms_check = false;
    std::string subseq_joined;
    double two_point_tol = 0.05;
    std::string out;
};

json atoms_report_json(const std::vector<std::string>& parent,
                       const std::vector<std::uint64_t>& subseq) {
    auto parent_view = c_view(parent);
    std::uint64_t patterns_checked = 0;
    int all_in = 0;
    char** violations = nullptr;
    std::uint64_t violation_count = 0;
    check(natp_atoms_check(parent_view.data(), parent_view.size(), subseq.data(),
                           subseq.size(), &patterns_checked, &all_in, &violations,
                           &violation_count));
    json subseq_json = json::array();
    for (auto i : subseq) subseq_json.push_back(i);
    return json{{"subsequence", subseq_json},
                {"patterns_checked", patterns_checked},
                {"all_atoms_in_fs", all_in != 0},
                {"violations", take_string_array(violations, violation_count)}};
}

int run_clt(const CltArgs& args) {
    Timer timer;
    if (args.family.empty() == args.ys_joined.empty())
        die_usage("pass exactly one of --family or --ys");
    if (args.k == 0) die_usage("-k must be at least 1");

    std::vector<std::string> ys; // explicit weights, when the CLI knows them
    json hindman;
    CltPtr run;
    natp_clt* raw = nullptr;
    if (!args.ys_joined.empty()) {
        ys = split_commas(args.ys_joined);
        auto view = c_view(ys);
        check(natp_clt_run(view.data(), view.size(), args.p, args.k, args.M, args.seed,
                           args.workers, &raw));
    } else if (args.family == "hindman") {
        if (args.color_N == 0) die_usage("--family hindman needs --color-N");
        natp_coloring* raw_coloring = nullptr;
        check(natp_coloring_create(args.color_N, args.color_c, args.color_seed,
                                   &raw_coloring));
        ColoringPtr coloring(raw_coloring);
        int found = 0;
        unsigned color = 0;
        char** ys_arr = nullptr;
        std::uint64_t ys_count = 0;
        check(natp_hindman_sequence(coloring.get(), static_cast<unsigned>(args.k), &found,
                                    &color, &ys_arr, &ys_count));
        ys = take_string_array(ys_arr, ys_count);
        if (!found)
            die_usage("no monochromatic structure of length " + std::to_string(args.k) +
                      " in [1.." + std::to_string(args.color_N) + "]");
        hindman = json{{"color", color}, {"ys", ys}};
        auto view = c_view(ys);
        check(natp_clt_run(view.data(), view.size(), args.p, args.k, args.M, args.seed,
                           args.workers, &raw));
    } else {
        if (args.family != "linear" && args.family != "doubly-exponential")
            die_usage("unknown family '" + args.family +
                      "' (expected linear, doubly-exponential, or hindman)");
        check(natp_clt_run_family(args.family.c_str(), args.p, args.k, args.M, args.seed,
                                  args.workers, &raw));
        if (args.family == "linear" && args.atoms_check)
            for (std::uint64_t i = 1; i <= args.k; ++i) ys.push_back(std::to_string(i));
    }
    run.reset(raw);

    json report;
    report["schema_version"] = kSchemaVersion;
    json config{{"p", args.p}, {"k", args.k}, {"M", args.M}, {"seed", args.seed}};
    if (!args.family.empty()) config["family"] = args.family;
    if (!args.ys_joined.empty()) config["ys"] = ys;
    if (args.family == "hindman") {
        config["color-N"] = args.color_N;
        config["color-c"] = args.color_c;
        config["color-seed"] = args.color_seed;
    }
    report["config"] = config;
    if (!hindman.is_null()) report["hindman"] = hindman;

    bool has_trimmed = natp_clt_has_trimmed(run.get()) != 0;
    if (args.k >= 2) {
        natp_clt_diagnostics diag{};
        check(natp_clt_get_diagnostics(run.get(), &diag));
        char* sigma2 = nullptr;
        check(natp_clt_diag_exact(run.get(), NATP_RATIO_SIGMA2, &sigma2));
        char* dom = nullptr;
        check(natp_clt_diag_exact(run.get(), NATP_RATIO_DOM, &dom));
        char* maxres = nullptr;
        check(natp_clt_diag_exact(run.get(), NATP_RATIO_MAXRES, &maxres));
        char* reinsert = nullptr;
        check(natp_clt_diag_exact(run.get(), NATP_RATIO_REINSERT, &reinsert));
        report["diagnostics"] = json{{"j_k", diag.j_k},
                                     {"sigma2", diag.sigma2},
                                     {"log2_sigma2", diag.log2_sigma2},
                                     {"sigma2_exact", take_string(sigma2)},
                                     {"ratio_dom", diag.ratio_dom},
                                     {"ratio_dom_exact", take_string(dom)},
                                     {"ratio_maxres", diag.ratio_maxres},
                                     {"ratio_maxres_exact", take_string(maxres)},
                                     {"ratio_reinsert", diag.ratio_reinsert},
                                     {"ratio_reinsert_exact", take_string(reinsert)},
                                     {"dominated", diag.dominated != 0},
                                     {"trimmed_clt", diag.trimmed_clt != 0}};
    }
    json ks;
    double ks_full = 0;
    check(natp_clt_ks_normal(run.get(), NATP_LAW_FULL, &ks_full));
    ks["full"] = ks_full;
    if (has_trimmed) {
        double v = 0;
        check(natp_clt_ks_normal(run.get(), NATP_LAW_TRIMMED, &v));
        ks["trimmed"] = v;
        check(natp_clt_ks_normal(run.get(), NATP_LAW_REINSERTED, &v));
        ks["reinserted"] = v;
    }
    report["ks_normal"] = ks;
    {
        double au = 0, al = 0, mu = 0, ml = 0, esc = 0;
        check(natp_clt_two_point(run.get(), args.two_point_tol, &au, &al, &mu, &ml, &esc));
        report["two_point"] = json{{"tolerance", args.two_point_tol},
                                   {"atom_upper", au},
                                   {"atom_lower", al},
                                   {"mass_upper", mu},
                                   {"mass_lower", ml},
                                   {"escaped", esc}};
    }
    if (has_trimmed) {
        double v = 0;
        check(natp_clt_reinsertion_ks(run.get(), &v));
        report["reinsertion_ks"] = v;
    }
    if (args.atoms_check) {
        if (ys.empty())
            die_usage("--atoms-check needs explicit weights (--ys, --family linear, or "
                      "--family hindman)");
        std::vector<std::uint64_t> subseq;
        if (!args.subseq_joined.empty()) {
            for (const auto& item : split_commas(args.subseq_joined)) {
                char* end = nullptr;
                errno = 0;
                unsigned long long v = std::strtoull(item.c_str(), &end, 10);
                if (errno != 0 || end == item.c_str() || *end != '\0')
                    die_usage("--subseq items must be 1-based indices");
                subseq.push_back(v);
            }
        } else {
            std::uint64_t limit = std::min<std::uint64_t>(std::min<std::uint64_t>(args.k, ys.size()),
                                                          12);
            for (std::uint64_t i = 1; i <= limit; ++i) subseq.push_back(i);
        }
        report["atoms"] = atoms_report_json(ys, subseq);
    }

    const double* full = nullptr;
    std::uint64_t count = 0;
    check(natp_clt_law_values(run.get(), NATP_LAW_FULL, &full, &count));
    const double* trimmed = nullptr;
    const double* reinserted = nullptr;
    if (has_trimmed) {
        std::uint64_t other = 0;
        check(natp_clt_law_values(run.get(), NATP_LAW_TRIMMED, &trimmed, &other));
        check(natp_clt_law_values(run.get(), NATP_LAW_REINSERTED, &reinserted, &other));
    }

    KeyValues header{{"p", fmt_double(args.p)},
                     {"k", std::to_string(args.k)},
                     {"M", std::to_string(args.M)},
                     {"seed", std::to_string(args.seed)}};
    if (!args.family.empty()) header.emplace_back("family", args.family);
    if (!args.ys_joined.empty()) header.emplace_back("ys", args.ys_joined);
    header.emplace_back("report", report.dump());
    std::string payload = csv_header("clt", header);
    payload += has_trimmed ? "index,full,trimmed,reinserted\n" : "index,full\n";
    for (std::uint64_t i = 0; i < count; ++i) {
        payload += std::to_string(i);
        payload += ',';
        payload += fmt_double(full[i]);
        if (has_trimmed) {
            payload += ',';
            payload += fmt_double(trimmed[i]);
            payload += ',';
            payload += fmt_double(reinserted[i]);
        }
        payload += '\n';
    }

    std::string summary = "clt: KS(full vs normal)=" + fmt_short(ks_full);
    if (has_trimmed)
        summary += ", KS(trimmed)=" + fmt_short(ks["trimmed"].get<double>()) +
                   ", reinsertion KS=" + fmt_short(report["reinsertion_ks"].get<double>());
    summary += " over M=" + std::to_string(count);
    emit(args.out, payload, summary, timer);
    return 0;
}

/* ----- color ------------------------------------------------------------- */

struct ColorArgs {
    std::uint64_t N = 0;
    unsigned c = 2;
    std::uint64_t seed = kDefaultSeed;
    bool find_fs_set = false;
    unsigned find_fs_L = 0;
    bool find_quadruple = false;
    bool strict = false;
    bool scan = false;
    bool hindman_set = false;
    unsigned hindman_L = 0;
    std::string out;
};

int run_color(const ColorArgs& args) {
    Timer timer;
    int modes = int(args.find_fs_set) + int(args.find_quadruple) + int(args.scan) +
                int(args.hindman_set);
    if (modes > 1) die_usage("--find-fs, --find-quadruple, --scan, --hindman are exclusive");

    if (args.scan) {
        natp_scan* raw = nullptr;
        check(natp_scan_2colorings(args.N, args.strict ? 1 : 0, &raw));
        ScanPtr scan(raw);
        json config{{"N", args.N}, {"strict", args.strict}};
        json report = json_report("color", config);
        report["mode"] = "scan";
        bool found = natp_scan_witness_found(scan.get()) != 0;
        report["avoiding_coloring_found"] = found;
        report["nodes"] = natp_scan_nodes(scan.get());
        report["constraints"] = natp_scan_constraints(scan.get());
        if (found) {
            std::string colors;
            for (std::uint64_t n = 1; n <= args.N; ++n) {
                unsigned color = 0;
                check(natp_scan_color(scan.get(), n, &color));
                colors += char('0' + color);
            }
            report["coloring"] = colors;
        }
        std::string payload = report.dump(2) + "\n";
        std::string summary = std::string("color: scan ") +
                              (found ? "found an avoiding 2-coloring"
                                     : "proved every 2-coloring has a witness") +
                              " at N=" + std::to_string(args.N);
        emit(args.out, payload, summary, timer);
        return 0;
    }

    ColoringPtr coloring;
    {
        natp_coloring* raw = nullptr;
        check(natp_coloring_create(args.N, args.c, args.seed, &raw));
        coloring.reset(raw);
    }
    json config{{"N", args.N}, {"c", args.c}, {"seed", args.seed}};

    if (args.find_fs_set) {
        std::vector<std::uint64_t> witness(args.find_fs_L ? args.find_fs_L : 1);
        int found = 0;
        unsigned color = 0;
        check(natp_find_mono_fs(coloring.get(), args.find_fs_L, &found, witness.data(),
                                &color));
        json report = json_report("color", config);
        report["mode"] = "find-fs";
        report["L"] = args.find_fs_L;
        report["found"] = found != 0;
        if (found) {
            json xs = json::array();
            for (unsigned i = 0; i < args.find_fs_L; ++i) xs.push_back(witness[i]);
            report["witness"] = xs;
            report["color"] = color;
        }
        std::string payload = report.dump(2) + "\n";
        std::string summary = std::string("color: monochromatic sum structure ") +
                              (found ? "found" : "not found") +
                              " (L=" + std::to_string(args.find_fs_L) + ")";
        emit(args.out, payload, summary, timer);
        return 0;
    }

    if (args.find_quadruple) {
        int found = 0;
        std::uint64_t x = 0, y = 0;
        unsigned color = 0;
        check(natp_find_mono_quadruple(coloring.get(), args.strict ? 1 : 0, &found, &x, &y,
                                       &color));
        json report = json_report("color", config);
        report["mode"] = "find-quadruple";
        report["strict"] = args.strict;
        report["found"] = found != 0;
        if (found) {
            report["x"] = x;
            report["y"] = y;
            report["color"] = color;
        }
        std::string payload = report.dump(2) + "\n";
        std::string summary = std::string("color: monochromatic quadruple ") +
                              (found ? "found at (" + std::to_string(x) + ", " +
                                           std::to_string(y) + ")"
                                     : "not found");
        emit(args.out, payload, summary, timer);
        return 0;
    }

    if (args.hindman_set) {
        int found = 0;
        unsigned color = 0;
        char** ys = nullptr;
        std::uint64_t count = 0;
        check(natp_hindman_sequence(coloring.get(), args.hindman_L, &found, &color, &ys,
                                    &count));
        auto ys_vec = take_string_array(ys, count);
        json report = json_report("color", config);
        report["mode"] = "hindman";
        report["L"] = args.hindman_L;
        report["found"] = found != 0;
        if (found) {
            report["color"] = color;
            report["ys"] = ys_vec;
        }
        std::string payload = report.dump(2) + "\n";
        std::string summary = std::string("color: weight sequence ") +
                              (found ? "extracted (length " + std::to_string(count) + ")"
                                     : "not found");
        emit(args.out, payload, summary, timer);
        return 0;
    }

    // Default: emit the coloring as a table.
    std::string payload = csv_header("color", {{"N", std::to_string(args.N)},
                                               {"c", std::to_string(args.c)},
                                               {"seed", std::to_string(args.seed)}});
    payload += "n,color\n";
    for (std::uint64_t n = 1; n <= args.N; ++n) {
        unsigned color = 0;
        check(natp_coloring_get(coloring.get(), n, &color));
        payload += std::to_string(n) + "," + std::to_string(color) + "\n";
    }
    std::string summary = "color: " + std::to_string(args.c) + "-coloring of [1.." +
                          std::to_string(args.N) + "] (seed=" + std::to_string(args.seed) +
                          ")";
    emit(args.out, payload, summary, timer);
    return 0;
}

/* ----- threshold ----------------------------------------------------------- */

struct ThresholdArgs {
    unsigned L = 2;
    std::uint64_t N = 0;
    double target = 0.5;
    std::uint64_t trials = 2000;
    std::uint64_t seed = kDefaultSeed;
    unsigned workers = 1;
    std::string out;
};

int run_threshold(const ThresholdArgs& args) {
    Timer timer;
    natp_sweep* raw = nullptr;
    check(natp_threshold_sweep(args.L, args.N, args.target, args.trials, args.seed,
                               args.workers, &raw));
    SweepPtr sweep(raw);

    double lo = natp_sweep_lo(sweep.get());
    double hi = natp_sweep_hi(sweep.get());
    std::string payload = csv_header(
        "threshold", {{"L", std::to_string(args.L)},
                      {"N", std::to_string(args.N)},
                      {"target", fmt_double(args.target)},
                      {"trials-per-p", std::to_string(args.trials)},
                      {"seed", std::to_string(args.seed)},
                      {"lo", fmt_double(lo)},
                      {"hi", fmt_double(hi)}});
    payload += "p,trials,successes,point,lo,hi\n";
    for (std::uint64_t i = 0; i < natp_sweep_eval_count(sweep.get()); ++i) {
        double p = 0;
        natp_estimate est{};
        check(natp_sweep_eval(sweep.get(), i, &p, &est));
        payload += fmt_double(p) + "," + estimate_csv_cells(est) + "\n";
    }
    std::string summary = "threshold: crossing in [" + fmt_short(lo) + ", " + fmt_short(hi) +
                          "] after " + std::to_string(natp_sweep_eval_count(sweep.get())) +
                          " densities";
    emit(args.out, payload, summary, timer);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random additive/multiplicative structure laboratory"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(natp_version()));
    app.footer("Seeds default to 42. NATP_MEM_BUDGET (bytes) caps sample materialization.\n"
               "Exit codes: 0 ok, 1 invalid input, 2 resource limit.");

    SampleArgs sample_args;
    auto* sample = app.add_subcommand("sample", "Materialize one random set over [1..N]");
    sample->add_option("-p", sample_args.p, "Inclusion density in (0,1)")->required();
    sample->add_option("-N,--bound", sample_args.bound, "Upper bound of the window")
        ->required();
    sample->add_option("--seed", sample_args.seed, "Model seed (default 42)");
    sample->add_option("--out", sample_args.out, "Write payload to this file");

    ProbesArgs probes_args;
    auto* probes = app.add_subcommand(
        "probes", "Estimate hit probability, list hits, or search above a floor");
    probes->add_option("--kind", probes_args.kind, "Probe family: fs, fp, or exp");
    probes->add_option("-L", probes_args.L, "Generator count is L (structure size 2^L - 1)");
    probes->add_option("-p", probes_args.p, "Inclusion density in (0,1)")->required();
    probes->add_option("--j", probes_args.j, "Probe index (default: first of the family)")
        ->trigger_on_parse() // record presence
        ->each([&](const std::string&) { probes_args.j_set = true; });
    probes->add_option("--j-count", probes_args.j_count,
                       "Independent trials for the estimate (default 10000)");
    probes->add_option("--seed", probes_args.seed, "Base seed (default 42)");
    probes->add_option("--workers", probes_args.workers, "Worker threads (default 1)");
    probes->add_option("--max-bits", probes_args.max_bits,
                       "Bit budget per probe (default 2^20; exp 16384)");
    probes->add_flag("--hits", probes_args.hits, "List fully included probe indices");
    probes->add_option("--j-begin", probes_args.j_begin, "First index for --hits")
        ->each([&](const std::string&) { probes_args.j_begin_set = true; });
    probes->add_option("--j-end", probes_args.j_end, "One past the last index for --hits");
    probes->add_option("--min-element", probes_args.min_element,
                       "Find the first hit with all elements above this floor (decimal)");
    probes->add_option("--attempt-cap", probes_args.attempt_cap,
                       "Max indices to try in --min-element mode (default ~50/p^R)");
    probes->add_option("--out", probes_args.out, "Write payload to this file");

    QuadruplesArgs quad_args;
    auto* quadruples =
        app.add_subcommand("quadruples", "Count additive-multiplicative quadruples");
    quadruples->add_option("-N", quad_args.N, "Count pairs with x,y <= N")->required();
    quadruples->add_option("-p", quad_args.p, "Inclusion density in (0,1)")->required();
    quadruples->add_option("--seed", quad_args.seed, "Model seed (default 42)");
    quadruples->add_option("--witness-cap", quad_args.witness_cap,
                           "Max witnesses to record (default 100)");
    quadruples->add_option("--out", quad_args.out, "Write payload to this file");

    SecondMomentArgs sm_args;
    auto* second_moment = app.add_subcommand(
        "second-moment", "Quadruple-count moments: exact enumeration or Monte Carlo");
    second_moment->add_option("-N", sm_args.N, "Count pairs with x,y <= N")->required();
    second_moment->add_option("-p", sm_args.p, "Inclusion density in (0,1)")->required();
    second_moment->add_flag("--exact", sm_args.exact,
                            "Enumerate all subsets of [1..max(2N,N^2)] exactly");
    second_moment->add_option("--trials", sm_args.trials,
                              "Monte Carlo sample count (default 10000)");
    second_moment->add_option("--seed", sm_args.seed, "Base seed (default 42)");
    second_moment->add_option("--workers", sm_args.workers, "Worker threads (default 1)");
    second_moment->add_option("--out", sm_args.out, "Write payload to this file");

    CltArgs clt_args;
    auto* clt = app.add_subcommand(
        "clt", "Normalized weighted Bernoulli sums: laws and regime diagnostics");
    clt->add_option("--family", clt_args.family,
                    "Weight family: linear, doubly-exponential, or hindman");
    clt->add_option("--ys", clt_args.ys_joined, "Explicit weights, comma-separated decimals");
    clt->add_option("-k", clt_args.k, "Stage: number of leading weights used")->required();
    clt->add_option("-p", clt_args.p, "Bernoulli density in (0,1) (default 0.5)");
    clt->add_option("-M", clt_args.M, "Replications (default 1000)");
    clt->add_option("--seed", clt_args.seed, "Base seed (default 42)");
    clt->add_option("--workers", clt_args.workers, "Worker threads (default 1)");
    clt->add_option("--color-N", clt_args.color_N, "Coloring bound for --family hindman");
    clt->add_option("--color-c", clt_args.color_c, "Color count (default 2)");
    clt->add_option("--color-seed", clt_args.color_seed, "Coloring seed (default 42)");
    clt->add_flag("--atoms-check", clt_args.atoms_check,
                  "Verify realized subset sums land in the parent's sum closure");
    clt->add_option("--subseq", clt_args.subseq_joined,
                    "1-based subsequence for --atoms-check (default 1..min(k,12))");
    clt->add_option("--two-point-tol", clt_args.two_point_tol,
                    "Atom matching tolerance (default 0.05)");
    clt->add_option("--out", clt_args.out, "Write payload to this file");

    ColorArgs color_args;
    auto* color = app.add_subcommand("color", "Random colorings and monochromatic structure");
    color->add_option("-N", color_args.N, "Color the window [1..N]")->required();
    color->add_option("-c", color_args.c, "Number of colors (default 2)");
    color->add_option("--seed", color_args.seed, "Coloring seed (default 42)");
    color->add_option("--find-fs", color_args.find_fs_L,
                      "Search for a monochromatic L-generator sum structure")
        ->each([&](const std::string&) { color_args.find_fs_set = true; });
    color->add_flag("--find-quadruple", color_args.find_quadruple,
                    "Search for a monochromatic quadruple");
    color->add_flag("--strict", color_args.strict,
                    "Require all four quadruple values distinct");
    color->add_flag("--scan", color_args.scan,
                    "Exhaust all 2-colorings of [1..N] for quadruple witnesses");
    color->add_option("--hindman", color_args.hindman_L,
                      "Extract a monochromatic weight sequence of this length")
        ->each([&](const std::string&) { color_args.hindman_set = true; });
    color->add_option("--out", color_args.out, "Write payload to this file");

    ThresholdArgs threshold_args;
    auto* threshold = app.add_subcommand(
        "threshold", "Bisect the density where a witness probability crosses a target");
    threshold->add_option("-L", threshold_args.L, "Generator count (default 2)");
    threshold->add_option("-N", threshold_args.N, "Search window bound")->required();
    threshold->add_option("--target", threshold_args.target,
                          "Target witness probability (default 0.5)");
    threshold->add_option("--trials", threshold_args.trials,
                          "Samples per density (default 2000)");
    threshold->add_option("--seed", threshold_args.seed, "Base seed (default 42)");
    threshold->add_option("--workers", threshold_args.workers, "Worker threads (default 1)");
    threshold->add_option("--out", threshold_args.out, "Write payload to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1; // uniform validation exit code
    }

    if (sample->parsed()) return run_sample(sample_args);
    if (probes->parsed()) return run_probes(probes_args);
    if (quadruples->parsed()) return run_quadruples(quad_args);
    if (second_moment->parsed()) return run_second_moment(sm_args);
    if (clt->parsed()) return run_clt(clt_args);
    if (color->parsed()) return run_color(color_args);
    if (threshold->parsed()) return run_threshold(threshold_args);
    return 1;
}
