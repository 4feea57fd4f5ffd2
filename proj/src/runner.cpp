#include "runner.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

#include "locus.hpp"
#include "residues.hpp"

namespace expsum {

unsigned default_threads() {
    if (const char* env = std::getenv("EXPSUM_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

namespace {

struct EntryState {
    std::string id;
    Polynomial poly{1};
    unsigned n = 0, d = 0;
    int s = 0;
    NewtonData newton;
    bool usable = false;
    std::string note;
    bool is_builtin = false;
    Rational annotated_sigma;
    unsigned annotated_kappa = 0;
    NondegVerdict annotated_nondeg = NondegVerdict::unknown;
    int annotated_s = -1;
};

struct InstanceResult {
    ExpSumResult sum;
    bool ok = false;
    bool skipped = false;
    std::string skip_reason;
    std::vector<BoundVerdict> verdicts;
    std::vector<std::string> failures;
};

double pow_count(std::uint64_t base, unsigned exp) {
    double r = 1;
    while (exp--) r *= static_cast<double>(base);
    return r;
}

// Constant-1 prime-power bound is only a theorem once the Weil constant
// (d-1)^n p^{-n/2} clears p^{-n/d}, i.e. (d-1)^{2d} <= p^{d-2} (any p for
// d = 2).
bool igusa_constant_one_ok(unsigned d, std::uint64_t p) {
    if (d == 2) return true;
    BigInt lhs = 1;
    for (unsigned i = 0; i < 2 * d; ++i) lhs *= d - 1;
    BigInt rhs = 1;
    for (unsigned i = 0; i + 2 < d; ++i) rhs *= p;
    return lhs <= rhs;
}

void evaluate_instance(const EntryState& e, std::uint64_t N, const ExperimentConfig& cfg,
                       InstanceResult& out) {
    EngineOptions opt;
    opt.term_cap = cfg.term_cap;
    try {
        if (cfg.characters == CharacterMode::max_over_all) {
            out.sum = expsum_max(e.poly, N, opt);
        } else {
            out.sum = expsum(e.poly, N, CharacterIndex{N, N == 1 ? 0 : 1}, opt);
        }
        out.ok = true;
    } catch (const CapExceeded& ex) {
        out.skipped = true;
        out.skip_reason = ex.what();
        return;
    }

    // Hard invariants. Trivial magnitude bound first.
    if (out.sum.magnitude > 1.0 + out.sum.abs_error_bound + 1e-12)
        out.failures.push_back(e.id + " N=" + std::to_string(N) + ": magnitude exceeds 1");

    // Oracle and CRT spot checks on small instances.
    const double spot_cap = 200'000;
    if (pow_count(N, e.n) <= spot_cap && N > 1) {
        std::uint64_t u = out.sum.u ? out.sum.u : 1;
        ExpSumResult direct = expsum_oracle(e.poly, N, CharacterIndex{N, u}, opt);
        ExpSumResult routed = expsum(e.poly, N, CharacterIndex{N, u}, opt);
        if (std::abs(direct.value - routed.value) > 1e-8)
            out.failures.push_back(e.id + " N=" + std::to_string(N) +
                                   ": engine path disagrees with direct enumeration");
        if (std::abs(direct.magnitude - out.sum.magnitude) > 1e-8 &&
            cfg.characters == CharacterMode::max_over_all) {
            // max result must match the direct sum at its own maximizer
            out.failures.push_back(e.id + " N=" + std::to_string(N) +
                                   ": reported maximum inconsistent with direct enumeration");
        }
    }

    // Bound verdicts.
    auto factors = factorize_u64(N);
    bool is_prime_power = factors.size() == 1;
    std::uint64_t p0 = is_prime_power ? factors[0].first : 0;
    unsigned m0 = is_prime_power ? factors[0].second : 0;
    bool squarefree = power_free(N, 2);
    bool all_good = true;
    for (const auto& [p, eexp] : factors)
        if (!good_prime(e.poly.homogeneous_part(e.d), p)) all_good = false;

    const double observed = out.sum.magnitude;
    const double err = out.sum.abs_error_bound;
    for (BoundName b : cfg.bounds) {
        if (!e.usable && b != BoundName::trivial) continue;
        BoundVerdict v;
        v.f_id = e.id;
        v.N = N;
        v.u = out.sum.u;
        v.observed = observed;
        switch (b) {
            case BoundName::trivial:
                v.bound = {b, Rational(0), "1", "always", true};
                v.predicted = 1.0;
                break;
            case BoundName::conjecture1: {
                v.bound = {b, Rational(e.n - e.s, e.d), "unknown c", "all N", false};
                v.predicted = bound_conjecture1(e.n, e.s, e.d, N, cfg.epsilon);
                break;
            }
            case BoundName::igusa_homog: {
                if (!(is_prime_power && e.s == 0 && e.poly.is_homogeneous() &&
                      good_prime(e.poly, p0)))
                    continue;
                bool provable = igusa_constant_one_ok(e.d, p0);
                v.bound = {b, Rational(static_cast<long long>(m0) * e.n, e.d), "1",
                           "f homogeneous, s=0, good p", provable};
                v.predicted = bound_igusa_homog(e.n, e.d, p0, m0);
                break;
            }
            case BoundName::deligne_squarefree: {
                if (!(is_prime_power && m0 == 1 && all_good)) continue;
                v.bound = {b, Rational(e.n - e.s, 2), "(d-1)^{n-s}", "prime modulus, good p", true};
                v.predicted = bound_deligne(e.n, e.s, e.d, p0);
                break;
            }
            case BoundName::cubefree: {
                if (!(is_prime_power && m0 == 2 && all_good)) continue;
                v.bound = {b, Rational(2 * (e.n - e.s)), "(d-1)^{n-s}", "N = p^2, good p", false};
                v.predicted = bound_cubefree(e.n, e.s, e.d, p0);
                break;
            }
            case BoundName::d2free: {
                if (!power_free(N, e.d + 2)) continue;
                v.bound = {b, Rational(e.n - e.s, e.d), "unknown c(f_d)",
                           "N free of (d+2)-th powers", false};
                v.predicted = bound_d2free(e.n, e.s, e.d, N);
                break;
            }
            case BoundName::newton_CAN: {
                if (!(is_prime_power && m0 >= 2)) continue;
                if (e.newton.nondegenerate != NondegVerdict::certified_nondegenerate &&
                    e.newton.nondegenerate != NondegVerdict::heuristic_nondegenerate)
                    continue;
                v.bound = {b, e.newton.sigma * m0, "unknown c", "nondegenerate, m >= 2", false};
                v.predicted = bound_newton(e.newton.sigma, e.newton.kappa, p0, m0);
                break;
            }
        }
        v.ratio = v.predicted > 0 ? observed / v.predicted : 0.0;
        v.pass = verdict_pass(observed, v.predicted, err);
        if (!v.pass && v.bound.asserted)
            out.failures.push_back(e.id + " N=" + std::to_string(N) + ": asserted bound " +
                                   bound_name(b) + " failed (observed " +
                                   format_double(observed) + " > predicted " +
                                   format_double(v.predicted) + ")");
        out.verdicts.push_back(v);
    }
}

}  // namespace

RunReport run_experiment(const ExperimentConfig& cfg, const std::string& out_dir,
                         unsigned threads) {
    cfg.validate();
    if (threads == 0) threads = default_threads();
    RunReport report;
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    // Assemble entries: builtin corpus plus config polynomials.
    std::vector<EntryState> entries;
    if (cfg.use_builtin_corpus) {
        for (const auto& ce : builtin_corpus()) {
            EntryState e;
            e.id = ce.id;
            e.poly = ce.parse();
            e.n = ce.n;
            e.is_builtin = true;
            e.annotated_sigma = ce.sigma;
            e.annotated_kappa = ce.kappa;
            e.annotated_nondeg = ce.nondeg;
            e.annotated_s = ce.s;
            entries.push_back(std::move(e));
        }
    }
    for (const auto& cp : cfg.polynomials) {
        EntryState e;
        e.id = cp.id;
        try {
            e.poly = parse_polynomial(cp.text, cp.vars);
        } catch (const ParseError& ex) {
            throw DomainError("polynomial '" + cp.id + "': " + ex.what());
        }
        e.n = static_cast<unsigned>(cp.vars.size());
        if (cp.s_override) e.annotated_s = *cp.s_override;
        entries.push_back(std::move(e));
    }

    // Invariants per entry (serial; these are cheap next to the sweeps).
    for (auto& e : entries) {
        e.d = e.poly.degree();
        if (e.d <= 1) {
            e.note = "degree <= 1: outside the bound framework; sums only";
            e.s = 0;
            e.usable = false;
            continue;
        }
        try {
            std::optional<int> ov;
            if (e.annotated_s >= 0) ov = e.annotated_s;
            LocusData ld = estimate_s(e.poly.homogeneous_part(e.d), {}, cfg.term_cap, ov);
            e.s = ld.s_estimate;
            e.newton = newton_data(e.poly);
            e.usable = true;
            if (e.is_builtin) {
                if (e.newton.sigma != e.annotated_sigma)
                    report.failure_notes.push_back(e.id + ": computed sigma " +
                                                   rational_str(e.newton.sigma) +
                                                   " != annotated " + rational_str(e.annotated_sigma));
                if (e.newton.kappa != e.annotated_kappa)
                    report.failure_notes.push_back(e.id + ": computed kappa mismatch");
                if (e.newton.nondegenerate != e.annotated_nondeg)
                    report.failure_notes.push_back(e.id + ": nondegeneracy verdict mismatch");
            }
        } catch (const std::exception& ex) {
            e.note = std::string("invariants unavailable: ") + ex.what();
            e.s = e.annotated_s >= 0 ? e.annotated_s : 0;
            e.usable = false;
        }
    }

    // Instance list, deterministic order.
    auto moduli = cfg.moduli();
    struct Task {
        std::size_t entry;
        std::uint64_t N;
    };
    std::vector<Task> tasks;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        for (std::uint64_t N : moduli) {
            if (cfg.plan == ModulusPlan::d2free_up_to && entries[i].usable &&
                !power_free(N, entries[i].d + 2))
                continue;
            tasks.push_back({i, N});
        }
    }
    std::vector<InstanceResult> results(tasks.size());

    const auto started = std::chrono::steady_clock::now();
    std::atomic<std::size_t> next{0};
    std::atomic<bool> out_of_time{false};
    auto worker = [&]() {
        for (;;) {
            std::size_t idx = next.fetch_add(1);
            if (idx >= tasks.size()) return;
            if (cfg.time_budget_sec) {
                auto elapsed = std::chrono::duration_cast<std::chrono::seconds>(
                                   std::chrono::steady_clock::now() - started)
                                   .count();
                if (static_cast<std::uint64_t>(elapsed) > cfg.time_budget_sec) {
                    out_of_time = true;
                    results[idx].skipped = true;
                    results[idx].skip_reason = "time budget exceeded";
                    continue;
                }
            }
            const Task& t = tasks[idx];
            evaluate_instance(entries[t.entry], t.N, cfg, results[idx]);
        }
    };
    {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < std::max(1u, threads); ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // Gather.
    std::vector<std::string> sums_rows, verdict_rows;
    nlohmann::json jsums = nlohmann::json::array(), jverd = nlohmann::json::array();
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const auto& r = results[i];
        ++report.instances;
        if (r.skipped) {
            ++report.skipped;
            continue;
        }
        if (!r.ok) continue;
        const std::string& id = entries[tasks[i].entry].id;
        sums_rows.push_back(sums_csv_row(id, r.sum));
        jsums.push_back(to_json(r.sum, id));
        for (const auto& v : r.verdicts) {
            verdict_rows.push_back(verdicts_csv_row(v));
            jverd.push_back(to_json(v));
        }
        for (const auto& f : r.failures) report.failure_notes.push_back(f);
    }
    report.hard_failures = static_cast<unsigned>(report.failure_notes.size());

    const bool want_csv = cfg.output_format == "csv" || cfg.output_format == "both";
    const bool want_json = cfg.output_format == "json" || cfg.output_format == "both";
    if (want_csv) {
        std::ofstream sums(fs::path(out_dir) / "sums.csv");
        sums << sums_csv_header() << "\n";
        for (const auto& row : sums_rows) sums << row << "\n";
        std::ofstream verd(fs::path(out_dir) / "verdicts.csv");
        verd << verdicts_csv_header() << "\n";
        for (const auto& row : verdict_rows) verd << row << "\n";
        report.written_files.push_back((fs::path(out_dir) / "sums.csv").string());
        report.written_files.push_back((fs::path(out_dir) / "verdicts.csv").string());
    }
    if (want_json) {
        nlohmann::json j;
        j["sums"] = jsums;
        j["verdicts"] = jverd;
        std::ofstream out(fs::path(out_dir) / "results.json");
        out << j.dump(2) << "\n";
        report.written_files.push_back((fs::path(out_dir) / "results.json").string());
    }

    // Summary with invariants.
    nlohmann::json summary;
    summary["instances"] = report.instances;
    summary["skipped"] = report.skipped;
    summary["hard_failures"] = report.hard_failures;
    summary["failure_notes"] = report.failure_notes;
    summary["out_of_time"] = out_of_time.load();
    nlohmann::json jent = nlohmann::json::array();
    for (const auto& e : entries) {
        nlohmann::json je;
        je["id"] = e.id;
        je["n"] = e.n;
        je["d"] = e.d;
        je["s"] = e.s;
        if (!e.note.empty()) je["note"] = e.note;
        if (e.usable) je["newton"] = to_json(e.newton);
        jent.push_back(je);
    }
    summary["entries"] = jent;
    {
        std::ofstream out(fs::path(out_dir) / "summary.json");
        out << summary.dump(2) << "\n";
        report.written_files.push_back((fs::path(out_dir) / "summary.json").string());
    }
    return report;
}

}  // namespace expsum
