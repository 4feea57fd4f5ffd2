#include "expsum/expsum.h"

#include <cstring>
#include <string>

#include "config.hpp"
#include "corpus.hpp"
#include "engine.hpp"
#include "locus.hpp"
#include "newton.hpp"
#include "poly.hpp"
#include "runner.hpp"
#include "serialize.hpp"

using namespace expsum;

namespace {

thread_local std::string g_last_error;

es_status fail(es_status s, const std::string& msg) {
    g_last_error = msg;
    return s;
}

template <class F>
es_status guarded(F&& fn) {
    try {
        return fn();
    } catch (const ParseError& e) {
        return fail(ES_ERR_PARSE, e.what());
    } catch (const CapExceeded& e) {
        return fail(ES_ERR_CAP, e.what());
    } catch (const DomainError& e) {
        return fail(ES_ERR_DOMAIN, e.what());
    } catch (const std::exception& e) {
        return fail(ES_ERR_INTERNAL, e.what());
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void fill_result(const ExpSumResult& r, es_sum_result* out) {
    out->N = r.N;
    out->u = r.u;
    out->re = r.value.real();
    out->im = r.value.imag();
    out->magnitude = r.magnitude;
    out->abs_error_bound = r.abs_error_bound;
    out->term_count = r.term_count;
    std::snprintf(out->method, sizeof(out->method), "%s", method_name(r.method));
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

EngineOptions options_with_cap(uint64_t cap) {
    EngineOptions opt;
    if (cap) opt.term_cap = cap;
    return opt;
}

}  // namespace

struct es_poly {
    Polynomial poly;
    std::vector<std::string> vars;
};

extern "C" {

const char* es_status_str(es_status s) {
    switch (s) {
        case ES_OK: return "ok";
        case ES_ERR_PARSE: return "parse error";
        case ES_ERR_DOMAIN: return "domain error";
        case ES_ERR_CAP: return "cap exceeded";
        case ES_ERR_IO: return "io error";
        case ES_ERR_INTERNAL: return "internal error";
    }
    return "unknown";
}

const char* es_last_error(void) { return g_last_error.c_str(); }

void es_string_free(char* s) { delete[] s; }

es_status es_poly_parse(const char* text, const char* vars_csv, es_poly** out) {
    if (!text || !vars_csv || !out) return fail(ES_ERR_DOMAIN, "null argument");
    return guarded([&] {
        auto vars = split_csv(vars_csv);
        if (vars.empty()) return fail(ES_ERR_PARSE, "no variables given");
        Polynomial p = parse_polynomial(text, vars);
        *out = new es_poly{std::move(p), std::move(vars)};
        return ES_OK;
    });
}

void es_poly_free(es_poly* p) { delete p; }

int es_poly_nvars(const es_poly* p) { return p ? static_cast<int>(p->poly.nvars()) : -1; }

int es_poly_degree(const es_poly* p) { return p ? static_cast<int>(p->poly.degree()) : -1; }

es_status es_poly_render(const es_poly* p, char** out) {
    if (!p || !out) return fail(ES_ERR_DOMAIN, "null argument");
    return guarded([&] {
        *out = dup_string(p->poly.render(p->vars));
        return ES_OK;
    });
}

es_status es_expsum(const es_poly* p, uint64_t N, uint64_t u, uint64_t term_cap,
                    es_sum_result* out) {
    if (!p || !out) return fail(ES_ERR_DOMAIN, "null argument");
    return guarded([&] {
        ExpSumResult r =
            ::expsum::expsum(p->poly, N, CharacterIndex{N, u}, options_with_cap(term_cap));
        fill_result(r, out);
        return ES_OK;
    });
}

es_status es_expsum_max(const es_poly* p, uint64_t N, uint64_t term_cap, es_sum_result* out) {
    if (!p || !out) return fail(ES_ERR_DOMAIN, "null argument");
    return guarded([&] {
        ExpSumResult r = expsum_max(p->poly, N, options_with_cap(term_cap));
        fill_result(r, out);
        return ES_OK;
    });
}

es_status es_expsum_ff(const es_poly* p, uint32_t prime, uint32_t m, uint64_t term_cap,
                       es_sum_result* out) {
    if (!p || !out) return fail(ES_ERR_DOMAIN, "null argument");
    return guarded([&] {
        ExpSumResult r = expsum_ff(p->poly, prime, m, options_with_cap(term_cap));
        fill_result(r, out);
        return ES_OK;
    });
}

es_status es_invariants_json(const es_poly* p, int s_override, uint64_t term_cap, char** out) {
    if (!p || !out) return fail(ES_ERR_DOMAIN, "null argument");
    return guarded([&] {
        nlohmann::json j;
        const Polynomial& f = p->poly;
        unsigned d = f.degree();
        if (d <= 1) return fail(ES_ERR_DOMAIN, "degree must exceed 1 for the invariant suite");
        std::optional<int> ov;
        if (s_override >= 0) ov = s_override;
        LocusData ld =
            estimate_s(f.homogeneous_part(d), {}, term_cap ? term_cap : 400'000'000, ov);
        NewtonData nd = newton_data(f);
        j["poly"] = f.render(p->vars);
        j["n"] = f.nvars();
        j["locus"] = to_json(ld);
        j["newton"] = to_json(nd);
        *out = dup_string(j.dump(2));
        return ES_OK;
    });
}

es_status es_poincare_json(const es_poly* p, uint32_t prime, uint32_t max_m, uint64_t term_cap,
                           char** out) {
    if (!p || !out) return fail(ES_ERR_DOMAIN, "null argument");
    return guarded([&] {
        if (!is_prime_u64(prime)) return fail(ES_ERR_DOMAIN, "p must be prime");
        if (max_m < 14) max_m = 14;
        std::vector<BigInt> counts;
        for (unsigned m = 1; m <= max_m; ++m)
            counts.push_back(count_solutions(p->poly, prime, m, term_cap ? term_cap : 100'000'000));
        PoincareData pd = reconstruct_poincare(counts, prime, p->poly.nvars());
        nlohmann::json j = to_json(pd);
        unsigned d = p->poly.degree();
        if (d >= 2) {
            LocusData ld = estimate_s(p->poly.homogeneous_part(d), {}, 400'000'000, {});
            MonodromyReport rep = monodromy_range_check(pd, ld.s_estimate, d);
            nlohmann::json jm;
            jm["conforming"] = rep.conforming;
            jm["trivial"] = rep.trivial;
            jm["violations"] = rep.violations.size();
            j["monodromy_check"] = jm;
        }
        *out = dup_string(j.dump(2));
        return ES_OK;
    });
}

es_status es_corpus_json(char** out) {
    if (!out) return fail(ES_ERR_DOMAIN, "null argument");
    return guarded([&] {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& e : builtin_corpus()) {
            nlohmann::json j;
            j["id"] = e.id;
            j["text"] = e.text;
            j["vars"] = e.vars;
            j["n"] = e.n;
            j["d"] = e.d;
            j["s"] = e.s;
            j["sigma"] = rational_str(e.sigma);
            j["kappa"] = e.kappa;
            j["nondegenerate"] = verdict_name(e.nondeg);
            j["provenance"] = e.provenance;
            arr.push_back(j);
        }
        *out = dup_string(arr.dump(2));
        return ES_OK;
    });
}

es_status es_run_experiment(const char* config_path, const char* out_dir, const char* format,
                            uint32_t threads, uint64_t term_cap, uint32_t* hard_failures) {
    if (!config_path || !out_dir) return fail(ES_ERR_DOMAIN, "null argument");
    return guarded([&] {
        ExperimentConfig cfg = load_config_file(config_path);
        if (format && *format) cfg.output_format = format;
        if (term_cap) cfg.term_cap = term_cap;
        cfg.validate();
        RunReport rep = run_experiment(cfg, out_dir, threads);
        if (hard_failures) *hard_failures = rep.hard_failures;
        return ES_OK;
    });
}

}  // extern "C"
