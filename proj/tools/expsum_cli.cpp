// Command-line front end; talks to the engine exclusively through the shared
// library's C interface.

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "expsum/expsum.h"

namespace {

int die(es_status s) {
    std::fprintf(stderr, "error (%s): %s\n", es_status_str(s), es_last_error());
    return s == ES_OK ? 1 : static_cast<int>(s);
}

void print_sum(const es_sum_result& r, bool json) {
    if (json) {
        std::printf(
            "{\"N\": %" PRIu64 ", \"u\": %" PRIu64
            ", \"re\": %.12g, \"im\": %.12g, \"magnitude\": %.12g, \"err\": %.12g, "
            "\"method\": \"%s\", \"terms\": %" PRIu64 "}\n",
            r.N, r.u, r.re, r.im, r.magnitude, r.abs_error_bound, r.method, r.term_count);
    } else {
        std::printf("E(N=%" PRIu64 ", u=%" PRIu64 ") = %.12g  (re=%.12g im=%.12g err=%.2g, %s, %" PRIu64
                    " terms)\n",
                    r.N, r.u, r.magnitude, r.re, r.im, r.abs_error_bound, r.method, r.term_count);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact normalized exponential sums over Z/N and their decay invariants"};
    app.require_subcommand(1);

    std::string poly_text, vars = "x", out_dir = "out", config_path, format;
    std::uint64_t N = 0, u = 0, cap = 0;
    std::uint32_t p = 3, m = 1, threads = 0;
    int s_override = -1;
    bool max_over_chars = false, as_json = false, ff = false;

    auto add_poly_opts = [&](CLI::App* cmd) {
        cmd->add_option("-f,--poly", poly_text, "polynomial text, e.g. \"x^2 + 2*x*y\"")
            ->required();
        cmd->add_option("-v,--vars", vars, "comma-separated variable names (default: x)");
    };

    CLI::App* eval = app.add_subcommand("eval", "evaluate one sum E_f(N, xi)");
    add_poly_opts(eval);
    eval->add_option("-N,--modulus", N, "modulus N")->required();
    eval->add_option("-u,--character", u, "character index u, gcd(u,N)=1 (default 1)");
    eval->add_flag("--max", max_over_chars, "maximize over all primitive characters");
    eval->add_flag("--ff", ff, "function-field sum over F_p[t]/(t^m); use -p and -m");
    eval->add_option("-p,--prime", p, "prime (with --ff)");
    eval->add_option("-m,--power", m, "power m (with --ff)");
    eval->add_option("--cap", cap, "term cap");
    eval->add_flag("--json", as_json, "JSON output");

    CLI::App* inv = app.add_subcommand("invariants", "Newton and critical-locus data for one f");
    add_poly_opts(inv);
    inv->add_option("-s,--s-override", s_override, "declare s = dim Crit(f_d)");
    inv->add_option("--cap", cap, "term cap");

    CLI::App* poin = app.add_subcommand("poincare", "solution counts and Poincare reconstruction");
    add_poly_opts(poin);
    poin->add_option("-p,--prime", p, "prime p")->required();
    poin->add_option("-m,--max-m", m, "count solutions mod p^m for m up to here (>= 14)");
    poin->add_option("--cap", cap, "term cap");

    CLI::App* verify = app.add_subcommand("verify", "run the experiment in a config file");
    verify->add_option("-c,--config", config_path, "config path")->required();
    verify->add_option("-o,--out", out_dir, "output directory (default: out)");
    verify->add_option("--cap", cap, "override term cap");
    verify->add_option("-t,--threads", threads, "worker threads (default: EXPSUM_THREADS)");
    verify->add_option("--format", format, "csv | json | both");

    CLI::App* corpus = app.add_subcommand("corpus", "list the built-in corpus");

    CLI11_PARSE(app, argc, argv);

    es_status st = ES_OK;
    if (corpus->parsed()) {
        char* json = nullptr;
        st = es_corpus_json(&json);
        if (st != ES_OK) return die(st);
        std::printf("%s\n", json);
        es_string_free(json);
        return 0;
    }

    if (verify->parsed()) {
        std::uint32_t failures = 0;
        st = es_run_experiment(config_path.c_str(), out_dir.c_str(),
                               format.empty() ? nullptr : format.c_str(), threads, cap, &failures);
        if (st != ES_OK) return die(st);
        std::printf("experiment finished: results in %s (%u hard failure%s)\n", out_dir.c_str(),
                    failures, failures == 1 ? "" : "s");
        return failures == 0 ? 0 : 1;
    }

    es_poly* poly = nullptr;
    st = es_poly_parse(poly_text.c_str(), vars.c_str(), &poly);
    if (st != ES_OK) return die(st);

    int rc = 0;
    if (eval->parsed()) {
        es_sum_result r;
        if (ff) {
            st = es_expsum_ff(poly, p, m, cap, &r);
        } else if (max_over_chars) {
            st = es_expsum_max(poly, N, cap, &r);
        } else {
            st = es_expsum(poly, N, u ? u : (N == 1 ? 0 : 1), cap, &r);
        }
        if (st != ES_OK) rc = die(st);
        else print_sum(r, as_json);
    } else if (inv->parsed()) {
        char* json = nullptr;
        st = es_invariants_json(poly, s_override, cap, &json);
        if (st != ES_OK) rc = die(st);
        else {
            std::printf("%s\n", json);
            es_string_free(json);
        }
    } else if (poin->parsed()) {
        char* json = nullptr;
        st = es_poincare_json(poly, p, m, cap, &json);
        if (st != ES_OK) rc = die(st);
        else {
            std::printf("%s\n", json);
            es_string_free(json);
        }
    }
    es_poly_free(poly);
    return rc;
}
