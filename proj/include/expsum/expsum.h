/* Public C interface of the exponential-sum engine.
 *
 * The library computes normalized exponential sums E_f(N, xi) of integer
 * polynomials over Z/N, the Newton-polyhedron invariants governing their
 * decay, solution-count Poincare series, and batch bound experiments.
 *
 * Conventions:
 *   - every function returns an es_status; ES_OK is success,
 *   - on failure es_last_error() gives a thread-local message,
 *   - objects are opaque handles released with their es_*_free function,
 *   - strings returned through char** are owned by the caller and released
 *     with es_string_free.
 */
#ifndef EXPSUM_H
#define EXPSUM_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum es_status {
    ES_OK = 0,
    ES_ERR_PARSE = 1,    /* bad polynomial text or config syntax */
    ES_ERR_DOMAIN = 2,   /* contract violation (bad modulus, character, ...) */
    ES_ERR_CAP = 3,      /* enumeration cap or budget exceeded */
    ES_ERR_IO = 4,       /* file system failure */
    ES_ERR_INTERNAL = 5
} es_status;

const char* es_status_str(es_status s);

/* Thread-local message describing the most recent failure. */
const char* es_last_error(void);

void es_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Polynomials                                                         */
/* ------------------------------------------------------------------ */

typedef struct es_poly es_poly;

/* Grammar: signed integer coefficients, '*', '^' with nonnegative integer
 * exponents, '+'/'-', optional parentheses around a whole term product.
 * vars_csv names the variables in order, comma separated. */
es_status es_poly_parse(const char* text, const char* vars_csv, es_poly** out);
void es_poly_free(es_poly* p);

int es_poly_nvars(const es_poly* p);
int es_poly_degree(const es_poly* p);

/* Canonical form: declared variable order, graded-lex term order. */
es_status es_poly_render(const es_poly* p, char** out);

/* ------------------------------------------------------------------ */
/* Exponential sums                                                    */
/* ------------------------------------------------------------------ */

typedef struct es_sum_result {
    uint64_t N;
    uint64_t u;         /* character index: xi = e(2 pi i u / N) */
    double re, im;      /* complex value of the normalized sum */
    double magnitude;   /* E_f(N, xi) */
    double abs_error_bound;
    uint64_t term_count;
    char method[12];    /* "oracle", "crt", "descent", "dft" */
} es_sum_result;

/* E_f(N, xi_u); gcd(u, N) must be 1 (u = 0 only for N = 1). */
es_status es_expsum(const es_poly* p, uint64_t N, uint64_t u, uint64_t term_cap,
                    es_sum_result* out);

/* Max of E_f(N, xi) over all primitive xi; out->u is a maximizer. */
es_status es_expsum_max(const es_poly* p, uint64_t N, uint64_t term_cap, es_sum_result* out);

/* Function-field analogue over F_p[t]/(t^m) with the canonical primitive
 * additive character. */
es_status es_expsum_ff(const es_poly* p, uint32_t prime, uint32_t m, uint64_t term_cap,
                       es_sum_result* out);

/* ------------------------------------------------------------------ */
/* Invariants and Poincare series (JSON results)                       */
/* ------------------------------------------------------------------ */

/* Newton polyhedron data (support, sigma, kappa, faces, non-degeneracy) plus
 * critical-locus data (s estimate with evidence). s_override < 0 means none. */
es_status es_invariants_json(const es_poly* p, int s_override, uint64_t term_cap, char** out);

/* Solution counts a_{p,m} for m <= max_m, recurrence detection, rational form
 * of the Poincare series and its pole real parts. */
es_status es_poincare_json(const es_poly* p, uint32_t prime, uint32_t max_m, uint64_t term_cap,
                           char** out);

/* Built-in study corpus with hand-verified annotations. */
es_status es_corpus_json(char** out);

/* ------------------------------------------------------------------ */
/* Experiments                                                         */
/* ------------------------------------------------------------------ */

/* Runs the experiment described by the config file (key = value sections)
 * into out_dir. threads = 0 picks EXPSUM_THREADS or the hardware count;
 * term_cap = 0 keeps the config value; format may be NULL to keep the config
 * value, else "csv", "json" or "both". hard_failures receives the number of
 * correctness-invariant violations (0 on a clean run). */
es_status es_run_experiment(const char* config_path, const char* out_dir, const char* format,
                            uint32_t threads, uint64_t term_cap, uint32_t* hard_failures);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* EXPSUM_H */
