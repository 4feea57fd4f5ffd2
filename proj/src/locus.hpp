#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "common.hpp"
#include "poly.hpp"
#include "unipoly.hpp"

namespace expsum {

struct SlopeEvidence {
    std::uint64_t q = 0;
    std::uint64_t count = 0;  // #{x in F_q^n : grad f_d(x) = 0}
    double slope = 0.0;       // log count / log q
};

struct LocusData {
    unsigned d = 0;
    int s_estimate = -1;
    bool s_from_override = false;
    bool consistent = true;
    std::vector<SlopeEvidence> evidence;
    BigInt crit_bound;  // (d-1)^n
};

// Good reduction proxy: p does not divide d and p exceeds every coefficient
// of the gradient of f_d (absolute value).
bool good_prime(const Polynomial& f_d, std::uint64_t p);

// Dimension of the critical locus of the top homogeneous part, estimated from
// point counts over sampled prime fields: slope_q = log N_q / log q, rounded
// once the per-prime slopes agree within 0.3. An explicit override wins and
// is recorded. Throws DomainError when the slopes are inconsistent and no
// override is supplied.
LocusData estimate_s(const Polynomial& f_d, std::vector<std::uint64_t> sample_primes = {},
                     std::uint64_t cap = 400'000'000, std::optional<int> s_override = {});

// a_{p,m} = #{x in (Z/p^m)^n : f(x) = 0}. Uses direct enumeration when
// p^{mn} fits the cap, otherwise the exact p-adic recursion.
BigInt count_solutions(const Polynomial& f, std::uint64_t p, unsigned m,
                       std::uint64_t cap = 100'000'000);

struct PoincarePole {
    double t0 = 0.0;                  // log_p |T0| for the unnormalized series
    std::optional<Rational> t0_exact;  // set when |T0| is an exact power of p
    unsigned order = 1;
    bool trivial = false;  // pole on |T0| = 1 (the normalization pole at T = 1)
    double T0_abs = 0.0;
};

struct PoincareData {
    std::uint64_t p = 0;
    unsigned nvars = 0;
    std::vector<BigInt> counts;        // a_{p,1..M}
    std::vector<Rational> recurrence;  // minimal LFSR of a_{p,m} p^{-mn}, c_0 = 1
    UniPoly numerator;                 // of P(T) = sum a_{p,m} T^m
    UniPoly denominator;
    std::vector<PoincarePole> poles;
    bool recurrence_found = false;
    bool unstable = false;  // recurrence changed when the tail was extended
};

// Minimal linear recurrence of the normalized counts via exact
// Berlekamp-Massey over Q, rational function reconstruction, and pole
// real-part extraction.
PoincareData reconstruct_poincare(const std::vector<BigInt>& counts, std::uint64_t p,
                                  unsigned nvars, unsigned max_degree = 6);

struct MonodromyReport {
    unsigned conforming = 0;
    unsigned trivial = 0;
    std::vector<PoincarePole> violations;
};

// Classifies reconstructed poles: conforming when t0 = -1 or
// t0 <= -(n-s)/d (exact when possible, else within 1e-9); the pole on
// |T0| = 1 is reported separately as the trivial normalization pole.
MonodromyReport monodromy_range_check(const PoincareData& pd, int s, unsigned d);

}  // namespace expsum
