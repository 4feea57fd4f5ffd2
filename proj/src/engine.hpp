#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "common.hpp"
#include "poly.hpp"

namespace expsum {

// Additive character index: xi = e(2 pi i u / N) with gcd(u, N) = 1.
// u = 0 is allowed only for N = 1 (the trivial character).
struct CharacterIndex {
    std::uint64_t N = 1;
    std::uint64_t u = 0;
};

enum class SumMethod { oracle, crt, descent, dft };
const char* method_name(SumMethod m);

struct ExpSumResult {
    std::uint64_t N = 1;
    std::uint64_t u = 0;
    std::complex<double> value{0.0, 0.0};
    double magnitude = 0.0;
    double abs_error_bound = 0.0;
    SumMethod method = SumMethod::oracle;
    std::uint64_t term_count = 0;
};

struct EngineOptions {
    std::uint64_t term_cap = 1'000'000'000;
    double tolerance = 1e-8;
};

// Direct enumeration of E_f(N, xi) over (Z/N)^n with a precomputed table of
// N-th roots of unity and compensated summation. Cost N^n.
ExpSumResult expsum_oracle(const Polynomial& f, std::uint64_t N, const CharacterIndex& chi,
                           const EngineOptions& opt = {});

// Prime-power split of a character: N = prod p_i^{e_i} and xi_i = xi^{b_i}
// with b_i = a_i N / p_i^{e_i}, sum_i a_i / p_i^{e_i} = 1/N mod 1. Each xi_i
// is primitive at its prime power and E_f(N,xi) = prod E_f(p_i^{e_i}, xi_i).
std::vector<std::pair<std::uint64_t, CharacterIndex>> crt_split(std::uint64_t N,
                                                                const CharacterIndex& chi);

// Prime-power evaluation for m >= 2 by critical-residue descent: classes whose
// reduction mod p is non-critical cancel exactly, so only fibers over the
// critical residues C_p are enumerated. Cost #C_p * p^{(m-2)n}.
ExpSumResult expsum_descent(const Polynomial& f, std::uint64_t p, unsigned m,
                            const CharacterIndex& chi, const EngineOptions& opt = {});

// General evaluation: composite N goes through the CRT split, prime powers
// with m >= 2 through descent, primes through the oracle.
ExpSumResult expsum(const Polynomial& f, std::uint64_t N, const CharacterIndex& chi,
                    const EngineOptions& opt = {});

struct AllCharactersResult {
    std::uint64_t N = 1;  // = p^m
    // histogram[v] = #{x : f(x) = v mod p^m} over the full domain.
    std::vector<std::uint64_t> histogram;
    // Results for every u with gcd(u, p) = 1, ascending in u.
    std::vector<ExpSumResult> per_u;
    ExpSumResult max_result;  // largest magnitude; smallest maximizing u
    std::uint64_t term_count = 0;
};

// One enumeration pass builds the value histogram; every character is then a
// length-p^m transform of it. h[0] doubles as the solution count a_{p,m}.
AllCharactersResult expsum_all_characters(const Polynomial& f, std::uint64_t p, unsigned m,
                                          const EngineOptions& opt = {}, bool keep_per_u = true);

// Max over primitive characters at p^m using the cheapest exact path: full
// histogram for m = 1, critical-fiber histogram (descent) for m >= 2.
ExpSumResult expsum_max_prime_power(const Polynomial& f, std::uint64_t p, unsigned m,
                                    const EngineOptions& opt = {});

// Max over all primitive N-th roots of unity, multiplicative over the CRT
// factors (the character correspondence is a bijection).
ExpSumResult expsum_max(const Polynomial& f, std::uint64_t N, const EngineOptions& opt = {});

// Sum restricted to the class of P in F_p^n inside (Z/p^m)^n, normalized by
// p^{mn}. Summing the complex values over all P recovers the full sum.
ExpSumResult expsum_zoomed(const Polynomial& f, const std::vector<std::uint64_t>& P,
                           std::uint64_t p, unsigned m, const CharacterIndex& chi,
                           const EngineOptions& opt = {});

// Function-field analogue over F_p[t]/(t^m) with the canonical primitive
// additive character psi(sum c_j t^j) = e(c_{m-1}/p).
ExpSumResult expsum_ff(const Polynomial& f, std::uint64_t p, unsigned m,
                       const EngineOptions& opt = {});

// Shared N-th roots of unity table, w[k] = e(2 pi i k / N).
std::vector<std::complex<double>> roots_of_unity(std::uint64_t N);

}  // namespace expsum
