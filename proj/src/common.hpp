#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace expsum {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Thrown for contract violations (bad input, dimension mismatch, singular
// matrix, ...). The C API translates these into status codes.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when an enumeration would exceed the configured term cap.
struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin, valid for all n < 2^64.
bool is_prime_u64(std::uint64_t n);

// Prime-power factorization by trial division plus Miller-Rabin, ascending primes.
std::vector<std::pair<std::uint64_t, unsigned>> factorize_u64(std::uint64_t n);

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

// Reduce a big integer into [0, m).
std::uint64_t reduce_mod(const BigInt& v, std::uint64_t m);

// ax = 1 mod m; throws DomainError if gcd(a, m) != 1.
std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t m);

std::string rational_str(const Rational& r);

}  // namespace expsum
