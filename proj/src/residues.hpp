#pragma once

#include <cstdint>
#include <vector>

#include "common.hpp"
#include "poly.hpp"

namespace expsum {

// All x in F_p^n with grad f(x) = 0 mod p, by enumeration. Cost p^n; the cap
// counts enumerated points.
std::vector<std::vector<std::uint64_t>> critical_residues(const Polynomial& f, std::uint64_t p,
                                                          std::uint64_t cap);

// #{x in F_q^n : grad g(x) = 0 mod q} for prime q, by enumeration.
std::uint64_t count_gradient_zeros(const Polynomial& g, std::uint64_t q, std::uint64_t cap);

// #{x in (Z/p^m)^n : f(x) = 0 mod p^m} by direct enumeration. Cost p^{mn}.
BigInt count_solutions_enum(const Polynomial& f, std::uint64_t p, unsigned m, std::uint64_t cap);

// Same count by p-adic descent: smooth residues are counted by the Hensel
// closed form p^{(m-1)(n-1)} each, singular residues recurse on the zoomed
// polynomial f(r + p y)/p, with memoization on the reduced polynomial. Exact
// for any m; the budget bounds the number of recursion states.
BigInt count_solutions_padic(const Polynomial& f, std::uint64_t p, unsigned m,
                             std::uint64_t state_budget = 2'000'000);

}  // namespace expsum
