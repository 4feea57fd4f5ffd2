#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "common.hpp"

namespace expsum {

// Multi-index exponent vector; length always equals the owning polynomial's
// variable count.
using ExpVec = std::vector<std::uint32_t>;

inline std::uint64_t total_degree(const ExpVec& e) {
    std::uint64_t s = 0;
    for (auto x : e) s += x;
    return s;
}

// Graded-lexicographic, descending: higher total degree first, ties broken by
// lexicographically larger exponent vector. This is the canonical term order
// used for rendering and serialization.
struct GrLexDesc {
    bool operator()(const ExpVec& a, const ExpVec& b) const {
        std::uint64_t da = total_degree(a), db = total_degree(b);
        if (da != db) return da > db;
        return a > b;
    }
};

// Sparse multivariate polynomial over arbitrary-precision integers.
// Invariants: no stored coefficient is zero; all keys have length nvars.
class Polynomial {
  public:
    using TermMap = std::map<ExpVec, BigInt, GrLexDesc>;

    explicit Polynomial(unsigned nvars) : nvars_(nvars) {}
    Polynomial(unsigned nvars, TermMap terms);

    static Polynomial zero(unsigned nvars) { return Polynomial(nvars); }
    static Polynomial constant(unsigned nvars, const BigInt& c);
    static Polynomial monomial(unsigned nvars, const ExpVec& e, const BigInt& c);
    static Polynomial variable(unsigned nvars, unsigned index);

    unsigned nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    // Max total degree over terms; 0 for the zero polynomial.
    unsigned degree() const;

    BigInt constant_term() const;
    BigInt coeff(const ExpVec& e) const;

    void add_term(const ExpVec& e, const BigInt& c);

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator-() const;
    bool operator==(const Polynomial& o) const = default;

    Polynomial pow(unsigned k) const;

    // Partial derivative with respect to variable i.
    Polynomial derivative(unsigned i) const;
    std::vector<Polynomial> gradient() const;

    // Sum of the terms of total degree exactly k.
    Polynomial homogeneous_part(unsigned k) const;
    bool is_homogeneous() const;

    // g(x) = f(shift + T x), expanded exactly. Throws DomainError if T is
    // singular (checked via exact integer determinant).
    Polynomial affine_substitute(const std::vector<BigInt>& shift,
                                 const std::vector<std::vector<BigInt>>& T) const;

    BigInt eval(const std::vector<BigInt>& point) const;

    // f(point) mod m, all intermediate arithmetic mod m. Requires m >= 1 and
    // point.size() == nvars.
    std::uint64_t eval_mod(const std::vector<std::uint64_t>& point, std::uint64_t m) const;

    // Canonical text form: declared variable order, graded-lex term order.
    std::string render(const std::vector<std::string>& var_names) const;

    // Largest absolute coefficient value.
    BigInt max_abs_coeff() const;

  private:
    unsigned nvars_;
    TermMap terms_;
};

// Parses the minimal polynomial grammar: signed integer coefficients, `*`,
// `^` with nonnegative integer exponents (< 2^31), `+`/`-`, parentheses only
// around a whole term product, whitespace ignored. Throws ParseError.
struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(std::size_t pos, const std::string& msg)
        : std::runtime_error("parse error at position " + std::to_string(pos) + ": " + msg),
          position(pos) {}
};

Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& var_names);

// Result of diagonalizing a homogeneous quadratic: f2(T x) = sum a_i x_i^2
// with det(T) != 0. For p | det(T), box_exponent[p] is set when T maps the
// standard lattice onto p^e times itself (all elementary divisors at p equal);
// otherwise p is listed in non_box_primes and callers fall back to direct
// evaluation.
struct QuadraticDiagonalization {
    std::vector<std::vector<BigInt>> T;
    std::vector<BigInt> diag;
    std::map<std::uint64_t, unsigned> box_exponent;
    std::vector<std::uint64_t> non_box_primes;
};

QuadraticDiagonalization diagonalize_quadratic(const Polynomial& f2);

}  // namespace expsum
