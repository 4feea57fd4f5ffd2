#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "common.hpp"

namespace expsum {

enum class BoundName {
    trivial,
    conjecture1,
    igusa_homog,
    deligne_squarefree,
    cubefree,
    d2free,
    newton_CAN,
};
const char* bound_name(BoundName b);
std::optional<BoundName> bound_from_name(const std::string& s);

struct BoundSpec {
    BoundName name;
    Rational exponent;          // decay exponent r in N^{-r}
    std::string constant_form;  // "1", "(d-1)^{n-s}", "unknown c", ...
    std::string applicability;
    bool asserted;  // verdict failures are fatal only for asserted bounds
};

struct BoundVerdict {
    BoundSpec bound;
    std::string f_id;
    std::uint64_t N = 0;
    std::uint64_t u = 0;
    double predicted = 0.0;
    double observed = 0.0;
    double ratio = 0.0;  // observed / N^{-exponent}
    bool pass = true;
};

// N^{-(n-s)/d + eps}; exponent exact rational (eps given as a rational).
double bound_conjecture1(unsigned n, int s, unsigned d, std::uint64_t N, const Rational& eps);

// p^{-mn/d}: smooth homogeneous prime-power bound with constant 1.
double bound_igusa_homog(unsigned n, unsigned d, std::uint64_t p, unsigned m);

// (d-1)^{n-s} p^{-(n-s)/2}: square-free (prime) modulus bound.
double bound_deligne(unsigned n, int s, unsigned d, std::uint64_t p);

// (d-1)^{n-s} p^{-(n-s)}: the m = 2 (cube-free) bound.
double bound_cubefree(unsigned n, int s, unsigned d, std::uint64_t p);

// N^{-(n-s)/d}: bound up to the unknown constant c(f_d) for N free of
// (d+2)-th powers; verdicts record the observed ratio.
double bound_d2free(unsigned n, int s, unsigned d, std::uint64_t N);

// p^{-m sigma} m^{kappa-1}, m >= 2, up to an unknown constant.
double bound_newton(const Rational& sigma, unsigned kappa, std::uint64_t p, unsigned m);

// Whether pass holds under the fixed comparison rule.
bool verdict_pass(double observed, double predicted, double abs_err);

struct ExponentFit {
    double beta = 0.0;          // decay exponent: maxE ~ N^-beta
    double max_residual = 0.0;  // max |log-fit error|
    std::size_t points = 0;
    std::size_t zeros_excluded = 0;
};

// Least-squares slope of log maxE against log N over the nonzero entries.
// Throws DomainError with fewer than 3 usable points.
ExponentFit fit_exponent(const std::vector<std::pair<std::uint64_t, double>>& series);

// N free of nontrivial k-th powers.
bool power_free(std::uint64_t N, unsigned k);

}  // namespace expsum
