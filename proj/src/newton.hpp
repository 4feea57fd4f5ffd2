#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "common.hpp"
#include "poly.hpp"

namespace expsum {

enum class NondegVerdict {
    certified_nondegenerate,
    certified_degenerate,
    heuristic_nondegenerate,
    unknown,
};
const char* verdict_name(NondegVerdict v);

// One face of the Newton polyhedron at zero: a supporting functional k >= 0
// with the support points it pins down. dim counts tight recession directions
// (e_i with k_i = 0), so unbounded faces carry their full dimension.
struct FaceData {
    std::vector<BigInt> functional;
    std::vector<ExpVec> tight;
    unsigned dim = 0;
};

struct NewtonData {
    std::vector<ExpVec> support;
    std::vector<ExpVec> hull_vertices;
    Rational sigma;
    std::vector<Rational> diagonal_point;  // (1/sigma, ..., 1/sigma)
    unsigned kappa = 0;
    std::vector<FaceData> diagonal_faces;
    NondegVerdict nondegenerate = NondegVerdict::unknown;
};

// Supp(f - f(0)); throws DomainError on constant input.
std::vector<ExpVec> newton_support(const Polynomial& f);

// sigma_f: 1/sigma = min over Conv(Supp) of the max coordinate, solved as an
// exact rational LP over the support points.
Rational compute_sigma(const std::vector<ExpVec>& support);

// Faces of Delta_0 containing the diagonal point (1/sigma,...,1/sigma) and
// kappa = n - dim(smallest such face). Enumerated from the extreme rays of
// the normal cone at the diagonal point.
std::pair<std::vector<FaceData>, unsigned> diagonal_faces(const std::vector<ExpVec>& support,
                                                          const Rational& sigma);

// f_tau: the sub-polynomial on a face's tight support points.
Polynomial face_polynomial(const Polynomial& f, const std::vector<ExpVec>& tight);

struct NondegOptions {
    std::vector<std::uint64_t> primes = {10007, 10009, 31013};
    // Smaller fallback primes used when p^n blows past the budget.
    std::vector<std::uint64_t> fallback_primes = {101, 103, 107};
    std::uint64_t search_budget = 200'000'000;  // enumerated torus points
    unsigned max_support_for_faces = 16;        // 2^|S| face candidates beyond this
};

// Non-degeneracy of f with respect to Delta_0(f): for every face (the whole
// polyhedron included) the face polynomial must have no critical point with
// all coordinates nonzero. Components in <= 2 variables are decided exactly;
// larger ones fall back to torus searches mod p plus small-height rational
// certification.
NondegVerdict check_nondegenerate(const Polynomial& f, const NondegOptions& opt = {});

NewtonData newton_data(const Polynomial& f, const NondegOptions& opt = {});

// Exposed for tests: all distinct face tight-sets of Delta_0 (proper faces),
// via per-subset exact feasibility LPs.
std::vector<std::vector<ExpVec>> enumerate_face_tight_sets(const std::vector<ExpVec>& support,
                                                           unsigned max_support);

}  // namespace expsum
