#pragma once

#include <string>
#include <vector>

#include "common.hpp"
#include "newton.hpp"
#include "poly.hpp"

namespace expsum {

// Built-in study corpus. Annotations (s, sigma, kappa, non-degeneracy) are
// hand-verified; provenance records how each one was obtained.
struct CorpusEntry {
    std::string id;
    std::string text;
    std::vector<std::string> vars;
    unsigned n;
    unsigned d;
    int s;
    Rational sigma;
    unsigned kappa;
    NondegVerdict nondeg;
    std::string provenance;

    Polynomial parse() const { return parse_polynomial(text, vars); }
};

const std::vector<CorpusEntry>& builtin_corpus();

}  // namespace expsum
