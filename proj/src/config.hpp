#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "common.hpp"

namespace expsum {

enum class ModulusPlan { primes_up_to, prime_powers, explicit_list, squarefree_up_to, d2free_up_to };
enum class CharacterMode { max_over_all, fixed_u1 };

struct ConfigPolynomial {
    std::string id;
    std::string text;
    std::vector<std::string> vars;
    std::optional<int> s_override;
};

struct ExperimentConfig {
    bool use_builtin_corpus = true;
    std::vector<ConfigPolynomial> polynomials;

    ModulusPlan plan = ModulusPlan::primes_up_to;
    std::uint64_t limit = 50;        // N <= limit (primes_up_to, squarefree, d2free)
    std::uint64_t prime_limit = 7;   // prime_powers: p <= prime_limit
    unsigned power_limit = 3;        // prime_powers: m <= power_limit
    std::vector<std::uint64_t> explicit_moduli;

    CharacterMode characters = CharacterMode::max_over_all;

    std::vector<BoundName> bounds = {BoundName::trivial};
    Rational epsilon = 0;

    std::uint64_t term_cap = 100'000'000;
    std::uint64_t time_budget_sec = 0;  // 0 = unlimited

    std::string output_format = "csv";  // csv | json | both

    // The full modulus list the plan expands to.
    std::vector<std::uint64_t> moduli() const;
    // Throws DomainError when a requested bound can never apply under the plan.
    void validate() const;
};

// Parses the key = value section format; throws DomainError with a line
// number on malformed input.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

}  // namespace expsum
