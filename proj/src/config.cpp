#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace expsum {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

bool parse_bool(const std::string& v) { return v == "true" || v == "1" || v == "yes"; }

Rational parse_rational(const std::string& v) {
    auto slash = v.find('/');
    if (slash == std::string::npos) {
        // Accept small decimals like 0.05 as exact rationals.
        auto dot = v.find('.');
        if (dot == std::string::npos) return Rational(BigInt(v));
        std::string whole = v.substr(0, dot), frac = v.substr(dot + 1);
        BigInt den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        bool neg = !whole.empty() && whole[0] == '-';
        BigInt w = whole.empty() || whole == "-" ? BigInt(0) : BigInt(whole);
        BigInt num = abs(w) * den + BigInt(frac);
        return Rational(neg ? -num : num, den);
    }
    return Rational(BigInt(v.substr(0, slash)), BigInt(v.substr(slash + 1)));
}

}  // namespace

std::vector<std::uint64_t> ExperimentConfig::moduli() const {
    std::vector<std::uint64_t> out;
    switch (plan) {
        case ModulusPlan::primes_up_to:
            for (std::uint64_t p : primes_up_to(limit)) out.push_back(p);
            break;
        case ModulusPlan::prime_powers:
            for (std::uint64_t p : primes_up_to(prime_limit)) {
                std::uint64_t q = 1;
                for (unsigned m = 1; m <= power_limit; ++m) {
                    q *= p;
                    out.push_back(q);
                }
            }
            std::sort(out.begin(), out.end());
            break;
        case ModulusPlan::explicit_list:
            out = explicit_moduli;
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
            break;
        case ModulusPlan::squarefree_up_to:
            for (std::uint64_t N = 2; N <= limit; ++N)
                if (power_free(N, 2)) out.push_back(N);
            break;
        case ModulusPlan::d2free_up_to:
            // "free of (d+2)-th powers" depends on each polynomial's degree;
            // the runner filters per entry. Emit all N here.
            for (std::uint64_t N = 2; N <= limit; ++N) out.push_back(N);
            break;
    }
    return out;
}

void ExperimentConfig::validate() const {
    auto mods = moduli();
    if (mods.empty()) throw DomainError("config: modulus plan is empty");
    bool has_m2 = false, has_prime = false;
    for (std::uint64_t N : mods) {
        auto f = factorize_u64(N);
        if (f.size() == 1 && f[0].second >= 2) has_m2 = true;
        if (f.size() == 1 && f[0].second == 1) has_prime = true;
    }
    for (BoundName b : bounds) {
        switch (b) {
            case BoundName::cubefree:
                if (!has_m2)
                    throw DomainError("config: cubefree bound needs p^2 moduli in the plan");
                break;
            case BoundName::newton_CAN:
                if (!has_m2)
                    throw DomainError("config: newton_CAN bound needs m >= 2 moduli in the plan");
                break;
            case BoundName::deligne_squarefree:
                if (!has_prime)
                    throw DomainError("config: deligne bound needs square-free moduli in the plan");
                break;
            default:
                break;
        }
    }
    if (output_format != "csv" && output_format != "json" && output_format != "both")
        throw DomainError("config: output format must be csv, json or both");
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::map<std::string, std::map<std::string, std::string>> sections;
    std::vector<std::string> poly_order;

    std::istringstream in(text);
    std::string line, section;
    unsigned lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw DomainError("config line " + std::to_string(lineno) + ": unterminated section");
            section = trim(line.substr(1, line.size() - 2));
            if (section.rfind("poly.", 0) == 0) poly_order.push_back(section);
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DomainError("config line " + std::to_string(lineno) + ": expected key = value");
        sections[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }

    auto get = [&](const std::string& sec, const std::string& key) -> std::optional<std::string> {
        auto s = sections.find(sec);
        if (s == sections.end()) return std::nullopt;
        auto k = s->second.find(key);
        if (k == s->second.end()) return std::nullopt;
        return k->second;
    };

    if (auto v = get("corpus", "builtin")) cfg.use_builtin_corpus = parse_bool(*v);

    for (const auto& sec : poly_order) {
        ConfigPolynomial p;
        p.id = sec.substr(5);
        auto text_v = get(sec, "text");
        auto vars_v = get(sec, "vars");
        if (!text_v || !vars_v)
            throw DomainError("config: [" + sec + "] needs text and vars");
        p.text = *text_v;
        p.vars = split_list(*vars_v);
        if (auto s = get(sec, "s")) p.s_override = std::stoi(*s);
        cfg.polynomials.push_back(std::move(p));
    }

    if (auto v = get("moduli", "plan")) {
        if (*v == "primes_up_to") cfg.plan = ModulusPlan::primes_up_to;
        else if (*v == "prime_powers") cfg.plan = ModulusPlan::prime_powers;
        else if (*v == "explicit") cfg.plan = ModulusPlan::explicit_list;
        else if (*v == "squarefree_up_to") cfg.plan = ModulusPlan::squarefree_up_to;
        else if (*v == "d2free_up_to") cfg.plan = ModulusPlan::d2free_up_to;
        else throw DomainError("config: unknown modulus plan '" + *v + "'");
    }
    if (auto v = get("moduli", "limit")) cfg.limit = std::stoull(*v);
    if (auto v = get("moduli", "prime_limit")) cfg.prime_limit = std::stoull(*v);
    if (auto v = get("moduli", "power_limit")) cfg.power_limit = static_cast<unsigned>(std::stoul(*v));
    if (auto v = get("moduli", "list"))
        for (const auto& item : split_list(*v)) cfg.explicit_moduli.push_back(std::stoull(item));

    if (auto v = get("characters", "mode")) {
        if (*v == "max_over_all") cfg.characters = CharacterMode::max_over_all;
        else if (*v == "fixed_u1") cfg.characters = CharacterMode::fixed_u1;
        else throw DomainError("config: unknown character mode '" + *v + "'");
    }

    if (auto v = get("bounds", "names")) {
        cfg.bounds.clear();
        for (const auto& name : split_list(*v)) {
            auto b = bound_from_name(name);
            if (!b) throw DomainError("config: unknown bound '" + name + "'");
            cfg.bounds.push_back(*b);
        }
    }
    if (auto v = get("bounds", "epsilon")) cfg.epsilon = parse_rational(*v);

    if (auto v = get("caps", "term_cap")) cfg.term_cap = std::stoull(*v);
    if (auto v = get("caps", "time_budget_sec")) cfg.time_budget_sec = std::stoull(*v);

    if (auto v = get("output", "format")) cfg.output_format = *v;

    cfg.validate();
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace expsum
