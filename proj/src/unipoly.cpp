#include "unipoly.hpp"

#include <limits>

namespace expsum {

namespace {

// All positive divisors of |v|, or empty when the count would exceed cap.
std::vector<BigInt> divisors_capped(BigInt v, std::size_t cap, bool* ok) {
    *ok = true;
    v = abs(v);
    if (v == 0) { *ok = false; return {}; }
    std::vector<std::pair<BigInt, unsigned>> fac;
    BigInt rest = v;
    for (BigInt p = 2; p * p <= rest; ++p) {
        if (p > 1'000'000) {
            // Remaining cofactor has no small factors; only trust it if prime.
            if (rest > std::numeric_limits<std::uint64_t>::max() ||
                !is_prime_u64(static_cast<std::uint64_t>(rest)))
                *ok = false;
            break;
        }
        if (rest % p != 0) continue;
        unsigned e = 0;
        while (rest % p == 0) { rest /= p; ++e; }
        fac.emplace_back(p, e);
    }
    if (!*ok) return {};
    if (rest > 1) fac.emplace_back(rest, 1u);
    std::vector<BigInt> divs{1};
    for (const auto& [p, e] : fac) {
        std::size_t base = divs.size();
        BigInt pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) {
                divs.push_back(divs[j] * pk);
                if (divs.size() > cap) { *ok = false; return {}; }
            }
        }
    }
    return divs;
}

}  // namespace

RationalRoots uni_rational_roots(const UniPoly& p_in, std::size_t divisor_cap) {
    RationalRoots out;
    UniPoly p = p_in;
    uni_trim(p);
    if (p.empty() || uni_deg(p) == 0) {
        out.leftover = p;
        return out;
    }
    // Root at zero first.
    unsigned v = uni_valuation(p);
    if (v > 0) {
        out.roots.emplace_back(Rational(0), v);
        p = uni_strip(p);
    }
    if (uni_deg(p) == 0) {
        out.leftover = p;
        return out;
    }
    // Integer rescaling.
    BigInt den = 1;
    for (const auto& c : p) den = lcm(den, boost::multiprecision::denominator(c));
    std::vector<BigInt> ip;
    for (const auto& c : p) {
        Rational s = c * den;
        ip.push_back(boost::multiprecision::numerator(s));
    }
    bool ok0 = true, okL = true;
    auto dnum = divisors_capped(ip.front(), divisor_cap, &ok0);
    auto dden = divisors_capped(ip.back(), divisor_cap, &okL);
    if (!ok0 || !okL) {
        out.complete = false;
        out.leftover = p;
        return out;
    }
    std::vector<Rational> candidates;
    for (const auto& a : dnum)
        for (const auto& b : dden) {
            Rational r(a, b);
            candidates.push_back(r);
            candidates.push_back(-r);
        }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    if (candidates.size() > 4 * divisor_cap) {
        out.complete = false;
        out.leftover = p;
        return out;
    }
    for (const auto& r : candidates) {
        unsigned mult = 0;
        while (uni_deg(p) >= 1 && uni_eval(p, r) == 0) {
            // Deflate by (T - r).
            UniPoly q(p.size() - 1, Rational(0));
            Rational carry = 0;
            for (std::size_t i = p.size(); i-- > 1;) {
                carry = p[i] + carry * r;
                q[i - 1] = carry;
            }
            p = std::move(q);
            uni_trim(p);
            ++mult;
        }
        if (mult) out.roots.emplace_back(r, mult);
        if (uni_deg(p) < 1) break;
    }
    out.leftover = p;
    return out;
}

}  // namespace expsum
