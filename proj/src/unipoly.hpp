#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "common.hpp"

namespace expsum {

// Dense univariate polynomial over Q, coefficient of T^i at index i.
using UniPoly = std::vector<Rational>;

inline void uni_trim(UniPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int uni_deg(const UniPoly& p) { return static_cast<int>(p.size()) - 1; }

inline bool uni_is_zero(const UniPoly& p) { return p.empty(); }

inline UniPoly uni_scale(UniPoly p, const Rational& c) {
    for (auto& x : p) x *= c;
    uni_trim(p);
    return p;
}

inline UniPoly uni_sub(const UniPoly& a, const UniPoly& b) {
    UniPoly r(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    uni_trim(r);
    return r;
}

inline UniPoly uni_mul(const UniPoly& a, const UniPoly& b) {
    if (a.empty() || b.empty()) return {};
    UniPoly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    uni_trim(r);
    return r;
}

inline Rational uni_eval(const UniPoly& p, const Rational& x) {
    Rational acc = 0;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

inline UniPoly uni_rem(UniPoly a, const UniPoly& b) {
    if (b.empty()) throw DomainError("division by zero polynomial");
    while (uni_deg(a) >= uni_deg(b)) {
        Rational q = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
        a.pop_back();
        uni_trim(a);
        if (a.empty()) break;
    }
    return a;
}

// Monic gcd.
inline UniPoly uni_gcd(UniPoly a, UniPoly b) {
    uni_trim(a);
    uni_trim(b);
    while (!b.empty()) {
        UniPoly r = uni_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rational lc = a.back();
        for (auto& c : a) c /= lc;
    }
    return a;
}

inline UniPoly uni_derivative(const UniPoly& p) {
    UniPoly r;
    for (std::size_t i = 1; i < p.size(); ++i) r.push_back(p[i] * static_cast<int>(i));
    uni_trim(r);
    return r;
}

// Number of trailing zero coefficients (valuation at T = 0).
inline unsigned uni_valuation(const UniPoly& p) {
    unsigned v = 0;
    while (v < p.size() && p[v] == 0) ++v;
    return v;
}

inline UniPoly uni_strip(const UniPoly& p) {
    unsigned v = uni_valuation(p);
    if (v == 0) return p;
    return UniPoly(p.begin() + v, p.end());
}

// res(f, g) for nonzero f, g via the Euclidean remainder sequence.
inline Rational uni_resultant(UniPoly f, UniPoly g) {
    uni_trim(f);
    uni_trim(g);
    if (f.empty() || g.empty()) return 0;
    Rational acc = 1;
    while (uni_deg(g) > 0) {
        UniPoly r = uni_rem(f, g);
        int df = uni_deg(f), dg = uni_deg(g), dr = uni_deg(r);
        if (r.empty()) return 0;
        Rational sign = ((df * dg) % 2) ? -1 : 1;
        Rational lead = 1;
        for (int i = 0; i < df - dr; ++i) lead *= g.back();
        acc *= sign * lead;
        f = std::move(g);
        g = std::move(r);
    }
    // deg g == 0
    Rational tail = 1;
    for (int i = 0; i < uni_deg(f); ++i) tail *= g[0];
    return acc * tail;
}

struct RationalRoots {
    std::vector<std::pair<Rational, unsigned>> roots;  // (root, multiplicity)
    UniPoly leftover;                                  // deflated cofactor
    bool complete = true;  // false when divisor enumeration was truncated
};

// Rational roots by the rational root theorem with multiplicity, applied to
// an integer rescaling of p. Divisor enumeration is capped; `complete` is
// false when the cap is hit (leftover may then still have rational roots).
RationalRoots uni_rational_roots(const UniPoly& p, std::size_t divisor_cap = 4096);

}  // namespace expsum
