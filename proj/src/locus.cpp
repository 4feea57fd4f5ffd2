#include "locus.hpp"

#include <cmath>
#include <complex>

#include "residues.hpp"

namespace expsum {

bool good_prime(const Polynomial& f_d, std::uint64_t p) {
    unsigned d = f_d.degree();
    if (d == 0 || p == 0) return false;
    if (d % p == 0) return false;
    BigInt maxc = 0;
    for (unsigned i = 0; i < f_d.nvars(); ++i)
        maxc = std::max(maxc, f_d.derivative(i).max_abs_coeff());
    return BigInt(p) > maxc;
}

LocusData estimate_s(const Polynomial& f_d, std::vector<std::uint64_t> sample_primes,
                     std::uint64_t cap, std::optional<int> s_override) {
    if (f_d.is_zero() || !f_d.is_homogeneous() || f_d.degree() < 2)
        throw DomainError("estimate_s: need a homogeneous part of degree >= 2");
    const unsigned n = f_d.nvars();
    LocusData out;
    out.d = f_d.degree();
    out.crit_bound = 1;
    for (unsigned i = 0; i < n; ++i) out.crit_bound *= out.d - 1;

    if (sample_primes.empty()) {
        // Largest primes from a fixed ladder whose q^n enumeration fits.
        for (std::uint64_t q : {503ull, 401ull, 211ull, 101ull, 53ull, 31ull, 29ull, 23ull,
                                19ull, 17ull, 13ull, 11ull}) {
            double work = 1;
            for (unsigned i = 0; i < n; ++i) work *= static_cast<double>(q);
            if (work > static_cast<double>(cap) / 4) continue;
            sample_primes.push_back(q);
            if (sample_primes.size() == 4) break;
        }
    }

    for (std::uint64_t q : sample_primes) {
        if (!good_prime(f_d, q)) continue;
        std::uint64_t cnt = count_gradient_zeros(f_d, q, cap);
        SlopeEvidence ev;
        ev.q = q;
        ev.count = cnt;
        ev.slope = cnt == 0 ? 0.0 : std::log(static_cast<double>(cnt)) / std::log(static_cast<double>(q));
        out.evidence.push_back(ev);
    }

    if (s_override) {
        out.s_estimate = *s_override;
        out.s_from_override = true;
        return out;
    }
    if (out.evidence.empty())
        throw DomainError("estimate_s: no good sample primes; supply an override");

    double lo = out.evidence[0].slope, hi = lo, mean = 0;
    for (const auto& ev : out.evidence) {
        lo = std::min(lo, ev.slope);
        hi = std::max(hi, ev.slope);
        mean += ev.slope;
    }
    mean /= static_cast<double>(out.evidence.size());
    out.consistent = (hi - lo) <= 0.3;
    if (!out.consistent)
        throw DomainError("estimate_s: inconsistent point-count slopes; supply an override");
    int s = static_cast<int>(std::lround(mean));
    if (s < 0) s = 0;
    if (s > static_cast<int>(n) - 1) s = static_cast<int>(n) - 1;
    out.s_estimate = s;
    return out;
}

BigInt count_solutions(const Polynomial& f, std::uint64_t p, unsigned m, std::uint64_t cap) {
    const unsigned n = f.nvars();
    double work = 1;
    for (unsigned i = 0; i < m * n; ++i) work *= static_cast<double>(p);
    if (work <= static_cast<double>(cap)) return count_solutions_enum(f, p, m, cap);
    return count_solutions_padic(f, p, m);
}

namespace {

// Berlekamp-Massey over Q: minimal c with c_0 = 1 and
// sum_i c_i s_{m-i} = 0 for all m > deg c, over the given prefix.
std::vector<Rational> berlekamp_massey(const std::vector<Rational>& s) {
    std::vector<Rational> C{1}, B{1};
    unsigned L = 0, m = 1;
    Rational b = 1;
    for (std::size_t nidx = 0; nidx < s.size(); ++nidx) {
        Rational delta = s[nidx];
        for (unsigned i = 1; i <= L && i <= nidx; ++i) delta += C[i] * s[nidx - i];
        if (delta == 0) {
            ++m;
        } else if (2 * L <= nidx) {
            std::vector<Rational> T = C;
            Rational coef = delta / b;
            if (C.size() < B.size() + m) C.resize(B.size() + m, Rational(0));
            for (std::size_t i = 0; i < B.size(); ++i) C[i + m] -= coef * B[i];
            L = static_cast<unsigned>(nidx + 1 - L);
            B = std::move(T);
            b = delta;
            m = 1;
        } else {
            Rational coef = delta / b;
            if (C.size() < B.size() + m) C.resize(B.size() + m, Rational(0));
            for (std::size_t i = 0; i < B.size(); ++i) C[i + m] -= coef * B[i];
            ++m;
        }
    }
    while (!C.empty() && C.back() == 0) C.pop_back();
    return C;
}

// Durand-Kerner root finder for small-degree polynomials with double
// coefficients, used only to report non-rational pole magnitudes.
std::vector<std::complex<double>> numeric_roots(const UniPoly& p) {
    int d = uni_deg(p);
    if (d < 1) return {};
    std::vector<std::complex<double>> c(d + 1);
    double lead = static_cast<double>(p[d]);
    for (int i = 0; i <= d; ++i) c[i] = static_cast<double>(p[i]) / lead;
    std::vector<std::complex<double>> r(d);
    std::complex<double> seed(0.4, 0.9);
    r[0] = seed;
    for (int i = 1; i < d; ++i) r[i] = r[i - 1] * seed;
    for (int iter = 0; iter < 200; ++iter) {
        double worst = 0;
        for (int i = 0; i < d; ++i) {
            std::complex<double> num = c[d];
            for (int k = d - 1; k >= 0; --k) num = num * r[i] + c[k];
            std::complex<double> den(1, 0);
            for (int j = 0; j < d; ++j)
                if (j != i) den *= r[i] - r[j];
            std::complex<double> step = num / den;
            r[i] -= step;
            worst = std::max(worst, std::abs(step));
        }
        if (worst < 1e-14) break;
    }
    return r;
}

}  // namespace

PoincareData reconstruct_poincare(const std::vector<BigInt>& counts, std::uint64_t p,
                                  unsigned nvars, unsigned max_degree) {
    PoincareData out;
    out.p = p;
    out.nvars = nvars;
    out.counts = counts;
    const std::size_t M = counts.size();
    if (M < 2 * static_cast<std::size_t>(max_degree) + 2)
        throw DomainError("reconstruct_poincare: need at least 2*max_degree + 2 counts");

    // Normalized sequence: a_{p,m} p^{-mn}.
    BigInt pn = 1;
    for (unsigned i = 0; i < nvars; ++i) pn *= p;
    std::vector<Rational> s;
    Rational scale = 1;
    for (const auto& a : counts) {
        scale /= pn;
        s.push_back(Rational(a) * scale);
    }

    std::vector<Rational> C = berlekamp_massey(s);
    std::vector<Rational> Cshort =
        berlekamp_massey(std::vector<Rational>(s.begin(), s.end() - 2));
    out.recurrence = C;
    out.unstable = (C != Cshort);
    if (C.size() > max_degree + 1 || out.unstable) {
        out.recurrence_found = C.size() <= max_degree + 1;
        return out;  // no poles reported
    }
    out.recurrence_found = true;

    // Normalized series P_n(T) = sum s_m T^m = N(T)/C(T); numerator by
    // truncated convolution. Then unnormalize: P(T) = P_n(p^n T).
    const std::size_t L = C.size() - 1;
    UniPoly num_norm(L + 1, Rational(0));
    for (std::size_t j = 0; j <= L; ++j) {
        Rational acc = 0;
        for (std::size_t i = 0; i <= j && i <= L; ++i) {
            if (j - i == 0) continue;  // s_0 = 0
            if (j - i - 1 < s.size()) acc += C[i] * s[j - i - 1];
        }
        num_norm[j] = acc;
    }
    uni_trim(num_norm);
    Rational pw = 1;
    out.denominator.assign(C.size(), Rational(0));
    for (std::size_t i = 0; i < C.size(); ++i) {
        out.denominator[i] = C[i] * pw;
        pw *= Rational(pn);
    }
    pw = 1;
    out.numerator.assign(num_norm.size(), Rational(0));
    for (std::size_t i = 0; i < num_norm.size(); ++i) {
        out.numerator[i] = num_norm[i] * pw;
        pw *= Rational(pn);
    }
    uni_trim(out.numerator);
    uni_trim(out.denominator);

    // Pole extraction from the denominator. Substitute U = T^k for the gcd k
    // of exponent gaps, take rational roots of the reduced polynomial, then
    // numeric roots of any leftover.
    UniPoly D = out.denominator;
    unsigned k = 0;
    for (std::size_t i = 1; i < D.size(); ++i)
        if (D[i] != 0) k = std::gcd(k, static_cast<unsigned>(i));
    if (k == 0) return out;  // constant denominator: no poles
    UniPoly Du;
    for (std::size_t i = 0; i < D.size(); i += k) Du.push_back(D[i]);
    uni_trim(Du);

    const double logp = std::log(static_cast<double>(p));
    auto push_pole = [&](double t0_times_k, std::optional<Rational> exact_numer, unsigned order) {
        PoincarePole pole;
        pole.t0 = t0_times_k / k;
        if (exact_numer) pole.t0_exact = *exact_numer / static_cast<int>(k);
        pole.order = order;
        pole.T0_abs = std::pow(static_cast<double>(p), pole.t0);
        pole.trivial = pole.t0_exact ? (*pole.t0_exact == 0) : std::abs(pole.t0) < 1e-12;
        out.poles.push_back(pole);
    };

    auto rr = uni_rational_roots(Du);
    for (const auto& [u0, mult] : rr.roots) {
        if (u0 == 0) continue;  // not a pole location of P
        // |T0| = |U0|^{1/k}; exact t0 when |U0| is +-p^j.
        BigInt num = abs(boost::multiprecision::numerator(u0));
        BigInt den = boost::multiprecision::denominator(u0);
        auto pure_power = [&](BigInt v, long long* e) {
            *e = 0;
            while (v % p == 0) { v /= p; ++*e; }
            return v == 1;
        };
        long long en = 0, ed = 0;
        if (pure_power(num, &en) && pure_power(den, &ed)) {
            push_pole(static_cast<double>(en - ed), Rational(en - ed), mult);
        } else {
            double t0k = std::log(std::abs(static_cast<double>(u0))) / logp;
            push_pole(t0k, std::nullopt, mult);
        }
    }
    if (uni_deg(rr.leftover) >= 1) {
        for (const auto& z : numeric_roots(rr.leftover)) {
            double t0k = std::log(std::abs(z)) / logp;
            // Snap to a nearby small-denominator rational when exact.
            std::optional<Rational> exact;
            for (int den = 1; den <= 12 && !exact; ++den) {
                double scaled = t0k * den;
                double nearest = std::round(scaled);
                if (std::abs(scaled - nearest) < 1e-9 && std::abs(nearest) < 1e6) {
                    exact = Rational(static_cast<long long>(nearest), den);
                    // exact is in units of t0*k; convert below via push_pole.
                    PoincarePole pole;
                    pole.t0 = t0k / k;
                    pole.t0_exact = *exact / static_cast<int>(k);
                    pole.order = 1;
                    pole.T0_abs = std::pow(static_cast<double>(p), pole.t0);
                    pole.trivial = (*pole.t0_exact == 0);
                    out.poles.push_back(pole);
                }
            }
            if (!exact) push_pole(t0k, std::nullopt, 1);
        }
    }
    return out;
}

MonodromyReport monodromy_range_check(const PoincareData& pd, int s, unsigned d) {
    MonodromyReport rep;
    Rational bound = -Rational(static_cast<int>(pd.nvars) - s, static_cast<int>(d));
    for (const auto& pole : pd.poles) {
        if (pole.trivial) {
            ++rep.trivial;
            continue;
        }
        bool ok;
        if (pole.t0_exact) {
            ok = (*pole.t0_exact == -1) || (*pole.t0_exact <= bound);
        } else {
            double b = static_cast<double>(static_cast<int>(pd.nvars) - s) / d;
            ok = std::abs(pole.t0 + 1.0) <= 1e-9 || pole.t0 <= -b + 1e-9;
        }
        if (ok) ++rep.conforming;
        else rep.violations.push_back(pole);
    }
    return rep;
}

}  // namespace expsum
