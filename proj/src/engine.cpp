#include "engine.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "modpoly.hpp"
#include "residues.hpp"

namespace expsum {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Per-term rounding allowance: table entry error plus compensated-summation
// residual, both a few ulp.
constexpr double kPerTermErr = 8.0 * kEps;

struct CompensatedSum {
    double hi = 0.0, lo = 0.0;
    void add(double x) {
        double t = hi + x;
        if (std::abs(hi) >= std::abs(x))
            lo += (hi - t) + x;
        else
            lo += (x - t) + hi;
        hi = t;
    }
    double value() const { return hi + lo; }
};

struct ComplexAccumulator {
    CompensatedSum re, im;
    double weight = 0.0;  // sum of |term| magnitudes
    void add(const std::complex<double>& z, double w = 1.0) {
        re.add(z.real() * w);
        im.add(z.imag() * w);
        weight += std::abs(w);
    }
    std::complex<double> value() const { return {re.value(), im.value()}; }
    double error_bound() const { return kPerTermErr * weight; }
};

double pow_count(std::uint64_t base, unsigned exp) {
    double r = 1;
    while (exp--) r *= static_cast<double>(base);
    return r;
}

void require_cap(double work, const EngineOptions& opt, const char* what) {
    if (work > static_cast<double>(opt.term_cap))
        throw CapExceeded(std::string(what) + ": term cap exceeded");
}

void require_character(std::uint64_t N, const CharacterIndex& chi) {
    if (chi.N != N) throw DomainError("character modulus mismatch");
    if (N == 1) return;
    if (chi.u == 0 || chi.u >= N || std::gcd(chi.u, N) != 1)
        throw DomainError("character index is not primitive: gcd(u, N) != 1");
}

std::uint64_t ipow_u64(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    while (exp--) r *= base;
    return r;
}

ExpSumResult finalize(std::uint64_t N, std::uint64_t u, const ComplexAccumulator& acc,
                      double norm, SumMethod method, std::uint64_t terms) {
    ExpSumResult r;
    r.N = N;
    r.u = u;
    r.value = acc.value() / norm;
    r.magnitude = std::abs(r.value);
    r.abs_error_bound = acc.error_bound() / norm;
    r.method = method;
    r.term_count = terms;
    return r;
}

ExpSumResult trivial_result(std::uint64_t u) {
    ExpSumResult r;
    r.N = 1;
    r.u = u;
    r.value = {1.0, 0.0};
    r.magnitude = 1.0;
    r.abs_error_bound = 0.0;
    r.method = SumMethod::oracle;
    r.term_count = 1;
    return r;
}

// Complex product with error propagation.
void multiply_into(ExpSumResult& acc, const ExpSumResult& f) {
    double ma = std::abs(acc.value), mf = std::abs(f.value);
    acc.abs_error_bound = acc.abs_error_bound * mf + f.abs_error_bound * ma +
                          acc.abs_error_bound * f.abs_error_bound + kEps * ma * mf;
    acc.value *= f.value;
    acc.magnitude = std::abs(acc.value);
    acc.term_count += f.term_count;
}

}  // namespace

const char* method_name(SumMethod m) {
    switch (m) {
        case SumMethod::oracle: return "oracle";
        case SumMethod::crt: return "crt";
        case SumMethod::descent: return "descent";
        case SumMethod::dft: return "dft";
    }
    return "?";
}

std::vector<std::complex<double>> roots_of_unity(std::uint64_t N) {
    std::vector<std::complex<double>> w(N);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(N);
    std::complex<double> w1 = std::polar(1.0, step);
    for (std::uint64_t k = 0; k < N; ++k) {
        if ((k & 31) == 0) {
            w[k] = std::polar(1.0, step * static_cast<double>(k));
        } else {
            w[k] = w[k - 1] * w1;
        }
    }
    return w;
}

ExpSumResult expsum_oracle(const Polynomial& f, std::uint64_t N, const CharacterIndex& chi,
                           const EngineOptions& opt) {
    if (N == 0) throw DomainError("modulus must be positive");
    require_character(N, chi);
    if (N == 1) return trivial_result(chi.u);
    const unsigned n = f.nvars();
    require_cap(pow_count(N, n), opt, "expsum_oracle");
    if (n == 0) throw DomainError("polynomial must have at least one variable");

    auto w = roots_of_unity(N);
    ComplexAccumulator acc;
    std::uint64_t terms = 0;
    MultiEval ev({ModPoly::reduce(f, N)}, N);
    const std::uint64_t u = chi.u;
    ev.run([&](const std::vector<std::uint64_t>&, const std::uint64_t* vals) {
        acc.add(w[mulmod_u64(u, vals[0], N)]);
        ++terms;
    });
    return finalize(N, u, acc, pow_count(N, n), SumMethod::oracle, terms);
}

std::vector<std::pair<std::uint64_t, CharacterIndex>> crt_split(std::uint64_t N,
                                                                const CharacterIndex& chi) {
    if (N < 2) throw DomainError("crt_split needs N >= 2");
    require_character(N, chi);
    auto factors = factorize_u64(N);
    std::vector<std::pair<std::uint64_t, CharacterIndex>> out;
    for (const auto& [p, e] : factors) {
        std::uint64_t q = ipow_u64(p, e);
        std::uint64_t cofactor = N / q;              // N / p^e
        std::uint64_t a = invmod_u64(cofactor % q, q);  // a_i with sum a_i/p^e = 1/N mod 1
        std::uint64_t ui = mulmod_u64(chi.u % q, a, q);
        out.push_back({q, CharacterIndex{q, ui}});
    }
    return out;
}

ExpSumResult expsum_descent(const Polynomial& f, std::uint64_t p, unsigned m,
                            const CharacterIndex& chi, const EngineOptions& opt) {
    if (m < 2) throw DomainError("descent requires m >= 2");
    if (!is_prime_u64(p)) throw DomainError("descent requires prime p");
    const unsigned n = f.nvars();
    const std::uint64_t N = ipow_u64(p, m);
    require_character(N, chi);

    auto crit = critical_residues(f, p, opt.term_cap);
    require_cap(static_cast<double>(crit.size()) * pow_count(p, (m - 2) * n) + pow_count(p, n),
                opt, "expsum_descent");

    auto w = roots_of_unity(N);
    ComplexAccumulator acc;
    std::uint64_t terms = 0;
    const std::uint64_t u = chi.u;
    const std::uint64_t box = ipow_u64(p, m - 2);

    for (const auto& r : crit) {
        if (m == 2) {
            std::vector<std::uint64_t> pt(r.begin(), r.end());
            std::uint64_t v = f.eval_mod(pt, N);
            acc.add(w[mulmod_u64(u, v, N)]);
            ++terms;
            continue;
        }
        // y = r + p z with z mod p^{m-2}; f(y) mod p^m is well defined on the
        // critical fibers.
        std::vector<BigInt> shift(n);
        std::vector<std::vector<BigInt>> T(n, std::vector<BigInt>(n, 0));
        for (unsigned i = 0; i < n; ++i) {
            shift[i] = r[i];
            T[i][i] = p;
        }
        Polynomial g = f.affine_substitute(shift, T);
        MultiEval ev({ModPoly::reduce(g, N)}, box);
        ev.run([&](const std::vector<std::uint64_t>&, const std::uint64_t* vals) {
            acc.add(w[mulmod_u64(u, vals[0], N)]);
            ++terms;
        });
    }
    // S = p^n * sum over fibers; normalize by p^{mn}.
    double scale = pow_count(p, n);
    ExpSumResult res = finalize(N, u, acc, pow_count(p, m * n) / scale, SumMethod::descent, terms);
    return res;
}

ExpSumResult expsum(const Polynomial& f, std::uint64_t N, const CharacterIndex& chi,
                    const EngineOptions& opt) {
    if (N == 0) throw DomainError("modulus must be positive");
    if (N == 1) return trivial_result(chi.u);
    require_character(N, chi);
    auto factors = factorize_u64(N);
    if (factors.size() == 1) {
        auto [p, e] = factors[0];
        if (e >= 2) return expsum_descent(f, p, e, chi, opt);
        return expsum_oracle(f, N, chi, opt);
    }
    auto split = crt_split(N, chi);
    ExpSumResult acc = trivial_result(chi.u);
    acc.N = N;
    acc.term_count = 0;
    for (const auto& [q, chi_q] : split) {
        ExpSumResult part = expsum(f, q, chi_q, opt);
        multiply_into(acc, part);
    }
    acc.method = SumMethod::crt;
    acc.u = chi.u;
    return acc;
}

namespace {

// Builds per-character results from a value histogram: S(u) = scale * sum_v
// h[v] e(uv/N). Returns (per_u, max) over u coprime to p.
void transform_histogram(const std::vector<std::uint64_t>& hist, std::uint64_t N, std::uint64_t p,
                         double norm, double scale, SumMethod method, std::uint64_t enum_terms,
                         bool keep_per_u, std::vector<ExpSumResult>* per_u, ExpSumResult* best) {
    auto w = roots_of_unity(N);
    bool have_best = false;
    for (std::uint64_t u = 1; u < N; ++u) {
        if (u % p == 0) continue;
        ComplexAccumulator acc;
        for (std::uint64_t v = 0; v < N; ++v) {
            if (!hist[v]) continue;
            acc.add(w[mulmod_u64(u, v, N)], static_cast<double>(hist[v]));
        }
        ExpSumResult r = finalize(N, u, acc, norm / scale, method, enum_terms);
        if (keep_per_u) per_u->push_back(r);
        if (!have_best || r.magnitude > best->magnitude) {
            *best = r;
            have_best = true;
        }
    }
}

}  // namespace

AllCharactersResult expsum_all_characters(const Polynomial& f, std::uint64_t p, unsigned m,
                                          const EngineOptions& opt, bool keep_per_u) {
    if (!is_prime_u64(p)) throw DomainError("all_characters requires prime p");
    if (m == 0) throw DomainError("m must be positive");
    const unsigned n = f.nvars();
    const std::uint64_t N = ipow_u64(p, m);
    require_cap(pow_count(N, n) + pow_count(N, 2), opt, "expsum_all_characters");

    AllCharactersResult out;
    out.N = N;
    out.histogram.assign(N, 0);
    MultiEval ev({ModPoly::reduce(f, N)}, N);
    ev.run([&](const std::vector<std::uint64_t>&, const std::uint64_t* vals) {
        ++out.histogram[vals[0]];
        ++out.term_count;
    });
    transform_histogram(out.histogram, N, p, pow_count(N, n), 1.0, SumMethod::dft, out.term_count,
                        keep_per_u, &out.per_u, &out.max_result);
    return out;
}

ExpSumResult expsum_max_prime_power(const Polynomial& f, std::uint64_t p, unsigned m,
                                    const EngineOptions& opt) {
    if (!is_prime_u64(p)) throw DomainError("prime power expected");
    const unsigned n = f.nvars();
    const std::uint64_t N = ipow_u64(p, m);
    if (m == 1) {
        auto all = expsum_all_characters(f, p, 1, opt, false);
        return all.max_result;
    }
    // Critical-fiber histogram, then one transform.
    auto crit = critical_residues(f, p, opt.term_cap);
    require_cap(static_cast<double>(crit.size()) * pow_count(p, (m - 2) * n) + pow_count(p, n) +
                    pow_count(N, 2),
                opt, "expsum_max_prime_power");
    std::vector<std::uint64_t> hist(N, 0);
    std::uint64_t terms = 0;
    const std::uint64_t box = ipow_u64(p, m - 2);
    for (const auto& r : crit) {
        if (m == 2) {
            std::vector<std::uint64_t> pt(r.begin(), r.end());
            ++hist[f.eval_mod(pt, N)];
            ++terms;
            continue;
        }
        std::vector<BigInt> shift(r.begin(), r.end());
        std::vector<std::vector<BigInt>> T(n, std::vector<BigInt>(n, 0));
        for (unsigned i = 0; i < n; ++i) T[i][i] = p;
        Polynomial g = f.affine_substitute(shift, T);
        MultiEval ev({ModPoly::reduce(g, N)}, box);
        ev.run([&](const std::vector<std::uint64_t>&, const std::uint64_t* vals) {
            ++hist[vals[0]];
            ++terms;
        });
    }
    ExpSumResult best;
    best.N = N;
    best.u = 1;
    best.method = SumMethod::descent;
    std::vector<ExpSumResult> unused;
    transform_histogram(hist, N, p, pow_count(p, m * n), pow_count(p, n), SumMethod::descent,
                        terms, false, &unused, &best);
    return best;
}

ExpSumResult expsum_max(const Polynomial& f, std::uint64_t N, const EngineOptions& opt) {
    if (N == 0) throw DomainError("modulus must be positive");
    if (N == 1) return trivial_result(0);
    auto factors = factorize_u64(N);
    if (factors.size() == 1) {
        auto [p, e] = factors[0];
        return expsum_max_prime_power(f, p, e, opt);
    }
    // Composite maximum is the product of factor maxima (the CRT character
    // correspondence is a bijection on primitive tuples); the maximizing
    // composite character is recombined from the factor maximizers.
    ExpSumResult acc = trivial_result(0);
    acc.N = N;
    acc.term_count = 0;
    std::uint64_t x = 0, mod = 1;
    for (const auto& [p, e] : factors) {
        std::uint64_t q = ipow_u64(p, e);
        ExpSumResult part = expsum_max_prime_power(f, p, e, opt);
        multiply_into(acc, part);
        // Invert the split map u_i = u * a_i mod q:  u = u_i * (N/q) mod q.
        std::uint64_t target = mulmod_u64(part.u % q, (N / q) % q, q);
        std::uint64_t minv = invmod_u64(mod % q, q);
        std::uint64_t delta = mulmod_u64((target + q - x % q) % q, minv, q);
        x += mod * delta;
        mod *= q;
    }
    acc.u = x % N;
    acc.method = SumMethod::crt;
    return acc;
}

ExpSumResult expsum_zoomed(const Polynomial& f, const std::vector<std::uint64_t>& P,
                           std::uint64_t p, unsigned m, const CharacterIndex& chi,
                           const EngineOptions& opt) {
    if (!is_prime_u64(p)) throw DomainError("zoomed sum requires prime p");
    if (m == 0) throw DomainError("m must be positive");
    const unsigned n = f.nvars();
    if (P.size() != n) throw DomainError("dimension mismatch");
    const std::uint64_t N = ipow_u64(p, m);
    require_character(N, chi);
    require_cap(pow_count(p, (m - 1) * n), opt, "expsum_zoomed");

    auto w = roots_of_unity(N);
    ComplexAccumulator acc;
    std::uint64_t terms = 0;
    const std::uint64_t u = chi.u;
    if (m == 1) {
        std::vector<std::uint64_t> pt(P.begin(), P.end());
        std::uint64_t v = f.eval_mod(pt, N);
        acc.add(w[mulmod_u64(u, v, N)]);
        terms = 1;
    } else {
        std::vector<BigInt> shift(P.begin(), P.end());
        std::vector<std::vector<BigInt>> T(n, std::vector<BigInt>(n, 0));
        for (unsigned i = 0; i < n; ++i) T[i][i] = p;
        Polynomial g = f.affine_substitute(shift, T);
        MultiEval ev({ModPoly::reduce(g, N)}, ipow_u64(p, m - 1));
        ev.run([&](const std::vector<std::uint64_t>&, const std::uint64_t* vals) {
            acc.add(w[mulmod_u64(u, vals[0], N)]);
            ++terms;
        });
    }
    return finalize(N, u, acc, pow_count(p, m * n), SumMethod::oracle, terms);
}

ExpSumResult expsum_ff(const Polynomial& f, std::uint64_t p, unsigned m,
                       const EngineOptions& opt) {
    if (!is_prime_u64(p)) throw DomainError("function-field sum requires prime p");
    if (m == 0) throw DomainError("m must be positive");
    const unsigned n = f.nvars();
    require_cap(pow_count(p, m * n), opt, "expsum_ff");

    // Each coordinate ranges over F_p[t]/(t^m), encoded as m base-p digits of
    // an index in [0, p^m). Ring arithmetic is truncated convolution mod p.
    const std::uint64_t Q = ipow_u64(p, m);
    auto wp = roots_of_unity(p);

    std::vector<std::uint64_t> coeffs_mod_p;  // per term, reduced coefficient
    std::vector<const ExpVec*> exps;
    for (const auto& [e, c] : f.terms()) {
        std::uint64_t r = reduce_mod(c, p);
        if (!r) continue;
        coeffs_mod_p.push_back(r);
        exps.push_back(&e);
    }

    std::vector<std::vector<std::uint64_t>> digits(n, std::vector<std::uint64_t>(m, 0));
    std::vector<std::uint64_t> idx(n, 0);
    ComplexAccumulator acc;
    std::uint64_t terms = 0;

    std::vector<std::uint64_t> tmp(m), prod(m), term(m);
    auto ring_mul = [&](std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
        std::fill(tmp.begin(), tmp.end(), 0);
        for (unsigned i = 0; i < m; ++i) {
            if (!a[i]) continue;
            for (unsigned j = 0; i + j < m; ++j) {
                if (!b[j]) continue;
                tmp[i + j] = (tmp[i + j] + a[i] * b[j]) % p;
            }
        }
        a = tmp;
    };

    for (;;) {
        // Evaluate f at the current tuple of ring elements.
        std::uint64_t top = 0;  // coefficient of t^{m-1} of f(x)
        for (std::size_t t = 0; t < exps.size(); ++t) {
            std::fill(term.begin(), term.end(), 0);
            term[0] = coeffs_mod_p[t];
            const ExpVec& e = *exps[t];
            for (unsigned j = 0; j < n; ++j)
                for (std::uint32_t k = 0; k < e[j]; ++k) ring_mul(term, digits[j]);
            top = (top + term[m - 1]) % p;
        }
        acc.add(wp[top]);
        ++terms;

        // Odometer over ring elements.
        unsigned lvl = n;
        for (;;) {
            if (lvl == 0) {
                ExpSumResult r = finalize(Q, 1, acc, pow_count(p, m * n), SumMethod::oracle, terms);
                r.N = Q;
                return r;
            }
            --lvl;
            if (++idx[lvl] < Q) {
                std::uint64_t v = idx[lvl];
                for (unsigned d = 0; d < m; ++d) {
                    digits[lvl][d] = v % p;
                    v /= p;
                }
                break;
            }
            idx[lvl] = 0;
            std::fill(digits[lvl].begin(), digits[lvl].end(), 0);
        }
    }
}

}  // namespace expsum
