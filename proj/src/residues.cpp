#include "residues.hpp"

#include <map>

#include "modpoly.hpp"

namespace expsum {

namespace {

double pow_count(std::uint64_t base, unsigned exp) {
    double r = 1;
    while (exp--) r *= static_cast<double>(base);
    return r;
}

void check_cap(std::uint64_t base, unsigned exp, std::uint64_t cap, const char* what) {
    if (pow_count(base, exp) > static_cast<double>(cap))
        throw CapExceeded(std::string(what) + ": enumeration exceeds term cap");
}

}  // namespace

std::vector<std::vector<std::uint64_t>> critical_residues(const Polynomial& f, std::uint64_t p,
                                                          std::uint64_t cap) {
    const unsigned n = f.nvars();
    check_cap(p, n, cap, "critical_residues");
    std::vector<ModPoly> grads;
    for (unsigned i = 0; i < n; ++i) grads.push_back(ModPoly::reduce(f.derivative(i), p));
    std::vector<std::vector<std::uint64_t>> out;
    MultiEval ev(std::move(grads), p);
    ev.run([&](const std::vector<std::uint64_t>& x, const std::uint64_t* vals) {
        for (unsigned k = 0; k < n; ++k)
            if (vals[k]) return;
        out.push_back(x);
    });
    return out;
}

std::uint64_t count_gradient_zeros(const Polynomial& g, std::uint64_t q, std::uint64_t cap) {
    const unsigned n = g.nvars();
    check_cap(q, n, cap, "count_gradient_zeros");
    std::vector<ModPoly> grads;
    for (unsigned i = 0; i < n; ++i) grads.push_back(ModPoly::reduce(g.derivative(i), q));
    std::uint64_t count = 0;
    MultiEval ev(std::move(grads), q);
    ev.run([&](const std::vector<std::uint64_t>&, const std::uint64_t* vals) {
        for (unsigned k = 0; k < n; ++k)
            if (vals[k]) return;
        ++count;
    });
    return count;
}

BigInt count_solutions_enum(const Polynomial& f, std::uint64_t p, unsigned m, std::uint64_t cap) {
    const unsigned n = f.nvars();
    check_cap(p, m * n, cap, "count_solutions");
    std::uint64_t N = 1;
    for (unsigned i = 0; i < m; ++i) N *= p;
    std::uint64_t count = 0;
    MultiEval ev({ModPoly::reduce(f, N)}, N);
    ev.run([&](const std::vector<std::uint64_t>&, const std::uint64_t* vals) {
        if (vals[0] == 0) ++count;
    });
    return count;
}

namespace {

// Canonical memo key: coefficients reduced mod p^k in canonical term order.
struct PadicCounter {
    std::uint64_t p;
    std::uint64_t budget;
    std::uint64_t states = 0;
    std::map<std::pair<std::string, unsigned>, BigInt> memo;

    BigInt modulus_pow(unsigned k) {
        BigInt r = 1;
        for (unsigned i = 0; i < k; ++i) r *= p;
        return r;
    }

    Polynomial reduce_poly(const Polynomial& f, const BigInt& mod) {
        Polynomial out(f.nvars());
        for (const auto& [e, c] : f.terms()) {
            BigInt r = c % mod;
            if (r < 0) r += mod;
            out.add_term(e, r);
        }
        return out;
    }

    std::string key_of(const Polynomial& f) {
        std::string key;
        for (const auto& [e, c] : f.terms()) {
            for (auto x : e) key += std::to_string(x) + ",";
            key += ":" + c.str() + ";";
        }
        return key;
    }

    // #{x mod p^k : f(x) = 0 mod p^k}; f arbitrary integer polynomial.
    BigInt count(const Polynomial& f_in, unsigned k) {
        if (k == 0) return 1;
        const unsigned n = f_in.nvars();
        BigInt pk = modulus_pow(k);
        Polynomial f = reduce_poly(f_in, pk);

        // Content reduction: f = p^v h with h primitive (or f = 0 mod p^k).
        if (f.is_zero()) {
            BigInt r = 1;
            for (unsigned i = 0; i < n * k; ++i) r *= p;
            return r;
        }
        unsigned v = k;
        for (const auto& [e, c] : f.terms()) {
            unsigned ve = 0;
            BigInt cc = c;
            while (ve < v && cc % p == 0) { cc /= p; ++ve; }
            v = std::min(v, ve);
            if (v == 0) break;
        }
        if (v > 0) {
            Polynomial h(n);
            BigInt pv = modulus_pow(v);
            for (const auto& [e, c] : f.terms()) h.add_term(e, c / pv);
            // x mod p^k solving p^v h = 0 mod p^k <=> h = 0 mod p^{k-v},
            // counted over the finer grid.
            BigInt r = count(h, k - v);
            for (unsigned i = 0; i < n * v; ++i) r *= p;
            return r;
        }

        auto memo_key = std::make_pair(key_of(f), k);
        if (auto it = memo.find(memo_key); it != memo.end()) return it->second;
        if (++states > budget) throw CapExceeded("count_solutions_padic: state budget exhausted");

        // Enumerate residues mod p; Hensel-count smooth roots, recurse on
        // singular ones.
        ModPoly fp = ModPoly::reduce(f, p);
        std::vector<ModPoly> grads;
        for (unsigned i = 0; i < n; ++i) grads.push_back(ModPoly::reduce(f.derivative(i), p));
        std::vector<std::vector<std::uint64_t>> singular;
        std::uint64_t smooth = 0;
        {
            std::vector<ModPoly> all;
            all.push_back(fp);
            for (auto& g : grads) all.push_back(g);
            MultiEval ev(std::move(all), p);
            ev.run([&](const std::vector<std::uint64_t>& x, const std::uint64_t* vals) {
                if (vals[0] != 0) return;
                bool sing = true;
                for (unsigned i = 1; i <= n; ++i)
                    if (vals[i]) { sing = false; break; }
                if (sing) singular.push_back(x);
                else ++smooth;
            });
        }

        BigInt total = 0;
        if (smooth) {
            // Each smooth root mod p lifts to exactly p^{(k-1)(n-1)} solutions.
            BigInt lift = 1;
            for (unsigned i = 0; i < (k - 1) * (n - 1); ++i) lift *= p;
            total += BigInt(smooth) * lift;
        }
        for (const auto& r : singular) {
            // Zoom: y = r + p z, g(z) = f(r + p z)/p.
            std::vector<BigInt> shift(n);
            std::vector<std::vector<BigInt>> T(n, std::vector<BigInt>(n, 0));
            for (unsigned i = 0; i < n; ++i) {
                shift[i] = r[i];
                T[i][i] = p;
            }
            Polynomial g = f.affine_substitute(shift, T);
            Polynomial gdiv(n);
            for (const auto& [e, c] : g.terms()) gdiv.add_term(e, c / p);
            total += count(gdiv, k - 1);
        }
        memo[memo_key] = total;
        return total;
    }
};

}  // namespace

BigInt count_solutions_padic(const Polynomial& f, std::uint64_t p, unsigned m, std::uint64_t state_budget) {
    PadicCounter ctr{p, state_budget};
    return ctr.count(f, m);
}

}  // namespace expsum
