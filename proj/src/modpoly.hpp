#pragma once

#include <cstdint>
#include <vector>

#include "common.hpp"
#include "poly.hpp"

namespace expsum {

// Modulus ceiling for the enumeration kernels: products of two reduced values
// must fit in 64 bits.
inline constexpr std::uint64_t kMaxKernelModulus = (1ull << 31);

// Polynomial with coefficients reduced into [0, M). Term order is irrelevant
// here; this is the form the enumeration kernels consume.
struct ModPoly {
    unsigned nvars = 0;
    std::uint64_t modulus = 1;
    std::vector<std::pair<ExpVec, std::uint64_t>> terms;

    static ModPoly reduce(const Polynomial& f, std::uint64_t m) {
        if (m == 0 || m > kMaxKernelModulus) throw DomainError("kernel modulus out of range");
        ModPoly out;
        out.nvars = f.nvars();
        out.modulus = m;
        for (const auto& [e, c] : f.terms()) {
            std::uint64_t r = reduce_mod(c, m);
            if (r) out.terms.emplace_back(e, r);
        }
        return out;
    }

    std::uint64_t eval(const std::vector<std::uint64_t>& x) const {
        std::uint64_t acc = 0;
        for (const auto& [e, c] : terms) {
            std::uint64_t t = c;
            for (unsigned j = 0; j < nvars; ++j)
                if (e[j]) t = mulmod_u64(t, powmod_u64(x[j] % modulus, e[j], modulus), modulus);
            acc = (acc + t) % modulus;
        }
        return acc;
    }

    unsigned degree_in(unsigned j) const {
        unsigned d = 0;
        for (const auto& [e, c] : terms) d = std::max(d, static_cast<unsigned>(e[j]));
        return d;
    }
};

// Enumerates x over [0, box)^nvars in odometer order (last variable fastest)
// and maintains the value of every polynomial in `polys` (all sharing one
// modulus) via finite-difference tables on the innermost variable: one table
// rebuild per inner row, then deg-many modular additions per step.
//
// visit(x, vals) is called once per point; vals[k] = polys[k](x) mod M.
class MultiEval {
  public:
    MultiEval(std::vector<ModPoly> polys, std::uint64_t box)
        : polys_(std::move(polys)), box_(box) {
        if (polys_.empty()) throw DomainError("MultiEval needs at least one polynomial");
        n_ = polys_[0].nvars;
        mod_ = polys_[0].modulus;
        for (const auto& p : polys_)
            if (p.nvars != n_ || p.modulus != mod_) throw DomainError("MultiEval inputs disagree");
        if (n_ == 0) throw DomainError("MultiEval needs at least one variable");

        // Power tables for the prefix variables.
        if (n_ > 1) {
            unsigned maxdeg = 0;
            for (const auto& p : polys_)
                for (unsigned j = 0; j + 1 < n_; ++j) maxdeg = std::max(maxdeg, p.degree_in(j));
            pow_.assign(n_ - 1, {});
            for (unsigned j = 0; j + 1 < n_; ++j) {
                pow_[j].assign(box_ * (maxdeg + 1), 1);
                for (std::uint64_t r = 0; r < box_; ++r) {
                    std::uint64_t* row = &pow_[j][r * (maxdeg + 1)];
                    row[0] = 1 % mod_;
                    for (unsigned e = 1; e <= maxdeg; ++e) row[e] = mulmod_u64(row[e - 1], r % mod_, mod_);
                }
            }
            pow_stride_ = maxdeg + 1;
        }
        for (const auto& p : polys_) inner_deg_.push_back(p.degree_in(n_ - 1));
    }

    template <class Visitor>
    void run(Visitor&& visit) {
        const unsigned K = static_cast<unsigned>(polys_.size());
        std::vector<std::uint64_t> x(n_, 0);
        std::vector<std::uint64_t> vals(K, 0);

        // diff[k] holds the finite-difference table for polynomial k on the
        // current inner row.
        std::vector<std::vector<std::uint64_t>> diff(K);
        for (unsigned k = 0; k < K; ++k) diff[k].assign(inner_deg_[k] + 1, 0);
        std::vector<std::uint64_t> coeffs;

        for (;;) {
            // Build difference tables for the row at prefix x[0..n-2].
            for (unsigned k = 0; k < K; ++k) {
                build_row(k, x, coeffs, diff[k]);
            }
            for (std::uint64_t t = 0; t < box_; ++t) {
                x[n_ - 1] = t;
                for (unsigned k = 0; k < K; ++k) vals[k] = diff[k][0];
                visit(static_cast<const std::vector<std::uint64_t>&>(x), vals.data());
                for (unsigned k = 0; k < K; ++k) {
                    auto& D = diff[k];
                    const unsigned s = inner_deg_[k];
                    for (unsigned i = 0; i < s; ++i) {
                        D[i] += D[i + 1];
                        if (D[i] >= mod_) D[i] -= mod_;
                    }
                }
            }
            // Advance the prefix odometer.
            if (n_ == 1) break;
            unsigned lvl = n_ - 1;
            for (;;) {
                if (lvl == 0) return;
                --lvl;
                if (++x[lvl] < box_) break;
                x[lvl] = 0;
            }
        }
    }

  private:
    // Collapses polynomial k at the current prefix into a univariate
    // polynomial in the innermost variable, evaluates it at 0..deg and takes
    // forward differences in place.
    void build_row(unsigned k, const std::vector<std::uint64_t>& x,
                   std::vector<std::uint64_t>& coeffs, std::vector<std::uint64_t>& D) {
        const ModPoly& p = polys_[k];
        const unsigned s = inner_deg_[k];
        coeffs.assign(s + 1, 0);
        for (const auto& [e, c] : p.terms) {
            std::uint64_t t = c;
            for (unsigned j = 0; j + 1 < n_; ++j)
                if (e[j]) t = mulmod_u64(t, pow_[j][x[j] * pow_stride_ + e[j]], mod_);
            coeffs[e[n_ - 1]] = (coeffs[e[n_ - 1]] + t) % mod_;
        }
        // Values at 0..s by Horner, then forward differences.
        for (unsigned t = 0; t <= s; ++t) {
            std::uint64_t acc = 0;
            for (unsigned i = s + 1; i-- > 0;) acc = (mulmod_u64(acc, t, mod_) + coeffs[i]) % mod_;
            D[t] = acc;
        }
        for (unsigned i = 1; i <= s; ++i)
            for (unsigned j = s; j >= i; --j) {
                D[j] = D[j] >= D[j - 1] ? D[j] - D[j - 1] : D[j] + mod_ - D[j - 1];
            }
    }

    std::vector<ModPoly> polys_;
    std::uint64_t box_;
    unsigned n_ = 0;
    std::uint64_t mod_ = 1;
    std::vector<std::vector<std::uint64_t>> pow_;
    std::size_t pow_stride_ = 0;
    std::vector<unsigned> inner_deg_;
};

}  // namespace expsum
