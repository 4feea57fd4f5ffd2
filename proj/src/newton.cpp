#include "newton.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "modpoly.hpp"
#include "qlinalg.hpp"
#include "simplex.hpp"
#include "unipoly.hpp"

namespace expsum {

const char* verdict_name(NondegVerdict v) {
    switch (v) {
        case NondegVerdict::certified_nondegenerate: return "certified_nondegenerate";
        case NondegVerdict::certified_degenerate: return "certified_degenerate";
        case NondegVerdict::heuristic_nondegenerate: return "heuristic_nondegenerate";
        case NondegVerdict::unknown: return "unknown";
    }
    return "?";
}

std::vector<ExpVec> newton_support(const Polynomial& f) {
    std::vector<ExpVec> out;
    for (const auto& [e, c] : f.terms())
        if (total_degree(e) > 0) out.push_back(e);
    if (out.empty()) throw DomainError("newton_support: polynomial is constant");
    return out;
}

Rational compute_sigma(const std::vector<ExpVec>& support) {
    if (support.empty()) throw DomainError("compute_sigma: empty support");
    const unsigned n = static_cast<unsigned>(support[0].size());
    const std::size_t k = support.size();
    // Variables (lambda_1..lambda_k, t) >= 0.
    // min t  s.t.  sum_j lambda_j v_j[i] - t <= 0  (i < n),  sum lambda = 1.
    LinearProgram lp;
    lp.c.assign(k + 1, Rational(0));
    lp.c[k] = 1;
    for (unsigned i = 0; i < n; ++i) {
        QVector row(k + 1, Rational(0));
        for (std::size_t j = 0; j < k; ++j) row[j] = static_cast<int>(support[j][i]);
        row[k] = -1;
        lp.A.push_back(row);
        lp.b.push_back(Rational(0));
        lp.sense.push_back(ConstraintSense::LE);
    }
    QVector simplex_row(k + 1, Rational(1));
    simplex_row[k] = 0;
    lp.A.push_back(simplex_row);
    lp.b.push_back(Rational(1));
    lp.sense.push_back(ConstraintSense::EQ);

    LPSolution sol = solve_lp(lp);
    if (!sol.feasible || !sol.bounded) throw DomainError("compute_sigma: LP failed");
    if (sol.objective <= 0) throw DomainError("compute_sigma: degenerate optimum");
    return Rational(1) / sol.objective;
}

namespace {

std::vector<BigInt> primitive_integer(const QVector& v) {
    BigInt den = 1;
    for (const auto& x : v) den = lcm(den, boost::multiprecision::denominator(x));
    std::vector<BigInt> out;
    BigInt g = 0;
    for (const auto& x : v) {
        Rational s = x * den;
        out.push_back(boost::multiprecision::numerator(s));
        g = gcd(g, out.back());
    }
    if (g > 1)
        for (auto& x : out) x /= g;
    return out;
}

// dim of the face cut out by functional k: affine dim of its tight support
// points plus independent recession directions e_i with k_i = 0.
unsigned face_dimension(const std::vector<ExpVec>& tight, const std::vector<BigInt>& k) {
    const unsigned n = static_cast<unsigned>(k.size());
    QMatrix rows;
    for (std::size_t j = 1; j < tight.size(); ++j) {
        QVector r(n);
        for (unsigned i = 0; i < n; ++i)
            r[i] = Rational(static_cast<int>(tight[j][i]) - static_cast<int>(tight[0][i]));
        rows.push_back(r);
    }
    for (unsigned i = 0; i < n; ++i) {
        if (k[i] != 0) continue;
        QVector r(n, Rational(0));
        r[i] = 1;
        rows.push_back(r);
    }
    if (rows.empty()) return 0;
    return qmatrix_rank(rows);
}

std::vector<ExpVec> tight_set_of(const std::vector<ExpVec>& support, const std::vector<BigInt>& k) {
    Rational best;
    bool first = true;
    std::vector<Rational> vals;
    for (const auto& v : support) {
        Rational s = 0;
        for (std::size_t i = 0; i < k.size(); ++i) s += Rational(k[i]) * static_cast<int>(v[i]);
        vals.push_back(s);
        if (first || s < best) { best = s; first = false; }
    }
    std::vector<ExpVec> tight;
    for (std::size_t j = 0; j < support.size(); ++j)
        if (vals[j] == best) tight.push_back(support[j]);
    return tight;
}

}  // namespace

std::pair<std::vector<FaceData>, unsigned> diagonal_faces(const std::vector<ExpVec>& support,
                                                          const Rational& sigma) {
    if (support.empty()) throw DomainError("diagonal_faces: empty support");
    const unsigned n = static_cast<unsigned>(support[0].size());
    if (support.size() > 30) throw DomainError("diagonal_faces: support too large");
    Rational q = Rational(1) / sigma;

    // Constraint normals of the normal cone K = {k >= 0 : k.(v - q 1) >= 0}.
    QMatrix normals;
    for (unsigned i = 0; i < n; ++i) {
        QVector e(n, Rational(0));
        e[i] = 1;
        normals.push_back(e);
    }
    for (const auto& v : support) {
        QVector r(n);
        for (unsigned i = 0; i < n; ++i) r[i] = Rational(static_cast<int>(v[i])) - q;
        normals.push_back(r);
    }
    auto feasible = [&](const QVector& ray) {
        for (const auto& g : normals) {
            Rational s = 0;
            for (unsigned i = 0; i < n; ++i) s += g[i] * ray[i];
            if (s < 0) return false;
        }
        return true;
    };

    std::set<std::vector<BigInt>> rays;
    if (n == 1) {
        QVector one{Rational(1)};
        if (feasible(one)) rays.insert({BigInt(1)});
    } else {
        // Extreme rays lie on n-1 independent active constraints.
        const std::size_t m = normals.size();
        auto consider = [&](const std::vector<std::size_t>& sel) {
            QMatrix sys;
            for (auto s : sel) sys.push_back(normals[s]);
            QVector kern = kernel_vector(sys, n);
            if (kern.empty()) return;
            if (feasible(kern)) {
                rays.insert(primitive_integer(kern));
                return;
            }
            for (auto& x : kern) x = -x;
            if (feasible(kern)) rays.insert(primitive_integer(kern));
        };
        // Plain (n-1)-subset enumeration; supports here are tiny.
        std::vector<std::size_t> sel(n - 1);
        auto rec = [&](auto&& self, std::size_t start, unsigned depth) -> void {
            if (depth == n - 1) {
                consider(sel);
                return;
            }
            for (std::size_t i = start; i < m; ++i) {
                sel[depth] = i;
                self(self, i + 1, depth + 1);
            }
        };
        rec(rec, 0, 0);
    }
    if (rays.empty()) throw DomainError("diagonal_faces: empty normal cone (no proper face)");

    std::vector<FaceData> faces;
    std::set<std::pair<std::vector<BigInt>, std::vector<ExpVec>>> seen;
    for (const auto& r : rays) {
        FaceData fd;
        fd.functional = r;
        fd.tight = tight_set_of(support, r);
        fd.dim = face_dimension(fd.tight, r);
        if (seen.insert({fd.functional, fd.tight}).second) faces.push_back(std::move(fd));
    }

    // Relative-interior functional of the cone: sum of the extreme rays. Its
    // face is the smallest face containing the diagonal point.
    std::vector<BigInt> ksum(n, 0);
    for (const auto& r : rays)
        for (unsigned i = 0; i < n; ++i) ksum[i] += r[i];
    FaceData smallest;
    smallest.functional = ksum;
    smallest.tight = tight_set_of(support, ksum);
    smallest.dim = face_dimension(smallest.tight, ksum);
    unsigned kappa = n - smallest.dim;
    if (seen.insert({smallest.functional, smallest.tight}).second) faces.push_back(smallest);

    std::sort(faces.begin(), faces.end(), [](const FaceData& a, const FaceData& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.functional < b.functional;
    });
    return {faces, kappa};
}

Polynomial face_polynomial(const Polynomial& f, const std::vector<ExpVec>& tight) {
    Polynomial out(f.nvars());
    for (const auto& e : tight) {
        BigInt c = f.coeff(e);
        if (c == 0) throw DomainError("face_polynomial: tight point not in support");
        out.add_term(e, c);
    }
    return out;
}

std::vector<std::vector<ExpVec>> enumerate_face_tight_sets(const std::vector<ExpVec>& support,
                                                           unsigned max_support) {
    const std::size_t k = support.size();
    if (k == 0) return {};
    if (k > max_support) throw CapExceeded("face enumeration: support too large");
    const unsigned n = static_cast<unsigned>(support[0].size());
    std::vector<std::vector<ExpVec>> out;

    for (std::size_t mask = 1; mask < (std::size_t(1) << k); ++mask) {
        std::vector<std::size_t> in, outside;
        for (std::size_t j = 0; j < k; ++j)
            ((mask >> j) & 1 ? in : outside).push_back(j);

        // Feasibility: k >= 0, sum k_i = 1, k.(v - v0) = 0 on the subset,
        // k.(w - v0) >= delta off it; subset is a tight set iff max delta > 0.
        LinearProgram lp;
        const std::size_t nv = n + 1;  // k_1..k_n, delta
        lp.c.assign(nv, Rational(0));
        lp.c[n] = -1;  // maximize delta
        const ExpVec& v0 = support[in[0]];
        for (std::size_t t = 1; t < in.size(); ++t) {
            QVector row(nv, Rational(0));
            for (unsigned i = 0; i < n; ++i)
                row[i] = Rational(static_cast<int>(support[in[t]][i]) - static_cast<int>(v0[i]));
            lp.A.push_back(row);
            lp.b.push_back(Rational(0));
            lp.sense.push_back(ConstraintSense::EQ);
        }
        for (auto w : outside) {
            QVector row(nv, Rational(0));
            for (unsigned i = 0; i < n; ++i)
                row[i] = Rational(static_cast<int>(support[w][i]) - static_cast<int>(v0[i]));
            row[n] = -1;
            lp.A.push_back(row);
            lp.b.push_back(Rational(0));
            lp.sense.push_back(ConstraintSense::GE);
        }
        {
            QVector row(nv, Rational(0));
            for (unsigned i = 0; i < n; ++i) row[i] = 1;
            lp.A.push_back(row);
            lp.b.push_back(Rational(1));
            lp.sense.push_back(ConstraintSense::EQ);
        }
        LPSolution sol = solve_lp(lp);
        if (!sol.feasible) continue;
        if (outside.empty()) {
            // Whole support on one supporting hyperplane: a proper face too.
            std::vector<ExpVec> t;
            for (auto j : in) t.push_back(support[j]);
            out.push_back(std::move(t));
            continue;
        }
        if (!sol.bounded || sol.objective < 0) {
            // objective is -delta; delta* > 0 <=> objective < 0 (or unbounded).
            std::vector<ExpVec> t;
            for (auto j : in) t.push_back(support[j]);
            out.push_back(std::move(t));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Non-degeneracy
// ---------------------------------------------------------------------------

namespace {

enum class Tri { no, yes, undecided };

// --- bivariate machinery -------------------------------------------------

// Bivariate polynomial as y-coefficients in Q[x].
struct BiPoly {
    std::vector<UniPoly> yc;  // yc[j] = coeff of y^j

    bool is_zero() const {
        for (const auto& c : yc)
            if (!uni_is_zero(c)) return false;
        return true;
    }
    int ydeg() const {
        for (int j = static_cast<int>(yc.size()) - 1; j >= 0; --j)
            if (!uni_is_zero(yc[j])) return j;
        return -1;
    }
    int xdeg() const {
        int d = -1;
        for (const auto& c : yc) d = std::max(d, uni_deg(c));
        return d;
    }
    bool is_constant() const { return ydeg() <= 0 && xdeg() <= 0; }

    UniPoly eval_x(const Rational& x0) const {
        UniPoly r(yc.size(), Rational(0));
        for (std::size_t j = 0; j < yc.size(); ++j) r[j] = uni_eval(yc[j], x0);
        uni_trim(r);
        return r;
    }
    UniPoly eval_y(const Rational& y0) const {
        UniPoly r;
        Rational pw = 1;
        for (std::size_t j = 0; j < yc.size(); ++j) {
            UniPoly t = uni_scale(yc[j], pw);
            if (r.size() < t.size()) r.resize(t.size(), Rational(0));
            for (std::size_t i = 0; i < t.size(); ++i) r[i] += t[i];
            pw *= y0;
        }
        uni_trim(r);
        return r;
    }
    BiPoly transpose() const {  // swap roles of x and y
        BiPoly t;
        int dx = xdeg();
        t.yc.assign(dx + 1, UniPoly());
        for (std::size_t j = 0; j < yc.size(); ++j)
            for (std::size_t i = 0; i < yc[j].size(); ++i) {
                if (yc[j][i] == 0) continue;
                if (t.yc[i].size() <= j) t.yc[i].resize(j + 1, Rational(0));
                t.yc[i][j] = yc[j][i];
            }
        return t;
    }
};

// Strips monomial factors x^a y^b (torus zeros are unchanged).
BiPoly bi_strip(const BiPoly& p) {
    int ylo = -1;
    for (std::size_t j = 0; j < p.yc.size(); ++j)
        if (!uni_is_zero(p.yc[j])) { ylo = static_cast<int>(j); break; }
    if (ylo < 0) return p;
    unsigned xlo = std::numeric_limits<unsigned>::max();
    for (const auto& c : p.yc)
        if (!uni_is_zero(c)) xlo = std::min(xlo, uni_valuation(c));
    BiPoly out;
    for (std::size_t j = ylo; j < p.yc.size(); ++j) {
        UniPoly c = p.yc[j];
        if (!uni_is_zero(c)) c = UniPoly(c.begin() + xlo, c.end());
        out.yc.push_back(c);
    }
    return out;
}

// gcd over Q[x] of all y-coefficients.
UniPoly bi_content_x(const BiPoly& p) {
    UniPoly g;
    for (const auto& c : p.yc) {
        if (uni_is_zero(c)) continue;
        g = g.empty() ? c : uni_gcd(g, c);
        if (uni_deg(g) == 0) break;
    }
    return g;
}

// Res_y(A, B) by interpolation at integer sample points where neither leading
// y-coefficient vanishes.
UniPoly bi_resultant_y(const BiPoly& A, const BiPoly& B) {
    int da = A.ydeg(), db = B.ydeg();
    if (da < 1 || db < 1) throw DomainError("resultant needs positive y-degrees");
    int bound = da * std::max(B.xdeg(), 0) + db * std::max(A.xdeg(), 0);
    const UniPoly& la = A.yc[da];
    const UniPoly& lb = B.yc[db];
    std::vector<Rational> xs, ys;
    for (long long t = 0; static_cast<int>(xs.size()) < bound + 1; t = (t > 0 ? -t : -t + 1)) {
        Rational x0(t);
        if (uni_eval(la, x0) == 0 || uni_eval(lb, x0) == 0) continue;
        UniPoly fa = A.eval_x(x0);
        UniPoly fb = B.eval_x(x0);
        xs.push_back(x0);
        ys.push_back(uni_resultant(fa, fb));
    }
    // Lagrange interpolation.
    UniPoly acc;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        UniPoly li{Rational(1)};
        Rational denom = 1;
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (i == j) continue;
            li = uni_mul(li, UniPoly{-xs[j], Rational(1)});
            denom *= xs[i] - xs[j];
        }
        li = uni_scale(li, ys[i] / denom);
        if (acc.size() < li.size()) acc.resize(li.size(), Rational(0));
        for (std::size_t t = 0; t < li.size(); ++t) acc[t] += li[t];
    }
    uni_trim(acc);
    return acc;
}

BiPoly bi_from_poly(const Polynomial& g, unsigned vx, unsigned vy) {
    BiPoly out;
    for (const auto& [e, c] : g.terms()) {
        unsigned i = e[vx], j = e[vy];
        if (out.yc.size() <= j) out.yc.resize(j + 1);
        if (out.yc[j].size() <= i) out.yc[j].resize(i + 1, Rational(0));
        out.yc[j][i] += Rational(c);
    }
    for (auto& c : out.yc) uni_trim(c);
    return out;
}

// Does a univariate polynomial (strip-free or not) have a nonzero root?
bool uni_has_nonzero_root(const UniPoly& h) { return uni_deg(uni_strip(h)) >= 1; }

// U = U(x) nonconstant with U(0) != 0; V arbitrary. Decides whether some root
// x0 of U admits y0 != 0 with V(x0, y0) = 0 (all roots of U are nonzero).
Tri case_zero_ydeg(const UniPoly& U, const BiPoly& V) {
    if (V.ydeg() <= 0 && V.xdeg() <= 0) return Tri::no;  // V nonzero constant
    if (V.ydeg() < 1 && V.xdeg() >= 1) {
        // Both gradients univariate in x: need a common nonzero root.
        UniPoly g = uni_gcd(U, V.yc.empty() ? UniPoly{} : V.yc[0]);
        return uni_has_nonzero_root(g) ? Tri::yes : Tri::no;
    }
    if (V.xdeg() < 1) {
        // V = V(y): any root x0 of U pairs with a nonzero root of V.
        UniPoly vy(V.yc.size(), Rational(0));
        for (std::size_t j = 0; j < V.yc.size(); ++j)
            vy[j] = V.yc[j].empty() ? Rational(0) : V.yc[j][0];
        uni_trim(vy);
        return uni_has_nonzero_root(vy) ? Tri::yes : Tri::no;
    }
    auto rr = uni_rational_roots(U);
    for (const auto& [x0, mult] : rr.roots) {
        UniPoly h = V.eval_x(x0);
        if (uni_is_zero(h)) return Tri::yes;  // whole line {x0} x C
        if (uni_has_nonzero_root(h)) return Tri::yes;
    }
    if (rr.complete && uni_deg(rr.leftover) < 1) return Tri::no;
    return Tri::undecided;
}

// Exact decision for a two-variable component g (both variables occur):
// does grad g vanish somewhere on the torus (C^x)^2?
Tri decide_bivariate(const Polynomial& g, unsigned vx, unsigned vy) {
    Polynomial gx = g.derivative(vx);
    Polynomial gy = g.derivative(vy);
    BiPoly A = bi_strip(bi_from_poly(gx, vx, vy));
    BiPoly B = bi_strip(bi_from_poly(gy, vx, vy));
    if (A.is_constant() || B.is_constant()) return Tri::no;

    // Common factor in x alone (has a nonzero root since strip-free).
    UniPoly cd = uni_gcd(bi_content_x(A), bi_content_x(B));
    if (uni_has_nonzero_root(cd)) return Tri::yes;
    UniPoly cdy = uni_gcd(bi_content_x(A.transpose()), bi_content_x(B.transpose()));
    if (uni_has_nonzero_root(cdy)) return Tri::yes;

    // One-variable gradients route through the dedicated case.
    if (A.ydeg() < 1) return case_zero_ydeg(A.yc.empty() ? UniPoly{} : A.yc[0], B);
    if (B.ydeg() < 1) return case_zero_ydeg(B.yc.empty() ? UniPoly{} : B.yc[0], A);
    if (A.xdeg() < 1) {
        UniPoly ay(A.yc.size(), Rational(0));
        for (std::size_t j = 0; j < A.yc.size(); ++j)
            ay[j] = A.yc[j].empty() ? Rational(0) : A.yc[j][0];
        uni_trim(ay);
        return case_zero_ydeg(ay, B.transpose());
    }
    if (B.xdeg() < 1) {
        UniPoly by(B.yc.size(), Rational(0));
        for (std::size_t j = 0; j < B.yc.size(); ++j)
            by[j] = B.yc[j].empty() ? Rational(0) : B.yc[j][0];
        uni_trim(by);
        return case_zero_ydeg(by, A.transpose());
    }

    UniPoly Rx = bi_resultant_y(A, B);
    if (uni_is_zero(Rx)) return Tri::yes;  // common curve, strip-free
    UniPoly Ry = bi_resultant_y(A.transpose(), B.transpose());
    if (uni_is_zero(Ry)) return Tri::yes;

    UniPoly Rxs = uni_strip(Rx);
    UniPoly Rys = uni_strip(Ry);
    if (uni_deg(Rxs) < 1 || uni_deg(Rys) < 1) return Tri::no;

    auto rr = uni_rational_roots(Rxs);
    for (const auto& [x0, mult] : rr.roots) {
        UniPoly hA = A.eval_x(x0);
        UniPoly hB = B.eval_x(x0);
        UniPoly h;
        if (uni_is_zero(hA) && uni_is_zero(hB)) return Tri::yes;
        if (uni_is_zero(hA)) h = hB;
        else if (uni_is_zero(hB)) h = hA;
        else h = uni_gcd(hA, hB);
        if (uni_deg(h) >= 1 && uni_has_nonzero_root(h)) return Tri::yes;
    }
    if (rr.complete && uni_deg(rr.leftover) < 1) return Tri::no;
    return Tri::undecided;
}

// --- component decomposition ----------------------------------------------

struct Component {
    std::vector<unsigned> vars;  // effective variables, ascending
    Polynomial poly;             // terms of g using only those variables
    Component(unsigned n) : poly(n) {}
};

// Splits g into variable-disjoint summands: g has a torus critical point iff
// every component does (partials of untouched variables vanish identically).
std::vector<Component> variable_components(const Polynomial& g) {
    const unsigned n = g.nvars();
    std::vector<unsigned> parent(n);
    for (unsigned i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](unsigned a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    std::vector<bool> used(n, false);
    for (const auto& [e, coeff] : g.terms()) {
        int prev = -1;
        for (unsigned i = 0; i < n; ++i) {
            if (!e[i]) continue;
            used[i] = true;
            if (prev >= 0) parent[find(static_cast<unsigned>(prev))] = find(i);
            prev = static_cast<int>(i);
        }
    }
    std::map<unsigned, Component> comps;
    for (unsigned i = 0; i < n; ++i)
        if (used[i]) {
            auto [it, fresh] = comps.try_emplace(find(i), n);
            it->second.vars.push_back(i);
        }
    for (const auto& [e, coeff] : g.terms()) {
        for (unsigned i = 0; i < n; ++i)
            if (e[i]) {
                comps.at(find(i)).poly.add_term(e, coeff);
                break;
            }
    }
    std::vector<Component> out;
    for (auto& [r, c] : comps) out.push_back(std::move(c));
    return out;
}

// --- heuristic layer --------------------------------------------------------

struct SearchState {
    std::uint64_t budget;
    bool exhausted = false;
};

// Torus critical point of `comp.poly` over F_p, exhaustive over the effective
// variables. Returns true iff a point with all effective coordinates nonzero
// and vanishing gradient exists.
bool torus_search_mod_p(const Component& comp, std::uint64_t p, SearchState& st) {
    const unsigned k = static_cast<unsigned>(comp.vars.size());
    double work = 1;
    for (unsigned i = 0; i < k; ++i) work *= static_cast<double>(p - 1);
    if (work > static_cast<double>(st.budget)) {
        st.exhausted = true;
        return false;
    }
    st.budget -= static_cast<std::uint64_t>(work);

    // Compress to k variables and shift by +1 so the box [0, p-1) covers the
    // torus residues 1..p-1.
    Polynomial gk(k);
    for (const auto& [e, c] : comp.poly.terms()) {
        ExpVec ek(k, 0);
        for (unsigned i = 0; i < k; ++i) ek[i] = e[comp.vars[i]];
        gk.add_term(ek, c);
    }
    std::vector<BigInt> shift(k, 1);
    std::vector<std::vector<BigInt>> T(k, std::vector<BigInt>(k, 0));
    for (unsigned i = 0; i < k; ++i) T[i][i] = 1;
    Polynomial gs = gk.affine_substitute(shift, T);
    std::vector<ModPoly> grads;
    for (unsigned i = 0; i < k; ++i) grads.push_back(ModPoly::reduce(gs.derivative(i), p));
    bool found = false;
    MultiEval ev(std::move(grads), p - 1);
    ev.run([&](const std::vector<std::uint64_t>&, const std::uint64_t* vals) {
        if (found) return;
        for (unsigned i = 0; i < k; ++i)
            if (vals[i]) return;
        found = true;
    });
    return found;
}

// Small-height exact rational critical point on the torus; certifies
// degeneracy when found.
bool rational_certificate(const Component& comp, SearchState& st) {
    const unsigned k = static_cast<unsigned>(comp.vars.size());
    if (k > 4) return false;
    std::vector<Rational> values;
    for (int num = -6; num <= 6; ++num) {
        if (num == 0) continue;
        for (int den = 1; den <= 4; ++den) values.emplace_back(num, den);
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    double work = 1;
    for (unsigned i = 0; i < k; ++i) work *= static_cast<double>(values.size());
    if (work > static_cast<double>(st.budget)) {
        st.exhausted = true;
        return false;
    }
    st.budget -= static_cast<std::uint64_t>(work);

    const unsigned n = comp.poly.nvars();
    std::vector<Polynomial> grads;
    for (unsigned v : comp.vars) grads.push_back(comp.poly.derivative(v));

    std::vector<std::size_t> idx(k, 0);
    std::vector<Rational> point(n, Rational(1));
    for (;;) {
        for (unsigned i = 0; i < k; ++i) point[comp.vars[i]] = values[idx[i]];
        bool zero = true;
        for (const auto& gp : grads) {
            Rational acc = 0;
            for (const auto& [e, c] : gp.terms()) {
                Rational t(c);
                for (unsigned j = 0; j < n; ++j)
                    for (std::uint32_t r = 0; r < e[j]; ++r) t *= point[j];
                acc += t;
            }
            if (acc != 0) { zero = false; break; }
        }
        if (zero) return true;
        unsigned lvl = k;
        for (;;) {
            if (lvl == 0) return false;
            --lvl;
            if (++idx[lvl] < values.size()) break;
            idx[lvl] = 0;
        }
    }
}

// Decides one component. Exact for <= 2 effective variables and for single
// monomials; otherwise heuristic search within the budget.
Tri decide_component(const Component& comp, const NondegOptions& opt, SearchState& st,
                     bool* used_heuristic) {
    if (comp.poly.term_count() == 1) return Tri::no;  // monomial gradient never dies on the torus
    if (comp.vars.size() == 1) {
        unsigned v = comp.vars[0];
        Polynomial d = comp.poly.derivative(v);
        UniPoly h;
        for (const auto& [e, c] : d.terms()) {
            if (h.size() <= e[v]) h.resize(e[v] + 1, Rational(0));
            h[e[v]] += Rational(c);
        }
        uni_trim(h);
        return uni_has_nonzero_root(h) ? Tri::yes : Tri::no;
    }
    if (comp.vars.size() == 2) {
        Tri t = decide_bivariate(comp.poly, comp.vars[0], comp.vars[1]);
        if (t != Tri::undecided) return t;
    }
    // Heuristic: exhaustive torus search mod sampled primes, then an exact
    // small-height certificate attempt.
    *used_heuristic = true;
    bool any_hit = false, any_ran = false;
    for (const auto& plist : {opt.primes, opt.fallback_primes}) {
        for (std::uint64_t p : plist) {
            double work = 1;
            for (std::size_t i = 0; i < comp.vars.size(); ++i) work *= static_cast<double>(p - 1);
            if (work > static_cast<double>(st.budget)) continue;
            any_ran = true;
            if (torus_search_mod_p(comp, p, st)) any_hit = true;
        }
        if (any_ran) break;  // prefer the configured primes; fall back only if none fit
    }
    if (!any_ran) {
        st.exhausted = true;
        return Tri::undecided;
    }
    if (!any_hit) return Tri::no;  // heuristic "no"
    if (rational_certificate(comp, st)) return Tri::yes;
    return Tri::undecided;
}

}  // namespace

NondegVerdict check_nondegenerate(const Polynomial& f, const NondegOptions& opt) {
    std::vector<ExpVec> support = newton_support(f);

    std::vector<std::vector<ExpVec>> faces;
    bool faces_complete = true;
    if (support.size() <= opt.max_support_for_faces) {
        faces = enumerate_face_tight_sets(support, opt.max_support_for_faces);
    } else {
        faces_complete = false;
    }
    // The polyhedron itself counts as a face here.
    faces.push_back(support);

    SearchState st{opt.search_budget};
    bool all_certified_no = true;
    bool any_heuristic_no = false;
    bool any_undecided = false;

    for (const auto& tight : faces) {
        Polynomial ftau = face_polynomial(f, tight);
        auto comps = variable_components(ftau);
        // ftau has a torus critical point iff every component does; one
        // certified component without is enough to clear the face.
        bool no_certified = false, no_heuristic = false, undecided = false, all_yes = true;
        for (const auto& comp : comps) {
            bool used_heuristic = false;
            Tri t = decide_component(comp, opt, st, &used_heuristic);
            if (t == Tri::no) {
                all_yes = false;
                if (used_heuristic) no_heuristic = true;
                else {
                    no_certified = true;
                    break;
                }
            } else if (t == Tri::undecided) {
                all_yes = false;
                undecided = true;
            }
        }
        if (no_certified) continue;
        if (all_yes && !comps.empty()) return NondegVerdict::certified_degenerate;
        if (no_heuristic) {
            any_heuristic_no = true;
            all_certified_no = false;
            continue;
        }
        if (undecided) {
            any_undecided = true;
            all_certified_no = false;
        }
    }

    if (any_undecided || st.exhausted || !faces_complete) return NondegVerdict::unknown;
    if (all_certified_no) return NondegVerdict::certified_nondegenerate;
    if (any_heuristic_no) return NondegVerdict::heuristic_nondegenerate;
    return NondegVerdict::unknown;
}

NewtonData newton_data(const Polynomial& f, const NondegOptions& opt) {
    NewtonData nd;
    nd.support = newton_support(f);
    const unsigned n = f.nvars();

    // Hull vertices: v is extreme iff it is not a convex combination of the
    // other support points.
    for (std::size_t j = 0; j < nd.support.size(); ++j) {
        LinearProgram lp;
        std::size_t k = nd.support.size() - 1;
        if (k == 0) {
            nd.hull_vertices.push_back(nd.support[j]);
            continue;
        }
        lp.c.assign(k, Rational(0));
        for (unsigned i = 0; i < n; ++i) {
            QVector row(k, Rational(0));
            std::size_t t = 0;
            for (std::size_t w = 0; w < nd.support.size(); ++w) {
                if (w == j) continue;
                row[t++] = static_cast<int>(nd.support[w][i]);
            }
            lp.A.push_back(row);
            lp.b.push_back(Rational(static_cast<int>(nd.support[j][i])));
            lp.sense.push_back(ConstraintSense::EQ);
        }
        QVector ones(k, Rational(1));
        lp.A.push_back(ones);
        lp.b.push_back(Rational(1));
        lp.sense.push_back(ConstraintSense::EQ);
        LPSolution sol = solve_lp(lp);
        if (!sol.feasible) nd.hull_vertices.push_back(nd.support[j]);
    }

    nd.sigma = compute_sigma(nd.support);
    nd.diagonal_point.assign(n, Rational(1) / nd.sigma);
    auto [faces, kappa] = diagonal_faces(nd.support, nd.sigma);
    nd.diagonal_faces = std::move(faces);
    nd.kappa = kappa;
    nd.nondegenerate = check_nondegenerate(f, opt);
    return nd;
}

}  // namespace expsum
