#include "poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "qlinalg.hpp"

namespace expsum {

Polynomial::Polynomial(unsigned nvars, TermMap terms) : nvars_(nvars), terms_(std::move(terms)) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->first.size() != nvars_) throw DomainError("exponent vector length mismatch");
        if (it->second == 0)
            it = terms_.erase(it);
        else
            ++it;
    }
}

Polynomial Polynomial::constant(unsigned nvars, const BigInt& c) {
    Polynomial p(nvars);
    if (c != 0) p.terms_[ExpVec(nvars, 0)] = c;
    return p;
}

Polynomial Polynomial::monomial(unsigned nvars, const ExpVec& e, const BigInt& c) {
    if (e.size() != nvars) throw DomainError("exponent vector length mismatch");
    Polynomial p(nvars);
    if (c != 0) p.terms_[e] = c;
    return p;
}

Polynomial Polynomial::variable(unsigned nvars, unsigned index) {
    if (index >= nvars) throw DomainError("variable index out of range");
    ExpVec e(nvars, 0);
    e[index] = 1;
    return monomial(nvars, e, 1);
}

unsigned Polynomial::degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max<unsigned>(d, static_cast<unsigned>(total_degree(e)));
    return d;
}

BigInt Polynomial::constant_term() const {
    auto it = terms_.find(ExpVec(nvars_, 0));
    return it == terms_.end() ? BigInt(0) : it->second;
}

BigInt Polynomial::coeff(const ExpVec& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? BigInt(0) : it->second;
}

void Polynomial::add_term(const ExpVec& e, const BigInt& c) {
    if (e.size() != nvars_) throw DomainError("exponent vector length mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    if (nvars_ != o.nvars_) throw DomainError("variable count mismatch");
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    if (nvars_ != o.nvars_) throw DomainError("variable count mismatch");
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (nvars_ != o.nvars_) throw DomainError("variable count mismatch");
    Polynomial r(nvars_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            ExpVec e(nvars_);
            for (unsigned i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Polynomial Polynomial::pow(unsigned k) const {
    Polynomial r = constant(nvars_, 1);
    Polynomial base = *this;
    while (k) {
        if (k & 1) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

Polynomial Polynomial::derivative(unsigned i) const {
    if (i >= nvars_) throw DomainError("variable index out of range");
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[i] == 0) continue;
        ExpVec d = e;
        d[i] -= 1;
        r.add_term(d, c * e[i]);
    }
    return r;
}

std::vector<Polynomial> Polynomial::gradient() const {
    std::vector<Polynomial> g;
    g.reserve(nvars_);
    for (unsigned i = 0; i < nvars_; ++i) g.push_back(derivative(i));
    return g;
}

Polynomial Polynomial::homogeneous_part(unsigned k) const {
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_)
        if (total_degree(e) == k) r.terms_[e] = c;
    return r;
}

bool Polynomial::is_homogeneous() const {
    if (terms_.empty()) return true;
    std::uint64_t d = total_degree(terms_.begin()->first);
    for (const auto& [e, c] : terms_)
        if (total_degree(e) != d) return false;
    return true;
}

Polynomial Polynomial::affine_substitute(const std::vector<BigInt>& shift,
                                         const std::vector<std::vector<BigInt>>& T) const {
    if (shift.size() != nvars_ || T.size() != nvars_) throw DomainError("dimension mismatch");
    for (const auto& row : T)
        if (row.size() != nvars_) throw DomainError("dimension mismatch");
    if (int_determinant(T) == 0) throw DomainError("substitution matrix is singular");

    // Images of the variables: x_j -> shift_j + sum_k T[j][k] y_k.
    std::vector<Polynomial> image;
    image.reserve(nvars_);
    for (unsigned j = 0; j < nvars_; ++j) {
        Polynomial lin = constant(nvars_, shift[j]);
        for (unsigned k = 0; k < nvars_; ++k) {
            if (T[j][k] == 0) continue;
            ExpVec e(nvars_, 0);
            e[k] = 1;
            lin.add_term(e, T[j][k]);
        }
        image.push_back(lin);
    }

    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_) {
        Polynomial t = constant(nvars_, c);
        for (unsigned j = 0; j < nvars_; ++j)
            if (e[j]) t = t * image[j].pow(e[j]);
        r = r + t;
    }
    return r;
}

BigInt Polynomial::eval(const std::vector<BigInt>& point) const {
    if (point.size() != nvars_) throw DomainError("dimension mismatch");
    BigInt acc = 0;
    for (const auto& [e, c] : terms_) {
        BigInt t = c;
        for (unsigned j = 0; j < nvars_; ++j)
            for (std::uint32_t k = 0; k < e[j]; ++k) t *= point[j];
        acc += t;
    }
    return acc;
}

std::uint64_t Polynomial::eval_mod(const std::vector<std::uint64_t>& point, std::uint64_t m) const {
    if (point.size() != nvars_) throw DomainError("dimension mismatch");
    if (m == 0) throw DomainError("modulus must be positive");
    if (m == 1) return 0;
    std::uint64_t acc = 0;
    for (const auto& [e, c] : terms_) {
        std::uint64_t t = reduce_mod(c, m);
        for (unsigned j = 0; j < nvars_; ++j)
            if (e[j]) t = mulmod_u64(t, powmod_u64(point[j] % m, e[j], m), m);
        acc = (acc + t) % m;
    }
    return acc;
}

BigInt Polynomial::max_abs_coeff() const {
    BigInt m = 0;
    for (const auto& [e, c] : terms_) m = std::max(m, BigInt(abs(c)));
    return m;
}

std::string Polynomial::render(const std::vector<std::string>& var_names) const {
    if (var_names.size() != nvars_) throw DomainError("variable name count mismatch");
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        BigInt a = c;
        if (first) {
            if (a < 0) { out << "-"; a = -a; }
            first = false;
        } else {
            if (a < 0) { out << " - "; a = -a; }
            else out << " + ";
        }
        bool has_var = total_degree(e) > 0;
        if (!has_var) {
            out << a.str();
            continue;
        }
        bool printed = false;
        if (a != 1) { out << a.str(); printed = true; }
        for (unsigned j = 0; j < nvars_; ++j) {
            if (e[j] == 0) continue;
            if (printed) out << "*";
            out << var_names[j];
            if (e[j] > 1) out << "^" << e[j];
            printed = true;
        }
    }
    return out.str();
}

namespace {

struct Lexer {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }
};

BigInt lex_integer(Lexer& lx) {
    lx.skip_ws();
    std::size_t start = lx.pos;
    std::string digits;
    while (lx.pos < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.pos])))
        digits += lx.s[lx.pos++];
    if (digits.empty()) throw ParseError(start, "expected integer");
    return BigInt(digits);
}

std::uint32_t lex_exponent(Lexer& lx) {
    lx.skip_ws();
    std::size_t start = lx.pos;
    BigInt v = lex_integer(lx);
    if (v > BigInt(1) << 31) throw ParseError(start, "exponent overflow");
    return static_cast<std::uint32_t>(v);
}

std::string lex_identifier(Lexer& lx) {
    lx.skip_ws();
    std::size_t start = lx.pos;
    std::string name;
    while (lx.pos < lx.s.size() &&
           (std::isalnum(static_cast<unsigned char>(lx.s[lx.pos])) || lx.s[lx.pos] == '_'))
        name += lx.s[lx.pos++];
    if (name.empty() || std::isdigit(static_cast<unsigned char>(name[0])))
        throw ParseError(start, "expected variable name");
    return name;
}

// product := factor ('*' factor)*; factor := integer | var ('^' exp)?
void parse_product(Lexer& lx, const std::vector<std::string>& vars, BigInt& coeff, ExpVec& exps) {
    for (;;) {
        lx.skip_ws();
        std::size_t start = lx.pos;
        char c = lx.peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            coeff *= lex_integer(lx);
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name = lex_identifier(lx);
            auto it = std::find(vars.begin(), vars.end(), name);
            if (it == vars.end()) throw ParseError(start, "unknown variable '" + name + "'");
            unsigned idx = static_cast<unsigned>(it - vars.begin());
            std::uint32_t e = 1;
            if (lx.accept('^')) e = lex_exponent(lx);
            std::uint64_t ne = static_cast<std::uint64_t>(exps[idx]) + e;
            if (ne > (1ull << 31)) throw ParseError(start, "exponent overflow");
            exps[idx] = static_cast<std::uint32_t>(ne);
        } else {
            throw ParseError(lx.pos, "expected coefficient or variable");
        }
        if (!lx.accept('*')) break;
    }
}

}  // namespace

Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& var_names) {
    Lexer lx{text};
    Polynomial p(static_cast<unsigned>(var_names.size()));
    bool first = true;
    while (!lx.eof()) {
        BigInt sign = 1;
        if (lx.accept('-')) sign = -1;
        else if (lx.accept('+')) {
            if (first) throw ParseError(lx.pos, "leading '+' not allowed");
        } else if (!first) {
            throw ParseError(lx.pos, "expected '+' or '-'");
        }
        if (lx.eof()) throw ParseError(lx.pos, "dangling sign");

        bool parenthesized = lx.accept('(');
        BigInt coeff = sign;
        ExpVec exps(var_names.size(), 0);
        parse_product(lx, var_names, coeff, exps);
        if (parenthesized && !lx.accept(')')) throw ParseError(lx.pos, "expected ')'");
        p.add_term(exps, coeff);
        first = false;
    }
    if (first) throw ParseError(0, "empty input");
    return p;
}

QuadraticDiagonalization diagonalize_quadratic(const Polynomial& f2) {
    const unsigned n = f2.nvars();
    if (!f2.is_zero() && (!f2.is_homogeneous() || f2.degree() != 2))
        throw DomainError("input is not homogeneous of degree 2");

    // Doubled Gram matrix keeps everything integral: G[i][j] = coeff of x_i x_j
    // for i != j, G[i][i] = 2 * coeff of x_i^2, so f2(x) = x^T G x / 2.
    QMatrix G(n, QVector(n, Rational(0)));
    for (const auto& [e, c] : f2.terms()) {
        std::vector<unsigned> idx;
        for (unsigned i = 0; i < n; ++i)
            for (std::uint32_t k = 0; k < e[i]; ++k) idx.push_back(i);
        if (idx[0] == idx[1]) G[idx[0]][idx[0]] = Rational(2 * c);
        else G[idx[0]][idx[1]] = G[idx[1]][idx[0]] = Rational(c);
    }

    // Symmetric Gauss over Q: accumulate column operations into T so that
    // T^t G T is diagonal.
    QMatrix T(n, QVector(n, Rational(0)));
    for (unsigned i = 0; i < n; ++i) T[i][i] = 1;

    for (unsigned k = 0; k < n; ++k) {
        if (G[k][k] == 0) {
            // Find a usable pivot: a later diagonal entry, else an off-diagonal
            // partner column to fold in.
            unsigned swap = n;
            for (unsigned j = k + 1; j < n; ++j)
                if (G[j][j] != 0) { swap = j; break; }
            if (swap < n) {
                for (unsigned i = 0; i < n; ++i) std::swap(G[i][k], G[i][swap]);
                std::swap(G[k], G[swap]);
                for (unsigned i = 0; i < n; ++i) std::swap(T[i][k], T[i][swap]);
            } else {
                unsigned j = n;
                for (unsigned c = k + 1; c < n; ++c)
                    if (G[k][c] != 0) { j = c; break; }
                if (j == n) continue;  // row is entirely zero: degenerate direction
                // col_k += col_j (and symmetric row op) makes G[k][k] = 2 G[k][j] != 0.
                for (unsigned i = 0; i < n; ++i) G[i][k] += G[i][j];
                for (unsigned c = 0; c < n; ++c) G[k][c] += G[j][c];
                for (unsigned i = 0; i < n; ++i) T[i][k] += T[i][j];
            }
        }
        if (G[k][k] == 0) continue;
        for (unsigned j = k + 1; j < n; ++j) {
            if (G[k][j] == 0) continue;
            Rational factor = G[k][j] / G[k][k];
            for (unsigned i = 0; i < n; ++i) G[i][j] -= factor * G[i][k];
            for (unsigned c = 0; c < n; ++c) G[j][c] -= factor * G[k][c];
            for (unsigned i = 0; i < n; ++i) T[i][j] -= factor * T[i][k];
        }
    }

    // Clear denominators column by column.
    QuadraticDiagonalization out;
    out.T.assign(n, std::vector<BigInt>(n, 0));
    out.diag.assign(n, 0);
    for (unsigned j = 0; j < n; ++j) {
        BigInt den = 1;
        for (unsigned i = 0; i < n; ++i)
            den = lcm(den, boost::multiprecision::denominator(T[i][j]));
        for (unsigned i = 0; i < n; ++i) {
            Rational v = T[i][j] * den;
            out.T[i][j] = boost::multiprecision::numerator(v);
        }
        Rational a = G[j][j] * den * den / 2;
        out.diag[j] = boost::multiprecision::numerator(a);  // integral by construction
    }

    BigInt det = int_determinant(out.T);
    if (det == 0) throw DomainError("diagonalization produced singular matrix");

    // Box detection at each prime dividing det(T): elementary divisors of T at
    // p must all share one valuation e_p.
    BigInt adet = abs(det);
    for (BigInt p = 2; p * p <= adet || adet > 1; ++p) {
        if (p * p > adet && adet > 1) p = adet;
        if (adet % p != 0) continue;
        while (adet % p == 0) adet /= p;
        std::uint64_t pu = static_cast<std::uint64_t>(p);
        auto vals = elementary_divisor_valuations(out.T, p);
        bool box = true;
        for (unsigned i = 1; i < vals.size(); ++i)
            if (vals[i] != vals[0]) box = false;
        if (box) out.box_exponent[pu] = vals[0];
        else out.non_box_primes.push_back(pu);
    }
    return out;
}

}  // namespace expsum
