#include "bounds.hpp"

#include <cmath>

namespace expsum {

const char* bound_name(BoundName b) {
    switch (b) {
        case BoundName::trivial: return "trivial";
        case BoundName::conjecture1: return "conjecture1";
        case BoundName::igusa_homog: return "igusa_homog";
        case BoundName::deligne_squarefree: return "deligne_squarefree";
        case BoundName::cubefree: return "cubefree";
        case BoundName::d2free: return "d2free";
        case BoundName::newton_CAN: return "newton_CAN";
    }
    return "?";
}

std::optional<BoundName> bound_from_name(const std::string& s) {
    for (BoundName b : {BoundName::trivial, BoundName::conjecture1, BoundName::igusa_homog,
                        BoundName::deligne_squarefree, BoundName::cubefree, BoundName::d2free,
                        BoundName::newton_CAN}) {
        if (s == bound_name(b)) return b;
    }
    return std::nullopt;
}

namespace {

double rational_to_double(const Rational& r) {
    return boost::multiprecision::numerator(r).convert_to<double>() /
           boost::multiprecision::denominator(r).convert_to<double>();
}

double npow(std::uint64_t N, const Rational& r) {
    return std::pow(static_cast<double>(N), rational_to_double(r));
}

double ipow_d(double b, unsigned e) {
    double r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace

double bound_conjecture1(unsigned n, int s, unsigned d, std::uint64_t N, const Rational& eps) {
    if (d < 2 || s < 0 || s > static_cast<int>(n) - 1)
        throw DomainError("bound_conjecture1: need d >= 2 and 0 <= s <= n-1");
    Rational r = Rational(static_cast<int>(n) - s, static_cast<int>(d)) - eps;
    return npow(N, -r);
}

double bound_igusa_homog(unsigned n, unsigned d, std::uint64_t p, unsigned m) {
    Rational r(-static_cast<long long>(m) * n, static_cast<long long>(d));
    return npow(p, r);
}

double bound_deligne(unsigned n, int s, unsigned d, std::uint64_t p) {
    unsigned k = n - static_cast<unsigned>(s);
    return ipow_d(static_cast<double>(d - 1), k) * npow(p, Rational(-static_cast<int>(k), 2));
}

double bound_cubefree(unsigned n, int s, unsigned d, std::uint64_t p) {
    unsigned k = n - static_cast<unsigned>(s);
    return ipow_d(static_cast<double>(d - 1), k) * npow(p, Rational(-static_cast<int>(k), 1));
}

double bound_d2free(unsigned n, int s, unsigned d, std::uint64_t N) {
    return npow(N, Rational(-(static_cast<int>(n) - s), static_cast<int>(d)));
}

double bound_newton(const Rational& sigma, unsigned kappa, std::uint64_t p, unsigned m) {
    if (m < 2) throw DomainError("bound_newton applies to m >= 2 only");
    double base = std::pow(static_cast<double>(p), -static_cast<double>(m) * rational_to_double(sigma));
    return base * ipow_d(static_cast<double>(m), kappa - 1);
}

bool verdict_pass(double observed, double predicted, double abs_err) {
    return observed <= predicted * (1.0 + 1e-8) + abs_err;
}

ExponentFit fit_exponent(const std::vector<std::pair<std::uint64_t, double>>& series) {
    ExponentFit out;
    std::vector<std::pair<double, double>> pts;  // (log N, log E)
    for (const auto& [N, e] : series) {
        if (e <= 0.0) {
            ++out.zeros_excluded;
            continue;
        }
        pts.emplace_back(std::log(static_cast<double>(N)), std::log(e));
    }
    if (pts.size() < 3) throw DomainError("fit_exponent: fewer than 3 nonzero points");
    out.points = pts.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double nn = static_cast<double>(pts.size());
    double slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
    double intercept = (sy - slope * sx) / nn;
    out.beta = -slope;
    for (const auto& [x, y] : pts)
        out.max_residual = std::max(out.max_residual, std::abs(y - (slope * x + intercept)));
    return out;
}

bool power_free(std::uint64_t N, unsigned k) {
    if (k < 2) return N == 1;
    for (const auto& [p, e] : factorize_u64(N))
        if (e >= k) return false;
    return true;
}

}  // namespace expsum
