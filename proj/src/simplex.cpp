#include "simplex.hpp"

namespace expsum {

namespace {

// Tableau simplex on the standard-form problem min c.x, Ax = b, x >= 0 with
// b >= 0. `basis` holds the basic variable of each row. Bland's rule.
// Returns false if unbounded.
bool simplex_iterate(QMatrix& T, std::vector<std::size_t>& basis, QVector& cost, Rational& obj) {
    const std::size_t rows = T.size();
    const std::size_t cols = rows ? T[0].size() : 0;  // includes rhs column
    for (;;) {
        std::size_t enter = cols;
        for (std::size_t j = 0; j + 1 < cols; ++j) {
            if (cost[j] < 0) { enter = j; break; }
        }
        if (enter == cols) return true;  // optimal
        std::size_t leave = rows;
        Rational best_ratio;
        for (std::size_t i = 0; i < rows; ++i) {
            if (T[i][enter] <= 0) continue;
            Rational ratio = T[i][cols - 1] / T[i][enter];
            if (leave == rows || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == rows) return false;  // unbounded
        // Pivot.
        Rational piv = T[leave][enter];
        for (std::size_t j = 0; j < cols; ++j) T[leave][j] /= piv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == leave || T[i][enter] == 0) continue;
            Rational f = T[i][enter];
            for (std::size_t j = 0; j < cols; ++j) T[i][j] -= f * T[leave][j];
        }
        Rational f = cost[enter];
        for (std::size_t j = 0; j + 1 < cols; ++j) cost[j] -= f * T[leave][j];
        obj -= f * T[leave][cols - 1];
        basis[leave] = enter;
    }
}

}  // namespace

LPSolution solve_lp(const LinearProgram& lp) {
    const std::size_t m = lp.A.size();
    const std::size_t n = lp.c.size();

    // Standard form: one slack or surplus per inequality, then artificials
    // where the initial slack basis is unusable.
    std::size_t nslack = 0;
    for (auto s : lp.sense)
        if (s != ConstraintSense::EQ) ++nslack;

    QMatrix T(m, QVector(n + nslack + m + 1, Rational(0)));
    std::vector<std::size_t> basis(m);
    std::size_t slack_at = n;
    std::size_t art_at = n + nslack;
    std::size_t nart = 0;

    for (std::size_t i = 0; i < m; ++i) {
        Rational bi = lp.b[i];
        int flip = bi < 0 ? -1 : 1;
        for (std::size_t j = 0; j < n; ++j) T[i][j] = flip * lp.A[i][j];
        T[i].back() = flip * bi;
        ConstraintSense s = lp.sense[i];
        if (flip < 0) {
            if (s == ConstraintSense::LE) s = ConstraintSense::GE;
            else if (s == ConstraintSense::GE) s = ConstraintSense::LE;
        }
        bool need_art = true;
        if (s != ConstraintSense::EQ) {
            Rational coef = (s == ConstraintSense::LE) ? 1 : -1;
            T[i][slack_at] = coef;
            if (s == ConstraintSense::LE) {
                basis[i] = slack_at;
                need_art = false;
            }
            ++slack_at;
        }
        if (need_art) {
            T[i][art_at + nart] = 1;
            basis[i] = art_at + nart;
            ++nart;
        }
    }
    const std::size_t total = n + nslack + nart;
    // Trim unused artificial columns (keep rhs last).
    for (auto& row : T) {
        row[total] = row[n + nslack + m];
        row.resize(total + 1);
    }

    LPSolution sol;

    if (nart > 0) {
        // Phase 1: minimize the sum of artificials.
        QVector cost(total, Rational(0));
        Rational obj = 0;
        for (std::size_t j = art_at; j < art_at + nart; ++j) cost[j] = 1;
        for (std::size_t i = 0; i < m; ++i) {
            if (basis[i] >= art_at) {
                for (std::size_t j = 0; j < total; ++j) cost[j] -= T[i][j];
                obj -= T[i].back();
            }
        }
        if (!simplex_iterate(T, basis, cost, obj)) return sol;
        if (obj != 0) return sol;  // infeasible
        // Drive any artificial still basic (at zero level) out of the basis.
        for (std::size_t i = 0; i < m; ++i) {
            if (basis[i] < art_at) continue;
            std::size_t enter = total;
            for (std::size_t j = 0; j < art_at; ++j)
                if (T[i][j] != 0) { enter = j; break; }
            if (enter == total) continue;  // redundant row
            Rational piv = T[i][enter];
            for (std::size_t j = 0; j <= total; ++j) T[i][j] /= piv;
            for (std::size_t k = 0; k < m; ++k) {
                if (k == i || T[k][enter] == 0) continue;
                Rational f = T[k][enter];
                for (std::size_t j = 0; j <= total; ++j) T[k][j] -= f * T[i][j];
            }
            basis[i] = enter;
        }
    }

    // Drop artificial columns entirely; rows where an artificial is still
    // basic are redundant and dropped with them.
    {
        QMatrix T2;
        std::vector<std::size_t> basis2;
        for (std::size_t i = 0; i < T.size(); ++i) {
            if (basis[i] >= art_at) continue;
            QVector row(T[i].begin(), T[i].begin() + art_at);
            row.push_back(T[i].back());
            T2.push_back(std::move(row));
            basis2.push_back(basis[i]);
        }
        T = std::move(T2);
        basis = std::move(basis2);
    }
    const std::size_t width = art_at;

    // Phase 2.
    QVector cost(width, Rational(0));
    Rational obj = 0;
    for (std::size_t j = 0; j < n; ++j) cost[j] = lp.c[j];
    for (std::size_t i = 0; i < T.size(); ++i) {
        if (cost[basis[i]] == 0) continue;
        Rational f = cost[basis[i]];
        for (std::size_t j = 0; j < width; ++j) cost[j] -= f * T[i][j];
        obj -= f * T[i].back();
    }
    if (!simplex_iterate(T, basis, cost, obj)) {
        sol.feasible = true;
        sol.bounded = false;
        return sol;
    }

    sol.feasible = true;
    sol.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < T.size(); ++i)
        if (basis[i] < n) sol.x[basis[i]] = T[i].back();
    sol.objective = 0;
    for (std::size_t j = 0; j < n; ++j) sol.objective += lp.c[j] * sol.x[j];
    return sol;
}

}  // namespace expsum
