#include "qlinalg.hpp"

#include <algorithm>
#include <limits>

namespace expsum {

BigInt int_determinant(const std::vector<std::vector<BigInt>>& m_in) {
    auto m = m_in;
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw DomainError("determinant of non-square matrix");
    if (n == 0) return 1;

    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t piv = n;
            for (std::size_t i = k + 1; i < n; ++i)
                if (m[i][k] != 0) { piv = i; break; }
            if (piv == n) return 0;
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

unsigned qmatrix_rank(QMatrix m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    unsigned rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t piv = rows;
        for (std::size_t i = row; i < rows; ++i)
            if (m[i][col] != 0) { piv = i; break; }
        if (piv == rows) continue;
        std::swap(m[row], m[piv]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == row || m[i][col] == 0) continue;
            Rational f = m[i][col] / m[row][col];
            for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
        }
        ++row;
        ++rank;
    }
    return rank;
}

std::vector<unsigned> elementary_divisor_valuations(std::vector<std::vector<BigInt>> m, const BigInt& p) {
    const std::size_t n = m.size();
    std::vector<unsigned> vals;
    // Smith normal form pivoting restricted to what we need: at each step pick
    // the entry of minimal p-adic valuation, move it to the corner, clear its
    // row and column, recurse on the rest.
    auto valuation = [&p](BigInt v) {
        unsigned k = 0;
        if (v == 0) return std::numeric_limits<unsigned>::max();
        v = abs(v);
        while (v % p == 0) { v /= p; ++k; }
        return k;
    };
    std::size_t start = 0;
    while (start < n) {
        std::size_t bi = n, bj = n;
        unsigned best = std::numeric_limits<unsigned>::max();
        for (std::size_t i = start; i < n; ++i)
            for (std::size_t j = start; j < n; ++j) {
                unsigned v = valuation(m[i][j]);
                if (v < best) { best = v; bi = i; bj = j; }
            }
        if (bi == n) throw DomainError("elementary divisors of singular matrix");
        std::swap(m[start], m[bi]);
        for (auto& row : m) std::swap(row[start], row[bj]);

        // Work p-locally: eliminate using exact integer row/column operations
        // after scaling by units mod a sufficiently high power of p. Simpler:
        // since only valuations matter, reduce other entries by multiples of
        // the pivot until their valuation strictly exceeds the pivot's.
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = start + 1; i < n; ++i) {
                if (m[i][start] == 0) continue;
                unsigned vp = valuation(m[start][start]);
                unsigned vi = valuation(m[i][start]);
                if (vi < vp) {
                    std::swap(m[start], m[i]);
                    changed = true;
                    continue;
                }
                // Cancel the p^vp component: multiply row i by a unit and
                // subtract. q = m[i][start] / m[start][start] is p-integral;
                // use exact rational q and clear denominators prime to p.
                Rational q(m[i][start], m[start][start]);
                BigInt num = boost::multiprecision::numerator(q);
                BigInt den = boost::multiprecision::denominator(q);  // prime to p
                for (std::size_t j = start; j < n; ++j)
                    m[i][j] = den * m[i][j] - num * m[start][j];
            }
            for (std::size_t j = start + 1; j < n; ++j) {
                if (m[start][j] == 0) continue;
                unsigned vp = valuation(m[start][start]);
                unsigned vj = valuation(m[start][j]);
                if (vj < vp) {
                    for (auto& row : m) std::swap(row[start], row[j]);
                    changed = true;
                    continue;
                }
                Rational q(m[start][j], m[start][start]);
                BigInt num = boost::multiprecision::numerator(q);
                BigInt den = boost::multiprecision::denominator(q);
                for (std::size_t i = start; i < n; ++i)
                    m[i][j] = den * m[i][j] - num * m[i][start];
            }
        }
        vals.push_back(valuation(m[start][start]));
        ++start;
    }
    std::sort(vals.begin(), vals.end());
    return vals;
}

QVector kernel_vector(QMatrix m, unsigned ncols) {
    const std::size_t rows = m.size();
    // Row-reduce, track pivot columns.
    std::vector<int> pivot_of_col(ncols, -1);
    std::size_t row = 0;
    for (unsigned col = 0; col < ncols && row < rows; ++col) {
        std::size_t piv = rows;
        for (std::size_t i = row; i < rows; ++i)
            if (m[i][col] != 0) { piv = i; break; }
        if (piv == rows) continue;
        std::swap(m[row], m[piv]);
        Rational d = m[row][col];
        for (unsigned j = 0; j < ncols; ++j) m[row][j] /= d;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == row || m[i][col] == 0) continue;
            Rational f = m[i][col];
            for (unsigned j = 0; j < ncols; ++j) m[i][j] -= f * m[row][j];
        }
        pivot_of_col[col] = static_cast<int>(row);
        ++row;
    }
    std::vector<unsigned> free_cols;
    for (unsigned c = 0; c < ncols; ++c)
        if (pivot_of_col[c] < 0) free_cols.push_back(c);
    if (free_cols.size() != 1) return {};
    QVector x(ncols, Rational(0));
    unsigned fc = free_cols[0];
    x[fc] = 1;
    for (unsigned c = 0; c < ncols; ++c) {
        if (pivot_of_col[c] < 0) continue;
        x[c] = -m[static_cast<std::size_t>(pivot_of_col[c])][fc];
    }
    return x;
}

}  // namespace expsum
