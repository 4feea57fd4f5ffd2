#pragma once

#include <vector>

#include "common.hpp"

namespace expsum {

using QVector = std::vector<Rational>;
using QMatrix = std::vector<QVector>;

// Exact determinant of a square integer matrix (fraction-free Bareiss).
BigInt int_determinant(const std::vector<std::vector<BigInt>>& m);

// Rank of a rational matrix by Gaussian elimination.
unsigned qmatrix_rank(QMatrix m);

// p-adic valuations of the elementary divisors (Smith normal form diagonal)
// of an integer matrix with nonzero determinant, ascending.
std::vector<unsigned> elementary_divisor_valuations(std::vector<std::vector<BigInt>> m, const BigInt& p);

// Solves the homogeneous system M x = 0 for a one-dimensional kernel; returns
// a nonzero rational kernel vector, or empty if the kernel dimension is not 1.
QVector kernel_vector(QMatrix m, unsigned ncols);

}  // namespace expsum
