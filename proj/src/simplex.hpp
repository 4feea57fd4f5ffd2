#pragma once

#include <optional>
#include <vector>

#include "common.hpp"
#include "qlinalg.hpp"

namespace expsum {

// Small exact-rational linear programs in the form
//
//   minimize c.x  subject to  A x (<=|=|>=) b,  x >= 0
//
// solved by two-phase textbook simplex with Bland's rule. Instances here have
// a handful of variables and constraints, so exactness beats speed.

enum class ConstraintSense { LE, GE, EQ };

struct LinearProgram {
    QMatrix A;
    QVector b;
    QVector c;
    std::vector<ConstraintSense> sense;
};

struct LPSolution {
    bool feasible = false;
    bool bounded = true;
    Rational objective;
    QVector x;
};

LPSolution solve_lp(const LinearProgram& lp);

}  // namespace expsum
