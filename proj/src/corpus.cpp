#include "corpus.hpp"

namespace expsum {

const std::vector<CorpusEntry>& builtin_corpus() {
    static const std::vector<CorpusEntry> entries = {
        {"gauss_x2", "x^2", {"x"}, 1, 2, 0, Rational(1, 2), 1,
         NondegVerdict::certified_nondegenerate,
         "classical Gauss sum; gradient 2x vanishes only at the origin"},
        {"cube_x3", "x^3", {"x"}, 1, 3, 0, Rational(1, 3), 1,
         NondegVerdict::certified_nondegenerate,
         "one-variable monomial; support point (3), diagonal point on the vertex ray"},
        {"diag2_quad", "x^2 + y^2", {"x", "y"}, 2, 2, 0, Rational(1), 1,
         NondegVerdict::certified_nondegenerate,
         "smooth diagonal quadratic; diagonal point (1,1) interior to the edge (2,0)-(0,2)"},
        {"hyperbolic_xy", "x*y", {"x", "y"}, 2, 2, 0, Rational(1), 2,
         NondegVerdict::certified_nondegenerate,
         "single support point (1,1) is the diagonal vertex, codimension 2"},
        {"quad_mixed", "x^2 + x*y + y^2", {"x", "y"}, 2, 2, 0, Rational(1), 1,
         NondegVerdict::certified_nondegenerate,
         "definite quadratic; Hessian determinant 3, critical point only at 0"},
        {"pair_products", "x1*x2 + x3*x4", {"x1", "x2", "x3", "x4"}, 4, 2, 0, Rational(2), 3,
         NondegVerdict::certified_nondegenerate,
         "two disjoint products; tight segment (1,1,0,0)-(0,0,1,1) has dim 1, kappa 3; "
         "s = 0 since the gradient (x2,x1,x4,x3) vanishes only at 0"},
        {"cusp_mix", "x^3 + y^3 + x*y", {"x", "y"}, 2, 3, 0, Rational(1), 2,
         NondegVerdict::certified_degenerate,
         "full polynomial has the torus critical point (-1/3, -1/3); "
         "top part x^3+y^3 is smooth so s = 0; diagonal point (1,1) is a vertex"},
        {"diag4_cubic", "x1^3 + x2^3 + x3^3 + x4^3", {"x1", "x2", "x3", "x4"}, 4, 3, 0,
         Rational(4, 3), 1, NondegVerdict::certified_nondegenerate,
         "smooth diagonal cubic; sigma = n/d, diagonal point interior to the simplex facet"},
        {"diag2_cubic", "x^3 + y^3", {"x", "y"}, 2, 3, 0, Rational(2, 3), 1,
         NondegVerdict::certified_nondegenerate,
         "smooth diagonal cubic in two variables; diagonal point (3/2,3/2) on the edge"},
        {"whitney_x2y", "x^2*y", {"x", "y"}, 2, 3, 1, Rational(1, 2), 1,
         NondegVerdict::certified_nondegenerate,
         "gradient (2xy, x^2) vanishes on the line x = 0, so s = 1; "
         "single support point (2,1), diagonal point (2,2) on its vertical ray"},
        {"diag4_quad", "x1^2 + x2^2 + x3^2 + x4^2", {"x1", "x2", "x3", "x4"}, 4, 2, 0,
         Rational(1), 1, NondegVerdict::certified_nondegenerate,
         "smooth diagonal quadratic in four variables"},
        {"binom_cube", "x^3 + 3*x^2*y + 3*x*y^2 + y^3", {"x", "y"}, 2, 3, 1, Rational(2, 3), 1,
         NondegVerdict::certified_degenerate,
         "(x+y)^3: gradient vanishes on the line x+y = 0 (s = 1, torus points included); "
         "support is the full edge (3,0)-(0,3)"},
        {"diag3_cubic", "x^3 + y^3 + z^3", {"x", "y", "z"}, 3, 3, 0, Rational(1), 1,
         NondegVerdict::certified_nondegenerate,
         "smooth diagonal cubic in three variables; sigma = n/d = 1"},
        {"diag2_quartic", "x^4 + y^4", {"x", "y"}, 2, 4, 0, Rational(1, 2), 1,
         NondegVerdict::certified_nondegenerate,
         "smooth diagonal quartic; sigma = n/d = 1/2 with equality in the sigma lower bound"},
    };
    return entries;
}

}  // namespace expsum
