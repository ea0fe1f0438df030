#pragma once

// Subresultants straight from the determinantal definition, evaluated by
// fraction-free (Bareiss) elimination. Cubic in the matrix size with exact
// BiPoly arithmetic; intended for small degrees and cross-checks.

#include <vector>

#include "singuline/subresultant.hpp"

namespace singuline {

BiPoly bareiss_det(std::vector<std::vector<BiPoly>> M);

// S_j(P, Q) as the polynomial-coefficient determinant: q-j rows of shifted P,
// p-j rows of shifted Q, first p+q-2j-1 columns fixed, last column running
// over the z^t coefficient columns for t = 0..j. Valid for p, q >= 1 and
// 0 <= j <= min(p, q), j < max(p, q).
ZPoly detpol_subres(const ZPoly& P, const ZPoly& Q, int j);

} // namespace singuline
