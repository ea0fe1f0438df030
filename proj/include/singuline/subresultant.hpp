#pragma once

#include <vector>

#include "singuline/bipoly.hpp"
#include "singuline/mpoly.hpp"

namespace singuline {

// Polynomial in one main variable with BiPoly coefficients; index = exponent.
// Trimmed: back() is nonzero. Empty vector is the zero polynomial.
using ZPoly = std::vector<BiPoly>;

int zdeg(const ZPoly& a);
const BiPoly& zlc(const ZPoly& a);
ZPoly ztrim(ZPoly a);
ZPoly zneg(const ZPoly& a);
ZPoly zscale(const ZPoly& a, const BiPoly& s);
ZPoly zdiv_exact(const ZPoly& a, const BiPoly& s);
ZPoly zsub(const ZPoly& a, const ZPoly& b);

// Fraction-free pseudo-remainder rem(lc(B)^(deg A - deg B + 1) * A, B).
// pre: deg A >= deg B >= 0.
ZPoly prem(const ZPoly& A, const ZPoly& B);

// Coefficients of the bottom subresultants S_2 = s22 m^2 + s21 m + s20,
// S_1 = s11 m + s10, f = S_0 of (A, B) in the main variable m.
struct ChainBottom {
    BiPoly s22, s21, s20, s11, s10, f;
};

// Subresultant PRS consistent with the determinantal definition for
// deg A != deg B. Equal degrees p reduce through B0 = lc(B)A - lc(A)B:
// S_j = (-1)^(p-j) lc(B)^(j-e0) S_j(B, B0) for j <= e0 = deg B0, zero in the
// defective gap, S_(p-1) = -B0; at p = 2 the top pair is the convention
// (S_2, S_1) = (lc(B)B, lc(B)(lc(A)B - lc(B)A)), which keeps the quadratic
// identity s22^2 f = s22 s10^2 - s21 s11 s10 + s20 s11^2 exact.
// Degenerate inputs: zero polynomial gives all-zero output; two constants give
// f = 1; one constant c against degree-d gives f = c^d and zero elsewhere.
ChainBottom subres_bottom(const ZPoly& A, const ZPoly& B);

struct SubresultantData {
    MPoly f;
    MPoly s10, s11;
    MPoly s20, s21, s22;
    int deg_z_P = 0;
    int deg_z_Q = 0;
    // f == res_scalar * Res_z(P, Q) over the original rational coefficients.
    mpq_class res_scalar = 1;
};

// pre: deg_z(P) >= 3 and deg_z(Q) >= 2, or deg_z(P) == deg_z(Q) == 2;
// DegreeTooLow otherwise (also for proportional equal-degree inputs).
// The quadratic identity is re-verified exactly at construction.
SubresultantData subresultant_chain(const MPoly& P, const MPoly& Q);

// Chain data for the assumption checker at any z-degrees with
// max(deg_z P, deg_z Q) >= 1. Inputs are swapped so the first degree
// dominates; where the PRS preconditions hold this is subresultant_chain,
// otherwise determinantal subresultants fill in and indices that do not
// exist at these degrees are zero (so the corresponding checks never
// discharge). Signs may differ from the PRS convention; every consumer
// below only uses zero sets, root ratios, and quadratic root sets, all of
// which are sign-invariant.
SubresultantData checker_chain(const MPoly& P, const MPoly& Q);

// Splits by powers of z after clearing denominators; multiplier reports the
// applied scaling (integer >= 1).
ZPoly zpoly_from_mpoly(const MPoly& p, mpz_class& multiplier);

MPoly zpoly_to_mpoly(const ZPoly& a);

} // namespace singuline
