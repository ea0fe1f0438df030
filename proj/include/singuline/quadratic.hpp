#pragma once

#include <vector>

#include "singuline/box.hpp"

namespace singuline {

// Enclosures of both complex roots of a z^2 + b z + c where a, b, c are real
// intervals with 0 not in a. Returns at most two rectangular complex boxes
// whose union covers every root of every member polynomial; real roots appear
// with im containing 0. When the discriminant straddles zero each returned
// box is the hull of one real-root candidate and one conjugate candidate.
template <class IV>
std::vector<ComplexBoxT<IV>> complex_quadratic_enclosure(const IV& a, const IV& b, const IV& c) {
    if (a.contains_zero())
        raise(ErrorCode::LeadingContainsZero, "quadratic leading coefficient straddles zero");
    IV four = IV::from_double(4);
    IV D = IV::square(b) - four * a * c;
    IV twoa = IV::from_double(2) * a;
    bool has_real = !D.is_negative();    // D.hi >= 0
    bool has_complex = !D.is_positive(); // D.lo <= 0
    std::vector<ComplexBoxT<IV>> out;
    ComplexBoxT<IV> real_p, real_m, cplx_p, cplx_m;
    if (has_real) {
        IV s = IV::sqrt_nonneg(IV::max_with_zero(D));
        real_p = {(-b + s) / twoa, IV::from_double(0)};
        real_m = {(-b - s) / twoa, IV::from_double(0)};
    }
    if (has_complex) {
        IV s = IV::sqrt_nonneg(IV::max_with_zero(-D));
        IV re = -b / twoa;
        IV t = s / twoa;
        cplx_p = {re, t};
        cplx_m = {re, -t};
    }
    if (has_real && has_complex) {
        out.push_back({IV::hull(real_p.re, cplx_p.re), IV::hull(real_p.im, cplx_p.im)});
        out.push_back({IV::hull(real_m.re, cplx_m.re), IV::hull(real_m.im, cplx_m.im)});
    } else if (has_real) {
        out.push_back(real_p);
        out.push_back(real_m);
    } else {
        out.push_back(cplx_p);
        out.push_back(cplx_m);
    }
    return out;
}

} // namespace singuline
