#pragma once

#include <utility>
#include <vector>

#include <gmpxx.h>

#include "singuline/mpoly.hpp"

namespace singuline {

// Closed interval with exact rational endpoints.
struct RatInterval {
    mpq_class lo = 0;
    mpq_class hi = 0;

    RatInterval() = default;
    RatInterval(mpq_class l, mpq_class h) : lo(std::move(l)), hi(std::move(h)) {}

    mpq_class width() const { return hi - lo; }
    mpq_class mid() const { return (lo + hi) / 2; }
    bool contains(const mpq_class& v) const { return lo <= v && v <= hi; }
    bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
    bool is_point() const { return lo == hi; }
};

// Dense univariate polynomial with exact rational coefficients.
// Canonical form: empty coefficient vector for zero, nonzero leading
// coefficient otherwise.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<mpq_class> coeffs); // coeffs[k] multiplies t^k

    static UPoly constant(const mpq_class& v);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<mpq_class>& coeffs() const { return c_; }
    const mpq_class& operator[](int k) const { return c_[static_cast<size_t>(k)]; }
    const mpq_class& lc() const { return c_.back(); }

    UPoly operator+(const UPoly& o) const;
    UPoly operator-(const UPoly& o) const;
    UPoly operator-() const;
    UPoly operator*(const UPoly& o) const;
    UPoly scaled(const mpq_class& s) const;

    mpq_class eval(const mpq_class& t) const;

    bool operator==(const UPoly&) const = default;

private:
    std::vector<mpq_class> c_;
};

UPoly derivative(const UPoly& p);

// Exact division with remainder over the rationals: p = q*d + r, deg r < deg d.
std::pair<UPoly, UPoly> divmod(const UPoly& p, const UPoly& d);

// Monic gcd over the rationals (zero when both inputs are zero). Large inputs
// go through a modular image/CRT/verify route; small ones through a primitive
// remainder sequence.
UPoly gcd(const UPoly& a, const UPoly& b);

// p / gcd(p, p'): same real roots, all simple.
UPoly squarefree_part(const UPoly& p);

// Exact range enclosure of p over iv (interval Horner, rational endpoints).
RatInterval eval_range(const UPoly& p, const RatInterval& iv);

// Isolating intervals, one per distinct real root of squarefree p in the
// closed range. Rational roots may come back as point intervals; all other
// intervals contain exactly one root strictly inside and have nonzero values
// of p at both endpoints.
std::vector<RatInterval> sturm_isolate(const UPoly& p, const RatInterval& range);

// Number of distinct real roots of p in the closed range (p need not be
// squarefree).
int count_roots_in_range(const UPoly& p, const RatInterval& range);

// Shrink an isolating interval below the target width by exact bisection.
RatInterval refine_root(const UPoly& p, RatInterval iv, const mpq_class& target_width);

// Isolating intervals for all distinct real roots of p in the closed range.
// The input need not be squarefree; each root is reported once. Dispatches
// between Sturm chains and Descartes bisection by degree.
std::vector<RatInterval> isolate_real_roots(const UPoly& p, const RatInterval& range);

// Bottom of the subresultant chain of a z-free pair with respect to y, in the
// determinantal normalization: res = S_0 = Res_y(g, h) and S_1 = s11*y + s10.
// Values are those of the denominator-cleared integer pair (each input scaled
// by the lcm of its coefficient denominators), computed modularly and lifted
// exactly.
struct FirstSubresultant {
    UPoly res, s11, s10;
};
FirstSubresultant first_subresultant_y(const MPoly& g, const MPoly& h);

// Resultant of g and h with respect to y (both z-free), a polynomial in x,
// computed by modular evaluation/interpolation; exact up to a positive
// rational scaling of the inputs (callers use its zero set only).
UPoly eliminant_y(const MPoly& g, const MPoly& h);
// Same with the roles of x and y exchanged: a polynomial in y.
UPoly eliminant_x(const MPoly& g, const MPoly& h);

// Coefficient of y^k as a univariate polynomial in x; ArityMismatch if p
// involves z.
std::vector<UPoly> y_coefficients(const MPoly& p);
std::vector<UPoly> x_coefficients(const MPoly& p);

} // namespace singuline
