#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "singuline/mpoly.hpp"

namespace singuline {

// Dense bivariate polynomial over Z, row-major coefficient grid:
// coefficient of x^i y^j sits at c[i*ny + j]. Zero polynomial has nx = ny = 0.
// Trimmed on construction: top row and column are nonzero.
// Multiplication packs both operands into single integers (Kronecker
// substitution with balanced digits) and runs one mpz multiplication.
class BiPoly {
public:
    BiPoly() = default;
    BiPoly(int nx, int ny, std::vector<mpz_class> c);

    static BiPoly constant(const mpz_class& v);
    // Clears denominators; on return p == to_mpoly()/denominator, denominator >= 1.
    static BiPoly from_mpoly(const MPoly& p, mpz_class& denominator);

    bool is_zero() const { return nx_ == 0; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    int deg_x() const { return nx_ - 1; }
    int deg_y() const { return ny_ - 1; }

    const mpz_class& coeff(int i, int j) const;
    const std::vector<mpz_class>& coeffs() const { return c_; }

    bool operator==(const BiPoly&) const = default;

    BiPoly operator+(const BiPoly& o) const;
    BiPoly operator-(const BiPoly& o) const;
    BiPoly operator-() const;
    BiPoly operator*(const BiPoly& o) const;
    BiPoly scaled(const mpz_class& s) const;
    BiPoly pow(unsigned e) const;

    // Quotient of an exact division; Internal error when this is not a multiple
    // of d. Every accepted quotient is re-verified by a sound multiplication.
    BiPoly exact_div(const BiPoly& d) const;

    // Swap the roles of x and y.
    BiPoly transpose() const;

    mpz_class max_abs() const;
    mpq_class eval(const mpq_class& x, const mpq_class& y) const;
    MPoly to_mpoly() const;
    std::string to_string() const;

private:
    int nx_ = 0;
    int ny_ = 0;
    std::vector<mpz_class> c_;

    void trim();
};

} // namespace singuline
