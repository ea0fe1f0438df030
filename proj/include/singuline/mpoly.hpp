#pragma once

#include <array>
#include <compare>
#include <map>
#include <string>

#include <gmpxx.h>

#include "singuline/error.hpp"

namespace singuline {

// Exponent triple for a monomial x^ex * y^ey * z^ez.
struct Exp3 {
    int ex = 0;
    int ey = 0;
    int ez = 0;

    auto operator<=>(const Exp3&) const = default;
};

// Sparse trivariate polynomial with exact rational coefficients.
// Canonical form: no zero coefficients stored; equal polynomials compare
// structurally equal. Immutable after construction.
class MPoly {
public:
    using TermMap = std::map<Exp3, mpq_class>;

    MPoly() = default;
    explicit MPoly(TermMap terms);

    static MPoly constant(const mpq_class& v);
    static MPoly variable(char var, int power = 1);

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Degree in each variable; -1 for the zero polynomial.
    int deg_x() const { return degx_; }
    int deg_y() const { return degy_; }
    int deg_z() const { return degz_; }

    mpq_class coeff(const Exp3& e) const;

    bool operator==(const MPoly&) const = default;

    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator-() const;
    MPoly operator*(const MPoly& o) const;
    MPoly scaled(const mpq_class& s) const;

    std::string to_string() const;

private:
    TermMap terms_;
    int degx_ = -1;
    int degy_ = -1;
    int degz_ = -1;
};

// order-th partial derivative with respect to var in {'x','y','z'}; order >= 1.
MPoly derivative(const MPoly& p, char var, int order = 1);

// Coefficient of z^deg_z(P), a polynomial in (x, y). Zero polynomial maps to zero.
MPoly leading_coeff_z(const MPoly& P);

mpq_class eval_exact(const MPoly& p, const std::array<mpq_class, 3>& point);

// Bivariate evaluation; ArityMismatch if p involves z.
mpq_class eval_exact(const MPoly& p, const std::array<mpq_class, 2>& point);

} // namespace singuline
