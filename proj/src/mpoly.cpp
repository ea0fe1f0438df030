#include "singuline/mpoly.hpp"

#include <sstream>

namespace singuline {

MPoly::MPoly(TermMap terms) : terms_(std::move(terms)) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second == 0) {
            it = terms_.erase(it);
        } else {
            degx_ = std::max(degx_, it->first.ex);
            degy_ = std::max(degy_, it->first.ey);
            degz_ = std::max(degz_, it->first.ez);
            ++it;
        }
    }
}

MPoly MPoly::constant(const mpq_class& v) {
    TermMap t;
    if (v != 0) t[Exp3{}] = v;
    return MPoly(std::move(t));
}

MPoly MPoly::variable(char var, int power) {
    Exp3 e;
    switch (var) {
        case 'x': e.ex = power; break;
        case 'y': e.ey = power; break;
        case 'z': e.ez = power; break;
        default: raise(ErrorCode::InvalidInput, "unknown variable");
    }
    TermMap t;
    t[e] = 1;
    return MPoly(std::move(t));
}

mpq_class MPoly::coeff(const Exp3& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? mpq_class(0) : it->second;
}

MPoly MPoly::operator+(const MPoly& o) const {
    TermMap t = terms_;
    for (const auto& [e, c] : o.terms_) t[e] += c;
    return MPoly(std::move(t));
}

MPoly MPoly::operator-(const MPoly& o) const {
    TermMap t = terms_;
    for (const auto& [e, c] : o.terms_) t[e] -= c;
    return MPoly(std::move(t));
}

MPoly MPoly::operator-() const {
    TermMap t;
    for (const auto& [e, c] : terms_) t[e] = -c;
    return MPoly(std::move(t));
}

MPoly MPoly::operator*(const MPoly& o) const {
    TermMap t;
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            Exp3 e{ea.ex + eb.ex, ea.ey + eb.ey, ea.ez + eb.ez};
            t[e] += ca * cb;
        }
    }
    return MPoly(std::move(t));
}

MPoly MPoly::scaled(const mpq_class& s) const {
    if (s == 0) return MPoly();
    TermMap t;
    for (const auto& [e, c] : terms_) t[e] = c * s;
    return MPoly(std::move(t));
}

std::string MPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        if (!first) os << " + ";
        first = false;
        os << c.get_str();
        if (e.ex) os << "*x^" << e.ex;
        if (e.ey) os << "*y^" << e.ey;
        if (e.ez) os << "*z^" << e.ez;
    }
    return os.str();
}

MPoly derivative(const MPoly& p, char var, int order) {
    if (order < 1) raise(ErrorCode::InvalidInput, "derivative order must be >= 1");
    MPoly::TermMap t;
    for (const auto& [e, c] : p.terms()) {
        int k = var == 'x' ? e.ex : var == 'y' ? e.ey : e.ez;
        if (var != 'x' && var != 'y' && var != 'z')
            raise(ErrorCode::InvalidInput, "unknown variable");
        if (k < order) continue;
        mpq_class m = c;
        for (int i = 0; i < order; ++i) m *= (k - i);
        Exp3 ne = e;
        (var == 'x' ? ne.ex : var == 'y' ? ne.ey : ne.ez) = k - order;
        t[ne] = m;
    }
    return MPoly(std::move(t));
}

MPoly leading_coeff_z(const MPoly& P) {
    int d = P.deg_z();
    if (d < 0) return MPoly();
    MPoly::TermMap t;
    for (const auto& [e, c] : P.terms()) {
        if (e.ez == d) t[Exp3{e.ex, e.ey, 0}] = c;
    }
    return MPoly(std::move(t));
}

mpq_class eval_exact(const MPoly& p, const std::array<mpq_class, 3>& point) {
    // Horner over cached power tables would not pay off at the sparse sizes used
    // here; direct power products are exact and simple.
    mpq_class acc = 0;
    for (const auto& [e, c] : p.terms()) {
        mpq_class t = c;
        for (int i = 0; i < e.ex; ++i) t *= point[0];
        for (int i = 0; i < e.ey; ++i) t *= point[1];
        for (int i = 0; i < e.ez; ++i) t *= point[2];
        acc += t;
    }
    return acc;
}

mpq_class eval_exact(const MPoly& p, const std::array<mpq_class, 2>& point) {
    if (p.deg_z() > 0)
        raise(ErrorCode::ArityMismatch, "bivariate evaluation of a polynomial involving z");
    return eval_exact(p, std::array<mpq_class, 3>{point[0], point[1], mpq_class(0)});
}

} // namespace singuline
