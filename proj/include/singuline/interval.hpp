#pragma once

#include <cmath>
#include <limits>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

#include "singuline/error.hpp"

namespace singuline {

// Active mantissa size for the software rung, thread-local.
int mpfr_rung_bits();
void set_mpfr_rung_bits(int bits);

struct ScopedPrecision {
    int saved;
    explicit ScopedPrecision(int bits) : saved(mpfr_rung_bits()) { set_mpfr_rung_bits(bits); }
    ~ScopedPrecision() { set_mpfr_rung_bits(saved); }
};

// Hardware interval: round-to-nearest arithmetic widened outward by one ulp
// per primitive operation. Empty is the sentinel [+inf, -inf].
struct DInterval {
    double lo = 0;
    double hi = 0;

    DInterval() = default;
    DInterval(double l, double h) : lo(l), hi(h) {}

    static DInterval empty() {
        return DInterval(std::numeric_limits<double>::infinity(),
                         -std::numeric_limits<double>::infinity());
    }
    bool is_empty() const { return lo > hi; }

    static double down(double v) {
        return std::nextafter(v, -std::numeric_limits<double>::infinity());
    }
    static double up(double v) {
        return std::nextafter(v, std::numeric_limits<double>::infinity());
    }

    static DInterval from_double(double v) { return DInterval(v, v); }
    static DInterval from_double_pair(double l, double h) { return DInterval(l, h); }
    static DInterval from_mpq(const mpq_class& q) {
        double d = mpq_get_d(q.get_mpq_t()); // truncated toward zero, < 1 ulp off
        if (mpq_class(d) == q) return DInterval(d, d);
        return DInterval(down(d), up(d));
    }

    bool is_finite() const { return std::isfinite(lo) && std::isfinite(hi); }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }
    bool is_positive() const { return lo > 0; }
    bool is_negative() const { return hi < 0; }

    DInterval operator+(const DInterval& o) const {
        return DInterval(down(lo + o.lo), up(hi + o.hi));
    }
    DInterval operator-(const DInterval& o) const {
        return DInterval(down(lo - o.hi), up(hi - o.lo));
    }
    DInterval operator-() const { return DInterval(-hi, -lo); }
    DInterval operator*(const DInterval& o) const {
        double p1 = lo * o.lo, p2 = lo * o.hi, p3 = hi * o.lo, p4 = hi * o.hi;
        double mn = std::fmin(std::fmin(p1, p2), std::fmin(p3, p4));
        double mx = std::fmax(std::fmax(p1, p2), std::fmax(p3, p4));
        return DInterval(down(mn), up(mx));
    }
    DInterval operator/(const DInterval& o) const {
        if (o.contains_zero()) raise(ErrorCode::Internal, "interval division by zero-straddling divisor");
        double q1 = lo / o.lo, q2 = lo / o.hi, q3 = hi / o.lo, q4 = hi / o.hi;
        double mn = std::fmin(std::fmin(q1, q2), std::fmin(q3, q4));
        double mx = std::fmax(std::fmax(q1, q2), std::fmax(q3, q4));
        return DInterval(down(mn), up(mx));
    }

    static DInterval sqrt_nonneg(const DInterval& a) {
        double l = a.lo < 0 ? 0 : a.lo;
        return DInterval(down(std::sqrt(l)), up(std::sqrt(a.hi)));
    }

    static DInterval square(const DInterval& a) {
        double p1 = a.lo * a.lo, p2 = a.hi * a.hi;
        if (a.lo >= 0) return DInterval(down(p1), up(p2));
        if (a.hi <= 0) return DInterval(down(p2), up(p1));
        return DInterval(0, up(std::fmax(p1, p2)));
    }

    static DInterval max_with_zero(const DInterval& a) {
        return DInterval(std::fmax(a.lo, 0.0), std::fmax(a.hi, 0.0));
    }

    double lo_d() const { return lo; }
    double hi_d() const { return hi; }
    double width_d() const {
        double w = hi - lo;
        return w == 0 ? 0 : up(w);
    }
    double mid_d() const { return lo + (hi - lo) / 2; }

    DInterval mid_point() const {
        double m = mid_d();
        return DInterval(m, m);
    }
    std::pair<DInterval, DInterval> split() const {
        double m = mid_d();
        return {DInterval(lo, m), DInterval(m, hi)};
    }

    static DInterval hull(const DInterval& a, const DInterval& b) {
        if (a.is_empty()) return b;
        if (b.is_empty()) return a;
        return DInterval(std::fmin(a.lo, b.lo), std::fmax(a.hi, b.hi));
    }
    static DInterval intersect(const DInterval& a, const DInterval& b) {
        DInterval r(std::fmax(a.lo, b.lo), std::fmin(a.hi, b.hi));
        return r.lo > r.hi ? empty() : r;
    }
    bool strictly_inside(const DInterval& outer) const {
        return outer.lo < lo && hi < outer.hi;
    }
    bool contains_interval(const DInterval& inner) const {
        return lo <= inner.lo && inner.hi <= hi;
    }
};

// Software rung: mpfr endpoints with directed rounding, precision taken from
// the thread-local rung setting at construction.
class MInterval {
public:
    MInterval();
    MInterval(const MInterval& o);
    MInterval(MInterval&& o) noexcept;
    MInterval& operator=(const MInterval& o);
    MInterval& operator=(MInterval&& o) noexcept;
    ~MInterval();

    static MInterval empty();
    bool is_empty() const;

    static MInterval from_double(double v);
    static MInterval from_double_pair(double lo, double hi);
    static MInterval from_mpq(const mpq_class& q);

    bool is_finite() const;
    bool contains_zero() const;
    bool is_positive() const;
    bool is_negative() const;

    MInterval operator+(const MInterval& o) const;
    MInterval operator-(const MInterval& o) const;
    MInterval operator-() const;
    MInterval operator*(const MInterval& o) const;
    MInterval operator/(const MInterval& o) const;
    static MInterval sqrt_nonneg(const MInterval& a);
    static MInterval square(const MInterval& a);
    static MInterval max_with_zero(const MInterval& a);

    double lo_d() const; // rounded down
    double hi_d() const; // rounded up
    double width_d() const;

    MInterval mid_point() const;
    std::pair<MInterval, MInterval> split() const;

    static MInterval hull(const MInterval& a, const MInterval& b);
    static MInterval intersect(const MInterval& a, const MInterval& b);
    bool strictly_inside(const MInterval& outer) const;
    bool contains_interval(const MInterval& inner) const;

    const __mpfr_struct* lo_raw() const { return lo_; }
    const __mpfr_struct* hi_raw() const { return hi_; }

private:
    mpfr_t lo_;
    mpfr_t hi_;
    bool empty_ = false;

    struct raw_tag {};
    explicit MInterval(raw_tag);
};

} // namespace singuline
