#include "singuline/interval.hpp"

namespace singuline {

namespace {
thread_local int g_rung_bits = 128;
} // namespace

int mpfr_rung_bits() { return g_rung_bits; }

void set_mpfr_rung_bits(int bits) {
    if (bits < MPFR_PREC_MIN || bits > 1 << 24)
        raise(ErrorCode::InvalidInput, "mpfr rung bits out of range");
    g_rung_bits = bits;
}

MInterval::MInterval(raw_tag) {
    mpfr_init2(lo_, g_rung_bits);
    mpfr_init2(hi_, g_rung_bits);
}

MInterval::MInterval() : MInterval(raw_tag{}) {
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

MInterval::MInterval(const MInterval& o) {
    mpfr_init2(lo_, mpfr_get_prec(o.lo_));
    mpfr_init2(hi_, mpfr_get_prec(o.hi_));
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
    empty_ = o.empty_;
}

MInterval::MInterval(MInterval&& o) noexcept {
    mpfr_init2(lo_, MPFR_PREC_MIN);
    mpfr_init2(hi_, MPFR_PREC_MIN);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    empty_ = o.empty_;
}

MInterval& MInterval::operator=(const MInterval& o) {
    if (this != &o) {
        mpfr_set_prec(lo_, mpfr_get_prec(o.lo_));
        mpfr_set_prec(hi_, mpfr_get_prec(o.hi_));
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
        empty_ = o.empty_;
    }
    return *this;
}

MInterval& MInterval::operator=(MInterval&& o) noexcept {
    if (this != &o) {
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
        empty_ = o.empty_;
    }
    return *this;
}

MInterval::~MInterval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

MInterval MInterval::empty() {
    MInterval r;
    mpfr_set_inf(r.lo_, 1);
    mpfr_set_inf(r.hi_, -1);
    r.empty_ = true;
    return r;
}

bool MInterval::is_empty() const { return empty_; }

MInterval MInterval::from_double(double v) {
    MInterval r(raw_tag{});
    mpfr_set_d(r.lo_, v, MPFR_RNDD);
    mpfr_set_d(r.hi_, v, MPFR_RNDU);
    return r;
}

MInterval MInterval::from_double_pair(double lo, double hi) {
    MInterval r(raw_tag{});
    mpfr_set_d(r.lo_, lo, MPFR_RNDD);
    mpfr_set_d(r.hi_, hi, MPFR_RNDU);
    return r;
}

MInterval MInterval::from_mpq(const mpq_class& q) {
    MInterval r(raw_tag{});
    mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
    return r;
}

bool MInterval::is_finite() const {
    return !empty_ && mpfr_number_p(lo_) && mpfr_number_p(hi_);
}

bool MInterval::contains_zero() const {
    return !empty_ && mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool MInterval::is_positive() const { return !empty_ && mpfr_sgn(lo_) > 0; }
bool MInterval::is_negative() const { return !empty_ && mpfr_sgn(hi_) < 0; }

MInterval MInterval::operator+(const MInterval& o) const {
    MInterval r(raw_tag{});
    mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
    return r;
}

MInterval MInterval::operator-(const MInterval& o) const {
    MInterval r(raw_tag{});
    mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
    return r;
}

MInterval MInterval::operator-() const {
    MInterval r(raw_tag{});
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

MInterval MInterval::operator*(const MInterval& o) const {
    MInterval r(raw_tag{});
    mpfr_t t;
    mpfr_init2(t, g_rung_bits);
    // Lower bound: min of the four products rounded down.
    mpfr_mul(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_mul(t, lo_, o.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, hi_, o.lo_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, hi_, o.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    // Upper bound: max rounded up.
    mpfr_mul(r.hi_, lo_, o.lo_, MPFR_RNDU);
    mpfr_mul(t, lo_, o.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, hi_, o.lo_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, hi_, o.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

MInterval MInterval::operator/(const MInterval& o) const {
    if (o.contains_zero())
        raise(ErrorCode::Internal, "interval division by zero-straddling divisor");
    MInterval r(raw_tag{});
    mpfr_t t;
    mpfr_init2(t, g_rung_bits);
    mpfr_div(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_div(t, lo_, o.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_div(t, hi_, o.lo_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_div(t, hi_, o.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_div(r.hi_, lo_, o.lo_, MPFR_RNDU);
    mpfr_div(t, lo_, o.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_div(t, hi_, o.lo_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_div(t, hi_, o.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

MInterval MInterval::sqrt_nonneg(const MInterval& a) {
    MInterval r(raw_tag{});
    if (mpfr_sgn(a.lo_) < 0)
        mpfr_set_zero(r.lo_, 1);
    else
        mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
    return r;
}

MInterval MInterval::square(const MInterval& a) {
    MInterval r(raw_tag{});
    if (mpfr_sgn(a.lo_) >= 0) {
        mpfr_sqr(r.lo_, a.lo_, MPFR_RNDD);
        mpfr_sqr(r.hi_, a.hi_, MPFR_RNDU);
    } else if (mpfr_sgn(a.hi_) <= 0) {
        mpfr_sqr(r.lo_, a.hi_, MPFR_RNDD);
        mpfr_sqr(r.hi_, a.lo_, MPFR_RNDU);
    } else {
        mpfr_set_zero(r.lo_, 1);
        mpfr_t t;
        mpfr_init2(t, mpfr_rung_bits());
        mpfr_sqr(r.hi_, a.lo_, MPFR_RNDU);
        mpfr_sqr(t, a.hi_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_clear(t);
    }
    return r;
}

MInterval MInterval::max_with_zero(const MInterval& a) {
    MInterval r(raw_tag{});
    mpfr_t z;
    mpfr_init2(z, MPFR_PREC_MIN);
    mpfr_set_zero(z, 1);
    mpfr_max(r.lo_, a.lo_, z, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, z, MPFR_RNDU);
    mpfr_clear(z);
    return r;
}

double MInterval::lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double MInterval::hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double MInterval::width_d() const {
    mpfr_t t;
    mpfr_init2(t, g_rung_bits);
    mpfr_sub(t, hi_, lo_, MPFR_RNDU);
    double w = mpfr_get_d(t, MPFR_RNDU);
    mpfr_clear(t);
    return w;
}

MInterval MInterval::mid_point() const {
    MInterval r(raw_tag{});
    mpfr_add(r.lo_, lo_, hi_, MPFR_RNDN);
    mpfr_mul_2si(r.lo_, r.lo_, -1, MPFR_RNDN);
    mpfr_set(r.hi_, r.lo_, MPFR_RNDN);
    return r;
}

std::pair<MInterval, MInterval> MInterval::split() const {
    MInterval m = mid_point();
    MInterval a(raw_tag{}), b(raw_tag{});
    mpfr_set(a.lo_, lo_, MPFR_RNDD);
    mpfr_set(a.hi_, m.hi_, MPFR_RNDU);
    mpfr_set(b.lo_, m.lo_, MPFR_RNDD);
    mpfr_set(b.hi_, hi_, MPFR_RNDU);
    return {std::move(a), std::move(b)};
}

MInterval MInterval::hull(const MInterval& a, const MInterval& b) {
    if (a.empty_) return b;
    if (b.empty_) return a;
    MInterval r(raw_tag{});
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

MInterval MInterval::intersect(const MInterval& a, const MInterval& b) {
    if (a.empty_ || b.empty_) return empty();
    MInterval r(raw_tag{});
    mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    if (mpfr_greater_p(r.lo_, r.hi_)) return empty();
    return r;
}

bool MInterval::strictly_inside(const MInterval& outer) const {
    if (empty_ || outer.empty_) return false;
    return mpfr_less_p(outer.lo_, lo_) && mpfr_less_p(hi_, outer.hi_);
}

bool MInterval::contains_interval(const MInterval& inner) const {
    if (empty_ || inner.empty_) return false;
    return mpfr_lessequal_p(lo_, inner.lo_) && mpfr_lessequal_p(inner.hi_, hi_);
}

} // namespace singuline
