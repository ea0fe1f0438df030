#include "singuline/bipoly.hpp"

#include <algorithm>
#include <cstring>
#include <sstream>

namespace singuline {
namespace {

constexpr unsigned kNB = GMP_NUMB_BITS;
static_assert(GMP_NAIL_BITS == 0, "nail builds unsupported");

// OR the limbs of |v| into buf starting at bit offset bitoff. Caller guarantees
// the target bit range is zero and wide enough.
void or_into(std::vector<mp_limb_t>& buf, unsigned long bitoff, const mpz_class& v) {
    size_t li = bitoff / kNB;
    unsigned sh = bitoff % kNB;
    auto z = v.get_mpz_t();
    size_t n = mpz_size(z);
    const mp_limb_t* limbs = mpz_limbs_read(z);
    for (size_t t = 0; t < n; ++t) {
        buf[li + t] |= limbs[t] << sh;
        if (sh) buf[li + t + 1] |= limbs[t] >> (kNB - sh);
    }
}

mpz_class import_limbs(const std::vector<mp_limb_t>& buf) {
    mpz_class r;
    mpz_import(r.get_mpz_t(), buf.size(), -1, sizeof(mp_limb_t), 0, 0, buf.data());
    return r;
}

size_t limbs_for_bits(unsigned long bits) { return bits / kNB + 2; }

// Kronecker pack: slot of (i, j) is i*spr + j, k bits per slot. Coefficient
// magnitudes must be < 2^(k-1).
mpz_class pack(const BiPoly& a, long spr, long k) {
    unsigned long total_bits =
        static_cast<unsigned long>((a.nx() - 1) * spr + a.ny()) * k;
    std::vector<mp_limb_t> pos(limbs_for_bits(total_bits), 0);
    std::vector<mp_limb_t> neg(limbs_for_bits(total_bits), 0);
    const auto& c = a.coeffs();
    for (int i = 0; i < a.nx(); ++i) {
        for (int j = 0; j < a.ny(); ++j) {
            const mpz_class& v = c[i * a.ny() + j];
            if (v == 0) continue;
            unsigned long off = static_cast<unsigned long>(i * spr + j) * k;
            or_into(v > 0 ? pos : neg, off, v);
        }
    }
    return import_limbs(pos) - import_limbs(neg);
}

// Inverse of pack for nslots balanced digits of k bits. Sound whenever every
// digit magnitude is < 2^(k-1): adding the all-slots offset 2^(k-1) yields the
// unique plain base-2^k representation, read off by windowing. Returns empty
// when v does not fit nslots digits (callers retry or re-verify).
std::vector<mpz_class> unpack_balanced(const mpz_class& v, long nslots, long k) {
    mpz_class half = mpz_class(1) << (k - 1);

    unsigned long total_bits = static_cast<unsigned long>(nslots) * k;
    std::vector<mp_limb_t> cbuf(limbs_for_bits(total_bits), 0);
    for (long s = 0; s < nslots; ++s) {
        unsigned long off = static_cast<unsigned long>(s) * k + (k - 1);
        cbuf[off / kNB] |= mp_limb_t(1) << (off % kNB);
    }
    mpz_class shifted = v + import_limbs(cbuf);
    if (shifted < 0 || mpz_sizeinbase(shifted.get_mpz_t(), 2) > total_bits) return {};

    std::vector<mp_limb_t> buf(limbs_for_bits(total_bits), 0);
    size_t cnt = 0;
    mpz_export(buf.data(), &cnt, -1, sizeof(mp_limb_t), 0, 0, shifted.get_mpz_t());

    std::vector<mpz_class> out(nslots);
    size_t tw = (k + kNB - 1) / kNB;
    std::vector<mp_limb_t> win(tw);
    for (long s = 0; s < nslots; ++s) {
        unsigned long off = static_cast<unsigned long>(s) * k;
        size_t li = off / kNB;
        unsigned sh = off % kNB;
        for (size_t w = 0; w < tw; ++w) {
            mp_limb_t lo = buf[li + w] >> sh;
            mp_limb_t hi = sh ? buf[li + w + 1] << (kNB - sh) : 0;
            win[w] = lo | hi;
        }
        unsigned long top = k - static_cast<unsigned long>(tw - 1) * kNB;
        if (top < kNB) win[tw - 1] &= (mp_limb_t(1) << top) - 1;
        mpz_import(out[s].get_mpz_t(), tw, -1, sizeof(mp_limb_t), 0, 0, win.data());
        out[s] -= half;
    }
    return out;
}

long bits_of(const mpz_class& v) {
    return v == 0 ? 1 : static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2));
}

} // namespace

BiPoly::BiPoly(int nx, int ny, std::vector<mpz_class> c)
    : nx_(nx), ny_(ny), c_(std::move(c)) {
    if (nx_ < 0 || ny_ < 0 || c_.size() != static_cast<size_t>(nx_) * ny_)
        raise(ErrorCode::Internal, "BiPoly shape mismatch");
    trim();
}

void BiPoly::trim() {
    int mx = 0, my = 0;
    for (int i = 0; i < nx_; ++i)
        for (int j = 0; j < ny_; ++j)
            if (c_[i * ny_ + j] != 0) {
                mx = std::max(mx, i + 1);
                my = std::max(my, j + 1);
            }
    if (mx == 0) {
        nx_ = ny_ = 0;
        c_.clear();
        return;
    }
    if (mx == nx_ && my == ny_) return;
    std::vector<mpz_class> t(static_cast<size_t>(mx) * my);
    for (int i = 0; i < mx; ++i)
        for (int j = 0; j < my; ++j) t[i * my + j] = std::move(c_[i * ny_ + j]);
    nx_ = mx;
    ny_ = my;
    c_ = std::move(t);
}

BiPoly BiPoly::constant(const mpz_class& v) {
    if (v == 0) return BiPoly();
    return BiPoly(1, 1, {v});
}

BiPoly BiPoly::from_mpoly(const MPoly& p, mpz_class& denominator) {
    if (p.deg_z() > 0) raise(ErrorCode::ArityMismatch, "bivariate conversion of a polynomial involving z");
    denominator = 1;
    for (const auto& [e, c] : p.terms()) mpz_lcm(denominator.get_mpz_t(), denominator.get_mpz_t(), c.get_den().get_mpz_t());
    if (p.is_zero()) return BiPoly();
    int nx = p.deg_x() + 1, ny = p.deg_y() + 1;
    std::vector<mpz_class> c(static_cast<size_t>(nx) * ny);
    for (const auto& [e, t] : p.terms()) {
        mpq_class v = t * denominator;
        c[e.ex * ny + e.ey] = v.get_num();
    }
    return BiPoly(nx, ny, std::move(c));
}

const mpz_class& BiPoly::coeff(int i, int j) const {
    static const mpz_class zero(0);
    if (i < 0 || j < 0 || i >= nx_ || j >= ny_) return zero;
    return c_[i * ny_ + j];
}

BiPoly BiPoly::operator+(const BiPoly& o) const {
    int nx = std::max(nx_, o.nx_), ny = std::max(ny_, o.ny_);
    if (nx == 0) return BiPoly();
    std::vector<mpz_class> c(static_cast<size_t>(nx) * ny);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) c[i * ny + j] = coeff(i, j) + o.coeff(i, j);
    return BiPoly(nx, ny, std::move(c));
}

BiPoly BiPoly::operator-(const BiPoly& o) const {
    int nx = std::max(nx_, o.nx_), ny = std::max(ny_, o.ny_);
    if (nx == 0) return BiPoly();
    std::vector<mpz_class> c(static_cast<size_t>(nx) * ny);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) c[i * ny + j] = coeff(i, j) - o.coeff(i, j);
    return BiPoly(nx, ny, std::move(c));
}

BiPoly BiPoly::operator-() const {
    std::vector<mpz_class> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
    return BiPoly(nx_, ny_, std::move(c));
}

BiPoly BiPoly::operator*(const BiPoly& o) const {
    if (is_zero() || o.is_zero()) return BiPoly();
    int nxc = nx_ + o.nx_ - 1, nyc = ny_ + o.ny_ - 1;
    mpz_class bound = max_abs() * o.max_abs();
    bound *= static_cast<long>(std::min(nx_, o.nx_)) * std::min(ny_, o.ny_);
    long k = bits_of(bound) + 2;
    mpz_class va = pack(*this, nyc, k);
    mpz_class vb = pack(o, nyc, k);
    mpz_class vc = va * vb;
    long nslots = static_cast<long>(nxc) * nyc;
    std::vector<mpz_class> dig = unpack_balanced(vc, nslots, k);
    if (dig.empty()) raise(ErrorCode::Internal, "Kronecker width bound violated");
    return BiPoly(nxc, nyc, std::move(dig));
}

BiPoly BiPoly::scaled(const mpz_class& s) const {
    if (s == 0) return BiPoly();
    std::vector<mpz_class> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] * s;
    return BiPoly(nx_, ny_, std::move(c));
}

BiPoly BiPoly::pow(unsigned e) const {
    BiPoly r = constant(1);
    BiPoly b = *this;
    for (; e; e >>= 1) {
        if (e & 1) r = r * b;
        if (e > 1) b = b * b;
    }
    return r;
}

BiPoly BiPoly::exact_div(const BiPoly& d) const {
    if (d.is_zero()) raise(ErrorCode::Internal, "exact_div by zero");
    if (is_zero()) return BiPoly();
    if (nx_ < d.nx_ || ny_ < d.ny_)
        raise(ErrorCode::Internal, "exact_div: dividend grid smaller than divisor");
    int nxq = nx_ - d.nx_ + 1, nyq = ny_ - d.ny_ + 1;
    long spr = ny_;
    long k = std::max(bits_of(max_abs()), bits_of(d.max_abs())) + 64;
    for (int attempt = 0; attempt < 6; ++attempt, k *= 2) {
        mpz_class vc = pack(*this, spr, k);
        mpz_class vd = pack(d, spr, k);
        mpz_class q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), vc.get_mpz_t(), vd.get_mpz_t());
        if (r != 0) continue;
        long nslots = static_cast<long>(nxq - 1) * spr + nyq;
        std::vector<mpz_class> dig = unpack_balanced(q, nslots, k);
        if (dig.empty()) continue;
        std::vector<mpz_class> grid(static_cast<size_t>(nxq) * nyq);
        bool clean = true;
        for (long s = 0; s < nslots && clean; ++s) {
            long i = s / spr, j = s % spr;
            if (j < nyq)
                grid[i * nyq + j] = std::move(dig[s]);
            else if (dig[s] != 0)
                clean = false;
        }
        if (!clean) continue;
        BiPoly cand(nxq, nyq, std::move(grid));
        if (cand * d == *this) return cand;
    }
    raise(ErrorCode::Internal, "exact_div: no exact quotient found");
}

BiPoly BiPoly::transpose() const {
    if (is_zero()) return BiPoly();
    std::vector<mpz_class> c(c_.size());
    for (int i = 0; i < nx_; ++i)
        for (int j = 0; j < ny_; ++j) c[j * nx_ + i] = c_[i * ny_ + j];
    return BiPoly(ny_, nx_, std::move(c));
}

mpz_class BiPoly::max_abs() const {
    mpz_class m = 0;
    for (const auto& v : c_) {
        mpz_class a = abs(v);
        if (a > m) m = a;
    }
    return m;
}

mpq_class BiPoly::eval(const mpq_class& x, const mpq_class& y) const {
    mpq_class acc = 0;
    for (int i = nx_ - 1; i >= 0; --i) {
        mpq_class row = 0;
        for (int j = ny_ - 1; j >= 0; --j) {
            row *= y;
            row += c_[i * ny_ + j];
        }
        acc *= x;
        acc += row;
    }
    return acc;
}

MPoly BiPoly::to_mpoly() const {
    MPoly::TermMap t;
    for (int i = 0; i < nx_; ++i)
        for (int j = 0; j < ny_; ++j)
            if (c_[i * ny_ + j] != 0) t[Exp3{i, j, 0}] = mpq_class(c_[i * ny_ + j]);
    return MPoly(std::move(t));
}

std::string BiPoly::to_string() const { return to_mpoly().to_string(); }

} // namespace singuline
