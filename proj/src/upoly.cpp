#include "singuline/upoly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "singuline/error.hpp"

namespace singuline {

namespace {

void strip(std::vector<mpq_class>& c) {
    while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
}

} // namespace

UPoly::UPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) {
    strip(c_);
}

UPoly UPoly::constant(const mpq_class& v) {
    std::vector<mpq_class> c;
    if (sgn(v) != 0) c.push_back(v);
    return UPoly(std::move(c));
}

UPoly UPoly::operator+(const UPoly& o) const {
    std::vector<mpq_class> c(std::max(c_.size(), o.c_.size()), mpq_class(0));
    for (size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) c[i] += o.c_[i];
    return UPoly(std::move(c));
}

UPoly UPoly::operator-(const UPoly& o) const {
    std::vector<mpq_class> c(std::max(c_.size(), o.c_.size()), mpq_class(0));
    for (size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) c[i] -= o.c_[i];
    return UPoly(std::move(c));
}

UPoly UPoly::operator-() const {
    std::vector<mpq_class> c(c_);
    for (auto& v : c) v = -v;
    return UPoly(std::move(c));
}

UPoly UPoly::operator*(const UPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<mpq_class> c(c_.size() + o.c_.size() - 1, mpq_class(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
    return UPoly(std::move(c));
}

UPoly UPoly::scaled(const mpq_class& s) const {
    if (sgn(s) == 0) return {};
    std::vector<mpq_class> c(c_);
    for (auto& v : c) v *= s;
    return UPoly(std::move(c));
}

mpq_class UPoly::eval(const mpq_class& t) const {
    mpq_class r = 0;
    for (size_t i = c_.size(); i-- > 0;) r = r * t + c_[i];
    return r;
}

UPoly derivative(const UPoly& p) {
    if (p.degree() <= 0) return {};
    std::vector<mpq_class> c(static_cast<size_t>(p.degree()));
    for (int k = 1; k <= p.degree(); ++k) c[static_cast<size_t>(k - 1)] = p[k] * k;
    return UPoly(std::move(c));
}

std::pair<UPoly, UPoly> divmod(const UPoly& p, const UPoly& d) {
    if (d.is_zero()) raise(ErrorCode::InvalidInput, "univariate division by zero polynomial");
    std::vector<mpq_class> r(p.coeffs());
    int dd = d.degree();
    int dr = p.degree();
    if (dr < dd) return {UPoly{}, p};
    std::vector<mpq_class> q(static_cast<size_t>(dr - dd + 1), mpq_class(0));
    while (dr >= dd) {
        mpq_class f = r[static_cast<size_t>(dr)] / d.lc();
        q[static_cast<size_t>(dr - dd)] = f;
        for (int k = 0; k <= dd; ++k) r[static_cast<size_t>(dr - dd + k)] -= f * d[k];
        r[static_cast<size_t>(dr)] = 0;
        while (dr >= 0 && sgn(r[static_cast<size_t>(dr)]) == 0) --dr;
    }
    r.resize(static_cast<size_t>(dr + 1));
    return {UPoly(std::move(q)), UPoly(std::move(r))};
}

// ---------------------------------------------------------------------------
// integer view: primitive mpz coefficient vectors
// ---------------------------------------------------------------------------

namespace {

using ZVec = std::vector<mpz_class>;

void zstrip(ZVec& v) {
    while (!v.empty() && sgn(v.back()) == 0) v.pop_back();
}

int zdeg(const ZVec& v) { return static_cast<int>(v.size()) - 1; }

mpz_class zcontent(const ZVec& v) {
    mpz_class g = 0;
    for (const auto& c : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

void zmake_primitive(ZVec& v) {
    mpz_class g = zcontent(v);
    if (sgn(g) == 0 || g == 1) return;
    for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

// clears denominators and removes integer content; zero in, zero out
ZVec to_primitive_z(const UPoly& p) {
    mpz_class den = 1;
    for (const auto& c : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    ZVec v(p.coeffs().size());
    for (size_t i = 0; i < v.size(); ++i) {
        mpq_class t = p.coeffs()[i] * den;
        v[i] = t.get_num();
    }
    zmake_primitive(v);
    return v;
}

UPoly from_z(const ZVec& v) {
    std::vector<mpq_class> c(v.size());
    for (size_t i = 0; i < v.size(); ++i) c[i] = mpq_class(v[i]);
    return UPoly(std::move(c));
}

// pseudo-remainder: lc(b)^(da-db+1) * a  mod  b, all over the integers
ZVec zprem(ZVec a, const ZVec& b) {
    int db = zdeg(b);
    const mpz_class& lb = b.back();
    int da = zdeg(a);
    while (da >= db) {
        mpz_class top = a.back();
        for (auto& c : a) c *= lb;
        for (int k = 0; k <= db; ++k) a[static_cast<size_t>(da - db + k)] -= top * b[static_cast<size_t>(k)];
        a.pop_back();
        zstrip(a);
        da = zdeg(a);
    }
    return a;
}

size_t max_coeff_bits(const ZVec& v) {
    size_t m = 1;
    for (const auto& c : v)
        if (sgn(c) != 0) m = std::max(m, mpz_sizeinbase(c.get_mpz_t(), 2));
    return m;
}

// ---------------------------------------------------------------------------
// arithmetic mod a word-sized prime (p < 2^62)
// ---------------------------------------------------------------------------

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 addm(u64 a, u64 b, u64 p) {
    u64 s = a + b;
    return s >= p ? s - p : s;
}
u64 subm(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
u64 mulm(u64 a, u64 b, u64 p) { return static_cast<u64>((u128)a * b % p); }

u64 powm(u64 a, u64 e, u64 p) {
    u64 r = 1;
    while (e) {
        if (e & 1) r = mulm(r, a, p);
        a = mulm(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 invm(u64 a, u64 p) { return powm(a % p, p - 2, p); }

u64 mod_of(const mpz_class& z, u64 p) {
    u64 r = mpz_fdiv_ui(z.get_mpz_t(), p);
    return r;
}

using PVec = std::vector<u64>; // coefficients mod p, leading nonzero

void pstrip(PVec& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

int pdeg(const PVec& v) { return static_cast<int>(v.size()) - 1; }

PVec reduce_mod(const ZVec& v, u64 p) {
    PVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = mod_of(v[i], p);
    pstrip(r);
    return r;
}

u64 peval(const PVec& v, u64 t, u64 p) {
    u64 r = 0;
    for (size_t i = v.size(); i-- > 0;) r = addm(mulm(r, t, p), v[i], p);
    return r;
}

// a mod b with b made monic on the fly
PVec prem_modp(PVec a, const PVec& b, u64 p) {
    int db = pdeg(b);
    u64 li = invm(b.back(), p);
    while (pdeg(a) >= db) {
        int da = pdeg(a);
        u64 f = mulm(a.back(), li, p);
        for (int k = 0; k <= db; ++k)
            a[static_cast<size_t>(da - db + k)] =
                subm(a[static_cast<size_t>(da - db + k)], mulm(f, b[static_cast<size_t>(k)], p), p);
        pstrip(a);
    }
    return a;
}

PVec pgcd_modp(PVec a, PVec b, u64 p) {
    pstrip(a);
    pstrip(b);
    while (!b.empty()) {
        PVec r = prem_modp(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        u64 li = invm(a.back(), p);
        for (auto& c : a) c = mulm(c, li, p);
    }
    return a;
}

// resultant of a, b mod p via the Euclidean recurrence
u64 resultant_modp(PVec a, PVec b, u64 p) {
    if (a.empty() || b.empty()) return 0;
    u64 r = 1;
    if (pdeg(a) < pdeg(b)) {
        if ((pdeg(a) & 1) && (pdeg(b) & 1)) r = p - r;
        std::swap(a, b);
    }
    while (true) {
        int da = pdeg(a), db = pdeg(b);
        if (db == 0) return mulm(r, powm(b[0], static_cast<u64>(da), p), p);
        PVec rem = prem_modp(a, b, p);
        if (rem.empty()) return 0;
        int dr = pdeg(rem);
        r = mulm(r, powm(b.back(), static_cast<u64>(da - dr), p), p);
        if ((da & 1) && (db & 1)) r = p - r;
        a = std::move(b);
        b = std::move(rem);
    }
}

const std::vector<u64>& prime_pool(size_t need) {
    static std::vector<u64> primes;
    static mpz_class cursor = (mpz_class(1) << 61) + 1;
    while (primes.size() < need) {
        mpz_class nxt;
        mpz_nextprime(nxt.get_mpz_t(), cursor.get_mpz_t());
        cursor = nxt;
        if (mpz_sizeinbase(nxt.get_mpz_t(), 2) > 62) raise(ErrorCode::Internal, "prime pool overflow");
        primes.push_back(static_cast<u64>(nxt.get_ui()));
    }
    return primes;
}

// CRT accumulator over coefficient vectors (fixed length)
struct CrtAcc {
    std::vector<mpz_class> c;
    mpz_class modulus = 1;

    void reset(size_t n) {
        c.assign(n, mpz_class(0));
        modulus = 1;
    }
    void add(const std::vector<u64>& img, u64 p) {
        u64 minv = invm(mod_of(modulus, p), p);
        mpz_class pz = static_cast<unsigned long>(p);
        for (size_t i = 0; i < c.size(); ++i) {
            u64 ci = mod_of(c[i], p);
            u64 t = mulm(subm(img[i] % p, ci, p), minv, p);
            c[i] += modulus * mpz_class(static_cast<unsigned long>(t));
        }
        modulus *= pz;
    }
    std::vector<mpz_class> symmetric() const {
        std::vector<mpz_class> out(c.size());
        mpz_class half = modulus / 2;
        for (size_t i = 0; i < c.size(); ++i) {
            out[i] = c[i] % modulus;
            if (out[i] < 0) out[i] += modulus;
            if (out[i] > half) out[i] -= modulus;
        }
        return out;
    }
};

mpz_class norm2_bound(const ZVec& v) {
    mpz_class s = 0;
    for (const auto& c : v) s += c * c;
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), s.get_mpz_t());
    return r + 1;
}

bool divides_exact(const UPoly& d, const UPoly& p) {
    if (d.is_zero()) return p.is_zero();
    auto [q, r] = divmod(p, d);
    (void)q;
    return r.is_zero();
}

UPoly make_monic(const UPoly& p) {
    if (p.is_zero()) return p;
    return p.scaled(mpq_class(1) / p.lc());
}

UPoly gcd_modular(const ZVec& a, const ZVec& b) {
    mpz_class glc;
    mpz_gcd(glc.get_mpz_t(), a.back().get_mpz_t(), b.back().get_mpz_t());
    int best_deg = std::min(zdeg(a), zdeg(b)) + 1; // sentinel: larger than any image
    CrtAcc acc;
    mpz_class bound = 0;
    for (size_t pi = 0; pi < 4096; ++pi) {
        u64 p = prime_pool(pi + 1)[pi];
        if (mod_of(a.back(), p) == 0 || mod_of(b.back(), p) == 0) continue;
        PVec gp = pgcd_modp(reduce_mod(a, p), reduce_mod(b, p), p);
        int d = pdeg(gp);
        if (d == 0) return UPoly::constant(1);
        if (d > best_deg) continue; // unlucky prime
        if (d < best_deg) {
            best_deg = d;
            acc.reset(static_cast<size_t>(d + 1));
            mpz_class nb = norm2_bound(a) < norm2_bound(b) ? norm2_bound(a) : norm2_bound(b);
            bound = (mpz_class(1) << (d + 1)) * nb * abs(glc);
        }
        std::vector<u64> img(static_cast<size_t>(d + 1));
        u64 s = mod_of(glc, p);
        for (int k = 0; k <= d; ++k) img[static_cast<size_t>(k)] = mulm(gp[static_cast<size_t>(k)], s, p);
        acc.add(img, p);
        if (acc.modulus > 2 * bound) {
            ZVec cand = acc.symmetric();
            zstrip(cand);
            if (!cand.empty() && zdeg(cand) == best_deg) {
                zmake_primitive(cand);
                UPoly g = from_z(cand);
                if (divides_exact(g, from_z(a)) && divides_exact(g, from_z(b))) return make_monic(g);
            }
            // keep collecting; the bound was not sufficient for this unlucky run
            bound *= 16;
        }
    }
    raise(ErrorCode::Internal, "modular gcd did not stabilize");
}

UPoly gcd_prs(ZVec a, ZVec b) {
    if (zdeg(a) < zdeg(b)) std::swap(a, b);
    while (!b.empty()) {
        if (zdeg(b) == 0) return UPoly::constant(1);
        ZVec r = zprem(a, b);
        zmake_primitive(r);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(from_z(a));
}

} // namespace

UPoly gcd(const UPoly& a, const UPoly& b) {
    if (a.is_zero()) return make_monic(b);
    if (b.is_zero()) return make_monic(a);
    if (a.is_constant() || b.is_constant()) return UPoly::constant(1);
    ZVec za = to_primitive_z(a);
    ZVec zb = to_primitive_z(b);
    bool small = std::max(zdeg(za), zdeg(zb)) <= 32 &&
                 std::max(max_coeff_bits(za), max_coeff_bits(zb)) <= 512;
    return small ? gcd_prs(std::move(za), std::move(zb)) : gcd_modular(za, zb);
}

UPoly squarefree_part(const UPoly& p) {
    if (p.degree() <= 1) return make_monic(p);
    UPoly g = gcd(p, derivative(p));
    if (g.degree() <= 0) return make_monic(p);
    auto [q, r] = divmod(p, g);
    if (!r.is_zero()) raise(ErrorCode::Internal, "squarefree division not exact");
    return make_monic(q);
}

RatInterval eval_range(const UPoly& p, const RatInterval& iv) {
    mpq_class lo = 0, hi = 0;
    for (size_t i = p.coeffs().size(); i-- > 0;) {
        mpq_class a = lo * iv.lo, b = lo * iv.hi, c = hi * iv.lo, d = hi * iv.hi;
        lo = std::min(std::min(a, b), std::min(c, d)) + p.coeffs()[i];
        hi = std::max(std::max(a, b), std::max(c, d)) + p.coeffs()[i];
    }
    return {lo, hi};
}

// ---------------------------------------------------------------------------
// Sturm machinery
// ---------------------------------------------------------------------------

namespace {

// sign-faithful normalization: divide by the positive content
UPoly normalize_signs(const UPoly& p) {
    if (p.is_zero()) return p;
    ZVec z = to_primitive_z(p); // content is taken positive by mpz_gcd
    return from_z(z);
}

struct SturmChain {
    std::vector<UPoly> s;

    explicit SturmChain(const UPoly& p) {
        s.push_back(normalize_signs(p));
        UPoly d = derivative(p);
        if (!d.is_zero()) s.push_back(normalize_signs(d));
        while (s.size() >= 2 && !s.back().is_constant()) {
            auto [q, r] = divmod(s[s.size() - 2], s.back());
            (void)q;
            if (r.is_zero()) break;
            s.push_back(normalize_signs(-r));
        }
    }

    int variations(const mpq_class& t) const {
        int prev = 0, var = 0;
        for (const auto& p : s) {
            int sg = sgn(p.eval(t));
            if (sg == 0) continue;
            if (prev != 0 && sg != prev) ++var;
            prev = sg;
        }
        return var;
    }

    // distinct roots of the first chain element in the open interval (a, b);
    // requires nonzero values at both endpoints
    int count_open(const mpq_class& a, const mpq_class& b) const {
        return variations(a) - variations(b);
    }
};

void isolate_rec(const SturmChain& chain, const UPoly& q, const mpq_class& a, const mpq_class& b,
                 std::vector<RatInterval>& out, std::vector<mpq_class>& exact_roots) {
    int n = chain.count_open(a, b);
    if (n == 0) return;
    if (n == 1) {
        out.emplace_back(a, b);
        return;
    }
    mpq_class m = (a + b) / 2;
    if (sgn(q.eval(m)) == 0) {
        exact_roots.push_back(m);
        return; // caller deflates and restarts
    }
    isolate_rec(chain, q, a, m, out, exact_roots);
    isolate_rec(chain, q, m, b, out, exact_roots);
}

// closed-range isolation of a squarefree polynomial by Sturm bisection
std::vector<RatInterval> sturm_isolate_impl(UPoly q, const RatInterval& range) {
    std::vector<RatInterval> out;
    if (q.degree() <= 0) return out;
    auto strip_root = [&q](const mpq_class& r) {
        std::vector<mpq_class> lin{-r, 1};
        auto [quo, rem] = divmod(q, UPoly(lin));
        if (!rem.is_zero()) raise(ErrorCode::Internal, "root deflation not exact");
        q = quo;
    };
    if (sgn(q.eval(range.lo)) == 0) {
        out.emplace_back(range.lo, range.lo);
        strip_root(range.lo);
    }
    if (!range.is_point() && !q.is_constant() && sgn(q.eval(range.hi)) == 0) {
        out.emplace_back(range.hi, range.hi);
        strip_root(range.hi);
    }
    if (range.is_point() || q.degree() <= 0) return out;
    while (true) {
        SturmChain chain(q);
        std::vector<mpq_class> exact_roots;
        std::vector<RatInterval> open;
        isolate_rec(chain, q, range.lo, range.hi, open, exact_roots);
        if (exact_roots.empty()) {
            out.insert(out.end(), open.begin(), open.end());
            break;
        }
        // found a rational root at a bisection point: record, deflate, redo
        out.emplace_back(exact_roots.front(), exact_roots.front());
        strip_root(exact_roots.front());
        if (q.degree() <= 0) break;
    }
    std::sort(out.begin(), out.end(),
              [](const RatInterval& x, const RatInterval& y) { return x.lo < y.lo; });
    return out;
}

// ---------------------------------------------------------------------------
// Descartes (VCA) isolation for high-degree squarefree integer polynomials
// ---------------------------------------------------------------------------

int zvariations(const ZVec& v) {
    int prev = 0, var = 0;
    for (const auto& c : v) {
        int sg = sgn(c);
        if (sg == 0) continue;
        if (prev != 0 && sg != prev) ++var;
        prev = sg;
    }
    return var;
}

// in-place Taylor shift by 1 on a formal-degree vector
void zshift1(ZVec& c) {
    int n = static_cast<int>(c.size()) - 1;
    for (int i = 0; i < n; ++i)
        for (int j = n - 1; j >= i; --j) c[static_cast<size_t>(j)] += c[static_cast<size_t>(j + 1)];
}

int descartes_bound(const ZVec& s) {
    ZVec w(s.rbegin(), s.rend()); // reverse at formal degree
    zshift1(w);
    return zvariations(w);
}

void descartes_rec(const ZVec& s, const mpq_class& A, const mpq_class& B,
                   std::vector<RatInterval>& out, int depth) {
    if (depth > 256) raise(ErrorCode::Internal, "root isolation recursion too deep");
    int v = descartes_bound(s);
    if (v == 0) return;
    if (v == 1) {
        out.emplace_back(A, B);
        return;
    }
    size_t n = s.size() - 1;
    ZVec left(s.size());
    for (size_t k = 0; k < s.size(); ++k) left[k] = s[k] << (n - k);
    ZVec right(left);
    zshift1(right);
    mpq_class M = (A + B) / 2;
    if (sgn(right[0]) == 0) {
        out.emplace_back(M, M);
        right.erase(right.begin()); // squarefree: single factor of t
    }
    descartes_rec(left, A, M, out, depth + 1);
    descartes_rec(right, M, B, out, depth + 1);
}

std::vector<RatInterval> descartes_isolate(UPoly q, const RatInterval& range) {
    std::vector<RatInterval> out;
    if (q.degree() <= 0) return out;
    auto strip_root = [&q](const mpq_class& r) {
        std::vector<mpq_class> lin{-r, 1};
        auto [quo, rem] = divmod(q, UPoly(lin));
        if (!rem.is_zero()) raise(ErrorCode::Internal, "root deflation not exact");
        q = quo;
    };
    if (sgn(q.eval(range.lo)) == 0) {
        out.emplace_back(range.lo, range.lo);
        strip_root(range.lo);
    }
    if (!range.is_point() && !q.is_constant() && sgn(q.eval(range.hi)) == 0) {
        out.emplace_back(range.hi, range.hi);
        strip_root(range.hi);
    }
    if (range.is_point() || q.degree() <= 0) return out;
    // map [lo, hi] to [0, 1]: first shift by lo, then scale by (hi - lo)
    std::vector<mpq_class> c(q.coeffs());
    int n = q.degree();
    for (int i = 0; i < n; ++i)
        for (int j = n - 1; j >= i; --j)
            c[static_cast<size_t>(j)] += c[static_cast<size_t>(j + 1)] * range.lo;
    mpq_class w = range.hi - range.lo;
    mpq_class pw = 1;
    for (int k = 1; k <= n; ++k) {
        pw *= w;
        c[static_cast<size_t>(k)] *= pw;
    }
    ZVec s = to_primitive_z(UPoly(std::move(c)));
    s.resize(static_cast<size_t>(n + 1), mpz_class(0)); // keep the formal degree
    descartes_rec(s, range.lo, range.hi, out, 0);
    std::sort(out.begin(), out.end(),
              [](const RatInterval& x, const RatInterval& y) { return x.lo < y.lo; });
    return out;
}

} // namespace

std::vector<RatInterval> sturm_isolate(const UPoly& p, const RatInterval& range) {
    if (range.lo > range.hi) raise(ErrorCode::InvalidInput, "empty isolation range");
    return sturm_isolate_impl(p, range);
}

int count_roots_in_range(const UPoly& p, const RatInterval& range) {
    if (p.is_zero()) raise(ErrorCode::InvalidInput, "root count of the zero polynomial");
    UPoly q = squarefree_part(p);
    if (q.degree() <= 0) return 0;
    auto iv = q.degree() <= 48 ? sturm_isolate_impl(q, range) : descartes_isolate(q, range);
    return static_cast<int>(iv.size());
}

std::vector<RatInterval> isolate_real_roots(const UPoly& p, const RatInterval& range) {
    if (p.is_zero()) raise(ErrorCode::InvalidInput, "root isolation of the zero polynomial");
    if (range.lo > range.hi) raise(ErrorCode::InvalidInput, "empty isolation range");
    UPoly q = squarefree_part(p);
    if (q.degree() <= 0) return {};
    return q.degree() <= 48 ? sturm_isolate_impl(q, range) : descartes_isolate(q, range);
}

RatInterval refine_root(const UPoly& p, RatInterval iv, const mpq_class& target_width) {
    if (iv.is_point()) return iv;
    int sa = sgn(p.eval(iv.lo));
    int sb = sgn(p.eval(iv.hi));
    if (sa == 0) return {iv.lo, iv.lo};
    if (sb == 0) return {iv.hi, iv.hi};
    if (sa == sb) raise(ErrorCode::Internal, "refine_root: interval does not bracket a sign change");
    while (iv.width() > target_width) {
        mpq_class m = iv.mid();
        int sm = sgn(p.eval(m));
        if (sm == 0) return {m, m};
        if (sm == sa)
            iv.lo = m;
        else
            iv.hi = m;
    }
    return iv;
}

// ---------------------------------------------------------------------------
// bivariate coefficient extraction and modular resultants
// ---------------------------------------------------------------------------

std::vector<UPoly> y_coefficients(const MPoly& p) {
    if (p.deg_z() > 0) raise(ErrorCode::ArityMismatch, "polynomial involves z");
    if (p.is_zero()) return {};
    std::vector<std::vector<mpq_class>> rows(static_cast<size_t>(p.deg_y() + 1));
    for (const auto& [e, c] : p.terms()) {
        auto& row = rows[static_cast<size_t>(e.ey)];
        if (static_cast<int>(row.size()) <= e.ex) row.resize(static_cast<size_t>(e.ex + 1), mpq_class(0));
        row[static_cast<size_t>(e.ex)] = c;
    }
    std::vector<UPoly> out;
    out.reserve(rows.size());
    for (auto& r : rows) out.emplace_back(std::move(r));
    return out;
}

namespace {

MPoly swap_xy(const MPoly& p) {
    MPoly::TermMap t;
    for (const auto& [e, c] : p.terms()) t[{e.ey, e.ex, e.ez}] = c;
    return MPoly(std::move(t));
}

// dense integer matrix of y-coefficients: coeff[k] is the UPoly in x at y^k,
// scaled to a common integer form (positive rational scaling only)
std::vector<ZVec> integer_y_rows(const MPoly& p) {
    auto rows = y_coefficients(p);
    mpz_class den = 1;
    for (const auto& r : rows)
        for (const auto& c : r.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<ZVec> out(rows.size());
    for (size_t k = 0; k < rows.size(); ++k) {
        out[k].resize(rows[k].coeffs().size());
        for (size_t i = 0; i < out[k].size(); ++i) {
            mpq_class t = rows[k].coeffs()[i] * den;
            out[k][i] = t.get_num();
        }
    }
    return out;
}

UPoly upow(UPoly base, int e) {
    UPoly r = UPoly::constant(1);
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

} // namespace

UPoly eliminant_y(const MPoly& g, const MPoly& h) {
    if (g.deg_z() > 0 || h.deg_z() > 0) raise(ErrorCode::ArityMismatch, "polynomial involves z");
    if (g.is_zero() || h.is_zero()) return {};
    int py = g.deg_y(), qy = h.deg_y();
    auto grows = y_coefficients(g);
    auto hrows = y_coefficients(h);
    if (py <= 0 && qy <= 0) return UPoly::constant(1);
    if (py <= 0) return upow(grows[0], qy);
    if (qy <= 0) return upow(hrows[0], py);

    auto gz = integer_y_rows(g);
    auto hz = integer_y_rows(h);
    int dxg = std::max(g.deg_x(), 0), dxh = std::max(h.deg_x(), 0);
    int dx_bound = py * dxh + qy * dxg;

    // crude coefficient bound for the resultant via Hadamard-style counting
    double logb = 0;
    int n = py + qy;
    for (int k = 2; k <= n; ++k) logb += std::log2(static_cast<double>(k));
    size_t maxbits = 1;
    for (const auto& r : gz) maxbits = std::max(maxbits, max_coeff_bits(r));
    for (const auto& r : hz) maxbits = std::max(maxbits, max_coeff_bits(r));
    logb += n * (static_cast<double>(maxbits) + std::log2(static_cast<double>(std::max(dxg, dxh) + 1)) + 1.0);
    size_t nprimes = static_cast<size_t>(logb / 61.0) + 2;

    CrtAcc acc;
    acc.reset(static_cast<size_t>(dx_bound + 1));
    const auto& primes = prime_pool(nprimes + 64);
    size_t good = 0;
    for (size_t pi = 0; pi < primes.size() && good < nprimes; ++pi) {
        u64 p = primes[pi];
        PVec glc = reduce_mod(gz[static_cast<size_t>(py)], p);
        PVec hlc = reduce_mod(hz[static_cast<size_t>(qy)], p);
        if (glc.empty() || hlc.empty()) continue; // leading rows vanish mod p
        std::vector<PVec> gmod(gz.size()), hmod(hz.size());
        for (size_t k = 0; k < gz.size(); ++k) gmod[k] = reduce_mod(gz[k], p);
        for (size_t k = 0; k < hz.size(); ++k) hmod[k] = reduce_mod(hz[k], p);

        std::vector<u64> ts, vals;
        std::int64_t t = 0;
        while (static_cast<int>(ts.size()) <= dx_bound) {
            u64 tm = t >= 0 ? static_cast<u64>(t) % p : p - (static_cast<u64>(-t) % p);
            t = t > 0 ? -t : -t + 1; // 0, 1, -1, 2, -2, ...
            if (peval(glc, tm, p) == 0 || peval(hlc, tm, p) == 0) continue;
            PVec a(gmod.size()), b(hmod.size());
            for (size_t k = 0; k < gmod.size(); ++k) a[k] = peval(gmod[k], tm, p);
            for (size_t k = 0; k < hmod.size(); ++k) b[k] = peval(hmod[k], tm, p);
            ts.push_back(tm);
            vals.push_back(resultant_modp(std::move(a), std::move(b), p));
        }
        // Newton interpolation mod p, then expansion to the monomial basis
        size_t m = ts.size();
        std::vector<u64> nd(vals);
        for (size_t lvl = 1; lvl < m; ++lvl)
            for (size_t i = m - 1; i >= lvl; --i) {
                u64 den = subm(ts[i], ts[i - lvl], p);
                nd[i] = mulm(subm(nd[i], nd[i - 1], p), invm(den, p), p);
                if (i == lvl) break;
            }
        std::vector<u64> poly{nd[m - 1]};
        for (size_t i = m - 1; i-- > 0;) {
            poly.insert(poly.begin(), 0);
            for (size_t k = 0; k + 1 < poly.size(); ++k)
                poly[k] = addm(poly[k], mulm(poly[k + 1], subm(0, ts[i], p), p), p);
            poly[0] = addm(poly[0], nd[i], p);
        }
        poly.resize(static_cast<size_t>(dx_bound + 1), 0);
        acc.add(poly, p);
        ++good;
    }
    if (good < nprimes) raise(ErrorCode::Internal, "not enough usable primes for the resultant");
    ZVec z = acc.symmetric();
    zstrip(z);
    return from_z(z);
}

UPoly eliminant_x(const MPoly& g, const MPoly& h) {
    return eliminant_y(swap_xy(g), swap_xy(h));
}

std::vector<UPoly> x_coefficients(const MPoly& p) {
    return y_coefficients(swap_xy(p));
}

// ---------------------------------------------------------------------------
// scalar subresultant bottom over GF(p)
//
// Mirror of the exact bivariate chain normalization, specialized to scalar
// coefficients. Degrees of the inputs must equal the generic y-degrees (the
// caller skips evaluation points where a leading row vanishes), so the values
// interpolate coherently across primes and points.
// ---------------------------------------------------------------------------

namespace {

struct PBottom {
    u64 s11 = 0, s10 = 0, res = 0;
};

PVec psub(PVec a, const PVec& b, u64 p) {
    if (b.size() > a.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = subm(a[i], b[i], p);
    pstrip(a);
    return a;
}

PVec pneg(PVec a, u64 p) {
    for (auto& c : a) c = subm(0, c, p);
    return a;
}

PVec pscale(const PVec& a, u64 s, u64 p) {
    if (s == 0) return {};
    PVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = mulm(a[i], s, p);
    return r;
}

// pseudo-remainder with the chain's convention: scale by lc(B) at every step,
// including steps where the top coefficient is already absent
PVec sprem(PVec R, const PVec& B, u64 p) {
    int d = pdeg(R), e = pdeg(B);
    u64 l = B.back();
    for (int k = d - e; k >= 0; --k) {
        if (pdeg(R) == e + k) {
            u64 lr = R.back();
            PVec t(static_cast<size_t>(e + k) + 1, 0);
            for (int i = 0; i <= e; ++i) t[static_cast<size_t>(i + k)] = mulm(B[static_cast<size_t>(i)], lr, p);
            R = psub(pscale(R, l, p), t, p);
        } else {
            R = pscale(R, l, p);
        }
    }
    return R;
}

// pinned PRS bookkeeping for deg P > deg Q >= 1; unrecorded indices in a
// defective gap are zero
std::map<int, PVec> sprs_chain(const PVec& P, const PVec& Q, u64 p) {
    int dp = pdeg(P), dq = pdeg(Q);
    std::map<int, PVec> S;
    S[dq] = pscale(Q, powm(Q.back(), static_cast<u64>(dp - dq - 1), p), p);
    u64 s = powm(Q.back(), static_cast<u64>(dp - dq), p);
    PVec A = Q;
    PVec B = sprem(P, pneg(Q, p), p);
    while (true) {
        int d = pdeg(A), e = pdeg(B);
        if (B.empty()) break;
        S[d - 1] = B;
        PVec next_A;
        if (e < d - 1) {
            u64 f = mulm(powm(B.back(), static_cast<u64>(d - 1 - e), p),
                         invm(powm(s, static_cast<u64>(d - 1 - e), p), p), p);
            next_A = pscale(B, f, p);
            S[e] = next_A;
        } else {
            next_A = B;
        }
        if (e <= 0) break;
        u64 divisor = mulm(powm(s, static_cast<u64>(d - e), p), A.back(), p);
        PVec B_next = pscale(sprem(A, pneg(B, p), p), invm(divisor, p), p);
        A = std::move(next_A);
        s = A.back();
        B = std::move(B_next);
    }
    return S;
}

PVec schain_get(const std::map<int, PVec>& S, int j) {
    auto it = S.find(j);
    return it == S.end() ? PVec{} : it->second;
}

PBottom sbottom_from(const PVec& S1, const PVec& S0) {
    auto at = [](const PVec& a, int i) -> u64 {
        return i < static_cast<int>(a.size()) ? a[static_cast<size_t>(i)] : 0;
    };
    PBottom r;
    r.s11 = at(S1, 1);
    r.s10 = at(S1, 0);
    r.res = at(S0, 0);
    return r;
}

PBottom sbottom_equal(const PVec& P, const PVec& Q, u64 p) {
    int dp = pdeg(P);
    u64 a = P.back(), b = Q.back();
    PVec B0 = psub(pscale(P, b, p), pscale(Q, a, p), p);
    if (B0.empty()) return {}; // proportional: every lower subresultant vanishes
    int e0 = pdeg(B0);

    std::map<int, PVec> sub;
    if (e0 >= 1)
        sub = sprs_chain(Q, B0, p);
    else
        sub[0] = PVec{powm(B0[0], static_cast<u64>(dp), p)};

    PVec S[2];
    for (int j = 0; j <= 1 && j <= dp; ++j) {
        if (j == dp) continue;
        if (j == dp - 1) {
            S[j] = pneg(B0, p);
        } else if (j > e0) {
            S[j] = {};
        } else {
            PVec base = schain_get(sub, j);
            if ((dp - j) % 2) base = pneg(base, p);
            S[j] = pscale(base, invm(powm(b, static_cast<u64>(e0 - j), p), p), p);
        }
    }
    if (dp == 2) S[1] = pneg(pscale(B0, b, p), p);
    return sbottom_from(S[1], S[0]);
}

PBottom sbottom(const PVec& A, const PVec& B, u64 p) {
    int dp = pdeg(A), dq = pdeg(B);
    if (dp < 0 || dq < 0) return {};
    if (dp == 0 && dq == 0) {
        PBottom r;
        r.res = 1;
        return r;
    }
    if (dq == 0) {
        PBottom r;
        r.res = powm(B[0], static_cast<u64>(dp), p);
        return r;
    }
    if (dp == 0) {
        PBottom r;
        r.res = powm(A[0], static_cast<u64>(dq), p);
        return r;
    }
    if (dp > dq) {
        auto S = sprs_chain(A, B, p);
        return sbottom_from(schain_get(S, 1), schain_get(S, 0));
    }
    if (dp == dq) return sbottom_equal(A, B, p);
    PBottom r = sbottom(B, A, p);
    // S_j(A, B) = (-1)^((p-j)(q-j)) S_j(B, A)
    auto flipped = [&](u64 v, int j) { return ((dp - j) * (dq - j)) % 2 ? subm(0, v, p) : v; };
    r.s11 = flipped(r.s11, 1);
    r.s10 = flipped(r.s10, 1);
    r.res = flipped(r.res, 0);
    return r;
}

} // namespace

FirstSubresultant first_subresultant_y(const MPoly& g, const MPoly& h) {
    if (g.deg_z() > 0 || h.deg_z() > 0) raise(ErrorCode::ArityMismatch, "polynomial involves z");
    FirstSubresultant out;
    if (g.is_zero() || h.is_zero()) return out;
    int py = g.deg_y(), qy = h.deg_y();
    auto gz = integer_y_rows(g);
    auto hz = integer_y_rows(h);
    if (py <= 0 && qy <= 0) {
        out.res = UPoly::constant(1);
        return out;
    }
    if (py <= 0) {
        out.res = upow(from_z(gz[0]), qy);
        return out;
    }
    if (qy <= 0) {
        out.res = upow(from_z(hz[0]), py);
        return out;
    }

    int dxg = std::max(g.deg_x(), 0), dxh = std::max(h.deg_x(), 0);
    int dx_bound = py * dxh + qy * dxg;

    // the resultant's coefficient bound also covers the order-1 subresultant
    // (minors of the same matrix with two rows removed)
    double logb = 0;
    int n = py + qy;
    for (int k = 2; k <= n; ++k) logb += std::log2(static_cast<double>(k));
    size_t maxbits = 1;
    for (const auto& r : gz) maxbits = std::max(maxbits, max_coeff_bits(r));
    for (const auto& r : hz) maxbits = std::max(maxbits, max_coeff_bits(r));
    logb += n * (static_cast<double>(maxbits) + std::log2(static_cast<double>(std::max(dxg, dxh) + 1)) + 1.0);
    size_t nprimes = static_cast<size_t>(logb / 61.0) + 2;

    auto interp = [dx_bound](const std::vector<u64>& ts, std::vector<u64> nd, u64 p) {
        size_t m = ts.size();
        for (size_t lvl = 1; lvl < m; ++lvl)
            for (size_t i = m - 1; i >= lvl; --i) {
                u64 den = subm(ts[i], ts[i - lvl], p);
                nd[i] = mulm(subm(nd[i], nd[i - 1], p), invm(den, p), p);
                if (i == lvl) break;
            }
        std::vector<u64> poly{nd[m - 1]};
        for (size_t i = m - 1; i-- > 0;) {
            poly.insert(poly.begin(), 0);
            for (size_t k = 0; k + 1 < poly.size(); ++k)
                poly[k] = addm(poly[k], mulm(poly[k + 1], subm(0, ts[i], p), p), p);
            poly[0] = addm(poly[0], nd[i], p);
        }
        poly.resize(static_cast<size_t>(dx_bound + 1), 0);
        return poly;
    };

    CrtAcc acc_res, acc_s11, acc_s10;
    acc_res.reset(static_cast<size_t>(dx_bound + 1));
    acc_s11.reset(static_cast<size_t>(dx_bound + 1));
    acc_s10.reset(static_cast<size_t>(dx_bound + 1));
    const auto& primes = prime_pool(nprimes + 64);
    size_t good = 0;
    for (size_t pi = 0; pi < primes.size() && good < nprimes; ++pi) {
        u64 p = primes[pi];
        PVec glc = reduce_mod(gz[static_cast<size_t>(py)], p);
        PVec hlc = reduce_mod(hz[static_cast<size_t>(qy)], p);
        if (glc.empty() || hlc.empty()) continue; // leading rows vanish mod p
        std::vector<PVec> gmod(gz.size()), hmod(hz.size());
        for (size_t k = 0; k < gz.size(); ++k) gmod[k] = reduce_mod(gz[k], p);
        for (size_t k = 0; k < hz.size(); ++k) hmod[k] = reduce_mod(hz[k], p);

        std::vector<u64> ts, v_res, v_s11, v_s10;
        std::int64_t t = 0;
        while (static_cast<int>(ts.size()) <= dx_bound) {
            u64 tm = t >= 0 ? static_cast<u64>(t) % p : p - (static_cast<u64>(-t) % p);
            t = t > 0 ? -t : -t + 1; // 0, 1, -1, 2, -2, ...
            if (peval(glc, tm, p) == 0 || peval(hlc, tm, p) == 0) continue;
            PVec a(gmod.size()), b(hmod.size());
            for (size_t k = 0; k < gmod.size(); ++k) a[k] = peval(gmod[k], tm, p);
            for (size_t k = 0; k < hmod.size(); ++k) b[k] = peval(hmod[k], tm, p);
            PBottom bot = sbottom(a, b, p);
            ts.push_back(tm);
            v_res.push_back(bot.res);
            v_s11.push_back(bot.s11);
            v_s10.push_back(bot.s10);
        }
        acc_res.add(interp(ts, std::move(v_res), p), p);
        acc_s11.add(interp(ts, std::move(v_s11), p), p);
        acc_s10.add(interp(ts, std::move(v_s10), p), p);
        ++good;
    }
    if (good < nprimes) raise(ErrorCode::Internal, "not enough usable primes for the subresultant");
    auto lift = [](const CrtAcc& acc) {
        ZVec z = acc.symmetric();
        zstrip(z);
        return from_z(z);
    };
    out.res = lift(acc_res);
    out.s11 = lift(acc_s11);
    out.s10 = lift(acc_s10);
    return out;
}

} // namespace singuline
