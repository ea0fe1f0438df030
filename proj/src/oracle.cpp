#include "singuline/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "singuline/error.hpp"
#include "singuline/mpoly.hpp"
#include "singuline/subresultant.hpp"

namespace singuline {

namespace {

// ---------------------------------------------------------------------------
// exact rational interval arithmetic
// ---------------------------------------------------------------------------

RatInterval riv_mul(const RatInterval& a, const RatInterval& b) {
    mpq_class p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {std::min(std::min(p1, p2), std::min(p3, p4)),
            std::max(std::max(p1, p2), std::max(p3, p4))};
}

RatInterval riv_add(const RatInterval& a, const RatInterval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
}

// requires 0 outside b
RatInterval riv_div(const RatInterval& a, const RatInterval& b) {
    mpq_class p1 = a.lo / b.lo, p2 = a.lo / b.hi, p3 = a.hi / b.lo, p4 = a.hi / b.hi;
    return {std::min(std::min(p1, p2), std::min(p3, p4)),
            std::max(std::max(p1, p2), std::max(p3, p4))};
}

RatInterval riv_intersect(const RatInterval& a, const RatInterval& b) {
    RatInterval r{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
    if (r.lo > r.hi) raise(ErrorCode::Internal, "empty interval intersection");
    return r;
}

bool riv_disjoint(const RatInterval& a, const RatInterval& b) {
    return a.hi < b.lo || b.hi < a.lo;
}

// ---------------------------------------------------------------------------
// polynomial utilities
// ---------------------------------------------------------------------------

int total_degree_xy(const MPoly& p) {
    int d = -1;
    for (const auto& [e, c] : p.terms()) d = std::max(d, e.ex + e.ey);
    return d;
}

MPoly d_dx(const MPoly& p) {
    MPoly::TermMap t;
    for (const auto& [e, c] : p.terms())
        if (e.ex > 0) t[{e.ex - 1, e.ey, e.ez}] += c * e.ex;
    return MPoly(std::move(t));
}

MPoly d_dy(const MPoly& p) {
    MPoly::TermMap t;
    for (const auto& [e, c] : p.terms())
        if (e.ey > 0) t[{e.ex, e.ey - 1, e.ez}] += c * e.ey;
    return MPoly(std::move(t));
}

// x -> x + t*y; a ring automorphism of the plane, so factor structure and
// local singularity type are preserved while abscissae become x + t*y
MPoly shear_x(const MPoly& f, long t) {
    if (t == 0) return f;
    MPoly::TermMap out;
    mpq_class tq(t);
    for (const auto& [e, c] : f.terms()) {
        if (e.ez > 0) raise(ErrorCode::ArityMismatch, "polynomial involves z");
        mpq_class tpow = 1;
        for (int i = e.ex; i >= 0; --i) {
            // term c * C(ex, i) * t^(ex-i) * x^i y^(ey+ex-i)
            mpz_class binc;
            mpz_bin_uiui(binc.get_mpz_t(), static_cast<unsigned long>(e.ex),
                         static_cast<unsigned long>(i));
            out[{i, e.ey + e.ex - i, 0}] += c * binc * tpow;
            tpow *= tq;
        }
    }
    return MPoly(std::move(out));
}

mpq_class cauchy_root_bound(const UPoly& p) {
    mpq_class m = 0;
    const mpq_class& l = p.lc();
    for (int i = 0; i < p.degree(); ++i) {
        mpq_class q(abs(p[i] / l));
        if (q > m) m = q;
    }
    return m + 1;
}

const UPoly& upoly_u() {
    static const UPoly u({mpq_class(0), mpq_class(1)});
    return u;
}

// An isolating interval may carry other roots of q exactly on its endpoints.
// Shrink until the endpoint values are nonzero, so the interval brackets its
// unique interior root with a sign change and contains no other root of q.
RatInterval sanitize_iv(const UPoly& q, RatInterval iv) {
    if (iv.is_point()) return iv;
    int sl = sgn(q.eval(iv.lo)), sh = sgn(q.eval(iv.hi));
    while (sl == 0 || sh == 0) {
        mpq_class m = iv.mid();
        int sm = sgn(q.eval(m));
        if (sm == 0) return {m, m}; // the unique interior root
        int left = count_roots_in_range(q, {iv.lo, m}) - (sl == 0 ? 1 : 0);
        if (left >= 1) {
            iv.hi = m;
            sh = sm;
        } else {
            iv.lo = m;
            sl = sm;
        }
    }
    return iv;
}

std::vector<RatInterval> isolate_sanitized(const UPoly& q, const RatInterval& range) {
    auto ivs = isolate_real_roots(q, range);
    for (auto& iv : ivs) iv = sanitize_iv(q, iv);
    return ivs;
}

// ---------------------------------------------------------------------------
// dynamic evaluation at one algebraic number
//
// A is squarefree with exactly one root alpha in I; non-point intervals have
// opposite signs of A at the endpoints. Zero tests may replace A by a factor
// that still vanishes at alpha, which preserves every established congruence.
// ---------------------------------------------------------------------------

struct AlgCtx {
    UPoly A;
    RatInterval I;

    AlgCtx(UPoly a, RatInterval iv) : A(std::move(a)), I(std::move(iv)) {
        if (I.is_point()) {
            A = UPoly({-I.lo, mpq_class(1)});
            return;
        }
        if (sgn(A.eval(I.lo)) * sgn(A.eval(I.hi)) >= 0)
            raise(ErrorCode::Internal, "evaluation interval does not bracket a root");
    }

    UPoly reduce(const UPoly& c) const {
        if (c.degree() < A.degree()) return c;
        return divmod(c, A).second;
    }

    void shrink() {
        if (I.is_point()) return;
        mpq_class m = I.mid();
        int sm = sgn(A.eval(m));
        if (sm == 0) {
            A = UPoly({-m, mpq_class(1)});
            I = {m, m};
            return;
        }
        if (sm == sgn(A.eval(I.lo)))
            I.lo = m;
        else
            I.hi = m;
    }

    bool is_zero(const UPoly& raw) {
        UPoly c = reduce(raw);
        if (c.is_zero()) return true;
        UPoly g = gcd(A, c);
        if (g.is_constant()) return false;
        if (count_roots_in_range(g, I) == 1) {
            A = g;
            return true;
        }
        auto [q, r] = divmod(A, g);
        if (!r.is_zero()) raise(ErrorCode::Internal, "gcd does not divide its argument");
        A = q;
        return false;
    }

    int sign(const UPoly& raw) {
        if (is_zero(raw)) return 0;
        UPoly c = reduce(raw);
        for (int it = 0; it < 20000; ++it) {
            RatInterval r = eval_range(c, I);
            if (!r.contains_zero()) return sgn(r.lo) > 0 ? 1 : -1;
            shrink();
        }
        raise(ErrorCode::Internal, "sign refinement stalled");
    }

    // c(alpha) != 0 required; after a false zero test gcd(A, c) = 1
    UPoly inverse(const UPoly& raw) {
        if (is_zero(raw)) raise(ErrorCode::Internal, "inverse of zero value");
        UPoly r0 = A, r1 = reduce(raw);
        UPoly v0 = UPoly::constant(0), v1 = UPoly::constant(1);
        while (!r1.is_zero()) {
            auto [q, r2] = divmod(r0, r1);
            UPoly v2 = v0 - q * v1;
            r0 = std::move(r1);
            r1 = std::move(r2);
            v0 = std::move(v1);
            v1 = std::move(v2);
        }
        if (!r0.is_constant() || r0.is_zero())
            raise(ErrorCode::Internal, "nontrivial gcd in inversion");
        return reduce(v0.scaled(mpq_class(1) / r0.lc()));
    }
};

// ---------------------------------------------------------------------------
// fiber polynomials: elements of Q(alpha)[y], dense ascending in y
// ---------------------------------------------------------------------------

using FPoly = std::vector<UPoly>;

int fdeg(const FPoly& f) { return static_cast<int>(f.size()) - 1; }

void fnormalize(FPoly& f, AlgCtx& ctx) {
    for (auto& c : f) c = ctx.reduce(c);
    while (!f.empty() && ctx.is_zero(f.back())) f.pop_back();
}

FPoly fiber_rows(const std::vector<UPoly>& rows, AlgCtx& ctx) {
    FPoly f;
    f.reserve(rows.size());
    for (const auto& r : rows) f.push_back(ctx.reduce(r));
    while (!f.empty() && ctx.is_zero(f.back())) f.pop_back();
    return f;
}

FPoly fderiv(const FPoly& f) {
    FPoly d;
    for (size_t k = 1; k < f.size(); ++k) d.push_back(f[k].scaled(mpq_class(static_cast<long>(k))));
    return d;
}

UPoly fval(const FPoly& f, const mpq_class& c, AlgCtx& ctx) {
    UPoly r = UPoly::constant(0);
    for (size_t k = f.size(); k-- > 0;) r = ctx.reduce(r.scaled(c) + f[k]);
    return r;
}

// true quotient and remainder; den must be normalized and nonzero
std::pair<FPoly, FPoly> fdivmod(FPoly num, const FPoly& den, AlgCtx& ctx) {
    if (den.empty()) raise(ErrorCode::Internal, "fiber division by zero");
    UPoly linv = ctx.inverse(den.back());
    FPoly q;
    if (fdeg(num) >= fdeg(den)) q.assign(static_cast<size_t>(fdeg(num) - fdeg(den)) + 1, UPoly());
    while (fdeg(num) >= fdeg(den)) {
        UPoly c = ctx.reduce(num.back() * linv);
        int sh = fdeg(num) - fdeg(den);
        q[static_cast<size_t>(sh)] = c;
        for (int i = 0; i < fdeg(den); ++i)
            num[static_cast<size_t>(i + sh)] =
                ctx.reduce(num[static_cast<size_t>(i + sh)] - c * den[static_cast<size_t>(i)]);
        num.pop_back(); // the top cancels as a polynomial congruence mod A
        while (!num.empty() && ctx.is_zero(num.back())) num.pop_back();
    }
    return {std::move(q), std::move(num)};
}

FPoly frem(const FPoly& num, const FPoly& den, AlgCtx& ctx) {
    return fdivmod(num, den, ctx).second;
}

FPoly fgcd(FPoly a, FPoly b, AlgCtx& ctx) {
    fnormalize(a, ctx);
    fnormalize(b, ctx);
    while (!b.empty()) {
        FPoly r = frem(a, b, ctx);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

FPoly fsquarefree(const FPoly& g, AlgCtx& ctx) {
    if (fdeg(g) <= 1) return g;
    FPoly gg = fgcd(g, fderiv(g), ctx);
    if (fdeg(gg) <= 0) return g;
    auto [q, r] = fdivmod(g, gg, ctx);
    if (!r.empty()) raise(ErrorCode::Internal, "squarefree fiber division not exact");
    return q;
}

// deflate by (y - c); requires an exact root at c
FPoly fdeflate(const FPoly& g, const mpq_class& c, AlgCtx& ctx) {
    FPoly q(g.size() - 1);
    q.back() = g.back();
    for (size_t k = g.size() - 1; k-- > 1;)
        q[k - 1] = ctx.reduce(g[k] + q[k].scaled(c));
    return q;
}

// generalized Sturm chain; counts distinct roots even for repeated ones
struct FSturm {
    std::vector<FPoly> chain;
    AlgCtx* ctx;

    FSturm(FPoly g, AlgCtx& c) : ctx(&c) {
        fnormalize(g, c);
        chain.push_back(g);
        FPoly d = fderiv(g);
        fnormalize(d, c);
        if (!d.empty()) chain.push_back(d);
        while (chain.size() >= 2 && fdeg(chain.back()) >= 1) {
            FPoly r = frem(chain[chain.size() - 2], chain.back(), *ctx);
            if (r.empty()) break;
            for (auto& e : r) e = -e;
            chain.push_back(std::move(r));
        }
    }

    // nullopt endpoint means -inf (dir < 0) or +inf (dir > 0)
    int variations(const std::optional<mpq_class>& at, int dir) {
        int prev = 0, var = 0;
        for (const auto& el : chain) {
            int s;
            if (at) {
                s = ctx->sign(fval(el, *at, *ctx));
            } else {
                s = ctx->sign(el.back());
                if (dir < 0 && (fdeg(el) & 1)) s = -s;
            }
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++var;
            prev = s;
        }
        return var;
    }
};

// distinct roots of g in the closed range; infinite endpoints via nullopt
int count_distinct_closed(FPoly g, const std::optional<mpq_class>& lo,
                          const std::optional<mpq_class>& hi, AlgCtx& ctx,
                          bool& lo_root, bool& hi_root) {
    lo_root = hi_root = false;
    if (g.empty() || fdeg(g) < 1) raise(ErrorCode::Internal, "fiber root count needs positive degree");
    if (lo && hi && *lo > *hi) raise(ErrorCode::Internal, "empty fiber range");
    if (lo && hi && *lo == *hi) {
        lo_root = ctx.is_zero(fval(g, *lo, ctx));
        return lo_root ? 1 : 0;
    }
    if (lo)
        while (fdeg(g) >= 1 && ctx.is_zero(fval(g, *lo, ctx))) {
            lo_root = true;
            g = fdeflate(g, *lo, ctx);
            fnormalize(g, ctx);
        }
    if (hi)
        while (fdeg(g) >= 1 && ctx.is_zero(fval(g, *hi, ctx))) {
            hi_root = true;
            g = fdeflate(g, *hi, ctx);
            fnormalize(g, ctx);
        }
    int interior = 0;
    if (fdeg(g) >= 1) {
        FSturm st(g, ctx);
        interior = st.variations(lo, -1) - st.variations(hi, +1);
    }
    return interior + (lo_root ? 1 : 0) + (hi_root ? 1 : 0);
}

// ---------------------------------------------------------------------------
// rational parametrization of a point over its fiber:
//   y0 = num_y/den at alpha, x0 = (u*den - t*num_y)/den = alpha - t*y0
// ---------------------------------------------------------------------------

struct RurPoint {
    AlgCtx ctx;
    long t = 0;
    UPoly num_y, den, num_x;

    RurPoint(AlgCtx c, long tt, UPoly ny, UPoly d)
        : ctx(std::move(c)), t(tt), num_y(std::move(ny)), den(std::move(d)) {
        num_x = upoly_u() * den - num_y.scaled(mpq_class(t));
    }

    RatInterval den_range() {
        for (int it = 0; it < 20000; ++it) {
            RatInterval r = eval_range(den, ctx.I);
            if (!r.contains_zero()) return r;
            ctx.shrink();
        }
        raise(ErrorCode::Internal, "denominator range refinement stalled");
    }

    RatInterval enclose_x() { return riv_div(eval_range(num_x, ctx.I), den_range()); }
    RatInterval enclose_y() { return riv_div(eval_range(num_y, ctx.I), den_range()); }
};

// closed-box membership on one axis; equality with an edge is decided exactly
// by the caller and passed in, the interior test refines the enclosure
bool axis_inside(RurPoint& pt, bool xaxis, const std::optional<mpq_class>& lo,
                 const std::optional<mpq_class>& hi, bool eq_lo, bool eq_hi) {
    if (eq_lo || eq_hi) return true; // on the closed boundary for this axis
    for (int it = 0; it < 20000; ++it) {
        RatInterval r = xaxis ? pt.enclose_x() : pt.enclose_y();
        bool lo_known = !lo || r.lo > *lo || r.hi < *lo;
        bool hi_known = !hi || r.hi < *hi || r.lo > *hi;
        if (lo_known && hi_known) return (!lo || r.lo > *lo) && (!hi || r.hi < *hi);
        pt.ctx.shrink();
    }
    raise(ErrorCode::Internal, "membership refinement stalled");
}

// rational closed box with optional (infinite) edges
struct RatBox {
    std::optional<mpq_class> xlo, xhi, ylo, yhi;
};

std::optional<mpq_class> edge_of(double v) {
    if (std::isnan(v)) raise(ErrorCode::InvalidInput, "box endpoint is NaN");
    if (std::isinf(v)) return std::nullopt;
    return mpq_class(v);
}

RatBox to_ratbox(const Box2& b) {
    return {edge_of(b.x.lo), edge_of(b.x.hi), edge_of(b.y.lo), edge_of(b.y.hi)};
}

} // namespace

// ---------------------------------------------------------------------------
// ExactPoint
// ---------------------------------------------------------------------------

struct ExactPoint::Impl {
    RurPoint pt;
    UPoly xdef, ydef;
    RatInterval xiv, yiv;

    Impl(RurPoint p, UPoly xd, UPoly yd) : pt(std::move(p)), xdef(std::move(xd)), ydef(std::move(yd)) {}

    void shrink_once() {
        pt.ctx.shrink();
        xiv = riv_intersect(xiv, pt.enclose_x());
        yiv = riv_intersect(yiv, pt.enclose_y());
    }

    // establish enclosures that isolate single roots of the public defining
    // polynomials; isolations of all their real roots are supplied
    void init(const std::vector<RatInterval>& xiso, const std::vector<RatInterval>& yiso) {
        auto settle = [&](bool xaxis, const std::vector<RatInterval>& iso) {
            for (int it = 0; it < 20000; ++it) {
                RatInterval r = xaxis ? pt.enclose_x() : pt.enclose_y();
                int hits = 0;
                for (const auto& iv : iso)
                    if (!riv_disjoint(r, iv)) ++hits;
                if (hits == 1) return r;
                pt.ctx.shrink();
            }
            raise(ErrorCode::Internal, "point isolation stalled");
        };
        xiv = settle(true, xiso);
        yiv = settle(false, yiso);
    }

    void refine(const mpq_class& width) {
        for (int it = 0; it < 20000; ++it) {
            if (xiv.width() <= width && yiv.width() <= width) return;
            shrink_once();
        }
        raise(ErrorCode::Internal, "point refinement stalled");
    }
};

const UPoly& ExactPoint::xpoly() const { return impl_->xdef; }
const UPoly& ExactPoint::ypoly() const { return impl_->ydef; }
RatInterval ExactPoint::x() const { return impl_->xiv; }
RatInterval ExactPoint::y() const { return impl_->yiv; }
void ExactPoint::refine(const mpq_class& width) { impl_->refine(width); }

const char* oracle_kind_name(OracleKind k) {
    switch (k) {
        case OracleKind::Node: return "node";
        case OracleKind::OrdinaryCusp: return "cusp";
        case OracleKind::Other: return "other";
    }
    raise(ErrorCode::Internal, "unknown kind");
}

namespace {

// -1, 0, +1 ordering of one coordinate of two points sharing a defining
// polynomial; equality is recognized when a common enclosure holds one root
int cmp_coord(ExactPoint::Impl& a, ExactPoint::Impl& b, bool xaxis) {
    const UPoly& pub = xaxis ? a.xdef : a.ydef;
    for (int it = 0; it < 400; ++it) {
        const RatInterval& ra = xaxis ? a.xiv : a.yiv;
        const RatInterval& rb = xaxis ? b.xiv : b.yiv;
        if (ra.hi < rb.lo) return -1;
        if (rb.hi < ra.lo) return 1;
        RatInterval hull{std::min(ra.lo, rb.lo), std::max(ra.hi, rb.hi)};
        if (count_roots_in_range(pub, hull) == 1) return 0;
        a.shrink_once();
        b.shrink_once();
    }
    raise(ErrorCode::Internal, "point comparison stalled");
}

// ---------------------------------------------------------------------------
// exact classification
// ---------------------------------------------------------------------------

// den^K * g(alpha, num_y/den) as an element of Q(alpha); K >= deg_y g
UPoly lift_value(const MPoly& g, RurPoint& pt, int K) {
    auto rows = y_coefficients(g);
    UPoly val = static_cast<int>(rows.size()) > K ? pt.ctx.reduce(rows[static_cast<size_t>(K)])
                                                  : UPoly::constant(0);
    UPoly dpow = UPoly::constant(1);
    for (int k = K - 1; k >= 0; --k) {
        dpow = pt.ctx.reduce(dpow * pt.den);
        UPoly rk = k < static_cast<int>(rows.size()) ? rows[static_cast<size_t>(k)] : UPoly();
        val = pt.ctx.reduce(val * pt.num_y + rk * dpow);
    }
    return val;
}

// second-order data of the sheared curve at the frame's working point
struct Frame {
    long t = 0;
    MPoly F, Fx, Fy;
    MPoly Fxx, Fxy, Fyy, detH;
    MPoly Fxxx, Fxxy, Fxyy, Fyyy;

    explicit Frame(const MPoly& f, long tt) : t(tt) {
        F = shear_x(f, t);
        Fx = d_dx(F);
        Fy = d_dy(F);
        Fxx = d_dx(Fx);
        Fxy = d_dy(Fx);
        Fyy = d_dy(Fy);
        detH = Fxx * Fyy - Fxy * Fxy;
        Fxxx = d_dx(Fxx);
        Fxxy = d_dy(Fxx);
        Fxyy = d_dy(Fxy);
        Fyyy = d_dy(Fyy);
    }
};

// Node iff the Hessian determinant is nonzero at the point. The interval
// route resolves every node; genuinely vanishing determinants exhaust the
// budget and fall through to the exact algebraic route.
OracleKind classify_at(const Frame& fr, RurPoint& pt) {
    for (int it = 0; it < 140; ++it) {
        RatInterval r = eval_range2(fr.detH, pt.ctx.I, pt.enclose_y());
        if (!r.contains_zero()) return OracleKind::Node;
        if (pt.ctx.I.is_point()) break;
        pt.ctx.shrink();
    }
    int K = std::max(fr.F.deg_y(), 0);
    if (!pt.ctx.is_zero(lift_value(fr.F, pt, K)) || !pt.ctx.is_zero(lift_value(fr.Fx, pt, K)) ||
        !pt.ctx.is_zero(lift_value(fr.Fy, pt, K)))
        raise(ErrorCode::Internal, "working point fails back-substitution");
    // only zero-ness of the lifted values matters below, so the uniform
    // den^K scaling (and its sign) never needs correcting
    if (!pt.ctx.is_zero(lift_value(fr.detH, pt, std::max(fr.detH.deg_y(), 0))))
        return OracleKind::Node;
    UPoly h20 = lift_value(fr.Fxx, pt, K);
    UPoly h11 = lift_value(fr.Fxy, pt, K);
    UPoly h02 = lift_value(fr.Fyy, pt, K);
    bool z20 = pt.ctx.is_zero(h20), z11 = pt.ctx.is_zero(h11), z02 = pt.ctx.is_zero(h02);
    if (z20 && z11 && z02) return OracleKind::Other; // second order vanishes entirely
    UPoly vx, vy;
    if (!z20 || !z11) {
        vx = -h11;
        vy = h20;
    } else {
        vx = UPoly::constant(1);
        vy = UPoly::constant(0);
    }
    auto red = [&](const UPoly& p) { return pt.ctx.reduce(p); };
    UPoly vx2 = red(vx * vx), vy2 = red(vy * vy);
    UPoly cubic = red(red(lift_value(fr.Fxxx, pt, K) * vx2) * vx);
    cubic = cubic + red(red(lift_value(fr.Fxxy, pt, K) * vx2) * vy).scaled(3);
    cubic = cubic + red(red(lift_value(fr.Fxyy, pt, K) * vy2) * vx).scaled(3);
    cubic = cubic + red(red(lift_value(fr.Fyyy, pt, K) * vy2) * vy);
    return pt.ctx.is_zero(cubic) ? OracleKind::Other : OracleKind::OrdinaryCusp;
}

// ---------------------------------------------------------------------------
// per-fiber handlers
// ---------------------------------------------------------------------------

struct FiberPoint {
    RurPoint pt;
    OracleKind kind;
};

enum class FiberOutcome { Point, Empty, RetryFrame };

// exact pair-vs-edge equality decided through a context zero test
bool edge_eq(AlgCtx& ctx, const UPoly& numer, const std::optional<mpq_class>& c) {
    return c.has_value() && ctx.is_zero(numer);
}

// slow route for a single fiber: intersect the three fiber polynomials over
// Q(alpha); sound for any input shape, used when the subresultant
// specialization is not available
FiberOutcome slow_fiber(const Frame& fr, const UPoly& cand, const RatInterval& iv,
                        const RatBox& box, std::optional<FiberPoint>& out) {
    AlgCtx ctx(cand, iv);
    FPoly fF = fiber_rows(y_coefficients(fr.F), ctx);
    if (fF.empty()) return FiberOutcome::RetryFrame; // fiber line component in this frame
    FPoly fFy = fiber_rows(y_coefficients(fr.Fy), ctx);
    FPoly fFx = fiber_rows(y_coefficients(fr.Fx), ctx);
    FPoly g = fgcd(fgcd(fF, fFy, ctx), fFx, ctx);
    if (fdeg(g) <= 0) return FiberOutcome::Empty;
    FPoly gs = fsquarefree(g, ctx);
    fnormalize(gs, ctx);
    if (fdeg(gs) != 1) {
        bool lr, hr;
        int nreal = count_distinct_closed(gs, std::nullopt, std::nullopt, ctx, lr, hr);
        if (nreal == 0) return FiberOutcome::Empty; // only complex intersections here
        return FiberOutcome::RetryFrame;            // several points over one abscissa
    }
    RurPoint pt(std::move(ctx), fr.t, -gs[0], gs[1]);
    bool ex_lo = edge_eq(pt.ctx, box.xlo ? pt.num_x - pt.den.scaled(*box.xlo) : UPoly(), box.xlo);
    bool ex_hi = edge_eq(pt.ctx, box.xhi ? pt.num_x - pt.den.scaled(*box.xhi) : UPoly(), box.xhi);
    bool ey_lo = edge_eq(pt.ctx, box.ylo ? pt.num_y - pt.den.scaled(*box.ylo) : UPoly(), box.ylo);
    bool ey_hi = edge_eq(pt.ctx, box.yhi ? pt.num_y - pt.den.scaled(*box.yhi) : UPoly(), box.yhi);
    if (!axis_inside(pt, true, box.xlo, box.xhi, ex_lo, ex_hi) ||
        !axis_inside(pt, false, box.ylo, box.yhi, ey_lo, ey_hi))
        return FiberOutcome::Empty;
    OracleKind kind = classify_at(fr, pt);
    out = FiberPoint{std::move(pt), kind};
    return FiberOutcome::Point;
}

// ---------------------------------------------------------------------------
// frames
// ---------------------------------------------------------------------------

using PointList = std::vector<std::pair<ExactPoint, OracleKind>>;

struct PubData {
    UPoly xpub, ypub;
    std::vector<RatInterval> xiso, yiso;
};

std::optional<PointList> run_frame(const MPoly& f, long t, const RatBox& box, const PubData& pub) {
    Frame fr(f, t);
    auto rowsF = y_coefficients(fr.F);
    int dyF = static_cast<int>(rowsF.size()) - 1;
    if (t != 0 && (dyF != total_degree_xy(f) || !rowsF.back().is_constant()))
        return std::nullopt; // shear direction hits the top form

    UPoly cand;
    FirstSubresultant s1;
    bool fast = dyF >= 2;
    UPoly g_d, g_s11, g_s11p, g_lcf, g_lcx;
    UPoly g_nlo, g_nhi, g_mlo, g_mhi;
    if (fast) {
        s1 = first_subresultant_y(fr.F, fr.Fy);
        if (s1.res.is_zero()) raise(ErrorCode::Internal, "squarefree input with vanishing discriminant");
        FirstSubresultant s2 = first_subresultant_y(fr.F, fr.Fx);
        if (s2.res.is_zero()) {
            fast = false; // a factor moves with x; fall back to fiber intersections
            cand = squarefree_part(s1.res);
        } else {
            cand = squarefree_part(gcd(s1.res, s2.res));
            if (!cand.is_constant()) {
                UPoly D = s1.s10 * s2.s11 - s2.s10 * s1.s11;
                g_d = gcd(cand, D);
                g_s11 = gcd(cand, s1.s11);
                g_s11p = gcd(cand, s2.s11);
                auto rowsFx = y_coefficients(fr.Fx);
                g_lcx = rowsFx.empty() ? UPoly::constant(1) : gcd(cand, rowsFx.back());
                g_lcf = rowsF.back().is_constant() ? UPoly::constant(1) : gcd(cand, rowsF.back());
                mpq_class tq(t);
                if (box.xlo) g_nlo = gcd(cand, (upoly_u() - UPoly::constant(*box.xlo)) * s1.s11 + s1.s10.scaled(tq));
                if (box.xhi) g_nhi = gcd(cand, (upoly_u() - UPoly::constant(*box.xhi)) * s1.s11 + s1.s10.scaled(tq));
                if (box.ylo) g_mlo = gcd(cand, -s1.s10 - s1.s11.scaled(*box.ylo));
                if (box.yhi) g_mhi = gcd(cand, -s1.s10 - s1.s11.scaled(*box.yhi));
            }
        }
    } else {
        UPoly r1 = first_subresultant_y(fr.F, fr.Fy).res;
        if (r1.is_zero()) raise(ErrorCode::Internal, "squarefree input with vanishing discriminant");
        UPoly r2 = first_subresultant_y(fr.F, fr.Fx).res;
        cand = squarefree_part(gcd(r1, r2));
    }
    if (cand.is_constant()) return PointList{};

    mpq_class bound = cauchy_root_bound(cand);
    auto fibers = isolate_sanitized(cand, {-bound, bound});

    auto root_here = [&](const UPoly& g, const RatInterval& iv) {
        return g.degree() >= 1 && count_roots_in_range(g, iv) == 1;
    };

    PointList result;
    std::vector<FiberPoint> raw;
    for (const auto& iv : fibers) {
        std::optional<FiberPoint> fp;
        if (fast) {
            bool ok = !root_here(g_s11, iv) && !root_here(g_s11p, iv) && !root_here(g_lcx, iv) &&
                      !root_here(g_lcf, iv);
            if (!ok) {
                FiberOutcome o = slow_fiber(fr, cand, iv, box, fp);
                if (o == FiberOutcome::RetryFrame) return std::nullopt;
                if (fp) raw.push_back(std::move(*fp));
                continue;
            }
            if (!root_here(g_d, iv)) continue; // the two critical sets miss each other here
            RurPoint pt(AlgCtx(cand, iv), t, -s1.s10, s1.s11);
            bool ex_lo = box.xlo && root_here(g_nlo, iv);
            bool ex_hi = box.xhi && root_here(g_nhi, iv);
            bool ey_lo = box.ylo && root_here(g_mlo, iv);
            bool ey_hi = box.yhi && root_here(g_mhi, iv);
            if (!axis_inside(pt, true, box.xlo, box.xhi, ex_lo, ex_hi) ||
                !axis_inside(pt, false, box.ylo, box.yhi, ey_lo, ey_hi))
                continue;
            OracleKind kind = classify_at(fr, pt);
            raw.push_back(FiberPoint{std::move(pt), kind});
        } else {
            FiberOutcome o = slow_fiber(fr, cand, iv, box, fp);
            if (o == FiberOutcome::RetryFrame) return std::nullopt;
            if (fp) raw.push_back(std::move(*fp));
        }
    }

    for (auto& fp : raw) {
        auto impl = std::make_shared<ExactPoint::Impl>(std::move(fp.pt), pub.xpub, pub.ypub);
        impl->init(pub.xiso, pub.yiso);
        result.emplace_back(ExactPoint(impl), fp.kind);
    }
    return result;
}

UPoly fold_gcd(const std::vector<UPoly>& polys) {
    UPoly g;
    for (const auto& p : polys) g = g.is_zero() ? p : gcd(g, p);
    return g;
}

} // namespace

// ---------------------------------------------------------------------------
// public entry points
// ---------------------------------------------------------------------------

std::vector<std::pair<ExactPoint, OracleKind>>
oracle_singular_points(const MPoly& P, const MPoly& Q, const Box2& B0) {
    MPoly f = checker_chain(P, Q).f;
    if (f.deg_z() > 0) raise(ErrorCode::Internal, "eliminated curve still involves z");
    if (f.is_zero()) raise(ErrorCode::InvalidInput, "eliminated curve is identically zero");
    if (total_degree_xy(f) > 16) raise(ErrorCode::DegreeGuardExceeded, "curve degree above the desk-scale guard");
    if (B0.is_empty()) return {};
    RatBox box = to_ratbox(B0);

    if (f.deg_x() <= 0 && f.deg_y() <= 0) return {};
    if (f.deg_y() <= 0 || f.deg_x() <= 0) {
        // a union of axis-parallel lines: smooth unless a line repeats
        auto rows = f.deg_y() <= 0 ? y_coefficients(f) : x_coefficients(f);
        const UPoly& u = rows[0];
        if (squarefree_part(u).degree() != u.degree())
            raise(ErrorCode::InvalidInput, "curve has a repeated component");
        return {};
    }

    MPoly fx = d_dx(f), fy = d_dy(f);
    std::vector<UPoly> elim_y, elim_x;
    for (const auto& [a, b] : {std::pair<const MPoly&, const MPoly&>{f, fx}, {f, fy}, {fx, fy}}) {
        UPoly ey = eliminant_y(a, b);
        if (!ey.is_zero()) elim_y.push_back(std::move(ey));
        UPoly ex = eliminant_x(a, b);
        if (!ex.is_zero()) elim_x.push_back(std::move(ex));
    }
    if (elim_y.empty() || elim_x.empty())
        raise(ErrorCode::InvalidInput, "curve has a repeated component");

    PubData pub;
    pub.xpub = squarefree_part(fold_gcd(elim_y));
    pub.ypub = squarefree_part(fold_gcd(elim_x));
    if (pub.xpub.is_constant() || pub.ypub.is_constant()) return {};
    mpq_class cx = cauchy_root_bound(pub.xpub), cy = cauchy_root_bound(pub.ypub);
    pub.xiso = isolate_real_roots(pub.xpub, {-cx, cx});
    pub.yiso = isolate_real_roots(pub.ypub, {-cy, cy});

    for (long k = 0; k <= 64; ++k) {
        for (long t : {k, -k}) {
            auto r = run_frame(f, t, box, pub);
            if (r) {
                std::sort(r->begin(), r->end(), [](const auto& a, const auto& b) {
                    int cx2 = cmp_coord(*a.first.impl(), *b.first.impl(), true);
                    if (cx2 != 0) return cx2 < 0;
                    return cmp_coord(*a.first.impl(), *b.first.impl(), false) < 0;
                });
                return std::move(*r);
            }
            if (t == 0) break;
        }
    }
    raise(ErrorCode::Internal, "no admissible shear direction");
}

int oracle_count_roots_in_box(const MPoly& g_in, const MPoly& h_in, const Box2& B, int* boundary) {
    if (g_in.deg_z() > 0 || h_in.deg_z() > 0) raise(ErrorCode::ArityMismatch, "polynomial involves z");
    if (boundary) *boundary = 0;
    MPoly g = g_in, h = h_in;
    if ((!g.is_zero() && total_degree_xy(g) == 0) || (!h.is_zero() && total_degree_xy(h) == 0))
        return 0; // a nonzero constant never vanishes
    if (g.is_zero() || h.is_zero())
        raise(ErrorCode::InvalidInput, "zero polynomial has a positive-dimensional zero set");
    if (total_degree_xy(g) > 32 || total_degree_xy(h) > 32)
        raise(ErrorCode::DegreeGuardExceeded, "degree above the desk-scale guard");
    if (B.is_empty()) return 0;
    RatBox box = to_ratbox(B);

    if (g.deg_y() > 0 && h.deg_y() <= 0) std::swap(g, h);
    UPoly cand;
    if (g.deg_y() <= 0 && h.deg_y() <= 0) {
        UPoly common = gcd(y_coefficients(g)[0], y_coefficients(h)[0]);
        if (common.degree() < 1) return 0;
        RatInterval xr{box.xlo ? *box.xlo : -cauchy_root_bound(common),
                       box.xhi ? *box.xhi : cauchy_root_bound(common)};
        if (count_roots_in_range(common, xr) > 0)
            raise(ErrorCode::InvalidInput, "vertical line of common zeros");
        return 0;
    }
    if (g.deg_y() <= 0) {
        cand = y_coefficients(g)[0];
    } else {
        cand = eliminant_y(g, h);
        if (cand.is_zero()) raise(ErrorCode::InvalidInput, "common curve component");
    }
    if (cand.is_constant()) return 0;
    cand = squarefree_part(cand);

    auto grows = y_coefficients(g), hrows = y_coefficients(h);
    mpq_class bd = cauchy_root_bound(cand);
    int total = 0, on_edge = 0;
    for (const auto& iv : isolate_sanitized(cand, {-bd, bd})) {
        AlgCtx ctx(cand, iv);
        // exact position of alpha against the box x-edges
        auto eq_edge = [&](const std::optional<mpq_class>& c) {
            return c && sgn(cand.eval(*c)) == 0 && ctx.I.contains(*c);
        };
        bool ex_lo = eq_edge(box.xlo), ex_hi = eq_edge(box.xhi);
        if (!ex_lo && !ex_hi) {
            bool inside = true;
            for (int it = 0;; ++it) {
                const RatInterval& r = ctx.I;
                bool lo_known = !box.xlo || r.lo > *box.xlo || r.hi < *box.xlo;
                bool hi_known = !box.xhi || r.hi < *box.xhi || r.lo > *box.xhi;
                if (lo_known && hi_known) {
                    inside = (!box.xlo || r.lo > *box.xlo) && (!box.xhi || r.hi < *box.xhi);
                    break;
                }
                if (it >= 20000) raise(ErrorCode::Internal, "abscissa refinement stalled");
                ctx.shrink();
            }
            if (!inside) continue;
        }
        FPoly fg = fiber_rows(grows, ctx);
        FPoly fh = fiber_rows(hrows, ctx);
        if (fg.empty() && fh.empty())
            raise(ErrorCode::InvalidInput, "vertical line of common zeros");
        FPoly G;
        if (fg.empty())
            G = std::move(fh);
        else if (fh.empty())
            G = std::move(fg);
        else
            G = fgcd(fg, fh, ctx);
        if (fdeg(G) <= 0) continue;
        bool lo_root = false, hi_root = false;
        int cnt = count_distinct_closed(G, box.ylo, box.yhi, ctx, lo_root, hi_root);
        total += cnt;
        if (ex_lo || ex_hi)
            on_edge += cnt;
        else
            on_edge += (lo_root ? 1 : 0) + (hi_root ? 1 : 0);
    }
    if (boundary) *boundary = on_edge;
    return total;
}

RatInterval eval_range2(const MPoly& p, const RatInterval& x, const RatInterval& y) {
    RatInterval acc{0, 0};
    auto rows = y_coefficients(p);
    for (size_t k = rows.size(); k-- > 0;)
        acc = riv_add(riv_mul(acc, y), eval_range(rows[k], x));
    return acc;
}

int oracle_sign_at(const MPoly& p, const ExactPoint& pt) {
    if (p.deg_z() > 0) raise(ErrorCode::ArityMismatch, "polynomial involves z");
    if (p.is_zero()) return 0;
    ExactPoint::Impl& im = *pt.impl();
    RurPoint& rp = im.pt;
    int D = total_degree_xy(p);
    std::vector<UPoly> px(static_cast<size_t>(D) + 1), py(static_cast<size_t>(D) + 1),
        pd(static_cast<size_t>(D) + 1);
    px[0] = py[0] = pd[0] = UPoly::constant(1);
    for (int i = 1; i <= D; ++i) {
        px[static_cast<size_t>(i)] = rp.ctx.reduce(px[static_cast<size_t>(i - 1)] * rp.num_x);
        py[static_cast<size_t>(i)] = rp.ctx.reduce(py[static_cast<size_t>(i - 1)] * rp.num_y);
        pd[static_cast<size_t>(i)] = rp.ctx.reduce(pd[static_cast<size_t>(i - 1)] * rp.den);
    }
    UPoly acc;
    for (const auto& [e, c] : p.terms()) {
        UPoly term = rp.ctx.reduce(px[static_cast<size_t>(e.ex)] * py[static_cast<size_t>(e.ey)]);
        term = rp.ctx.reduce(term * pd[static_cast<size_t>(D - e.ex - e.ey)]);
        acc = acc + term.scaled(c);
    }
    int s = rp.ctx.sign(acc);
    if (s != 0 && (D & 1) && rp.ctx.sign(rp.den) < 0) s = -s;
    return s;
}

} // namespace singuline
