#include "singuline/subresultant.hpp"

#include <map>

#include "singuline/detpol.hpp"
#include "singuline/error.hpp"

namespace singuline {

int zdeg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

const BiPoly& zlc(const ZPoly& a) {
    static const BiPoly zero;
    return a.empty() ? zero : a.back();
}

ZPoly ztrim(ZPoly a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
    return a;
}

ZPoly zneg(const ZPoly& a) {
    ZPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

ZPoly zscale(const ZPoly& a, const BiPoly& s) {
    if (s.is_zero()) return {};
    ZPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return ztrim(std::move(r));
}

ZPoly zdiv_exact(const ZPoly& a, const BiPoly& s) {
    ZPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i].exact_div(s);
    return r;
}

ZPoly zsub(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size() && i < b.size())
            r[i] = a[i] - b[i];
        else if (i < a.size())
            r[i] = a[i];
        else
            r[i] = -b[i];
    }
    return ztrim(std::move(r));
}

ZPoly prem(const ZPoly& A, const ZPoly& B) {
    int d = zdeg(A), e = zdeg(B);
    if (e < 0 || d < e) raise(ErrorCode::Internal, "prem degree precondition");
    const BiPoly& l = zlc(B);
    ZPoly R = A;
    for (int k = d - e; k >= 0; --k) {
        if (zdeg(R) == e + k) {
            BiPoly lr = zlc(R);
            ZPoly t(static_cast<size_t>(e + k) + 1);
            for (int i = 0; i <= e; ++i) t[i + k] = B[i] * lr;
            R = zsub(zscale(R, l), ztrim(std::move(t)));
        } else {
            R = zscale(R, l);
        }
    }
    return R;
}

namespace {

// Pinned PRS bookkeeping for deg A > deg B >= 1; fills S[j] for recorded
// indices, everything else in a defective gap is zero.
std::map<int, ZPoly> prs_chain(const ZPoly& P, const ZPoly& Q) {
    int p = zdeg(P), q = zdeg(Q);
    std::map<int, ZPoly> S;
    S[q] = zscale(Q, zlc(Q).pow(static_cast<unsigned>(p - q - 1)));
    BiPoly s = zlc(Q).pow(static_cast<unsigned>(p - q));
    ZPoly A = Q;
    ZPoly B = prem(P, zneg(Q));
    while (true) {
        int d = zdeg(A), e = zdeg(B);
        if (B.empty()) break;
        S[d - 1] = B;
        ZPoly next_A;
        if (e < d - 1) {
            BiPoly num = zlc(B).pow(static_cast<unsigned>(d - 1 - e));
            BiPoly den = s.pow(static_cast<unsigned>(d - 1 - e));
            next_A = zdiv_exact(zscale(B, num), den);
            S[e] = next_A;
        } else {
            next_A = B;
        }
        if (e <= 0) break;
        BiPoly divisor = s.pow(static_cast<unsigned>(d - e)) * zlc(A);
        ZPoly B_next = zdiv_exact(prem(A, zneg(B)), divisor);
        A = std::move(next_A);
        s = zlc(A);
        B = std::move(B_next);
    }
    return S;
}

ZPoly chain_get(const std::map<int, ZPoly>& S, int j) {
    auto it = S.find(j);
    return it == S.end() ? ZPoly{} : it->second;
}

ChainBottom from_parts(const ZPoly& S2, const ZPoly& S1, const ZPoly& S0) {
    auto at = [](const ZPoly& a, int i) {
        return i < static_cast<int>(a.size()) ? a[i] : BiPoly();
    };
    ChainBottom r;
    r.s22 = at(S2, 2);
    r.s21 = at(S2, 1);
    r.s20 = at(S2, 0);
    r.s11 = at(S1, 1);
    r.s10 = at(S1, 0);
    r.f = at(S0, 0);
    return r;
}

ChainBottom bottom_unequal(const ZPoly& P, const ZPoly& Q) {
    auto S = prs_chain(P, Q);
    return from_parts(chain_get(S, 2), chain_get(S, 1), chain_get(S, 0));
}

ChainBottom bottom_equal(const ZPoly& P, const ZPoly& Q) {
    int p = zdeg(P);
    BiPoly a = zlc(P), b = zlc(Q);
    ZPoly B0 = zsub(zscale(P, b), zscale(Q, a));
    if (B0.empty())
        raise(ErrorCode::DegreeTooLow, "proportional inputs, resultant identically zero");
    int e0 = zdeg(B0);

    std::map<int, ZPoly> sub;
    if (e0 >= 1)
        sub = prs_chain(Q, B0);
    else
        sub[0] = ZPoly{B0[0].pow(static_cast<unsigned>(p))};

    ZPoly S[3];
    for (int j = 0; j <= 2 && j <= p; ++j) {
        if (j == p) continue; // p == 2 top handled below
        if (j == p - 1) {
            S[j] = zneg(B0);
        } else if (j > e0) {
            S[j] = {};
        } else {
            ZPoly base = chain_get(sub, j);
            if ((p - j) % 2) base = zneg(base);
            S[j] = zdiv_exact(base, b.pow(static_cast<unsigned>(e0 - j)));
        }
    }
    if (p == 2) {
        S[2] = zscale(Q, b);
        S[1] = zneg(zscale(B0, b));
    }
    return from_parts(S[2], S[1], S[0]);
}

} // namespace

ChainBottom subres_bottom(const ZPoly& A, const ZPoly& B) {
    int p = zdeg(A), q = zdeg(B);
    if (p < 0 || q < 0) return ChainBottom{};
    if (p == 0 && q == 0) {
        ChainBottom r;
        r.f = BiPoly::constant(1);
        return r;
    }
    if (q == 0) {
        ChainBottom r;
        r.f = B[0].pow(static_cast<unsigned>(p));
        return r;
    }
    if (p == 0) {
        ChainBottom r;
        r.f = A[0].pow(static_cast<unsigned>(q));
        return r;
    }
    if (p > q) return bottom_unequal(A, B);
    if (p == q) return bottom_equal(A, B);
    ChainBottom r = subres_bottom(B, A);
    // S_j(A, B) = (-1)^((p-j)(q-j)) S_j(B, A)
    auto flip = [&](BiPoly& v, int j) {
        if (((p - j) * (q - j)) % 2) v = -v;
    };
    flip(r.s22, 2);
    flip(r.s21, 2);
    flip(r.s20, 2);
    flip(r.s11, 1);
    flip(r.s10, 1);
    flip(r.f, 0);
    return r;
}

ZPoly zpoly_from_mpoly(const MPoly& p, mpz_class& multiplier) {
    multiplier = 1;
    for (const auto& [e, c] : p.terms())
        mpz_lcm(multiplier.get_mpz_t(), multiplier.get_mpz_t(), c.get_den().get_mpz_t());
    int dz = p.deg_z();
    if (dz < 0) return {};
    struct Grid {
        int nx = 0, ny = 0;
    };
    std::vector<Grid> dims(static_cast<size_t>(dz) + 1);
    for (const auto& [e, c] : p.terms()) {
        dims[e.ez].nx = std::max(dims[e.ez].nx, e.ex + 1);
        dims[e.ez].ny = std::max(dims[e.ez].ny, e.ey + 1);
    }
    std::vector<std::vector<mpz_class>> grids(dims.size());
    for (size_t i = 0; i < dims.size(); ++i)
        grids[i].resize(static_cast<size_t>(dims[i].nx) * dims[i].ny);
    for (const auto& [e, c] : p.terms()) {
        mpq_class v = c * multiplier;
        grids[e.ez][e.ex * dims[e.ez].ny + e.ey] = v.get_num();
    }
    ZPoly r(dims.size());
    for (size_t i = 0; i < dims.size(); ++i)
        r[i] = dims[i].nx ? BiPoly(dims[i].nx, dims[i].ny, std::move(grids[i])) : BiPoly();
    return ztrim(std::move(r));
}

MPoly zpoly_to_mpoly(const ZPoly& a) {
    MPoly::TermMap t;
    for (size_t i = 0; i < a.size(); ++i) {
        MPoly slice = a[i].to_mpoly();
        for (const auto& [e, c] : slice.terms()) t[Exp3{e.ex, e.ey, static_cast<int>(i)}] = c;
    }
    return MPoly(std::move(t));
}

SubresultantData subresultant_chain(const MPoly& P, const MPoly& Q) {
    int p = P.deg_z(), q = Q.deg_z();
    bool ok = (p >= 3 && q >= 2) || (p == 2 && q == 2);
    if (!ok)
        raise(ErrorCode::DegreeTooLow,
              "need deg_z(P) >= 3 and deg_z(Q) >= 2, or both equal to 2");

    mpz_class lp, lq;
    ZPoly A = zpoly_from_mpoly(P, lp);
    ZPoly B = zpoly_from_mpoly(Q, lq);
    ChainBottom cb = subres_bottom(A, B);

    // Exact invariant check: s22^2 f = s22 s10^2 - s21 s11 s10 + s20 s11^2.
    BiPoly m_s10s10 = cb.s10 * cb.s10;
    BiPoly m_s11s11 = cb.s11 * cb.s11;
    BiPoly m_s11s10 = cb.s11 * cb.s10;
    BiPoly lhs = cb.s22 * cb.s22 * cb.f;
    BiPoly rhs = cb.s22 * m_s10s10 - cb.s21 * m_s11s10 + cb.s20 * m_s11s11;
    if (!(lhs == rhs)) raise(ErrorCode::Internal, "subresultant identity violated");

    SubresultantData out;
    out.f = cb.f.to_mpoly();
    out.s10 = cb.s10.to_mpoly();
    out.s11 = cb.s11.to_mpoly();
    out.s20 = cb.s20.to_mpoly();
    out.s21 = cb.s21.to_mpoly();
    out.s22 = cb.s22.to_mpoly();
    out.deg_z_P = p;
    out.deg_z_Q = q;
    mpq_class scal(1);
    for (int i = 0; i < q; ++i) scal *= lp;
    for (int i = 0; i < p; ++i) scal *= lq;
    out.res_scalar = scal;
    return out;
}

SubresultantData checker_chain(const MPoly& P, const MPoly& Q) {
    if (P.is_zero() || Q.is_zero()) raise(ErrorCode::InvalidInput, "zero input polynomial");
    int p = P.deg_z(), q = Q.deg_z();
    if (p < q) return checker_chain(Q, P);
    if (p < 1) raise(ErrorCode::DegreeTooLow, "both inputs are constant in z");
    if ((p >= 3 && q >= 2) || (p == 2 && q == 2)) return subresultant_chain(P, Q);

    SubresultantData out;
    out.deg_z_P = p;
    out.deg_z_Q = q;
    MPoly zero = MPoly::constant(0);
    out.s20 = out.s21 = out.s22 = zero;
    out.s10 = out.s11 = zero;
    mpz_class lp, lq;
    ZPoly A = zpoly_from_mpoly(P, lp);
    ZPoly B = zpoly_from_mpoly(Q, lq);
    if (q == 0) {
        // Res_z(P, c) = c^p; no subresultants beyond index 0 exist.
        out.f = B[0].pow(static_cast<unsigned>(p)).to_mpoly();
        return out;
    }
    out.f = zpoly_to_mpoly(detpol_subres(A, B, 0));
    // Remaining fallback degrees: q = 1 (any p >= 1) or (p, q) = (2, 2) is
    // already handled, so S_2 does not exist and stays zero.
    ZPoly S1 = p == q ? zscale(B, zlc(B)) : detpol_subres(A, B, 1);
    if (S1.size() > 1) out.s11 = S1[1].to_mpoly();
    if (!S1.empty()) out.s10 = S1[0].to_mpoly();
    out.res_scalar = 0; // fallback values are not PRS-normalized
    return out;
}

} // namespace singuline
