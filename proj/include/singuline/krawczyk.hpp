#pragma once

#include <array>

#include "singuline/compiled.hpp"

namespace singuline {

// Krawczyk operator for a square system F on a box B:
//   K = c - Y F(c) + (I - Y J_F(B)) (B - c),  Y = J_F(c)^{-1} via adjugate.
// The box is epsilon-inflated before the operator is formed; `certified`
// means K lies strictly inside the inflated box, which proves existence and
// uniqueness of a zero of F there, and that zero lies in K.
// Jacobian entries over the full box use order-`deriv_order` centered forms.

template <class IV>
struct KrawczykResult2 {
    bool certified = false;
    bool singular_midpoint = false;
    Box2T<IV> domain;     // inflated box the certificate refers to
    Box2T<IV> K;          // Krawczyk image (meaningless if singular_midpoint)
    Box2T<IV> contracted; // intersect(K, original B); may be empty
};

template <class IV>
struct KrawczykResult3 {
    bool certified = false;
    bool singular_midpoint = false;
    Box3T<IV> domain;
    Box3T<IV> K;
    Box3T<IV> contracted;
};

template <class IV>
KrawczykResult2<IV> krawczyk2(const CompiledPoly& f1, const CompiledPoly& f2,
                              const Box2T<IV>& B, double eps_inflation = 1e-2,
                              int deriv_order = 1) {
    KrawczykResult2<IV> res;
    Box2T<IV> Bw = eps_inflation > 0 ? inflate_box(B, eps_inflation) : B;
    res.domain = Bw;
    res.K = Bw;
    res.contracted = B;
    Box2T<IV> c = Bw.mid_point();
    std::array<const CompiledPoly*, 2> F = {&f1, &f2};
    std::array<IV, 2> F0;
    std::array<std::array<IV, 2>, 2> Jc, JB;
    for (int i = 0; i < 2; ++i) {
        F0[size_t(i)] = F[size_t(i)]->eval(c, 0);
        for (int j = 0; j < 2; ++j) {
            Jc[size_t(i)][size_t(j)] = F[size_t(i)]->eval_deriv(j, c, 0);
            JB[size_t(i)][size_t(j)] = F[size_t(i)]->eval_deriv(j, Bw, deriv_order);
        }
    }
    IV det = Jc[0][0] * Jc[1][1] - Jc[0][1] * Jc[1][0];
    if (det.contains_zero()) {
        res.singular_midpoint = true;
        return res;
    }
    std::array<std::array<IV, 2>, 2> Y;
    Y[0][0] = Jc[1][1] / det;
    Y[0][1] = -Jc[0][1] / det;
    Y[1][0] = -Jc[1][0] / det;
    Y[1][1] = Jc[0][0] / det;
    IV one = IV::from_double(1);
    std::array<std::array<IV, 2>, 2> M; // I - Y JB
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            IV s = Y[size_t(i)][0] * JB[0][size_t(j)] + Y[size_t(i)][1] * JB[1][size_t(j)];
            M[size_t(i)][size_t(j)] = (i == j ? one - s : -s);
        }
    std::array<IV, 2> delta = {Bw.x - c.x, Bw.y - c.y};
    IV kx = c.x - (Y[0][0] * F0[0] + Y[0][1] * F0[1]) + (M[0][0] * delta[0] + M[0][1] * delta[1]);
    IV ky = c.y - (Y[1][0] * F0[0] + Y[1][1] * F0[1]) + (M[1][0] * delta[0] + M[1][1] * delta[1]);
    res.K = {kx, ky};
    res.certified = res.K.strictly_inside(Bw);
    res.contracted = Box2T<IV>::intersect(res.K, B);
    return res;
}

template <class IV>
KrawczykResult3<IV> krawczyk3(const CompiledPoly& f1, const CompiledPoly& f2,
                              const CompiledPoly& f3, const Box3T<IV>& B,
                              double eps_inflation = 1e-2, int deriv_order = 1) {
    KrawczykResult3<IV> res;
    Box3T<IV> Bw = eps_inflation > 0 ? inflate_box(B, eps_inflation) : B;
    res.domain = Bw;
    res.K = Bw;
    res.contracted = B;
    Box3T<IV> c = Bw.mid_point();
    std::array<const CompiledPoly*, 3> F = {&f1, &f2, &f3};
    std::array<IV, 3> F0;
    std::array<std::array<IV, 3>, 3> Jc, JB;
    for (int i = 0; i < 3; ++i) {
        F0[size_t(i)] = F[size_t(i)]->eval(c, 0);
        for (int j = 0; j < 3; ++j) {
            Jc[size_t(i)][size_t(j)] = F[size_t(i)]->eval_deriv(j, c, 0);
            JB[size_t(i)][size_t(j)] = F[size_t(i)]->eval_deriv(j, Bw, deriv_order);
        }
    }
    auto minor2 = [&](int r0, int r1, int c0, int c1) {
        return Jc[size_t(r0)][size_t(c0)] * Jc[size_t(r1)][size_t(c1)] -
               Jc[size_t(r0)][size_t(c1)] * Jc[size_t(r1)][size_t(c0)];
    };
    IV det = Jc[0][0] * minor2(1, 2, 1, 2) - Jc[0][1] * minor2(1, 2, 0, 2) +
             Jc[0][2] * minor2(1, 2, 0, 1);
    if (det.contains_zero()) {
        res.singular_midpoint = true;
        return res;
    }
    std::array<std::array<IV, 3>, 3> Y; // adjugate / det
    Y[0][0] = minor2(1, 2, 1, 2) / det;
    Y[0][1] = -minor2(0, 2, 1, 2) / det;
    Y[0][2] = minor2(0, 1, 1, 2) / det;
    Y[1][0] = -minor2(1, 2, 0, 2) / det;
    Y[1][1] = minor2(0, 2, 0, 2) / det;
    Y[1][2] = -minor2(0, 1, 0, 2) / det;
    Y[2][0] = minor2(1, 2, 0, 1) / det;
    Y[2][1] = -minor2(0, 2, 0, 1) / det;
    Y[2][2] = minor2(0, 1, 0, 1) / det;
    IV one = IV::from_double(1);
    std::array<std::array<IV, 3>, 3> M;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            IV s = Y[size_t(i)][0] * JB[0][size_t(j)] + Y[size_t(i)][1] * JB[1][size_t(j)] +
                   Y[size_t(i)][2] * JB[2][size_t(j)];
            M[size_t(i)][size_t(j)] = (i == j ? one - s : -s);
        }
    std::array<IV, 3> delta = {Bw.x - c.x, Bw.y - c.y, Bw.z - c.z};
    std::array<IV, 3> mids = {c.x, c.y, c.z};
    std::array<IV, 3> out;
    for (int i = 0; i < 3; ++i) {
        IV nf = Y[size_t(i)][0] * F0[0] + Y[size_t(i)][1] * F0[1] + Y[size_t(i)][2] * F0[2];
        IV mv = M[size_t(i)][0] * delta[0] + M[size_t(i)][1] * delta[1] + M[size_t(i)][2] * delta[2];
        out[size_t(i)] = mids[size_t(i)] - nf + mv;
    }
    res.K = {out[0], out[1], out[2]};
    res.certified = res.K.strictly_inside(Bw);
    res.contracted = Box3T<IV>::intersect(res.K, B);
    return res;
}

// One contraction step B := B `intersect` K_F(B) without inflation. A zero of
// F inside B survives; empty intersection proves there is none. A singular
// midpoint Jacobian yields B unchanged (progress is the caller's concern).
template <class IV>
Box2T<IV> contract(const Box2T<IV>& B, const CompiledPoly& f1, const CompiledPoly& f2,
                   int deriv_order = 1) {
    auto r = krawczyk2(f1, f2, B, 0.0, deriv_order);
    if (r.singular_midpoint) return B;
    if (r.contracted.is_empty())
        raise(ErrorCode::EmptyIntersection, "Krawczyk contraction emptied the box");
    return r.contracted;
}

template <class IV>
Box3T<IV> contract(const Box3T<IV>& B, const CompiledPoly& f1, const CompiledPoly& f2,
                   const CompiledPoly& f3, int deriv_order = 1) {
    auto r = krawczyk3(f1, f2, f3, B, 0.0, deriv_order);
    if (r.singular_midpoint) return B;
    if (r.contracted.is_empty())
        raise(ErrorCode::EmptyIntersection, "Krawczyk contraction emptied the box");
    return r.contracted;
}

} // namespace singuline
