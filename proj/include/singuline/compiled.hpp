#pragma once

#include <map>
#include <type_traits>
#include <vector>

#include "singuline/box.hpp"
#include "singuline/mpoly.hpp"

namespace singuline {

// Horner-factored evaluation scheme for a polynomial together with
// precomputed schemes for all first- and second-order partial derivatives.
// Evaluation supports centered forms:
//   order 0: plain Horner over the box,
//   order 1: f(c) + sum_v df/dv(B) * (B_v - c_v),
//   order 2: f(c) + sum_v df/dv(c) * (B_v - c_v)
//               + 1/2 * sum_{v,w} d2f/dvdw(B) * (B_v - c_v)(B_w - c_w).
// Coefficients are exact rationals; per-rung interval images are cached.
class CompiledPoly {
public:
    CompiledPoly() = default;
    // nvars: 2 (x,y) or 3 (x,y,z); 0 infers 3 exactly when deg_z > 0.
    explicit CompiledPoly(const MPoly& p, int nvars = 0);

    int nvars() const { return nvars_; }
    const MPoly& source() const { return source_; }

    template <class IV>
    IV eval(const Box2T<IV>& B, int order = 2) const;
    template <class IV>
    IV eval(const Box3T<IV>& B, int order = 2) const;

    // First partial derivative d/d(var) over B; order 0 (plain) or 1
    // (centered, using the second-derivative schemes).
    template <class IV>
    IV eval_deriv(int var, const Box2T<IV>& B, int order = 1) const;
    template <class IV>
    IV eval_deriv(int var, const Box3T<IV>& B, int order = 1) const;

private:
    struct Tensor {
        int nx = 0, ny = 0, nz = 0;
        std::vector<mpq_class> c; // row-major [ix][iy][iz]
        mutable std::vector<DInterval> dcache;
        mutable bool dcache_ready = false;
        mutable std::map<int, std::vector<MInterval>> mcache;

        template <class IV>
        const std::vector<IV>& cache() const {
            if constexpr (std::is_same_v<IV, DInterval>) {
                if (!dcache_ready) {
                    dcache.reserve(c.size());
                    for (const auto& q : c) dcache.push_back(DInterval::from_mpq(q));
                    dcache_ready = true;
                }
                return dcache;
            } else {
                auto it = mcache.find(mpfr_rung_bits());
                if (it == mcache.end()) {
                    std::vector<MInterval> v;
                    v.reserve(c.size());
                    for (const auto& q : c) v.push_back(MInterval::from_mpq(q));
                    it = mcache.emplace(mpfr_rung_bits(), std::move(v)).first;
                }
                return it->second;
            }
        }
    };

    static Tensor make_tensor(const MPoly& p, int nvars);

    template <class IV>
    static IV horner2(const Tensor& t, const IV& X, const IV& Y) {
        const auto& C = t.cache<IV>();
        IV acc;
        for (int i = t.nx - 1; i >= 0; --i) {
            IV row;
            for (int j = t.ny - 1; j >= 0; --j) row = row * Y + C[size_t(i) * t.ny + j];
            acc = acc * X + row;
        }
        return acc;
    }

    template <class IV>
    static IV horner3(const Tensor& t, const IV& X, const IV& Y, const IV& Z) {
        const auto& C = t.cache<IV>();
        IV acc;
        for (int i = t.nx - 1; i >= 0; --i) {
            IV plane;
            for (int j = t.ny - 1; j >= 0; --j) {
                IV row;
                for (int k = t.nz - 1; k >= 0; --k)
                    row = row * Z + C[(size_t(i) * t.ny + j) * t.nz + k];
                plane = plane * Y + row;
            }
            acc = acc * X + plane;
        }
        return acc;
    }

    template <class IV>
    IV horner_box(const Tensor& t, const Box2T<IV>& B) const {
        return horner2(t, B.x, B.y);
    }
    template <class IV>
    IV horner_box(const Tensor& t, const Box3T<IV>& B) const {
        return horner3(t, B.x, B.y, B.z);
    }

    const Tensor& d1(int v) const { return first_[size_t(v)]; }
    const Tensor& d2(int v, int w) const {
        if (v > w) std::swap(v, w);
        return second_[size_t(pair_index(v, w))];
    }
    int pair_index(int v, int w) const {
        // upper-triangle index for v <= w among nvars_ variables
        return v * nvars_ - v * (v - 1) / 2 + (w - v);
    }

    template <class Box, class IV>
    IV eval_impl(const Box& B, int order) const;
    template <class Box, class IV>
    IV eval_deriv_impl(int var, const Box& B, int order) const;

    MPoly source_;
    int nvars_ = 2;
    Tensor base_;
    std::vector<Tensor> first_;
    std::vector<Tensor> second_;
    mpq_class half_{1, 2};
};

// Spec-level convenience: interval image of the polynomial over the box.
template <class IV>
IV eval_box(const CompiledPoly& cp, const Box2T<IV>& B, int order = 2) {
    return cp.eval(B, order);
}
template <class IV>
IV eval_box(const CompiledPoly& cp, const Box3T<IV>& B, int order = 2) {
    return cp.eval(B, order);
}

template <class Box, class IV>
IV CompiledPoly::eval_impl(const Box& B, int order) const {
    if (order <= 0) {
        IV r = horner_box(base_, B);
        if (!r.is_finite()) raise(ErrorCode::PrecisionExhausted, "interval evaluation overflowed");
        return r;
    }
    Box c = B.mid_point();
    IV dx = B.x - c.x;
    IV dy = B.y - c.y;
    IV r = horner_box(base_, c);
    const int n = nvars_;
    if (order == 1) {
        r = r + eval_deriv_impl<Box, IV>(0, B, 0) * dx;
        r = r + eval_deriv_impl<Box, IV>(1, B, 0) * dy;
        if constexpr (std::is_same_v<Box, Box3T<IV>>) {
            IV dz = B.z - c.z;
            r = r + eval_deriv_impl<Box, IV>(2, B, 0) * dz;
        }
        if (!r.is_finite()) raise(ErrorCode::PrecisionExhausted, "interval evaluation overflowed");
        return r;
    }
    // order >= 2
    std::vector<IV> delta;
    delta.push_back(dx);
    delta.push_back(dy);
    if constexpr (std::is_same_v<Box, Box3T<IV>>) delta.push_back(B.z - c.z);
    for (int v = 0; v < n; ++v) r = r + horner_box(d1(v), c) * delta[size_t(v)];
    IV hf = IV::from_mpq(half_);
    for (int v = 0; v < n; ++v)
        for (int w = v; w < n; ++w) {
            IV term = horner_box(d2(v, w), B);
            if (v == w)
                term = term * IV::square(delta[size_t(v)]) * hf;
            else
                term = term * delta[size_t(v)] * delta[size_t(w)];
            r = r + term;
        }
    if (!r.is_finite()) raise(ErrorCode::PrecisionExhausted, "interval evaluation overflowed");
    return r;
}

template <class Box, class IV>
IV CompiledPoly::eval_deriv_impl(int var, const Box& B, int order) const {
    if (var < 0 || var >= nvars_) raise(ErrorCode::InvalidInput, "derivative variable out of range");
    if (order <= 0) {
        IV r = horner_box(d1(var), B);
        if (!r.is_finite()) raise(ErrorCode::PrecisionExhausted, "interval evaluation overflowed");
        return r;
    }
    Box c = B.mid_point();
    IV r = horner_box(d1(var), c);
    std::vector<IV> delta;
    delta.push_back(B.x - c.x);
    delta.push_back(B.y - c.y);
    if constexpr (std::is_same_v<Box, Box3T<IV>>) delta.push_back(B.z - c.z);
    for (int w = 0; w < nvars_; ++w) r = r + horner_box(d2(var, w), B) * delta[size_t(w)];
    if (!r.is_finite()) raise(ErrorCode::PrecisionExhausted, "interval evaluation overflowed");
    return r;
}

template <class IV>
IV CompiledPoly::eval(const Box2T<IV>& B, int order) const {
    if (nvars_ != 2) raise(ErrorCode::ArityMismatch, "trivariate scheme evaluated on a 2-box");
    return eval_impl<Box2T<IV>, IV>(B, order);
}
template <class IV>
IV CompiledPoly::eval(const Box3T<IV>& B, int order) const {
    if (nvars_ != 3) raise(ErrorCode::ArityMismatch, "bivariate scheme evaluated on a 3-box");
    return eval_impl<Box3T<IV>, IV>(B, order);
}
template <class IV>
IV CompiledPoly::eval_deriv(int var, const Box2T<IV>& B, int order) const {
    if (nvars_ != 2) raise(ErrorCode::ArityMismatch, "trivariate scheme evaluated on a 2-box");
    return eval_deriv_impl<Box2T<IV>, IV>(var, B, order);
}
template <class IV>
IV CompiledPoly::eval_deriv(int var, const Box3T<IV>& B, int order) const {
    if (nvars_ != 3) raise(ErrorCode::ArityMismatch, "bivariate scheme evaluated on a 3-box");
    return eval_deriv_impl<Box3T<IV>, IV>(var, B, order);
}

} // namespace singuline
