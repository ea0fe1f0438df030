#pragma once

#include <array>
#include <utility>
#include <vector>

#include "singuline/interval.hpp"

namespace singuline {

template <class IV>
struct Box2T {
    IV x, y;

    bool is_empty() const { return x.is_empty() || y.is_empty(); }
    double width_d() const { return std::max(x.width_d(), y.width_d()); }

    Box2T mid_point() const { return {x.mid_point(), y.mid_point()}; }

    // Children in lexicographic order: (x-,y-), (x-,y+), (x+,y-), (x+,y+).
    std::array<Box2T, 4> split4() const {
        auto [xl, xr] = x.split();
        auto [yl, yr] = y.split();
        return {Box2T{xl, yl}, Box2T{xl, yr}, Box2T{xr, yl}, Box2T{xr, yr}};
    }

    static Box2T intersect(const Box2T& a, const Box2T& b) {
        return {IV::intersect(a.x, b.x), IV::intersect(a.y, b.y)};
    }
    static Box2T hull(const Box2T& a, const Box2T& b) {
        return {IV::hull(a.x, b.x), IV::hull(a.y, b.y)};
    }
    bool strictly_inside(const Box2T& outer) const {
        return x.strictly_inside(outer.x) && y.strictly_inside(outer.y);
    }
    bool overlaps(const Box2T& o) const {
        return !IV::intersect(x, o.x).is_empty() && !IV::intersect(y, o.y).is_empty();
    }
};

template <class IV>
struct Box3T {
    IV x, y, z;

    bool is_empty() const { return x.is_empty() || y.is_empty() || z.is_empty(); }
    double width_d() const { return std::max({x.width_d(), y.width_d(), z.width_d()}); }

    Box3T mid_point() const { return {x.mid_point(), y.mid_point(), z.mid_point()}; }

    static Box3T intersect(const Box3T& a, const Box3T& b) {
        return {IV::intersect(a.x, b.x), IV::intersect(a.y, b.y), IV::intersect(a.z, b.z)};
    }
    bool strictly_inside(const Box3T& outer) const {
        return x.strictly_inside(outer.x) && y.strictly_inside(outer.y) &&
               z.strictly_inside(outer.z);
    }
};

template <class IV>
struct ComplexBoxT {
    IV re, im;
};

// Relative epsilon-inflation: pad each axis by eps * max(width, floor) where
// floor guards degenerate (point) boxes.
template <class IV>
IV inflate_interval(const IV& v, double eps) {
    double w = v.width_d();
    double floor_w = 1e-300;
    double pad = eps * std::max(w, floor_w);
    return v + IV::from_double_pair(-pad, pad);
}

template <class IV>
Box2T<IV> inflate_box(const Box2T<IV>& b, double eps) {
    return {inflate_interval(b.x, eps), inflate_interval(b.y, eps)};
}

template <class IV>
Box3T<IV> inflate_box(const Box3T<IV>& b, double eps) {
    return {inflate_interval(b.x, eps), inflate_interval(b.y, eps), inflate_interval(b.z, eps)};
}

using Interval = DInterval;
using Box2 = Box2T<DInterval>;
using Box3 = Box3T<DInterval>;
using ComplexBox = ComplexBoxT<DInterval>;

// Convert any rung's interval to an outward double enclosure for reporting.
template <class IV>
DInterval to_double_interval(const IV& v) {
    if (v.is_empty()) return DInterval::empty();
    return DInterval(v.lo_d(), v.hi_d());
}

template <class IV>
Box2 to_double_box(const Box2T<IV>& b) {
    return {to_double_interval(b.x), to_double_interval(b.y)};
}

template <class IV>
Box3 to_double_box3(const Box3T<IV>& b) {
    return {to_double_interval(b.x), to_double_interval(b.y), to_double_interval(b.z)};
}

} // namespace singuline
