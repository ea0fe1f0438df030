#include "singuline/chart.hpp"

#include <algorithm>

namespace singuline {

const char* chart_name(ChartId c) {
    switch (c) {
    case ChartId::Identity: return "identity";
    case ChartId::ChartU: return "chart-u";
    case ChartId::ChartV: return "chart-v";
    }
    return "?";
}

int chart_clear_axis(ChartId c) {
    switch (c) {
    case ChartId::Identity: return -1;
    case ChartId::ChartU: return 0;
    case ChartId::ChartV: return 1;
    }
    return -1;
}

ClearedPoly chart_clear(const MPoly& p, ChartId c) {
    if (c == ChartId::Identity || p.is_zero()) return {p, 0};
    int D = 0;
    for (const auto& [e, q] : p.terms()) D = std::max(D, e.ex + e.ey);
    MPoly::TermMap t;
    for (const auto& [e, q] : p.terms()) {
        // x^i y^j -> (1/u)^i (v/u)^j * u^D  or  (u/v)^i (1/v)^j * v^D
        Exp3 m = c == ChartId::ChartU ? Exp3{D - e.ex - e.ey, e.ey, e.ez}
                                      : Exp3{e.ex, D - e.ex - e.ey, e.ez};
        t[m] = q;
    }
    return {MPoly(std::move(t)), D};
}

DInterval extended_div(const DInterval& num, const DInterval& den) {
    const double inf = std::numeric_limits<double>::infinity();
    if (num.is_empty() || den.is_empty()) return DInterval::empty();
    if (!den.contains_zero()) return num / den;
    if (den.lo == 0 && den.hi == 0) return DInterval(-inf, inf);
    if (num.contains_zero()) return DInterval(-inf, inf);
    if (den.lo < 0 && den.hi > 0) return DInterval(-inf, inf);
    if (num.lo > 0) {
        if (den.lo == 0) return DInterval(DInterval::down(num.lo / den.hi), inf);
        return DInterval(-inf, DInterval::up(num.lo / den.lo));
    }
    // num.hi < 0
    if (den.lo == 0) return DInterval(-inf, DInterval::up(num.hi / den.hi));
    return DInterval(DInterval::down(num.hi / den.lo), inf);
}

Box2 back_map_box(const Box2& b, ChartId c) {
    switch (c) {
    case ChartId::Identity: return b;
    case ChartId::ChartU:
        return {extended_div(DInterval(1, 1), b.x), extended_div(b.y, b.x)};
    case ChartId::ChartV:
        return {extended_div(b.x, b.y), extended_div(DInterval(1, 1), b.y)};
    }
    return b;
}

} // namespace singuline
