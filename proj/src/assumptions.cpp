#include "singuline/assumptions.hpp"

#include <deque>

#include "singuline/quadratic.hpp"
#include "singuline/subresultant.hpp"

namespace singuline {

const char* assumption_tag_name(AssumptionTag t) {
    switch (t) {
    case AssumptionTag::A1: return "A1";
    case AssumptionTag::A2: return "A2";
    case AssumptionTag::A3: return "A3";
    case AssumptionTag::A4: return "A4";
    }
    return "?";
}

std::vector<MPoly> z_slices(const MPoly& p) {
    int dz = std::max(p.deg_z(), 0);
    std::vector<MPoly::TermMap> maps(static_cast<size_t>(dz) + 1);
    for (const auto& [e, c] : p.terms()) maps[size_t(e.ez)][Exp3{e.ex, e.ey, 0}] = c;
    std::vector<MPoly> out;
    out.reserve(maps.size());
    for (auto& m : maps) out.emplace_back(std::move(m));
    return out;
}

TangentSystem make_tangent_system(const MPoly& P, const MPoly& Q) {
    MPoly Px = derivative(P, 'x'), Py = derivative(P, 'y'), Pz = derivative(P, 'z');
    MPoly Qx = derivative(Q, 'x'), Qy = derivative(Q, 'y'), Qz = derivative(Q, 'z');
    TangentSystem ts;
    ts.t[0] = CompiledPoly(Py * Qz - Pz * Qy, 3);
    ts.t[1] = CompiledPoly(Pz * Qx - Px * Qz, 3);
    ts.t[2] = CompiledPoly(Px * Qy - Py * Qx, 3);
    return ts;
}

CheckerPolys make_checker_polys(const MPoly& P, const MPoly& Q, ChartId chart) {
    SubresultantData d = checker_chain(P, Q);
    MPoly Px = derivative(P, 'x'), Py = derivative(P, 'y'), Pz = derivative(P, 'z');
    MPoly Qx = derivative(Q, 'x'), Qy = derivative(Q, 'y'), Qz = derivative(Q, 'z');

    CheckerPolys cp;
    cp.chart = chart;
    cp.clear_axis = chart_clear_axis(chart);
    cp.f = chart_clear(d.f, chart).poly;
    ClearedPoly c11 = chart_clear(d.s11, chart);
    ClearedPoly c10 = chart_clear(d.s10, chart);
    ClearedPoly c22 = chart_clear(d.s22, chart);
    ClearedPoly c21 = chart_clear(d.s21, chart);
    ClearedPoly c20 = chart_clear(d.s20, chart);
    cp.s11 = c11.poly;
    cp.s10 = c10.poly;
    cp.s22 = c22.poly;
    cp.s21 = c21.poly;
    cp.s20 = c20.poly;
    cp.iz_exp = c11.exponent - c10.exponent;
    cp.q21_exp = c22.exponent - c21.exponent;
    cp.q20_exp = c22.exponent - c20.exponent;
    cp.LP = chart_clear(leading_coeff_z(P), chart).poly;
    cp.LQ = chart_clear(leading_coeff_z(Q), chart).poly;
    cp.tangent = {chart_clear(Py * Qz - Pz * Qy, chart).poly,
                  chart_clear(Pz * Qx - Px * Qz, chart).poly,
                  chart_clear(Px * Qy - Py * Qx, chart).poly};
    cp.P3 = chart_clear(P, chart).poly;
    cp.Q3 = chart_clear(Q, chart).poly;
    return cp;
}

namespace {

struct ComplexIv {
    DInterval re, im;
};

struct Ctx {
    CompiledPoly f, s10, s11, s20, s21, s22, LP, LQ, jac;
    std::array<CompiledPoly, 3> tangent3;            // trivariate schemes
    std::array<std::vector<CompiledPoly>, 3> tslice; // bivariate z-slices per component
    std::vector<CompiledPoly> Pz, Qz;
    int clear_axis = -1;
    int iz_exp = 0, q21_exp = 0, q20_exp = 0;

    explicit Ctx(const CheckerPolys& p)
        : f(p.f, 2), s10(p.s10, 2), s11(p.s11, 2), s20(p.s20, 2), s21(p.s21, 2),
          s22(p.s22, 2), LP(p.LP, 2), LQ(p.LQ, 2),
          jac(derivative(p.s11, 'x') * derivative(p.s10, 'y') -
                  derivative(p.s11, 'y') * derivative(p.s10, 'x'),
              2),
          clear_axis(p.clear_axis), iz_exp(p.iz_exp), q21_exp(p.q21_exp),
          q20_exp(p.q20_exp) {
        for (int i = 0; i < 3; ++i) {
            tangent3[size_t(i)] = CompiledPoly(p.tangent[size_t(i)], 3);
            for (const MPoly& s : z_slices(p.tangent[size_t(i)]))
                tslice[size_t(i)].emplace_back(s, 2);
        }
        for (const MPoly& s : z_slices(p.P3)) Pz.emplace_back(s, 2);
        for (const MPoly& s : z_slices(p.Q3)) Qz.emplace_back(s, 2);
    }

    DInterval axis(const Box2& B) const { return clear_axis == 1 ? B.y : B.x; }

    // value * w^e where w is the clearing coordinate over B; false when the
    // exponent is negative and w straddles 0 (no finite correction exists).
    bool apply_power(const Box2& B, int e, DInterval& value) const {
        if (e == 0) return true;
        DInterval w = axis(B);
        if (e < 0 && w.contains_zero()) return false;
        DInterval we = w;
        for (int i = 1; i < std::abs(e); ++i) we = we * w;
        value = e > 0 ? value * we : value / we;
        return true;
    }

    // Upper bound on |z| of any root of the z-polynomial whose coefficient
    // slices are given, over the box; requires the leading slice to exclude 0.
    bool cauchy_bound(const std::vector<CompiledPoly>& slices, const Box2& B,
                      double& out) const {
        if (slices.size() < 2) return false;
        DInterval top = slices.back().eval(B, 2);
        if (top.contains_zero()) return false;
        double denom = std::min(std::fabs(top.lo), std::fabs(top.hi));
        double num = 0;
        for (size_t k = 0; k + 1 < slices.size(); ++k) {
            DInterval c = slices[k].eval(B, 2);
            num = std::max(num, std::max(std::fabs(c.lo), std::fabs(c.hi)));
        }
        out = DInterval::up(1.0 + DInterval::up(num / denom));
        return true;
    }

    // Best-effort |z| bound for common roots above B; empty() when neither
    // input yields one (the checks then run without clipping).
    DInterval z_guard(const Box2& B) const {
        double best = std::numeric_limits<double>::infinity();
        double zp = 0, zq = 0;
        if (cauchy_bound(Pz, B, zp)) best = std::min(best, zp);
        if (cauchy_bound(Qz, B, zq)) best = std::min(best, zq);
        if (!std::isfinite(best)) return DInterval::empty();
        return DInterval(-best, best);
    }

    bool tangent_contains_zero_real(const Box2& B, const DInterval& Iz) const {
        Box3 B3{B.x, B.y, Iz};
        for (const auto& t : tangent3)
            if (!t.eval(B3, 2).contains_zero()) return false;
        return true;
    }

    ComplexIv eval_slices_complex(const std::vector<CompiledPoly>& slices, const Box2& B,
                                  const ComplexBox& z) const {
        ComplexIv acc{DInterval(0, 0), DInterval(0, 0)};
        for (size_t k = slices.size(); k-- > 0;) {
            DInterval re = acc.re * z.re - acc.im * z.im;
            DInterval im = acc.re * z.im + acc.im * z.re;
            acc.re = re + slices[k].eval(B, 2);
            acc.im = im;
        }
        return acc;
    }

    bool tangent_contains_zero_complex(const Box2& B, const ComplexBox& z) const {
        for (const auto& comp : tslice) {
            ComplexIv v = eval_slices_complex(comp, B, z);
            if (!v.re.contains_zero() || !v.im.contains_zero()) return false;
        }
        return true;
    }

    // True when some z-free tangent component excludes 0 over B: then the
    // tangent cannot vanish above B for any z whatsoever, bounded or not.
    bool tangent_excludes_all_z(const Box2& B) const {
        for (const auto& comp : tslice)
            if (comp.size() == 1 && !comp[0].eval(B, 2).contains_zero()) return true;
        return false;
    }
};

struct Decision {
    bool subdivide = false;
    AssumptionTag tag = AssumptionTag::A2;
};

Decision decide(const Ctx& ctx, const Box2& B) {
    if (ctx.LP.eval(B, 2).contains_zero() && ctx.LQ.eval(B, 2).contains_zero())
        return {true, AssumptionTag::A3};

    if (!ctx.f.eval(B, 2).contains_zero()) return {false, AssumptionTag::A2};

    DInterval s11v = ctx.s11.eval(B, 2);
    if (!s11v.contains_zero()) {
        DInterval guard = ctx.z_guard(B);
        DInterval ratio = -(ctx.s10.eval(B, 2) / s11v);
        bool have_ratio = ctx.apply_power(B, ctx.iz_exp, ratio);
        DInterval Iz;
        if (have_ratio && !guard.is_empty())
            Iz = DInterval::intersect(ratio, guard);
        else if (have_ratio)
            Iz = ratio;
        else if (!guard.is_empty())
            Iz = guard;
        else if (ctx.tangent_excludes_all_z(B))
            return {false, AssumptionTag::A1}; // tangent nonzero for every z
        else
            return {true, AssumptionTag::A1}; // no z bound: cannot test, refine
        if (Iz.is_empty()) return {false, AssumptionTag::A1};
        if (ctx.tangent_contains_zero_real(B, Iz)) return {true, AssumptionTag::A1};
        return {false, AssumptionTag::A1};
    }

    DInterval s22v = ctx.s22.eval(B, 2);
    if (!s22v.contains_zero()) {
        DInterval s21v = ctx.s21.eval(B, 2);
        DInterval s20v = ctx.s20.eval(B, 2);
        if (ctx.apply_power(B, ctx.q21_exp, s21v) && ctx.apply_power(B, ctx.q20_exp, s20v)) {
            DInterval guard = ctx.z_guard(B);
            auto zboxes = complex_quadratic_enclosure(s22v, s21v, s20v);
            for (const auto& zb : zboxes) {
                ComplexBox clipped = zb;
                if (!guard.is_empty()) {
                    clipped.re = DInterval::intersect(zb.re, guard);
                    clipped.im = DInterval::intersect(zb.im, guard);
                    if (clipped.re.is_empty() || clipped.im.is_empty()) continue;
                }
                if (ctx.tangent_contains_zero_complex(B, clipped))
                    return {true, AssumptionTag::A1};
            }
        } else if (!ctx.tangent_excludes_all_z(B)) {
            return {true, AssumptionTag::A1}; // quadratic not representable here
        }
        // Regularity of the deflated pair only constrains its common zeros;
        // if s10 misses zero on B there are none, so the box is clear.
        if (!ctx.s10.eval(B, 2).contains_zero()) return {false, AssumptionTag::A4};
        if (ctx.jac.eval(B, 2).contains_zero()) return {true, AssumptionTag::A4};
        return {false, AssumptionTag::A4};
    }

    return {true, AssumptionTag::A2};
}

Decision decide_guarded(const Ctx& ctx, const Box2& B) {
    try {
        return decide(ctx, B);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::PrecisionExhausted) return {true, AssumptionTag::A2};
        throw;
    }
}

} // namespace

AssumptionVerdict check_assumptions(const CheckerPolys& polys, const Box2& B0,
                                    const CheckBudget& budget) {
    Ctx ctx(polys);
    AssumptionVerdict verdict;
    struct Item {
        Box2 box;
        int depth;
    };
    std::deque<Item> work;
    work.push_back({B0, 0});
    while (!work.empty()) {
        if (verdict.boxes_processed >= budget.max_boxes) {
            // Budget hit: label the remaining frontier without expanding it.
            for (const auto& it : work) {
                Decision d = decide_guarded(ctx, it.box);
                if (d.subdivide) verdict.stalled_boxes.push_back({it.box, d.tag});
            }
            break;
        }
        Item it = work.front();
        work.pop_front();
        ++verdict.boxes_processed;
        verdict.max_depth_reached = std::max(verdict.max_depth_reached, it.depth);
        Decision d = decide_guarded(ctx, it.box);
        if (!d.subdivide) continue;
        if (it.depth >= budget.max_depth) {
            verdict.stalled_boxes.push_back({it.box, d.tag});
            continue;
        }
        for (const Box2& child : it.box.split4()) work.push_back({child, it.depth + 1});
    }
    verdict.status = verdict.stalled_boxes.empty() ? AssumptionVerdict::Status::Verified
                                                   : AssumptionVerdict::Status::BudgetExhausted;
    return verdict;
}

AssumptionVerdict check_assumptions(const MPoly& P, const MPoly& Q, const Box2& B0,
                                    const CheckBudget& budget) {
    return check_assumptions(make_checker_polys(P, Q), B0, budget);
}

} // namespace singuline
