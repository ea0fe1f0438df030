#include "singuline/topology.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "singuline/chart.hpp"
#include "singuline/error.hpp"

namespace singuline {

namespace {

constexpr int kIterationsPerRung = 64;
constexpr int kRefineIterations = 256;
constexpr int kMaxCornerRetries = 24;
constexpr int kEdgeDepthCap = 64;

std::vector<int> precision_rungs(int cap_bits) {
    std::vector<int> rungs{0};
    for (int b = 128; b <= cap_bits; b *= 2) rungs.push_back(b);
    return rungs;
}

template <class IV>
Box2T<IV> box_from_double(const Box2& b) {
    return {IV::from_double_pair(b.x.lo_d(), b.x.hi_d()),
            IV::from_double_pair(b.y.lo_d(), b.y.hi_d())};
}

// v *= w^e for the clearing coordinate w; false when e < 0 and w straddles 0.
template <class IV>
bool apply_axis_power(const Box2T<IV>& B, int axis, int e, IV& v) {
    if (e == 0) return true;
    IV w = axis == 1 ? B.y : B.x;
    if (e < 0) {
        if (w.contains_zero()) return false;
        for (int i = 0; i < -e; ++i) v = v / w;
    } else {
        for (int i = 0; i < e; ++i) v = v * w;
    }
    return true;
}

// One K_(s11,s10) contraction; false when no strict width progress was made.
template <class IV>
bool contract_step(Box2T<IV>& B, const CompiledPoly& s11, const CompiledPoly& s10) {
    Box2T<IV> nb = contract(B, s11, s10, 1);
    bool progress = nb.width_d() < B.width_d();
    B = nb;
    return progress;
}

template <class IV>
bool classify_resultant_rung(const LocalCurve& lc, const CompiledPoly& s11,
                             const CompiledPoly& s10, const Box2& seed, ClassifyOutcome& out) {
    Box2T<IV> B = box_from_double<IV>(seed);
    for (int it = 0; it <= kIterationsPerRung; ++it) {
        IV dh = hessian_det(lc, B);
        if (!dh.contains_zero()) {
            out.branches = dh.is_positive() ? 0 : 4;
            out.kind = SingKind::Node;
            out.test = dh.is_positive() ? "hessian-positive" : "hessian-negative";
            out.box = to_double_box(B);
            return true;
        }
        if (it == kIterationsPerRung) break;
        ++out.iterations;
        if (!contract_step(B, s11, s10)) break; // floored at this precision
    }
    return false;
}

template <class IV>
bool classify_discriminant_rung(const LocalCurve& lc, const CompiledPoly& s11,
                                const CompiledPoly& s10, const CompiledPoly& s21,
                                const CompiledPoly& s22, const TripleSystem& ts, int clear_axis,
                                int q21_exp, const Box2& seed, double eps, ClassifyOutcome& out) {
    Box2T<IV> B = box_from_double<IV>(seed);
    for (int it = 0; it <= kIterationsPerRung; ++it) {
        IV dh = hessian_det(lc, B);
        if (!dh.contains_zero()) {
            out.branches = dh.is_positive() ? 0 : 4;
            out.kind = SingKind::Node;
            out.test = dh.is_positive() ? "hessian-positive" : "hessian-negative";
            out.box = to_double_box(B);
            return true;
        }
        IV s22v = s22.eval(B, 2);
        if (!s22v.contains_zero()) {
            IV s21v = s21.eval(B, 2);
            if (apply_axis_power(B, clear_axis, q21_exp, s21v)) {
                IV Iz = -(s21v / (IV::from_double(2) * s22v));
                Box3T<IV> D{B.x, B.y, Iz};
                Box3T<IV> K;
                if (triple_root_certificate(ts, D, eps, &K)) {
                    out.branches = 2;
                    out.kind = SingKind::OrdinaryCusp;
                    out.test = "triple-root-krawczyk";
                    out.box = to_double_box(B);
                    out.triple_root_box = to_double_box3(K);
                    return true;
                }
            }
        }
        if (it == kIterationsPerRung) break;
        ++out.iterations;
        if (!contract_step(B, s11, s10)) break;
    }
    return false;
}

struct LoopRung {
    bool passed = false;
    const char* which = "";
    Box2 box;
    int iterations = 0;
};

template <class IV>
LoopRung loop_rung(const LocalCurve& lc, const CompiledPoly& s11, const CompiledPoly& s10,
                   const Box2& seed, SingKind kind, double eps) {
    LoopRung r;
    Box2T<IV> B = box_from_double<IV>(seed);
    for (int it = 0; it <= kIterationsPerRung; ++it) {
        const char* which = nullptr;
        bool ok = kind == SingKind::Node ? node_loop_test(lc, B, eps, &which)
                                         : cusp_loop_test(lc, B, &which);
        if (ok) {
            r.passed = true;
            r.which = which;
            r.box = to_double_box(B);
            return r;
        }
        if (it == kIterationsPerRung) break;
        ++r.iterations;
        if (!contract_step(B, s11, s10)) break;
    }
    return r;
}

int sign_at(const CompiledPoly& f, const Box2& point) {
    DInterval v = f.eval(point, 0);
    if (v.is_positive()) return 1;
    if (v.is_negative()) return -1;
    return 0;
}

Box2 point_box(double x, double y) {
    return {DInterval::from_double(x), DInterval::from_double(y)};
}

// f restricted to an axis-parallel edge; var is the tangential coordinate.
struct EdgeLine {
    const CompiledPoly* f;
    int var;      // 0: x varies, 1: y varies
    double fixed; // the pinned coordinate

    Box2 seg(double lo, double hi) const {
        DInterval t(lo, hi), p = DInterval::from_double(fixed);
        return var == 0 ? Box2{t, p} : Box2{p, t};
    }
    Box2 at(double t) const { return var == 0 ? point_box(t, fixed) : point_box(fixed, t); }
};

int count_edge(const EdgeLine& e, double lo, double hi, int slo, int shi, int depth) {
    Box2 seg = e.seg(lo, hi);
    DInterval v = e.f->eval(seg, 2);
    if (!v.contains_zero()) return 0;
    DInterval d = e.f->eval_deriv(e.var, seg, 1);
    if (!d.contains_zero()) return slo != shi ? 1 : 0; // monotone: one sign change at most
    if (depth >= kEdgeDepthCap)
        raise(ErrorCode::NonSimpleEdgeRoot, "edge root not certifiably simple at depth cap");
    // Split at a point with a decidable sign; nudge away from a root if needed.
    static const double fracs[] = {0.5, 0.4375, 0.5625, 0.40625, 0.59375};
    for (double frac : fracs) {
        double m = lo + (hi - lo) * frac;
        if (m <= lo || m >= hi) continue;
        int sm = sign_at(*e.f, e.at(m));
        if (sm == 0) continue;
        return count_edge(e, lo, m, slo, sm, depth + 1) + count_edge(e, m, hi, sm, shi, depth + 1);
    }
    raise(ErrorCode::NonSimpleEdgeRoot, "no sign-decidable split point on edge segment");
}

} // namespace

const char* kind_name(SingKind k) {
    return k == SingKind::Node ? "node" : "ordinary_cusp";
}

LocalCurve::LocalCurve(const MPoly& fpoly)
    : f(fpoly, 2),
      fx(derivative(fpoly, 'x'), 2),
      fy(derivative(fpoly, 'y'), 2),
      fxx(derivative(fpoly, 'x', 2), 2),
      fxy(derivative(derivative(fpoly, 'x'), 'y'), 2),
      fyy(derivative(fpoly, 'y', 2), 2) {}

TripleSystem::TripleSystem(const MPoly& P3)
    : P(P3, 3), Pz(derivative(P3, 'z'), 3), Pzz(derivative(P3, 'z', 2), 3) {}

ClassifyOutcome classify_resultant(const CandidateBox& c, const Config& cfg) {
    const CheckerPolys& sys = *c.system;
    LocalCurve lc(sys.f);
    CompiledPoly s11(sys.s11, 2), s10(sys.s10, 2);
    ClassifyOutcome out;
    out.box = c.box;
    for (int bits : precision_rungs(cfg.max_precision_bits)) {
        bool ok;
        if (bits == 0) {
            ok = classify_resultant_rung<DInterval>(lc, s11, s10, c.box, out);
        } else {
            ScopedPrecision sp(bits);
            ok = classify_resultant_rung<MInterval>(lc, s11, s10, c.box, out);
        }
        if (ok) {
            out.precision_bits = bits;
            return out;
        }
    }
    raise(ErrorCode::BudgetExhausted,
          "Hessian sign undecided at the precision cap: possible cusp; rerun in "
          "discriminant mode if Q = P_z");
}

ClassifyOutcome classify_discriminant(const CandidateBox& c, const Config& cfg) {
    const CheckerPolys& sys = *c.system;
    LocalCurve lc(sys.f);
    CompiledPoly s11(sys.s11, 2), s10(sys.s10, 2), s21(sys.s21, 2), s22(sys.s22, 2);
    TripleSystem ts(sys.P3);
    ClassifyOutcome out;
    out.box = c.box;
    for (int bits : precision_rungs(cfg.max_precision_bits)) {
        bool ok;
        if (bits == 0) {
            ok = classify_discriminant_rung<DInterval>(lc, s11, s10, s21, s22, ts, sys.clear_axis,
                                                       sys.q21_exp, c.box, cfg.eps_inflation, out);
        } else {
            ScopedPrecision sp(bits);
            ok = classify_discriminant_rung<MInterval>(lc, s11, s10, s21, s22, ts, sys.clear_axis,
                                                       sys.q21_exp, c.box, cfg.eps_inflation, out);
        }
        if (ok) {
            out.precision_bits = bits;
            return out;
        }
    }
    raise(ErrorCode::BudgetExhausted,
          "neither Hessian sign nor triple-root certificate decided at the precision cap");
}

int count_boundary_crossings(const CompiledPoly& f, Box2& B, int* corner_retries) {
    Box2 W = B;
    int retries = 0;
    std::array<int, 4> cs{}; // signs at (xlo,ylo), (xhi,ylo), (xlo,yhi), (xhi,yhi)
    for (;; ++retries) {
        double xlo = W.x.lo_d(), xhi = W.x.hi_d(), ylo = W.y.lo_d(), yhi = W.y.hi_d();
        cs = {sign_at(f, point_box(xlo, ylo)), sign_at(f, point_box(xhi, ylo)),
              sign_at(f, point_box(xlo, yhi)), sign_at(f, point_box(xhi, yhi))};
        if (cs[0] != 0 && cs[1] != 0 && cs[2] != 0 && cs[3] != 0) break;
        if (retries >= kMaxCornerRetries)
            raise(ErrorCode::CornerZeroUnresolved,
                  "corner sign undecided after bounded shrink retries");
        // Asymmetric relative shrink so symmetric curves cannot track corners.
        double cx = 0.5 * (xlo + xhi), cy = 0.5 * (ylo + yhi);
        double hx = 0.5 * (xhi - xlo) * (1.0 - 1e-3);
        double hy = 0.5 * (yhi - ylo) * (1.0 - 2e-3);
        W = {DInterval(cx - hx, cx + hx), DInterval(cy - hy, cy + hy)};
    }
    if (corner_retries) *corner_retries = retries;
    double xlo = W.x.lo_d(), xhi = W.x.hi_d(), ylo = W.y.lo_d(), yhi = W.y.hi_d();
    int total = 0;
    total += count_edge({&f, 0, ylo}, xlo, xhi, cs[0], cs[1], 0); // bottom
    total += count_edge({&f, 0, yhi}, xlo, xhi, cs[2], cs[3], 0); // top
    total += count_edge({&f, 1, xlo}, ylo, yhi, cs[0], cs[2], 0); // left
    total += count_edge({&f, 1, xhi}, ylo, yhi, cs[1], cs[3], 0); // right
    B = W;
    return total;
}

SingularityReport certify_no_loop(SingularityReport r, const Config& cfg) {
    const CheckerPolys& sys = *r.system;
    LocalCurve lc(sys.f);
    CompiledPoly s11(sys.s11, 2), s10(sys.s10, 2);
    for (int bits : precision_rungs(cfg.max_precision_bits)) {
        LoopRung lr;
        if (bits == 0) {
            lr = loop_rung<DInterval>(lc, s11, s10, r.box, r.kind, cfg.eps_inflation);
        } else {
            ScopedPrecision sp(bits);
            lr = loop_rung<MInterval>(lc, s11, s10, r.box, r.kind, cfg.eps_inflation);
        }
        r.diag.loop_iterations += lr.iterations;
        if (lr.passed) {
            r.loop_free = true;
            r.box = lr.box;
            r.mapped = back_map_box(lr.box, r.chart);
            r.diag.loop_test = lr.which;
            r.diag.precision_bits = std::max(r.diag.precision_bits, bits);
            return r;
        }
    }
    raise(ErrorCode::BudgetExhausted, "loop exclusion undecided at the precision cap");
}

SingularityReport refine_to_match(SingularityReport r, const Config& cfg) {
    const CheckerPolys& sys = *r.system;
    LocalCurve lc(sys.f);
    CompiledPoly s11(sys.s11, 2), s10(sys.s10, 2);
    Box2 W = r.box;
    for (int it = 0; it < kRefineIterations && W.width_d() > cfg.final_diam_target; ++it) {
        if (!contract_step(W, s11, s10))
            raise(ErrorCode::BudgetExhausted,
                  "contraction floored above the target diameter");
    }
    // The Krawczyk image can collapse to (nearly) a point; boundary counting
    // needs interior, so test on W padded to half-width h, shrinking h while
    // the padded box picks up extra structure (loops, stray crossings).
    double h = cfg.final_diam_target / 4;
    for (int it = 0; it < kRefineIterations; ++it) {
        Box2 c = W.mid_point();
        Box2 pad{DInterval(c.x.lo_d() - h, c.x.hi_d() + h),
                 DInterval(c.y.lo_d() - h, c.y.hi_d() + h)};
        Box2 Bc = Box2::hull(W, pad);
        try {
            int retries = 0;
            int crossings = count_boundary_crossings(lc.f, Bc, &retries);
            r.diag.corner_retries += retries;
            if (crossings == r.branches) {
                // The loop certificate must hold on the exact final box.
                const char* which = nullptr;
                bool loop_ok = r.kind == SingKind::Node
                                   ? node_loop_test(lc, Bc, cfg.eps_inflation, &which)
                                   : cusp_loop_test(lc, Bc, &which);
                if (loop_ok) {
                    r.box = Bc;
                    r.mapped = back_map_box(Bc, r.chart);
                    r.boundary_crossings = crossings;
                    r.loop_free = true;
                    r.diag.loop_test = which;
                    r.diag.refine_iterations = it;
                    return r;
                }
            }
        } catch (const Error& e) {
            if (e.code() != ErrorCode::CornerZeroUnresolved &&
                e.code() != ErrorCode::NonSimpleEdgeRoot)
                throw;
            // undecidable boundary at this padding: shrink and retry
        }
        if (h > W.width_d()) {
            h /= 2;
            continue;
        }
        Box2T<DInterval> Bd = W;
        if (!contract_step(Bd, s11, s10))
            raise(ErrorCode::BudgetExhausted,
                  "boundary crossings never matched the branch count before the "
                  "contraction floor");
        W = Bd;
        h /= 2;
    }
    raise(ErrorCode::BudgetExhausted, "refinement iteration budget exhausted");
}

SingularityReport analyze_candidate(const CandidateBox& c, CurveMode mode, const Config& cfg) {
    ClassifyOutcome co =
        mode == CurveMode::Resultant ? classify_resultant(c, cfg) : classify_discriminant(c, cfg);
    SingularityReport r;
    r.system = c.system;
    r.chart = c.chart;
    r.box = co.box;
    r.mapped = back_map_box(co.box, c.chart);
    r.kind = co.kind;
    r.branches = co.branches;
    r.triple_root_box = co.triple_root_box;
    r.diag.classify_test = co.test;
    r.diag.classify_iterations = co.iterations;
    r.diag.precision_bits = co.precision_bits;
    r = certify_no_loop(std::move(r), cfg);
    r = refine_to_match(std::move(r), cfg);
    return r;
}

} // namespace singuline
