#pragma once

#include <memory>
#include <optional>
#include <string>

#include "singuline/config.hpp"
#include "singuline/isolate.hpp"
#include "singuline/krawczyk.hpp"

namespace singuline {

enum class SingKind { Node, OrdinaryCusp };

const char* kind_name(SingKind k);

// f with compiled schemes for itself and all partials up to order two; third
// derivatives come from the second-order schemes via eval_deriv.
struct LocalCurve {
    CompiledPoly f, fx, fy, fxx, fxy, fyy;
    explicit LocalCurve(const MPoly& fpoly);
};

// (P, P_z, P_zz) compiled as a trivariate system.
struct TripleSystem {
    CompiledPoly P, Pz, Pzz;
    explicit TripleSystem(const MPoly& P3);
};

struct TopologyDiagnostics {
    std::string classify_test; // hessian-positive | hessian-negative | triple-root-krawczyk
    std::string loop_test;     // hessian-product | gradient-krawczyk | cusp-I | cusp-I-swapped
    int precision_bits = 0;    // highest rung used; 0 = hardware intervals
    int classify_iterations = 0;
    int loop_iterations = 0;
    int refine_iterations = 0;
    int corner_retries = 0;
};

struct SingularityReport {
    Box2 box;    // final isolating box in working (chart) coordinates
    Box2 mapped; // same box in original coordinates; equals box in the identity chart
    ChartId chart = ChartId::Identity;
    SingKind kind = SingKind::Node;
    int branches = 0; // 0, 2 or 4
    bool loop_free = false;
    int boundary_crossings = -1; // -1 until counted
    std::optional<Box3> triple_root_box;
    TopologyDiagnostics diag;
    std::shared_ptr<const CheckerPolys> system;
};

struct ClassifyOutcome {
    int branches = 0;
    SingKind kind = SingKind::Node;
    Box2 box; // contracted box the decisive test ran on
    std::optional<Box3> triple_root_box;
    std::string test;
    int iterations = 0;
    int precision_bits = 0;
};

// det Hessian(f) over B in the standard convention f_xx f_yy - f_xy^2;
// negative at a 4-branch crossing, positive at an isolated real point.
template <class IV>
IV hessian_det(const LocalCurve& lc, const Box2T<IV>& B) {
    IV fxx = lc.fx.eval_deriv(0, B, 1);
    IV fyy = lc.fy.eval_deriv(1, B, 1);
    IV fxy = lc.fx.eval_deriv(1, B, 1);
    return fxx * fyy - fxy * fxy;
}

template <class IV>
struct CuspLoopEval {
    IV J, K, L, M, I;
};

// Interval quantities of the cusp loop-exclusion test; with swap_xy the roles
// of x and y are exchanged throughout. I = J(JK - LM); if 0 is outside I (or
// outside the swapped I') the box contains no closed loop of f.
template <class IV>
CuspLoopEval<IV> cusp_loop_quantities(const LocalCurve& lc, const Box2T<IV>& B, bool swap_xy) {
    int vx = swap_xy ? 1 : 0, vy = swap_xy ? 0 : 1;
    const CompiledPoly& dxx = swap_xy ? lc.fyy : lc.fxx;
    const CompiledPoly& dyy = swap_xy ? lc.fxx : lc.fyy;
    IV fxx = dxx.eval(B, 2);
    IV fyy = dyy.eval(B, 2);
    IV fxy = lc.fxy.eval(B, 2);
    IV fxxx = dxx.eval_deriv(vx, B, 1);
    IV fxxy = dxx.eval_deriv(vy, B, 1);
    IV fxyy = dyy.eval_deriv(vx, B, 1);
    IV fyyy = dyy.eval_deriv(vy, B, 1);
    CuspLoopEval<IV> q;
    q.J = fyy;
    q.K = fyy * fyy * fxxx - IV::from_double(3) * fyy * fxy * fxxy +
          IV::from_double(3) * fxy * fxy * fxyy - fxy * fxx * fyyy;
    q.L = fyy * fxxy + fxx * fyyy - IV::from_double(2) * fxy * fxyy;
    q.M = fyy * fxy - fxy * fyy; // two independent interval products, as stated
    q.I = q.J * (q.J * q.K - q.L * q.M);
    return q;
}

template <class IV>
bool cusp_loop_test(const LocalCurve& lc, const Box2T<IV>& B, const char** which = nullptr) {
    if (!cusp_loop_quantities(lc, B, false).I.contains_zero()) {
        if (which) *which = "cusp-I";
        return true;
    }
    if (!cusp_loop_quantities(lc, B, true).I.contains_zero()) {
        if (which) *which = "cusp-I-swapped";
        return true;
    }
    return false;
}

// Node loop exclusion: the Hessian-product pre-check (at most one gradient
// zero) or the Krawczyk gradient certificate (exactly one, and regular).
template <class IV>
bool node_loop_test(const LocalCurve& lc, const Box2T<IV>& B, double eps_inflation,
                    const char** which = nullptr) {
    IV hp = lc.fxx.eval(B, 2) * lc.fyy.eval(B, 2) - IV::square(lc.fxy.eval(B, 2));
    if (!hp.contains_zero()) {
        if (which) *which = "hessian-product";
        return true;
    }
    auto kr = krawczyk2(lc.fx, lc.fy, B, eps_inflation, 1);
    if (kr.certified) {
        if (which) *which = "gradient-krawczyk";
        return true;
    }
    return false;
}

// Single Krawczyk attempt for the deflated pair at a fixed box.
template <class IV>
bool deflation_certificate(const CompiledPoly& s11, const CompiledPoly& s10, const Box2T<IV>& B,
                           double eps_inflation) {
    return krawczyk2(s11, s10, B, eps_inflation, 1).certified;
}

// Single triple-root Krawczyk attempt on B x Iz; K receives the image.
template <class IV>
bool triple_root_certificate(const TripleSystem& ts, const Box3T<IV>& D, double eps_inflation,
                             Box3T<IV>* K = nullptr) {
    auto kr = krawczyk3(ts.P, ts.Pz, ts.Pzz, D, eps_inflation, 1);
    if (K) *K = kr.K;
    return kr.certified;
}

// Resultant mode: contract through K_(s11,s10) until the Hessian determinant
// sign decides; 0 branches when positive, 4 when negative. Cusps never decide
// and surface as BudgetExhausted once the precision ladder is capped.
ClassifyOutcome classify_resultant(const CandidateBox& c, const Config& cfg);

// Discriminant mode: Hessian sign (node) or triple-root Krawczyk on
// B x (-s21 / 2 s22) (ordinary cusp), contracting between rounds.
ClassifyOutcome classify_discriminant(const CandidateBox& c, const Config& cfg);

// Zeros of f on the boundary of B, each certified simple. B may be shrunk
// (slightly, asymmetrically) when a corner sign cannot be decided.
int count_boundary_crossings(const CompiledPoly& f, Box2& B, int* corner_retries = nullptr);

// Establish the loop-free certificate, contracting through K_(s11,s10).
SingularityReport certify_no_loop(SingularityReport r, const Config& cfg);

// Refine until diameter <= cfg.final_diam_target, boundary crossings match
// the branch count, and the loop certificate holds on the final box.
SingularityReport refine_to_match(SingularityReport r, const Config& cfg);

// classify -> certify_no_loop -> refine_to_match for one certified candidate.
SingularityReport analyze_candidate(const CandidateBox& c, CurveMode mode, const Config& cfg);

} // namespace singuline
