#pragma once

#include <array>
#include <vector>

#include "singuline/box.hpp"
#include "singuline/chart.hpp"
#include "singuline/compiled.hpp"
#include "singuline/mpoly.hpp"

namespace singuline {

enum class AssumptionTag { A1, A2, A3, A4 };
const char* assumption_tag_name(AssumptionTag t);

struct CheckBudget {
    int max_depth = 40;
    long max_boxes = 1000000;
};

struct AssumptionVerdict {
    enum class Status { Verified, BudgetExhausted };
    struct Stall {
        Box2 box;
        AssumptionTag which;
    };
    Status status = Status::Verified;
    std::vector<Stall> stalled_boxes; // empty iff Verified
    long boxes_processed = 0;
    int max_depth_reached = 0;
};

// Components of the tangent vector t = grad P x grad Q, compiled over (x,y,z).
struct TangentSystem {
    std::array<CompiledPoly, 3> t;
};
TangentSystem make_tangent_system(const MPoly& P, const MPoly& Q);

// Bivariate z-coefficient slices p = sum_k slice_k(x,y) z^k, low to high.
std::vector<MPoly> z_slices(const MPoly& p);

// Everything the subdivision machinery evaluates, as plain polynomials in
// the chart coordinates. Each entry is denominator-cleared on its own by the
// minimal power of the clearing coordinate w, so zero sets away from w = 0
// match the original system exactly and nothing picks up a spurious zero
// line. The recorded exponent differences restore ratios that must stay
// exact across clearings:
//   candidate z above a box: -(s10/s11) * w^iz_exp,
//   quadratic in z (scaled by w^e22): s22 z^2 + (s21 w^q21) z + (s20 w^q20).
// Negative exponents are applied only when the box excludes w = 0. P3, Q3
// are the inputs cleared uniformly (one power for the whole polynomial), so
// z-derivatives and coefficient ratios inside them stay consistent.
struct CheckerPolys {
    ChartId chart = ChartId::Identity;
    int clear_axis = -1; // -1 none, 0 first coordinate, 1 second
    MPoly f, s10, s11, s20, s21, s22;
    MPoly LP, LQ;
    std::array<MPoly, 3> tangent;
    MPoly P3, Q3;
    int iz_exp = 0;  // e11 - e10
    int q21_exp = 0; // e22 - e21
    int q20_exp = 0; // e22 - e20
};

CheckerPolys make_checker_polys(const MPoly& P, const MPoly& Q,
                                ChartId chart = ChartId::Identity);

// Budgeted subdivision check of the genericity assumptions (A1)-(A4) over B0.
// Every box is discharged by one of the listed conditions or quadrisected;
// boxes that hit the depth or box budget are returned with the tag of the
// check that kept failing. Verified means the whole tree discharged.
AssumptionVerdict check_assumptions(const CheckerPolys& polys, const Box2& B0,
                                    const CheckBudget& budget = {});
AssumptionVerdict check_assumptions(const MPoly& P, const MPoly& Q, const Box2& B0,
                                    const CheckBudget& budget = {});

} // namespace singuline
