#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "singuline/box.hpp"
#include "singuline/upoly.hpp"

namespace singuline {

enum class OracleKind { Node, OrdinaryCusp, Other };

const char* oracle_kind_name(OracleKind k);

// One exact real solution point. Both coordinates carry a defining univariate
// polynomial and an isolating rational interval containing exactly one of its
// roots; refine() narrows both intervals below any requested width while
// preserving containment. Copies share the refinement state.
class ExactPoint {
public:
    const UPoly& xpoly() const;
    const UPoly& ypoly() const;
    RatInterval x() const;
    RatInterval y() const;
    void refine(const mpq_class& width);

    struct Impl;
    explicit ExactPoint(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
    Impl* impl() const { return impl_.get(); }

private:
    std::shared_ptr<Impl> impl_;
};

// All real solutions of f = f_x = f_y = 0 in the closed box, where f is the
// eliminated curve of the pair (P, Q), classified exactly: Node when the
// Hessian determinant at the point is nonzero, OrdinaryCusp when it vanishes
// with a rank-one Hessian and the cubic term is nondegenerate along the
// kernel direction, Other for anything worse. Points are sorted by x, then y.
// errors: DegreeGuardExceeded above total degree 16, InvalidInput when the
// curve is degenerate (zero, non-squarefree, or with a repeated component).
std::vector<std::pair<ExactPoint, OracleKind>>
oracle_singular_points(const MPoly& P, const MPoly& Q, const Box2& B0);

// Exact number of real solutions of {g = 0, h = 0} in the closed box; both
// polynomials must be z-free. Boundary solutions count, and their number is
// also written to *boundary when given. errors: DegreeGuardExceeded above
// total degree 32, InvalidInput for positive-dimensional solution sets.
int oracle_count_roots_in_box(const MPoly& g, const MPoly& h, const Box2& B,
                              int* boundary = nullptr);

// Exact range enclosure of a z-free polynomial over a rational box.
RatInterval eval_range2(const MPoly& p, const RatInterval& x, const RatInterval& y);

// Exact sign of a z-free polynomial at an oracle point.
int oracle_sign_at(const MPoly& p, const ExactPoint& pt);

} // namespace singuline
