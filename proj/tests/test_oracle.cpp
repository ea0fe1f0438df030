#include <doctest.h>

#include <limits>
#include <random>

#include "singuline/oracle.hpp"
#include "singuline/subresultant.hpp"
#include "support/gen.hpp"

using namespace singuline;
using testing::mp;

namespace {

Box2 box(double xl, double xh, double yl, double yh) {
    return Box2{DInterval(xl, xh), DInterval(yl, yh)};
}

Box2 plane() {
    double inf = std::numeric_limits<double>::infinity();
    return box(-inf, inf, -inf, inf);
}

MPoly dx(const MPoly& p) {
    MPoly::TermMap t;
    for (const auto& [e, c] : p.terms())
        if (e.ex > 0) t[{e.ex - 1, e.ey, e.ez}] += c * e.ex;
    return MPoly(std::move(t));
}

MPoly dy(const MPoly& p) {
    MPoly::TermMap t;
    for (const auto& [e, c] : p.terms())
        if (e.ey > 0) t[{e.ex, e.ey - 1, e.ez}] += c * e.ey;
    return MPoly(std::move(t));
}

// eliminated curve of a z-free f realized through the pair (f, z)
std::vector<std::pair<ExactPoint, OracleKind>> curve_points(const MPoly& f, const Box2& b) {
    return oracle_singular_points(f, mp("z"), b);
}

bool encloses(const ExactPoint& p, const mpq_class& x, const mpq_class& y) {
    return p.x().contains(x) && p.y().contains(y);
}

UPoly as_upoly(const MPoly& m) {
    if (m.is_zero()) return UPoly();
    return y_coefficients(m)[0];
}

// rename y -> z so the trivariate chain eliminates the same variable
MPoly to_z(const MPoly& m) {
    MPoly::TermMap t;
    for (const auto& [e, c] : m.terms()) t[{e.ex, 0, e.ey}] = c;
    return MPoly(std::move(t));
}

MPoly rand_xy(std::mt19937_64& rng, int dgy, int dgx, long mag) {
    MPoly::TermMap t;
    for (int ey = 0; ey <= dgy; ++ey)
        for (int ex = 0; ex <= dgx; ++ex) {
            mpz_class c = testing::rand_int(rng, mag);
            if (c != 0) t[Exp3{ex, ey, 0}] = mpq_class(c);
        }
    if (t.find(Exp3{0, dgy, 0}) == t.end()) t[Exp3{0, dgy, 0}] = 1;
    return MPoly(std::move(t));
}

template <typename F>
ErrorCode thrown_code(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::Internal;
}

} // namespace

TEST_CASE("cusp pair has one ordinary cusp at the origin") {
    MPoly P = mp("z^3 + x*z + y"), Q = mp("3*z^2 + x");
    auto pts = oracle_singular_points(P, Q, box(-1, 1, -1, 1));
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].second == OracleKind::OrdinaryCusp);
    pts[0].first.refine(mpq_class(1, 1000000));
    CHECK(encloses(pts[0].first, 0, 0));
    CHECK(pts[0].first.x().width() <= mpq_class(1, 1000000));
    CHECK(pts[0].first.y().width() <= mpq_class(1, 1000000));
}

TEST_CASE("node pair has one node at the origin") {
    MPoly P = mp("z^2 - z"), Q = mp("z^2 + 2*x*z - z + y - x");
    auto pts = oracle_singular_points(P, Q, box(-1, 1, -1, 1));
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].second == OracleKind::Node);
    pts[0].first.refine(mpq_class(1, 1 << 20));
    CHECK(encloses(pts[0].first, 0, 0));
}

TEST_CASE("linear eliminated curve has no singular points") {
    auto pts = oracle_singular_points(mp("z^2 - x"), mp("z - 5"), box(-100, 100, -100, 100));
    CHECK(pts.empty());
}

TEST_CASE("back-substitution holds to width 1e-30 on the fixtures") {
    mpq_class w(mpz_class(1), mpz_class("1000000000000000000000000000000"));
    for (auto [P, Q] : {std::pair<MPoly, MPoly>{mp("z^3 + x*z + y"), mp("3*z^2 + x")},
                        {mp("z^2 - z"), mp("z^2 + 2*x*z - z + y - x")}}) {
        MPoly f = checker_chain(P, Q).f;
        auto pts = oracle_singular_points(P, Q, box(-1, 1, -1, 1));
        REQUIRE(pts.size() == 1);
        auto& pt = pts[0].first;
        pt.refine(w);
        CHECK(pt.x().width() <= w);
        CHECK(pt.y().width() <= w);
        for (const MPoly& g : {f, dx(f), dy(f)}) {
            CHECK(eval_range2(g, pt.x(), pt.y()).contains_zero());
            CHECK(oracle_sign_at(g, pt) == 0);
        }
    }
}

TEST_CASE("exact point intervals isolate roots of their defining polynomials") {
    auto pts = oracle_singular_points(mp("z^3 + x*z + y"), mp("3*z^2 + x"), box(-1, 1, -1, 1));
    REQUIRE(pts.size() == 1);
    auto& pt = pts[0].first;
    CHECK(count_roots_in_range(pt.xpoly(), pt.x()) == 1);
    CHECK(count_roots_in_range(pt.ypoly(), pt.y()) == 1);
    RatInterval ox = pt.x(), oy = pt.y();
    pt.refine(mpq_class(1, 1 << 24));
    CHECK(count_roots_in_range(pt.xpoly(), pt.x()) == 1);
    CHECK(count_roots_in_range(pt.ypoly(), pt.y()) == 1);
    CHECK(pt.x().lo >= ox.lo);
    CHECK(pt.x().hi <= ox.hi);
    CHECK(pt.y().lo >= oy.lo);
    CHECK(pt.y().hi <= oy.hi);
}

TEST_CASE("swallowtail section above the fold has a crossing and an isolated point") {
    // two distinct double roots at z = ±u give x = -2u², y = 0 with u⁴ = 1/8;
    // a conjugate double pair gives the isolated point at x = +2b, b² = 1/8
    MPoly P = mp("z^4 + x*z^2 + y*z + 1/8"), Q = mp("4*z^3 + 2*x*z + y");
    auto pts = oracle_singular_points(P, Q, box(-1, 1, -1, 1));
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].second == OracleKind::Node);
    CHECK(pts[1].second == OracleKind::Node);
    for (auto& [pt, kind] : pts) pt.refine(mpq_class(1, 1 << 20));
    // sorted by x: -1/sqrt(2) then +1/sqrt(2), both with y = 0
    CHECK(pts[0].first.x().hi < mpq_class(-70, 100));
    CHECK(pts[0].first.x().lo > mpq_class(-71, 100));
    CHECK(pts[1].first.x().lo > mpq_class(70, 100));
    CHECK(pts[1].first.x().hi < mpq_class(71, 100));
    CHECK(pts[0].first.y().contains(0));
    CHECK(pts[1].first.y().contains(0));
}

TEST_CASE("swallowtail section below the fold has two cusps sharing an abscissa") {
    // triple roots at z = ±t with t² = 1/12: both cusps live above x = -1/2,
    // which forces a sheared frame and exercises the equal-x comparator
    MPoly P = mp("z^4 + x*z^2 + y*z - 1/48"), Q = mp("4*z^3 + 2*x*z + y");
    auto pts = oracle_singular_points(P, Q, box(-1, 1, -1, 1));
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].second == OracleKind::OrdinaryCusp);
    CHECK(pts[1].second == OracleKind::OrdinaryCusp);
    for (auto& [pt, kind] : pts) pt.refine(mpq_class(1, 1 << 20));
    CHECK(pts[0].first.x().contains(mpq_class(-1, 2)));
    CHECK(pts[1].first.x().contains(mpq_class(-1, 2)));
    // y = ±sqrt(3)/9, sorted ascending
    CHECK(pts[0].first.y().hi < mpq_class(-19, 100));
    CHECK(pts[0].first.y().lo > mpq_class(-20, 100));
    CHECK(pts[1].first.y().lo > mpq_class(19, 100));
    CHECK(pts[1].first.y().hi < mpq_class(20, 100));
}

TEST_CASE("normal forms classify by local type") {
    Box2 b = box(-1, 1, -1, 1);
    auto one = [&](const char* s) {
        auto pts = curve_points(mp(s), b);
        REQUIRE(pts.size() == 1);
        CHECK(encloses(pts[0].first, 0, 0));
        return pts[0].second;
    };
    CHECK(one("y^2 - x^3") == OracleKind::OrdinaryCusp);
    CHECK(one("x^2 + y^3") == OracleKind::OrdinaryCusp);
    CHECK(one("y^2 - x^2 - x^3") == OracleKind::Node);
    CHECK(one("x^2 + y^2") == OracleKind::Node); // isolated point still has det H > 0
    CHECK(one("x^2 + y^4") == OracleKind::Other);
    CHECK(one("x^2 + x*y^2") == OracleKind::Other); // tangential branches
    CHECK(one("x^3 + y^3") == OracleKind::Other);   // vanishing Hessian
}

TEST_CASE("box membership is exact on boundary points") {
    MPoly f = mp("y^2 - x^2 - x^3"); // node at the origin
    CHECK(curve_points(f, box(0, 1, 0, 1)).size() == 1);  // corner hit
    CHECK(curve_points(f, box(-1, 0, -1, 1)).size() == 1); // edge hit
    CHECK(curve_points(f, box(1, 2, -1, 1)).empty());
    CHECK(curve_points(f, box(-1, -0.25, -1, 1)).empty());
    CHECK(curve_points(f, plane()).size() == 1);
}

TEST_CASE("degenerate curves are rejected") {
    Box2 b = box(-1, 1, -1, 1);
    CHECK_THROWS_WITH_AS(curve_points(mp("x^2 + 2*x*y + y^2"), b), doctest::Contains("repeated"),
                         SingulineError);
    CHECK_THROWS_WITH_AS(curve_points(mp("x^2"), b), doctest::Contains("repeated"), SingulineError);
    CHECK_THROWS_AS(oracle_singular_points(mp("z"), mp("z"), b), SingulineError); // zero eliminant
    CHECK_THROWS_AS(curve_points(mp("x^17 + y + 1"), b), SingulineError);         // degree guard
    CHECK(curve_points(mp("x^2 - x"), b).empty()); // squarefree vertical lines are smooth
}

TEST_CASE("subresultant zero sets match the oracle on the fixtures") {
    for (auto [P, Q] : {std::pair<MPoly, MPoly>{mp("z^3 + x*z + y"), mp("3*z^2 + x")},
                        {mp("z^2 - z"), mp("z^2 + 2*x*z - z + y - x")}}) {
        SubresultantData d = checker_chain(P, Q);
        Box2 b = box(-1, 1, -1, 1);
        auto pts = oracle_singular_points(P, Q, b);
        REQUIRE(pts.size() == 1);
        const auto& pt = pts[0].first;
        // singular points are common zeros of (s11, s10) with s22 != 0
        CHECK(oracle_sign_at(d.s11, pt) == 0);
        CHECK(oracle_sign_at(d.s10, pt) == 0);
        CHECK(oracle_sign_at(d.s22, pt) != 0);
        // and regular ones exactly when the kind is node or ordinary cusp
        MPoly jac = dx(d.s11) * dy(d.s10) - dy(d.s11) * dx(d.s10);
        CHECK(oracle_sign_at(jac, pt) != 0);
        // the reverse inclusion at desk scale: no further (s11, s10) zeros
        CHECK(oracle_count_roots_in_box(d.s11, d.s10, b) == 1);
    }
}

TEST_CASE("random verified pairs satisfy the singular-point characterization") {
    std::mt19937_64 rng(414243);
    int done = 0;
    for (int trial = 0; trial < 12 && done < 5; ++trial) {
        MPoly P = testing::rand_mpoly(rng, 3, 2, 4);
        MPoly Q = testing::rand_mpoly(rng, 2, 2, 4);
        Box2 b = box(-1, 1, -1, 1);
        std::vector<std::pair<ExactPoint, OracleKind>> pts;
        try {
            pts = oracle_singular_points(P, Q, b);
        } catch (const SingulineError&) {
            continue; // degenerate draw
        }
        MPoly f = checker_chain(P, Q).f;
        MPoly fx = dx(f), fy = dy(f);
        for (auto& [pt, kind] : pts) {
            CHECK(oracle_sign_at(f, pt) == 0);
            CHECK(oracle_sign_at(fx, pt) == 0);
            CHECK(oracle_sign_at(fy, pt) == 0);
        }
        // singular points are critical points of f on the curve
        int crit = oracle_count_roots_in_box(fx, fy, b);
        CHECK(static_cast<int>(pts.size()) <= crit);
        ++done;
    }
    CHECK(done >= 3);
}

TEST_CASE("count oracle matches hand counts") {
    int bd = -1;
    CHECK(oracle_count_roots_in_box(mp("6*x"), mp("9*y"), box(-1, 1, -1, 1), &bd) == 1);
    CHECK(bd == 0);
    CHECK(oracle_count_roots_in_box(mp("12*x^2"), mp("54*y"), box(-0.1, 0.1, -0.1, 0.1)) == 1);
    CHECK(oracle_count_roots_in_box(mp("x^2 - 1"), mp("y"), box(-0.5, 0.5, -0.5, 0.5)) == 0);
    CHECK(oracle_count_roots_in_box(mp("x^2 - 1"), mp("y - 3"), plane()) == 2);
    CHECK(oracle_count_roots_in_box(mp("x^2 + y^2 - 2"), mp("x - y"), box(-2, 2, -2, 2)) == 2);
}

TEST_CASE("count oracle reports boundary roots separately") {
    int bd = -1;
    CHECK(oracle_count_roots_in_box(mp("x"), mp("y"), box(0, 1, 0, 1), &bd) == 1);
    CHECK(bd == 1); // corner counted once
    CHECK(oracle_count_roots_in_box(mp("x"), mp("y^2 - 1"), box(-0.5, 0.5, -1, 1), &bd) == 2);
    CHECK(bd == 2); // both on y-edges
    CHECK(oracle_count_roots_in_box(mp("x - 1"), mp("y^2 - y"), box(0, 1, -2, 2), &bd) == 2);
    CHECK(bd == 2); // whole fiber sits on the x-edge
    CHECK(oracle_count_roots_in_box(mp("x - 1"), mp("y^2 - y"), box(0, 2, -2, 2), &bd) == 2);
    CHECK(bd == 0);
}

TEST_CASE("count oracle rejects degenerate systems") {
    Box2 b = box(-1, 1, -1, 1);
    CHECK_THROWS_AS(oracle_count_roots_in_box(mp("x"), mp("x"), b), SingulineError);
    CHECK_THROWS_AS(oracle_count_roots_in_box(mp("x - y"), mp("2*x - 2*y"), b), SingulineError);
    CHECK_THROWS_AS(oracle_count_roots_in_box(mp("0"), mp("y"), b), SingulineError);
    CHECK_THROWS_AS(oracle_count_roots_in_box(mp("z + x"), mp("y"), b), SingulineError);
    CHECK_THROWS_AS(oracle_count_roots_in_box(mp("x^33"), mp("y"), b), SingulineError);
    CHECK(oracle_count_roots_in_box(mp("0"), mp("3"), b) == 0);
    CHECK(oracle_count_roots_in_box(mp("x"), mp("x - 1"), b) == 0); // parallel lines
}

TEST_CASE("root isolation handles repeated roots and high degree") {
    auto iv = isolate_real_roots(mp_upoly("4*x^3"), {mpq_class(-1), mpq_class(1)});
    REQUIRE(iv.size() == 1);
    CHECK(iv[0].contains(0));
    UPoly w = UPoly::constant(1);
    for (int k = 1; k <= 49; ++k) w = w * UPoly({mpq_class(-k), mpq_class(1)});
    auto ws = isolate_real_roots(w, {mpq_class(-1000), mpq_class(1000)});
    REQUIRE(ws.size() == 49);
    for (int k = 1; k <= 49; ++k) CHECK(ws[static_cast<size_t>(k - 1)].contains(k));
}

TEST_CASE("scalar subresultants agree with the trivariate chain") {
    std::mt19937_64 rng(515253);
    auto check_pair = [](const MPoly& g, const MPoly& h) {
        FirstSubresultant got = first_subresultant_y(g, h);
        SubresultantData want = checker_chain(to_z(g), to_z(h));
        CHECK(got.res == as_upoly(want.f));
        CHECK(got.s11 == as_upoly(want.s11));
        CHECK(got.s10 == as_upoly(want.s10));
    };
    // unequal degrees through the PRS route
    check_pair(mp("y^3 + x*y + 1"), mp("3*y^2 + x"));
    check_pair(mp("y^4 + x*y^2 + y - x^2"), mp("y^2 - x"));
    // equal degrees through the defective top pair
    check_pair(mp("y^3 + x*y + x"), mp("y^3 - y + x^2"));
    check_pair(mp("y^2 - x"), mp("y^2 + x*y + 1"));
    // degree-one second argument with a vanishing-capable leading row
    check_pair(mp("y^3 + x*y + 1"), mp("x*y + 2"));
    for (int trial = 0; trial < 6; ++trial) {
        MPoly g = rand_xy(rng, 5, 2, 6), h = rand_xy(rng, 4, 2, 6);
        check_pair(g, h);
    }
}

TEST_CASE("scalar subresultants respect the swap sign rule") {
    // deg g < deg h: S_j(g, h) = (-1)^((p-j)(q-j)) S_j(h, g)
    MPoly g = mp("y^2 - x"), h = mp("y^4 + x*y + 1");
    FirstSubresultant a = first_subresultant_y(g, h);
    FirstSubresultant b = first_subresultant_y(h, g);
    int p = 2, q = 4;
    auto flip = [&](const UPoly& u, int j) {
        return ((p - j) * (q - j)) % 2 ? -u : u;
    };
    CHECK(a.res == flip(b.res, 0));
    CHECK(a.s11 == flip(b.s11, 1));
    CHECK(a.s10 == flip(b.s10, 1));
}

TEST_CASE("scalar subresultant degenerate shapes") {
    FirstSubresultant r = first_subresultant_y(mp("y^2 - x"), mp("3*x + 1"));
    CHECK(r.res == as_upoly(mp("9*x^2 + 6*x + 1")));
    CHECK(r.s11.is_zero());
    CHECK(r.s10.is_zero());
    FirstSubresultant c = first_subresultant_y(mp("5"), mp("7"));
    CHECK(c.res == UPoly::constant(1));
    FirstSubresultant z = first_subresultant_y(mp("0"), mp("y"));
    CHECK(z.res.is_zero());
}
