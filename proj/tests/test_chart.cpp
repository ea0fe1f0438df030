#include <doctest.h>

#include <random>

#include "singuline/chart.hpp"

#include "support/gen.hpp"

using namespace singuline;
using singuline::testing::mp;
using singuline::testing::rand_mpoly;

namespace {

mpq_class eval_xy(const MPoly& p, const mpq_class& x, const mpq_class& y) {
    return eval_exact(p, std::array<mpq_class, 3>{x, y, mpq_class(0)});
}

} // namespace

TEST_CASE("chart clearing matches the substitution times the recorded power") {
    std::mt19937_64 rng(404);
    for (int trial = 0; trial < 40; ++trial) {
        MPoly p = rand_mpoly(rng, 0, 4, 6);
        if (p.is_zero()) continue;
        // random rational point with nonzero clearing coordinate
        auto coord = [&](bool nonzero) {
            long n = static_cast<long>(rng() % 19) - 9;
            if (nonzero && n == 0) n = 3;
            mpq_class q(n, 7);
            q.canonicalize();
            return q;
        };
        mpq_class u = coord(true), v = coord(false);

        ClearedPoly cu = chart_clear(p, ChartId::ChartU);
        mpq_class lhs = eval_xy(cu.poly, u, v);
        mpq_class upow = 1;
        for (int i = 0; i < cu.exponent; ++i) upow *= u;
        mpq_class rhs = eval_xy(p, mpq_class(1) / u, v / u) * upow;
        CHECK(lhs == rhs);

        ClearedPoly cv = chart_clear(p, ChartId::ChartV);
        mpq_class vpow = 1;
        for (int i = 0; i < cv.exponent; ++i) vpow *= u; // reuse u as the v value
        CHECK(eval_xy(cv.poly, v, u) == eval_xy(p, v / u, mpq_class(1) / u) * vpow);
    }
}

TEST_CASE("chart clearing is minimal: the clearing coordinate never divides") {
    std::mt19937_64 rng(405);
    for (int trial = 0; trial < 40; ++trial) {
        MPoly p = rand_mpoly(rng, 1, 3, 5);
        if (p.is_zero()) continue;
        ClearedPoly cu = chart_clear(p, ChartId::ChartU);
        int min_u = 1 << 20, min_v = 1 << 20;
        for (const auto& [e, c] : cu.poly.terms()) min_u = std::min(min_u, e.ex);
        ClearedPoly cv = chart_clear(p, ChartId::ChartV);
        for (const auto& [e, c] : cv.poly.terms()) min_v = std::min(min_v, e.ey);
        CHECK(min_u == 0);
        CHECK(min_v == 0);
    }
}

TEST_CASE("identity chart is a no-op") {
    MPoly p = mp("x^2*y + 3*z - 1");
    ClearedPoly c = chart_clear(p, ChartId::Identity);
    CHECK(c.poly == p);
    CHECK(c.exponent == 0);
    CHECK(chart_clear_axis(ChartId::Identity) == -1);
    CHECK(chart_clear_axis(ChartId::ChartU) == 0);
    CHECK(chart_clear_axis(ChartId::ChartV) == 1);
}

TEST_CASE("back-mapped boxes: sign-definite charts invert exactly") {
    Box2 b{DInterval(0.25, 0.5), DInterval(-0.5, 0.5)};
    Box2 m = back_map_box(b, ChartId::ChartU);
    CHECK(m.x.lo == doctest::Approx(2.0));
    CHECK(m.x.hi == doctest::Approx(4.0));
    CHECK(m.y.lo == doctest::Approx(-2.0));
    CHECK(m.y.hi == doctest::Approx(2.0));

    Box2 bv{DInterval(-0.5, 0.5), DInterval(-0.5, -0.25)};
    Box2 mv = back_map_box(bv, ChartId::ChartV);
    CHECK(mv.y.lo == doctest::Approx(-4.0));
    CHECK(mv.y.hi == doctest::Approx(-2.0));
    CHECK(mv.x.lo == doctest::Approx(-2.0));
    CHECK(mv.x.hi == doctest::Approx(2.0));
}

TEST_CASE("back-mapped boxes touching the chart boundary get infinite ends") {
    const double inf = std::numeric_limits<double>::infinity();
    Box2 touch{DInterval(0, 0.5), DInterval(0.25, 0.5)};
    Box2 m = back_map_box(touch, ChartId::ChartU);
    CHECK(m.x.lo == doctest::Approx(2.0));
    CHECK(m.x.hi == inf);
    CHECK(m.y.lo == doctest::Approx(0.5));
    CHECK(m.y.hi == inf);

    Box2 straddle{DInterval(-0.5, 0.5), DInterval(0.25, 0.5)};
    Box2 ms = back_map_box(straddle, ChartId::ChartU);
    CHECK(ms.x.lo == -inf);
    CHECK(ms.x.hi == inf);
}

TEST_CASE("extended division edge cases") {
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(extended_div(DInterval(1, 2), DInterval(0.5, 1)).lo == doctest::Approx(1.0));
    DInterval a = extended_div(DInterval(1, 2), DInterval(-1, 0));
    CHECK(a.lo == -inf);
    CHECK(a.hi == doctest::Approx(-1.0));
    DInterval b = extended_div(DInterval(-2, -1), DInterval(0, 1));
    CHECK(b.lo == -inf);
    CHECK(b.hi == doctest::Approx(-1.0));
    DInterval c = extended_div(DInterval(-2, -1), DInterval(-1, 0));
    CHECK(c.lo == doctest::Approx(1.0));
    CHECK(c.hi == inf);
    DInterval d = extended_div(DInterval(-1, 1), DInterval(-1, 1));
    CHECK(d.lo == -inf);
    CHECK(d.hi == inf);
    CHECK(extended_div(DInterval(1, 2), DInterval::empty()).is_empty());
}
