#include <doctest.h>

#include <random>

#include "singuline/compiled.hpp"
#include "singuline/krawczyk.hpp"
#include "singuline/quadratic.hpp"

#include "support/gen.hpp"

using namespace singuline;
using singuline::testing::mp;
using singuline::testing::rand_mpoly;

namespace {

bool dcontains(const DInterval& r, const mpq_class& q) {
    return mpq_class(r.lo) <= q && q <= mpq_class(r.hi);
}

mpq_class sample_in(std::mt19937_64& rng, const DInterval& iv) {
    std::uniform_real_distribution<double> dist(iv.lo, iv.hi);
    double v = dist(rng);
    return mpq_class(std::min(std::max(v, iv.lo), iv.hi));
}

} // namespace

TEST_CASE("compiled bivariate evaluation encloses exact values at all orders") {
    std::mt19937_64 rng(303);
    for (int t = 0; t < 40; ++t) {
        MPoly p = rand_mpoly(rng, 0, 4, 9);
        CompiledPoly cp(p, 2);
        std::uniform_real_distribution<double> pos(-2.0, 2.0);
        for (int rep = 0; rep < 4; ++rep) {
            double cx = pos(rng), cy = pos(rng), w = std::abs(pos(rng)) * 0.3 + 0.01;
            Box2 B{DInterval(cx - w, cx + w), DInterval(cy - w, cy + w)};
            mpq_class px = sample_in(rng, B.x), py = sample_in(rng, B.y);
            mpq_class exact = eval_exact(p, std::array<mpq_class, 2>{px, py});
            for (int order = 0; order <= 2; ++order) {
                DInterval img = cp.eval(B, order);
                CHECK(dcontains(img, exact));
            }
        }
    }
}

TEST_CASE("compiled trivariate evaluation encloses exact values at all orders") {
    std::mt19937_64 rng(304);
    for (int t = 0; t < 20; ++t) {
        MPoly p = rand_mpoly(rng, 3, 2, 9);
        CompiledPoly cp(p, 3);
        std::uniform_real_distribution<double> pos(-1.5, 1.5);
        for (int rep = 0; rep < 3; ++rep) {
            double cx = pos(rng), cy = pos(rng), cz = pos(rng);
            double w = std::abs(pos(rng)) * 0.2 + 0.01;
            Box3 B{DInterval(cx - w, cx + w), DInterval(cy - w, cy + w),
                   DInterval(cz - w, cz + w)};
            mpq_class px = sample_in(rng, B.x), py = sample_in(rng, B.y),
                      pz = sample_in(rng, B.z);
            mpq_class exact = eval_exact(p, std::array<mpq_class, 3>{px, py, pz});
            for (int order = 0; order <= 2; ++order)
                CHECK(dcontains(cp.eval(B, order), exact));
        }
    }
}

TEST_CASE("compiled derivative schemes match symbolic derivatives") {
    std::mt19937_64 rng(305);
    for (int t = 0; t < 20; ++t) {
        MPoly p = rand_mpoly(rng, 0, 4, 9);
        CompiledPoly cp(p, 2);
        MPoly px = derivative(p, 'x'), py = derivative(p, 'y');
        std::uniform_real_distribution<double> pos(-2.0, 2.0);
        double cx = pos(rng), cy = pos(rng), w = 0.1;
        Box2 B{DInterval(cx - w, cx + w), DInterval(cy - w, cy + w)};
        mpq_class qx = sample_in(rng, B.x), qy = sample_in(rng, B.y);
        std::array<mpq_class, 2> pt{qx, qy};
        for (int order = 0; order <= 1; ++order) {
            CHECK(dcontains(cp.eval_deriv(0, B, order), eval_exact(px, pt)));
            CHECK(dcontains(cp.eval_deriv(1, B, order), eval_exact(py, pt)));
        }
    }
}

TEST_CASE("centered form at order 2 beats plain interval evaluation on x^2") {
    // Over [-w, w] the true range of x^2 is [0, w^2]. Plain Horner multiplies
    // the straddling interval by itself and gets [-w^2, w^2]; the centered
    // form with an exact square of the symmetric delta recovers [0, w^2].
    CompiledPoly cp(mp("x^2"), 2);
    for (double w : {1e-1, 1e-2, 1e-3}) {
        Box2 B{DInterval(-w, w), DInterval(-1, 1)};
        DInterval img0 = cp.eval(B, 0);
        DInterval img2 = cp.eval(B, 2);
        CHECK(img2.lo >= -1e-18);
        CHECK(img2.hi >= w * w * 0.999);
        CHECK(img2.width_d() <= 0.51 * img0.width_d() + 1e-18);
    }
}

TEST_CASE("compiled evaluation on the software rung encloses exact values") {
    ScopedPrecision prec(128);
    std::mt19937_64 rng(306);
    MPoly p = rand_mpoly(rng, 0, 5, 9);
    CompiledPoly cp(p, 2);
    Box2T<MInterval> B{MInterval::from_double_pair(0.25, 0.5),
                       MInterval::from_double_pair(-0.125, 0.125)};
    mpq_class px(3, 8), py(1, 16);
    mpq_class exact = eval_exact(p, std::array<mpq_class, 2>{px, py});
    for (int order = 0; order <= 2; ++order) {
        MInterval img = cp.eval(B, order);
        CHECK(mpfr_cmp_q(img.lo_raw(), exact.get_mpq_t()) <= 0);
        CHECK(mpfr_cmp_q(img.hi_raw(), exact.get_mpq_t()) >= 0);
    }
    // Point-box image at 128 bits is far tighter than hardware could manage.
    Box2T<MInterval> Pt{MInterval::from_mpq(px), MInterval::from_mpq(py)};
    CHECK(cp.eval(Pt, 0).width_d() < 1e-30);
}

TEST_CASE("hardware overflow raises PrecisionExhausted") {
    MPoly f = mp("x^4");
    CompiledPoly cp(f, 2);
    Box2 B{DInterval(1e200, 1e200), DInterval(0.0, 0.0)};
    CHECK_THROWS_AS(cp.eval(B, 0), Error);
    try {
        cp.eval(B, 0);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::PrecisionExhausted);
    }
}

TEST_CASE("arity guards") {
    MPoly f = mp("x + z");
    CompiledPoly cp3(f);
    CHECK(cp3.nvars() == 3);
    Box2 B2{DInterval(0, 1), DInterval(0, 1)};
    CHECK_THROWS_AS(cp3.eval(B2, 0), Error);
    CHECK_THROWS_AS(CompiledPoly(f, 2), Error);
    CompiledPoly cp2(mp("x*y"), 3); // bivariate promoted to three variables
    Box3 B3{DInterval(1, 1), DInterval(2, 2), DInterval(5, 5)};
    DInterval v = cp2.eval(B3, 0);
    CHECK(dcontains(v, mpq_class(2)));
    CHECK(v.width_d() < 1e-12);
}

TEST_CASE("krawczyk certifies the deflated cusp system at the origin") {
    // s11 = 6x, s10 = 9y for the standard cusp discriminant pair.
    CompiledPoly s11(mp("6*x"), 2), s10(mp("9*y"), 2);
    Box2 B{DInterval(-0.1, 0.1), DInterval(-0.1, 0.1)};
    auto r = krawczyk2(s11, s10, B);
    CHECK(r.certified);
    CHECK_FALSE(r.singular_midpoint);
    CHECK(dcontains(r.K.x, mpq_class(0)));
    CHECK(dcontains(r.K.y, mpq_class(0)));
    CHECK(r.K.width_d() < 1e-10);
}

TEST_CASE("krawczyk certifies a nonlinear root and contraction converges") {
    // F = (x^2 + y - 1, x - y): root at x = (sqrt(5)-1)/2, y = x.
    CompiledPoly f1(mp("x^2 + y - 1"), 2), f2(mp("x - y"), 2);
    Box2 B{DInterval(0.4, 0.8), DInterval(0.4, 0.8)};
    auto r = krawczyk2(f1, f2, B);
    CHECK(r.certified);
    Box2 C = B;
    for (int i = 0; i < 6; ++i) C = contract(C, f1, f2);
    CHECK(C.width_d() < 1e-12);
    double root = (std::sqrt(5.0) - 1.0) / 2.0;
    CHECK(C.x.lo <= root);
    CHECK(root <= C.x.hi + 1e-15);
}

TEST_CASE("krawczyk reports a singular midpoint Jacobian") {
    CompiledPoly f1(mp("x^2"), 2), f2(mp("y"), 2);
    Box2 B{DInterval(-0.5, 0.5), DInterval(-0.5, 0.5)};
    auto r = krawczyk2(f1, f2, B);
    CHECK(r.singular_midpoint);
    CHECK_FALSE(r.certified);
}

TEST_CASE("contraction on a root-free box raises EmptyIntersection") {
    CompiledPoly f1(mp("x - 10"), 2), f2(mp("y - 10"), 2);
    Box2 B{DInterval(0.0, 1.0), DInterval(0.0, 1.0)};
    CHECK_THROWS_AS(contract(B, f1, f2), Error);
    try {
        contract(B, f1, f2);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptyIntersection);
    }
}

TEST_CASE("three dimensional krawczyk certifies the cusp triple system") {
    // P = z^3 + x z - y, P_z = 3 z^2 + x, P_zz = 6 z; zero at the origin.
    CompiledPoly P(mp("z^3 + x*z - y"), 3);
    CompiledPoly Pz(mp("3*z^2 + x"), 3);
    CompiledPoly Pzz(mp("6*z"), 3);
    Box3 B{DInterval(-0.05, 0.05), DInterval(-0.05, 0.05), DInterval(-0.05, 0.05)};
    auto r = krawczyk3(P, Pz, Pzz, B);
    CHECK(r.certified);
    CHECK(dcontains(r.K.x, mpq_class(0)));
    CHECK(dcontains(r.K.y, mpq_class(0)));
    CHECK(dcontains(r.K.z, mpq_class(0)));
}

TEST_CASE("krawczyk on the software rung") {
    ScopedPrecision prec(128);
    CompiledPoly s11(mp("6*x"), 2), s10(mp("9*y"), 2);
    Box2T<MInterval> B{MInterval::from_double_pair(-0.1, 0.1),
                       MInterval::from_double_pair(-0.1, 0.1)};
    auto r = krawczyk2(s11, s10, B);
    CHECK(r.certified);
    CHECK(r.K.width_d() < 1e-30);
}

TEST_CASE("complex quadratic enclosure covers real and imaginary roots") {
    // z^2 - 1: roots +-1.
    auto roots = complex_quadratic_enclosure(DInterval(1, 1), DInterval(0, 0), DInterval(-1, -1));
    REQUIRE(roots.size() == 2);
    bool saw_plus = false, saw_minus = false;
    for (const auto& r : roots) {
        CHECK(dcontains(r.im, mpq_class(0)));
        if (dcontains(r.re, mpq_class(1))) saw_plus = true;
        if (dcontains(r.re, mpq_class(-1))) saw_minus = true;
    }
    CHECK(saw_plus);
    CHECK(saw_minus);

    // z^2 + 1: roots +-i.
    roots = complex_quadratic_enclosure(DInterval(1, 1), DInterval(0, 0), DInterval(1, 1));
    REQUIRE(roots.size() == 2);
    saw_plus = saw_minus = false;
    for (const auto& r : roots) {
        CHECK(dcontains(r.re, mpq_class(0)));
        if (dcontains(r.im, mpq_class(1))) saw_plus = true;
        if (dcontains(r.im, mpq_class(-1))) saw_minus = true;
    }
    CHECK(saw_plus);
    CHECK(saw_minus);
}

TEST_CASE("complex quadratic enclosure straddling discriminant stays sound") {
    // a=1, b=0, c in [-eps, eps]: member roots are +-sqrt(-c), real or imaginary.
    double eps = 1e-4;
    auto roots = complex_quadratic_enclosure(DInterval(1, 1), DInterval(0, 0),
                                             DInterval(-eps, eps));
    REQUIRE(roots.size() == 2);
    double s = std::sqrt(eps);
    // Real roots +-s at c = -eps and imaginary +-s at c = +eps must be covered.
    auto covered = [&](double re, double im) {
        for (const auto& r : roots)
            if (r.re.lo <= re && re <= r.re.hi && r.im.lo <= im && im <= r.im.hi) return true;
        return false;
    };
    CHECK(covered(s * 0.999, 0.0));
    CHECK(covered(-s * 0.999, 0.0));
    CHECK(covered(0.0, s * 0.999));
    CHECK(covered(0.0, -s * 0.999));
    CHECK(covered(0.0, 0.0));

    CHECK_THROWS_AS(
        complex_quadratic_enclosure(DInterval(-1, 1), DInterval(0, 0), DInterval(1, 1)), Error);
}
