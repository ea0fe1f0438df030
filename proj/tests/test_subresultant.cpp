#include <doctest.h>

#include "singuline/subresultant.hpp"
#include "support/detpol_oracle.hpp"
#include "support/gen.hpp"

using namespace singuline;
using testing::detpol_subres;
using testing::mp;

namespace {

bool identity_holds(const ChainBottom& c) {
    BiPoly lhs = c.s22 * c.s22 * c.f;
    BiPoly rhs = c.s22 * (c.s10 * c.s10) - c.s21 * (c.s11 * c.s10) + c.s20 * (c.s11 * c.s11);
    return lhs == rhs;
}

void check_matches_detpol(const ZPoly& P, const ZPoly& Q) {
    ChainBottom got = subres_bottom(P, Q);
    ZPoly S2 = detpol_subres(P, Q, 2);
    ZPoly S1 = detpol_subres(P, Q, 1);
    ZPoly S0 = detpol_subres(P, Q, 0);
    auto at = [](const ZPoly& a, int i) {
        return i < static_cast<int>(a.size()) ? a[i] : BiPoly();
    };
    CHECK(got.s22 == at(S2, 2));
    CHECK(got.s21 == at(S2, 1));
    CHECK(got.s20 == at(S2, 0));
    CHECK(got.s11 == at(S1, 1));
    CHECK(got.s10 == at(S1, 0));
    CHECK(got.f == at(S0, 0));
    CHECK(identity_holds(got));
}

// Resultant of univariate rational polynomials by Euclidean reduction.
using UniQ = std::vector<mpq_class>;

int udeg(const UniQ& a) {
    int d = static_cast<int>(a.size()) - 1;
    while (d >= 0 && a[d] == 0) --d;
    return d;
}

mpq_class qpow(mpq_class b, int e) {
    mpq_class r(1);
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

mpq_class uni_res(UniQ A, UniQ B) {
    int p = udeg(A), q = udeg(B);
    if (p < 0 || q < 0) return 0;
    A.resize(p + 1);
    B.resize(q + 1);
    if (q == 0) return qpow(B[0], p);
    if (p == 0) return qpow(A[0], q);
    if (p < q) {
        mpq_class s = (p * q) % 2 ? -1 : 1;
        return s * uni_res(B, A);
    }
    UniQ R = A;
    for (int k = p; k >= q; --k) {
        mpq_class c = R[k] / B[q];
        for (int i = 0; i <= q; ++i) R[k - q + i] -= c * B[i];
    }
    int r = udeg(R);
    if (r < 0) return 0;
    R.resize(r + 1);
    mpq_class s = (p * q) % 2 ? -1 : 1;
    return s * qpow(B[q], p - r) * uni_res(B, R);
}

UniQ specialize_z(const MPoly& P, const mpq_class& x0, const mpq_class& y0) {
    UniQ out(static_cast<size_t>(std::max(P.deg_z(), 0)) + 1);
    for (const auto& [e, c] : P.terms()) {
        mpq_class t = c;
        for (int i = 0; i < e.ex; ++i) t *= x0;
        for (int i = 0; i < e.ey; ++i) t *= y0;
        out[e.ez] += t;
    }
    return out;
}

} // namespace

TEST_CASE("cusp fixture chain values") {
    SubresultantData d = subresultant_chain(mp("z^3 + x*z + y"), mp("3*z^2 + x"));
    CHECK(d.s22 == mp("3"));
    CHECK(d.s21 == MPoly());
    CHECK(d.s20 == mp("x"));
    CHECK(d.s11 == mp("6*x"));
    CHECK(d.s10 == mp("9*y"));
    CHECK(d.f == mp("4*x^3 + 27*y^2"));
    CHECK(d.deg_z_P == 3);
    CHECK(d.deg_z_Q == 2);
    CHECK(d.res_scalar == 1);
}

TEST_CASE("node fixture chain values (equal degrees)") {
    SubresultantData d = subresultant_chain(mp("z^2 - z"), mp("z^2 + 2*x*z - z + y - x"));
    CHECK(d.s22 == mp("1"));
    CHECK(d.s21 == mp("2*x - 1"));
    CHECK(d.s20 == mp("y - x"));
    CHECK(d.s11 == mp("2*x"));
    CHECK(d.s10 == mp("y - x"));
    CHECK(d.f == mp("y^2 - x^2"));
}

TEST_CASE("defective chain fixture") {
    SubresultantData d = subresultant_chain(mp("z^3 + 1"), mp("3*z^2"));
    CHECK(d.s11 == MPoly());
    CHECK(d.s10 == mp("9"));
    CHECK(d.f == mp("27"));
    CHECK(d.s22 == mp("3"));
    CHECK(d.s21 == MPoly());
    CHECK(d.s20 == MPoly());
}

TEST_CASE("degree preconditions") {
    CHECK_THROWS_AS(subresultant_chain(mp("z^2 + x"), mp("z^3 + y")), Error);
    CHECK_THROWS_AS(subresultant_chain(mp("z^3 + x"), mp("z + y")), Error);
    CHECK_THROWS_AS(subresultant_chain(mp("z^2 + x"), mp("2*z^2 + 2*x")), Error);
    CHECK_NOTHROW(subresultant_chain(mp("z^3 + x"), mp("z^4 + y")));
}

TEST_CASE("random chains match the determinantal definition, p > q") {
    std::mt19937_64 rng(50001);
    for (int t = 0; t < 30; ++t) {
        int p = 3 + static_cast<int>(rng() % 2);
        int q = 2 + static_cast<int>(rng() % (p - 2));
        ZPoly P = testing::rand_zpoly(rng, p, 1, 6);
        ZPoly Q = testing::rand_zpoly(rng, q, 1, 6);
        check_matches_detpol(P, Q);
    }
}

TEST_CASE("random chains match the determinantal definition, p < q") {
    std::mt19937_64 rng(50002);
    for (int t = 0; t < 20; ++t) {
        int q = 3 + static_cast<int>(rng() % 2);
        int p = 2 + static_cast<int>(rng() % (q - 2));
        ZPoly P = testing::rand_zpoly(rng, p, 1, 6);
        ZPoly Q = testing::rand_zpoly(rng, q, 1, 6);
        check_matches_detpol(P, Q);
    }
}

TEST_CASE("random equal-degree chains, p >= 3") {
    std::mt19937_64 rng(50003);
    for (int t = 0; t < 20; ++t) {
        int p = 3 + static_cast<int>(rng() % 2);
        ZPoly P = testing::rand_zpoly(rng, p, 1, 5);
        ZPoly Q = testing::rand_zpoly(rng, p, 1, 5);
        if (zsub(zscale(P, zlc(Q)), zscale(Q, zlc(P))).empty()) continue;
        check_matches_detpol(P, Q);
    }
}

TEST_CASE("equal-degree pairs with forced defects") {
    auto zp = [](const MPoly& m) {
        mpz_class one;
        return zpoly_from_mpoly(m, one);
    };
    std::vector<std::pair<MPoly, MPoly>> cases = {
        {mp("z^3 + z + 1"), mp("z^3 + z + 5")},
        {mp("z^3 + x*z + 1"), mp("z^3 + x*z + x")},
        {mp("2*z^4 + z^2 + 1"), mp("z^4 + 3")},
        {mp("3*z^4 + x"), mp("z^4 + z + 1")},
        {mp("2*z^5 + z + 1"), mp("3*z^5 + z + 1")},
        {mp("2*z^3 + 5*z^2 + 1"), mp("4*z^3 + 10*z^2 + 3")},
    };
    for (const auto& [P, Q] : cases) check_matches_detpol(zp(P), zp(Q));
}

TEST_CASE("equal-degree p = 2 convention") {
    std::mt19937_64 rng(50004);
    auto at = [](const ZPoly& a, int i) {
        return i < static_cast<int>(a.size()) ? a[i] : BiPoly();
    };
    int done = 0;
    for (int t = 0; t < 40 && done < 15; ++t) {
        ZPoly P = testing::rand_zpoly(rng, 2, 1, 5);
        ZPoly Q = testing::rand_zpoly(rng, 2, 1, 5);
        if (zsub(zscale(P, zlc(Q)), zscale(Q, zlc(P))).empty()) continue;
        ++done;
        ChainBottom got = subres_bottom(P, Q);
        CHECK(identity_holds(got));
        // S_0 is the plain resultant; S_1 and the top carry one factor lc(Q).
        BiPoly b = zlc(Q);
        CHECK(got.f == at(detpol_subres(P, Q, 0), 0));
        ZPoly S1 = detpol_subres(P, Q, 1);
        CHECK(got.s11 == at(S1, 1) * b);
        CHECK(got.s10 == at(S1, 0) * b);
        CHECK(got.s22 == b * b);
        CHECK(got.s21 == Q[1] * b);
        CHECK(got.s20 == Q[0] * b);
    }
    CHECK(done >= 10);
}

TEST_CASE("rational inputs: stored scalar ties f to the true resultant") {
    std::mt19937_64 rng(50005);
    for (int t = 0; t < 10; ++t) {
        MPoly P = testing::rand_mpoly(rng, 3, 1, 7).scaled(mpq_class(1, 1 + static_cast<long>(rng() % 5)));
        MPoly Q = testing::rand_mpoly(rng, 2, 1, 7).scaled(mpq_class(1, 1 + static_cast<long>(rng() % 5)));
        SubresultantData d = subresultant_chain(P, Q);

        mpq_class x0(static_cast<long>(rng() % 7) + 1, 3);
        mpq_class y0(static_cast<long>(rng() % 7) + 2, 5);
        x0.canonicalize();
        y0.canonicalize();
        UniQ pu = specialize_z(P, x0, y0);
        UniQ qu = specialize_z(Q, x0, y0);
        if (udeg(pu) != P.deg_z() || udeg(qu) != Q.deg_z()) continue;
        mpq_class fv = eval_exact(d.f, std::array<mpq_class, 2>{x0, y0});
        CHECK(fv == d.res_scalar * uni_res(pu, qu));
    }
}

TEST_CASE("identity holds on denser random pairs") {
    std::mt19937_64 rng(50006);
    for (int t = 0; t < 4; ++t) {
        ZPoly P = testing::rand_zpoly(rng, 4 + static_cast<int>(rng() % 2), 2, 8);
        ZPoly Q = testing::rand_zpoly(rng, 3, 2, 8);
        ChainBottom c = subres_bottom(P, Q);
        CHECK(identity_holds(c));
        CHECK_FALSE(c.f.is_zero());
    }
}
