#include <doctest.h>

#include "singuline/bipoly.hpp"
#include "support/gen.hpp"

using namespace singuline;

namespace {

BiPoly schoolbook_mul(const BiPoly& a, const BiPoly& b) {
    if (a.is_zero() || b.is_zero()) return BiPoly();
    int nx = a.nx() + b.nx() - 1, ny = a.ny() + b.ny() - 1;
    std::vector<mpz_class> c(static_cast<size_t>(nx) * ny);
    for (int i = 0; i < a.nx(); ++i)
        for (int j = 0; j < a.ny(); ++j)
            for (int u = 0; u < b.nx(); ++u)
                for (int v = 0; v < b.ny(); ++v)
                    c[(i + u) * ny + (j + v)] += a.coeff(i, j) * b.coeff(u, v);
    return BiPoly(nx, ny, std::move(c));
}

} // namespace

TEST_CASE("kronecker multiplication matches schoolbook") {
    std::mt19937_64 rng(42);
    for (int t = 0; t < 150; ++t) {
        int nxa = 1 + static_cast<int>(rng() % 6), nya = 1 + static_cast<int>(rng() % 6);
        int nxb = 1 + static_cast<int>(rng() % 6), nyb = 1 + static_cast<int>(rng() % 6);
        BiPoly a = testing::rand_bipoly(rng, nxa, nya, 50);
        BiPoly b = testing::rand_bipoly(rng, nxb, nyb, 50);
        CHECK(a * b == schoolbook_mul(a, b));
    }
}

TEST_CASE("kronecker multiplication with large coefficients") {
    std::mt19937_64 rng(43);
    for (int t = 0; t < 25; ++t) {
        int nxa = 1 + static_cast<int>(rng() % 4), nya = 1 + static_cast<int>(rng() % 4);
        int nxb = 1 + static_cast<int>(rng() % 4), nyb = 1 + static_cast<int>(rng() % 4);
        std::vector<mpz_class> ca(static_cast<size_t>(nxa) * nya), cb(static_cast<size_t>(nxb) * nyb);
        for (auto& v : ca) v = testing::rand_big(rng, 300);
        for (auto& v : cb) v = testing::rand_big(rng, 300);
        BiPoly a(nxa, nya, std::move(ca)), b(nxb, nyb, std::move(cb));
        CHECK(a * b == schoolbook_mul(a, b));
    }
}

TEST_CASE("multiplication structure") {
    std::mt19937_64 rng(44);
    BiPoly a = testing::rand_bipoly(rng, 3, 4, 9, true);
    BiPoly b = testing::rand_bipoly(rng, 5, 2, 9, true);
    BiPoly c = testing::rand_bipoly(rng, 2, 2, 9, true);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * BiPoly()).is_zero());
    CHECK(a * BiPoly::constant(1) == a);
}

TEST_CASE("exact division recovers factors") {
    std::mt19937_64 rng(45);
    for (int t = 0; t < 60; ++t) {
        BiPoly a = testing::rand_bipoly(rng, 1 + static_cast<int>(rng() % 5),
                                        1 + static_cast<int>(rng() % 5), 30, true);
        BiPoly b = testing::rand_bipoly(rng, 1 + static_cast<int>(rng() % 5),
                                        1 + static_cast<int>(rng() % 5), 30, true);
        BiPoly c = a * b;
        CHECK(c.exact_div(b) == a);
        CHECK(c.exact_div(a) == b);
    }
}

TEST_CASE("exact division rejects non-multiples") {
    BiPoly x(2, 1, {mpz_class(0), mpz_class(1)});
    BiPoly y(1, 2, {mpz_class(0), mpz_class(1)});
    BiPoly c = x * x - y; // x^2 - y, not divisible by x
    CHECK_THROWS_AS(c.exact_div(x), Error);
    CHECK_THROWS_AS(x.exact_div(BiPoly()), Error);
}

TEST_CASE("division by large-coefficient factors") {
    std::mt19937_64 rng(46);
    for (int t = 0; t < 10; ++t) {
        std::vector<mpz_class> ca(9), cb(4);
        for (auto& v : ca) v = testing::rand_big(rng, 400);
        for (auto& v : cb) v = testing::rand_big(rng, 11);
        BiPoly a(3, 3, std::move(ca)), b(2, 2, std::move(cb));
        if (b.is_zero()) continue;
        CHECK((a * b).exact_div(b) == a);
    }
}

TEST_CASE("transpose, eval, mpoly round trip") {
    std::mt19937_64 rng(47);
    BiPoly a = testing::rand_bipoly(rng, 4, 3, 20, true);
    CHECK(a.transpose().transpose() == a);

    mpq_class x(3, 7), y(-2, 5);
    CHECK(a.eval(x, y) == a.transpose().eval(y, x));

    mpz_class den;
    BiPoly back = BiPoly::from_mpoly(a.to_mpoly(), den);
    CHECK(den == 1);
    CHECK(back == a);

    MPoly half = MPoly::constant(mpq_class(1, 2)) * a.to_mpoly();
    BiPoly cleared = BiPoly::from_mpoly(half, den);
    CHECK(den == 2);
    CHECK(cleared == a);
}

TEST_CASE("pow") {
    BiPoly x(2, 1, {mpz_class(1), mpz_class(1)}); // 1 + x
    CHECK(x.pow(0) == BiPoly::constant(1));
    CHECK(x.pow(3) == x * x * x);
}
