#include "doctest.h"
#include "tmod/padic.hpp"
#include "tmod/contfrac.hpp"

using namespace tmod;

TEST_CASE("padic log basics") {
    auto Q5 = PadicField::qp(5);
    PadicElem one{1, 0, 40};
    auto l1 = padic_log(Q5, one);
    CHECK(l1.a == 0);
    // nu_5(log(1+5)) = 1
    PadicElem x{6, 0, 40};
    CHECK(padic_valuation2(Q5, padic_log(Q5, x)) == 2);
    // nu_5(log(1+25)) = 2
    PadicElem y{26, 0, 40};
    CHECK(padic_valuation2(Q5, padic_log(Q5, y)) == 4);
}

TEST_CASE("log is additive on products") {
    auto Q7 = PadicField::qp(7);
    cpp_int p7 = 1;
    for (int i = 0; i < 40; ++i) p7 *= 7;
    for (i64 u : {8, 15, 50, 99}) {
        for (i64 v : {22, 36, 43}) {
            PadicElem x{u, 0, 40}, y{v, 0, 40};
            if ((u - 1) % 7 != 0 || (v - 1) % 7 != 0) continue;
            auto lx = padic_log(Q7, x), ly = padic_log(Q7, y);
            auto lxy = padic_log(Q7, padic_mul(Q7, x, y));
            CHECK((lx.a + ly.a - lxy.a) % (p7 / (7 * 7 * 7 * 7)) == 0);
        }
    }
}

TEST_CASE("regulator valuations match the unit coordinates") {
    // nu_2(R_2) = nu_2(a_l) for l = 17 (split) and l = 7 (ramified)
    CHECK(regulator_valuation2(QuadField::make(17), 2) == 2 * 2);
    CHECK(regulator_valuation2(QuadField::make(7), 2) == 2 * 3);
    // Q(sqrt 2): nu_2(log eps) = 1/2
    CHECK(regulator_valuation2(QuadField::make(2), 2) == 1);
}

TEST_CASE("unit valuation identities for prime fields") {
    for (i64 l : sieve_primes(600)) {
        i64 r8 = l % 8;
        if (r8 != 1 && r8 != 7) continue;
        auto u = fundamental_unit(l);
        CHECK(regulator_valuation2(QuadField::make(l), 2) == 2 * u.v2_a());
        auto u2l = fundamental_unit(2 * l);
        CHECK(regulator_valuation2(QuadField::make(2 * l), 2) == 1 + 2 * u2l.v2_b());
    }
}

TEST_CASE("split root and odd p regulators run") {
    // 5 splits in Q(sqrt 11): 11 = 1 mod 5
    auto F = QuadField::make(11);
    cpp_int r = split_root(F, 5, 20);
    auto [B, C] = std::pair<i64, i64>{0, 11};
    cpp_int p20 = 1;
    for (int i = 0; i < 20; ++i) p20 *= 5;
    CHECK((r * r - B * r - C) % p20 == 0);
    CHECK(regulator_valuation2(F, 5) >= 0);
    // inert and ramified odd cases execute
    CHECK(regulator_valuation2(QuadField::make(7), 5) >= 0);
    CHECK(regulator_valuation2(QuadField::make(10), 5) >= 1);
}
