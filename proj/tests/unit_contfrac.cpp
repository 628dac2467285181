#include "doctest.h"
#include "tmod/contfrac.hpp"

using namespace tmod;

namespace {

// brute-force fundamental unit search in ascending sqrt(m)-coefficient order:
// candidates (x + y sqrt m)/den with b = y/den = 1/2, 1, 3/2, 2, ...
std::optional<std::tuple<cpp_int, cpp_int, cpp_int, int>> pell_candidate(i64 m, i64 twice_y) {
    i64 mm = ((m % 4) + 4) % 4;
    cpp_int y, den;
    if (twice_y % 2 == 1) {
        if (mm != 1) return std::nullopt;
        y = twice_y;
        den = 2;
    } else {
        y = twice_y / 2;
        den = 1;
    }
    for (int sign : {-1, 1}) {
        cpp_int x2 = m * y * y + sign * den * den;
        if (x2 <= 0) continue;
        cpp_int x = isqrt_big(x2);
        if (x * x != x2) continue;
        if (den == 2 && ((x - y) % 2 != 0)) continue;
        return std::tuple<cpp_int, cpp_int, cpp_int, int>{x, y, den, sign};
    }
    return std::nullopt;
}

}  // namespace

TEST_CASE("fundamental unit examples") {
    auto u7 = fundamental_unit(7);
    auto [a7, b7] = u7.sqrt_coords();
    CHECK(a7 == 8);
    CHECK(b7 == 3);
    CHECK(u7.norm == 1);
    CHECK(u7.v2_a() == 3);

    auto u17 = fundamental_unit(17);
    auto [a17, b17] = u17.sqrt_coords();  // over denominator 2 when m = 1 mod 4
    CHECK(a17 == 8);                      // (8 + 2 sqrt17)/2 = 4 + sqrt17
    CHECK(b17 == 2);
    CHECK(u17.norm == -1);
    CHECK(u17.v2_a() == 2);

    auto u2 = fundamental_unit(2);
    auto [a2, b2] = u2.sqrt_coords();
    CHECK(a2 == 1);
    CHECK(b2 == 1);
    CHECK(u2.norm == -1);

    auto u5 = fundamental_unit(5);
    CHECK(u5.x == 0);
    CHECK(u5.y == 1);  // (1 + sqrt5)/2
    CHECK(u5.norm == -1);
}

TEST_CASE("fundamental unit is the minimal unit, m <= 300") {
    SpfSieve sieve(305);
    for (i64 m = 2; m <= 300; ++m) {
        if (!sieve.is_squarefree(m)) continue;
        auto u = fundamental_unit(m);
        REQUIRE(u.exact);
        auto [a, b] = u.sqrt_coords();  // over den = 2 iff m = 1 mod 4
        i64 mm = ((m % 4) + 4) % 4;
        cpp_int den = (mm == 1) ? 2 : 1;
        cpp_int twice_y = b * (2 / den);
        if (twice_y > 200000) continue;  // unit too large to brute force
        for (cpp_int ty = 1; ty < twice_y; ++ty) {
            CHECK_FALSE(pell_candidate(m, static_cast<i64>(ty)).has_value());
        }
        auto cand = pell_candidate(m, static_cast<i64>(twice_y));
        REQUIRE(cand.has_value());
        auto [bx, by, bden, bsign] = *cand;
        CHECK(a * bden == bx * den);
        CHECK(b * bden == by * den);
        CHECK(u.norm == bsign);
    }
}

TEST_CASE("modular track agrees with exact coordinates") {
    SpfSieve sieve(2005);
    for (i64 m = 1990; m <= 2000; ++m) {
        if (!sieve.is_squarefree(m)) continue;
        auto u = fundamental_unit(m);
        auto [x_mod, y_mod] = fundamental_unit_mod(m, 1000000007ULL);
        if (u.exact) {
            CHECK(cpp_int(x_mod) == u.x % 1000000007);
            CHECK(cpp_int(y_mod) == u.y % 1000000007);
            CHECK(static_cast<u64>(u.x % cpp_int("18446744073709551616")) == u.x_mod);
        }
        CHECK(fundamental_unit_norm(m) == u.norm);
    }
}

TEST_CASE("a_l is even for primes l = 3 mod 4") {
    for (i64 l : sieve_primes(3000)) {
        if (l % 4 != 3) continue;
        auto u = fundamental_unit(l);
        CHECK(u.v2_a() >= 1);
    }
}
