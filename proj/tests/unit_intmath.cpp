#include "doctest.h"
#include "tmod/intmath.hpp"

#include <random>

using namespace tmod;

TEST_CASE("sieve_primes small and boundary") {
    CHECK(sieve_primes(10) == std::vector<i64>{2, 3, 5, 7});
    CHECK(sieve_primes(2) == std::vector<i64>{2});
    CHECK_THROWS_AS(sieve_primes(1LL << 40), capacity_error);
}

TEST_CASE("sieve_primes agrees with trial division up to 10^4") {
    auto primes = sieve_primes(10000);
    std::vector<i64> slow;
    for (i64 n = 2; n <= 10000; ++n) {
        bool p = true;
        for (i64 d = 2; d * d <= n; ++d)
            if (n % d == 0) {
                p = false;
                break;
            }
        if (p) slow.push_back(n);
    }
    CHECK(primes == slow);
}

TEST_CASE("prime count at 10^6") {
    CHECK(sieve_primes(1000000).size() == 78498);
}

TEST_CASE("squarefree_factor") {
    auto f = squarefree_factor(105);
    REQUIRE(f.has_value());
    CHECK(f->factors == std::vector<std::pair<i64, int>>{{3, 1}, {5, 1}, {7, 1}});
    CHECK_FALSE(squarefree_factor(12).has_value());
    auto g = squarefree_factor(-446);
    REQUIRE(g.has_value());
    CHECK(g->value == -446);
    CHECK(g->factors == std::vector<std::pair<i64, int>>{{2, 1}, {223, 1}});
}

TEST_CASE("jacobi basics") {
    CHECK(jacobi_additive(2, 7) == 0);   // squares mod 7 are {1,2,4}
    CHECK(jacobi_additive(1, 9) == 0);
    CHECK(jacobi_additive(3, 35) == 0);  // (3/5)(3/7) = (-1)(-1)
    CHECK_FALSE(jacobi_additive(6, 9).has_value());
}

TEST_CASE("jacobi agrees with Euler criterion at primes") {
    auto primes = sieve_primes(200);
    for (i64 p : primes) {
        if (p == 2) continue;
        for (i64 a = 1; a < p; ++a) {
            u64 e = powmod(static_cast<u64>(a), static_cast<u64>((p - 1) / 2), static_cast<u64>(p));
            int expected = (e == 1) ? 1 : -1;
            CHECK(jacobi(a, p) == expected);
        }
    }
}

TEST_CASE("jacobi reciprocity over random odd pairs") {
    std::mt19937_64 rng(12345);
    for (int i = 0; i < 5000; ++i) {
        i64 a = 2 * static_cast<i64>(rng() % 100000) + 1;
        i64 n = 2 * static_cast<i64>(rng() % 100000) + 1;
        if (gcd_ll(a, n) != 1) continue;
        auto ja = jacobi_additive(a, n), jn = jacobi_additive(n, a);
        REQUIRE(ja.has_value());
        REQUIRE(jn.has_value());
        int rhs = static_cast<int>(((a - 1) / 2) * ((n - 1) / 2)) & 1;
        CHECK(((*ja + *jn) & 1) == rhs);
    }
}

TEST_CASE("miller-rabin vs sieve") {
    auto primes = sieve_primes(20000);
    std::vector<char> isp(20001, 0);
    for (i64 p : primes) isp[p] = 1;
    for (i64 n = 2; n <= 20000; ++n) CHECK(is_prime_u64(n) == static_cast<bool>(isp[n]));
}

TEST_CASE("quartic symbol") {
    CHECK(quartic_symbol(4, 17) == 1);   // 4^4 = 256 = 1 mod 17
    CHECK(quartic_symbol(1, 13) == 1);
    // brute force: fourth powers mod 17 are {1, 4, 13, 16}
    CHECK(quartic_symbol(13, 17) == 1);
    CHECK(quartic_symbol(8, 17) == -1);  // QR but not a fourth power
    CHECK_FALSE(quartic_symbol(3, 17).has_value());  // not a QR
    SUBCASE("consistency with Legendre over small primes") {
        for (i64 l : {5, 13, 17, 29, 37, 41, 73, 89, 97}) {
            for (i64 a = 1; a < l; ++a) {
                auto q4 = quartic_symbol(a, l);
                bool is_qr = jacobi(a, l) == 1;
                CHECK(q4.has_value() == is_qr);
                if (q4) {
                    // matches a direct fourth-power search
                    bool fourth = false;
                    for (i64 x = 1; x < l && !fourth; ++x)
                        if (powmod(x, 4, l) == static_cast<u64>(a)) fourth = true;
                    CHECK((*q4 == 1) == fourth);
                }
            }
        }
    }
}

TEST_CASE("sqrt_mod_p and lifts") {
    std::mt19937_64 rng(99);
    auto primes = sieve_primes(500);
    for (i64 p : primes) {
        if (p == 2) continue;
        for (int i = 0; i < 10; ++i) {
            u64 a = rng() % p;
            auto r = sqrt_mod_p(a, p);
            if (r) CHECK(mulmod(*r, *r, p) == a);
            if (a != 0 && jacobi(static_cast<i64>(a), p) == 1) CHECK(r.has_value());
        }
    }
    for (u64 a : {1ULL, 9ULL, 17ULL, 25ULL, 33ULL, 41ULL}) {
        u64 r = sqrt_mod_2k(a, 20);
        CHECK(((r * r - a) & ((1ULL << 20) - 1)) == 0);
        CHECK((r & 3) == 1);
    }
    cpp_int rb = sqrt_mod_2k_big(cpp_int(-7), 80);
    CHECK(((rb * rb + 7) % (cpp_int(1) << 80)) == 0);
}

TEST_CASE("representations 2g^2 - h^2") {
    auto r = rep_2g2_h2(17);
    CHECK((r.g == 3 && r.h == 1));
    r = rep_2g2_h2(7);
    CHECK((r.g == 2 && r.h == 1));
    r = rep_2g2_h2(2);
    CHECK((r.g == 3 && r.h == 4));
    SUBCASE("defining equation holds for admissible m") {
        SpfSieve sieve(3000);
        for (i64 m = 2; m <= 3000; ++m) {
            if (!sieve.is_squarefree(m)) continue;
            bool ok = true;
            for (i64 q : sieve.odd_prime_factors(m)) {
                i64 r8 = q % 8;
                if (r8 != 1 && r8 != 7) ok = false;
            }
            if (!ok) continue;
            auto rep = rep_2g2_h2(m);
            CHECK(2 * rep.g * rep.g - rep.h * rep.h == m);
            CHECK(rep.g > 0);
            CHECK(rep.h > 0);
            CHECK(gcd_ll(rep.g, rep.h) == 1);
        }
    }
}

TEST_CASE("representations u^2 - 2v^2") {
    auto r = rep_u2_2v2(7);
    CHECK((r.u == 3 && r.v == 1));
    r = rep_u2_2v2(17);
    CHECK((r.u == 5 && r.v == 2));
    r = rep_u2_2v2(23);
    CHECK((r.u == 5 && r.v == 1));
    SUBCASE("normalization and equation for primes below 5000") {
        for (i64 l : sieve_primes(5000)) {
            i64 r8 = l % 8;
            if (r8 != 1 && r8 != 7) continue;
            auto rep = rep_u2_2v2(l);
            CHECK(rep.u * rep.u - 2 * rep.v * rep.v == l);
            CHECK(rep.v > 0);
            if (r8 == 1) CHECK(((rep.u % 4) + 4) % 4 == 1);
            if (r8 == 7) CHECK(rep.u > 0);
            auto nxt = rep_uv_next(rep);
            CHECK(nxt.u * nxt.u - 2 * nxt.v * nxt.v == l);
        }
    }
}
