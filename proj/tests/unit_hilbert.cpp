#include "doctest.h"
#include "tmod/hilbert.hpp"

#include <random>

using namespace tmod;

TEST_CASE("rational Hilbert symbol examples") {
    CHECK(hilbert_additive_Q(2, -21, 3) == 1);  // tame, (2/3) = -1
    CHECK(hilbert_additive_Q(1, -5, 7) == 0);
    CHECK(hilbert_additive_Q(-1, -1, 0) == 1);
    CHECK(hilbert_additive_Q(-1, -1, 2) == 1);
    CHECK(hilbert_additive_Q(2, 17, 2) == 0);
    CHECK(hilbert_additive_Q(2, 5, 2) == 1);
}

TEST_CASE("product formula") {
    CHECK(product_formula_check(2, -21) == 0);
    CHECK(product_formula_check(-1, -1) == 0);
    CHECK(product_formula_check(6, 35) == 0);
    std::mt19937_64 rng(42);
    for (int i = 0; i < 10000; ++i) {
        i64 a = static_cast<i64>(rng() % 2000) - 1000;
        i64 b = static_cast<i64>(rng() % 2000) - 1000;
        if (a == 0 || b == 0) continue;
        CHECK(product_formula_check(a, b) == 0);
    }
}

TEST_CASE("bilinearity and symmetry at random places") {
    std::mt19937_64 rng(43);
    std::vector<i64> places{0, 2, 3, 5, 7, 11, 13};
    for (int i = 0; i < 4000; ++i) {
        i64 p = places[rng() % places.size()];
        i64 x = static_cast<i64>(rng() % 400) - 200;
        i64 y = static_cast<i64>(rng() % 400) - 200;
        i64 z = static_cast<i64>(rng() % 400) - 200;
        if (x == 0 || y == 0 || z == 0) continue;
        CHECK(hilbert_additive_Q(x, y, p) == hilbert_additive_Q(y, x, p));
        CHECK((hilbert_additive_Q(cpp_int(x) * z, y, p)) ==
              ((hilbert_additive_Q(x, y, p) + hilbert_additive_Q(z, y, p)) & 1));
    }
}

TEST_CASE("tame symbols at ramified odd primes") {
    auto F = QuadField::make(-15);
    QElem sqrt_m = QElem::make(0, 1, 1);  // sqrt(-15)
    // [sqrt(-15), 5] at the prime over 3 reduces to (5/3) = -1
    CHECK(tame_symbol_ramified(F, 3, sqrt_m, QElem::integer(5)) == 1);
    CHECK(tame_symbol_ramified(F, 3, sqrt_m, QElem::integer(1)) == 0);
    SUBCASE("norm projection: [x, y] = [N(x), y]_q for rational y") {
        std::mt19937_64 rng(77);
        for (i64 m : {-15, -21, -35, -105, 15, 21, 165}) {
            auto Fm = QuadField::make(m);
            for (i64 q : Fm.q) {
                for (int i = 0; i < 60; ++i) {
                    QElem x = QElem::make(static_cast<i64>(rng() % 40) - 20,
                                          static_cast<i64>(rng() % 40) - 20, 1);
                    if (x.is_zero()) continue;
                    auto [nn, nd] = x.norm(Fm.m);
                    if (nn == 0) continue;
                    i64 y = static_cast<i64>(rng() % 60) - 30;
                    if (y == 0) continue;
                    int lhs = tame_symbol_ramified(Fm, q, x, QElem::integer(y));
                    int rhs = hilbert_additive_Q(nn, cpp_int(y), q);
                    CHECK(lhs == rhs);
                }
            }
        }
    }
    SUBCASE("bilinearity of the tame symbol") {
        std::mt19937_64 rng(78);
        auto Fm = QuadField::make(-105);
        for (i64 q : Fm.q) {
            for (int i = 0; i < 80; ++i) {
                QElem x = QElem::make(static_cast<i64>(rng() % 30) - 15,
                                      static_cast<i64>(rng() % 30) - 15, 1);
                QElem y = QElem::make(static_cast<i64>(rng() % 30) - 15,
                                      static_cast<i64>(rng() % 30) - 15, 1);
                QElem z = QElem::make(static_cast<i64>(rng() % 30) - 15,
                                      static_cast<i64>(rng() % 30) - 15, 1);
                if (x.is_zero() || y.is_zero() || z.is_zero()) continue;
                auto [nx, dx] = x.norm(Fm.m);
                auto [ny, dy] = y.norm(Fm.m);
                auto [nz, dz] = z.norm(Fm.m);
                if (nx == 0 || ny == 0 || nz == 0) continue;
                int xy = tame_symbol_ramified(Fm, q, x, y);
                int yx = tame_symbol_ramified(Fm, q, y, x);
                CHECK(xy == yx);
                int xz_y = tame_symbol_ramified(Fm, q, x.mul(z, Fm.m), y);
                int x_y = tame_symbol_ramified(Fm, q, x, y);
                int z_y = tame_symbol_ramified(Fm, q, z, y);
                CHECK(xz_y == ((x_y + z_y) & 1));
            }
        }
    }
}
