#include "doctest.h"
#include "tmod/localfield.hpp"
#include "tmod/hilbert.hpp"

#include <random>

using namespace tmod;

TEST_CASE("square classes of Q2") {
    CHECK(Q2Local::square_class_of(cpp_int(1)) == 1);
    CHECK(Q2Local::square_class_of(cpp_int(9)) == 1);
    CHECK(Q2Local::square_class_of(cpp_int(-1)) == -1);
    CHECK(Q2Local::square_class_of(cpp_int(3)) == -5);
    CHECK(Q2Local::square_class_of(cpp_int(5)) == 5);
    CHECK(Q2Local::square_class_of(cpp_int(2)) == 2);
    CHECK(Q2Local::square_class_of(cpp_int(-14)) == 2);  // -14 = 2 * (-7), -7 = 1 mod 8
    CHECK(Q2Local::square_class_of(cpp_int(40)) == 10);
    CHECK(Q2Local::square_class_of(cpp_int(-15)) == 1);
}

TEST_CASE("Q2 symbol matches the rational formula") {
    const auto& E = Q2Local::get(1);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 2000; ++i) {
        i64 a = static_cast<i64>(rng() % 512) - 256;
        i64 b = static_cast<i64>(rng() % 512) - 256;
        if (a == 0 || b == 0) continue;
        LocalElem2 x{cpp_int(a), 0, 80}, y{cpp_int(b), 0, 80};
        CHECK(E.symbol(x, y) == hilbert_additive_Q(a, b, 2));
    }
}

TEST_CASE("quadratic extension tables are consistent") {
    for (int d : {5, -1, -5, 2, -2, 10, -10}) {
        const auto& E = Q2Local::get(d);
        CHECK(E.e * E.f == 2);
        // d itself must be a square in E: symbol (d, y) = 0 for any y
        std::mt19937_64 rng(100 + d);
        for (int i = 0; i < 30; ++i) {
            i64 ya = static_cast<i64>(rng() % 64) - 32;
            i64 yb = static_cast<i64>(rng() % 64) - 32;
            if (ya == 0 && yb == 0) continue;
            LocalElem2 y{cpp_int(ya), cpp_int(yb), 80};
            cpp_int N = E.norm(y);
            if (N == 0) continue;
            // express d in the (1, w) basis: for ramified w^2 = d; for d = 5, (2w-1)^2 = 5
            LocalElem2 delt = (E.f == 2) ? LocalElem2{cpp_int(-1), 2, 80} : LocalElem2{0, 1, 80};
            LocalElem2 dsq = E.mul(delt, delt);
            CHECK(dsq.b == 0);
            CHECK(E.symbol(dsq, y) == 0);
        }
    }
}

TEST_CASE("local symbols: symmetry, bilinearity, brute force oracle") {
    std::mt19937_64 rng(1234);
    for (int d : {5, -1, -5, 2, -2, 10, -10}) {
        const auto& E = Q2Local::get(d);
        int checked = 0;
        for (int i = 0; checked < 25 && i < 4000; ++i) {
            i64 xa = static_cast<i64>(rng() % 32) - 16;
            i64 xb = static_cast<i64>(rng() % 32) - 16;
            i64 ya = static_cast<i64>(rng() % 32) - 16;
            i64 yb = static_cast<i64>(rng() % 32) - 16;
            LocalElem2 x{cpp_int(xa), cpp_int(xb), 80}, y{cpp_int(ya), cpp_int(yb), 80};
            if (E.norm(x) == 0 || E.norm(y) == 0) continue;
            int vx, vy;
            try {
                vx = E.valuation(x);
                vy = E.valuation(y);
            } catch (const precision_error&) {
                continue;
            }
            if (vx > 2 || vy > 2) continue;
            int s1 = E.symbol_via_table(x, y);
            CHECK(s1 == E.symbol_via_table(y, x));
            CHECK(s1 == E.symbol_brute_force(x, y));
            CHECK(s1 == E.symbol(x, y));
            ++checked;
        }
        CHECK(checked == 25);
    }
}

TEST_CASE("bilinearity via the table route") {
    std::mt19937_64 rng(555);
    for (int d : {-1, 2, 5}) {
        const auto& E = Q2Local::get(d);
        int done = 0;
        for (int i = 0; done < 40 && i < 4000; ++i) {
            i64 xa = static_cast<i64>(rng() % 16) - 8, xb = static_cast<i64>(rng() % 16) - 8;
            i64 za = static_cast<i64>(rng() % 16) - 8, zb = static_cast<i64>(rng() % 16) - 8;
            i64 ya = static_cast<i64>(rng() % 16) - 8, yb = static_cast<i64>(rng() % 16) - 8;
            LocalElem2 x{cpp_int(xa), cpp_int(xb), 90}, z{cpp_int(za), cpp_int(zb), 90},
                y{cpp_int(ya), cpp_int(yb), 90};
            if (E.norm(x) == 0 || E.norm(y) == 0 || E.norm(z) == 0) continue;
            LocalElem2 xz = E.mul(x, z);
            int lhs, r1, r2;
            try {
                lhs = E.symbol_via_table(xz, y);
                r1 = E.symbol_via_table(x, y);
                r2 = E.symbol_via_table(z, y);
            } catch (const precision_error&) {
                continue;
            }
            CHECK(lhs == ((r1 + r2) & 1));
            ++done;
        }
        CHECK(done == 40);
    }
}

TEST_CASE("projection shortcut agrees with the table") {
    std::mt19937_64 rng(9001);
    for (int d : {5, -1, -5, 2, -2, 10, -10}) {
        const auto& E = Q2Local::get(d);
        int done = 0;
        for (int i = 0; done < 30 && i < 4000; ++i) {
            i64 xa = static_cast<i64>(rng() % 64) - 32;   // rational x
            i64 ya = static_cast<i64>(rng() % 16) - 8, yb = static_cast<i64>(rng() % 16) - 8;
            if (xa == 0) continue;
            LocalElem2 x{cpp_int(xa), 0, 90}, y{cpp_int(ya), cpp_int(yb), 90};
            if (E.norm(y) == 0) continue;
            int via_proj, via_tab;
            try {
                via_proj = E.symbol(x, y);
                via_tab = E.symbol_via_table(x, y);
            } catch (const precision_error&) {
                continue;
            }
            CHECK(via_proj == via_tab);
            ++done;
        }
        CHECK(done == 30);
    }
}

TEST_CASE("known values in Q2(i)") {
    const auto& E = Q2Local::get(-1);
    // (1 + i, 2): 2 = -i (1+i)^2 is a norm from Q2(i, sqrt(1+i))
    LocalElem2 onepi{1, 1, 80};
    LocalElem2 two{2, 0, 80};
    CHECK(E.symbol_via_table(onepi, two) == 0);
    CHECK(E.symbol_brute_force(onepi, two) == 0);
    // a square unit pairs trivially with everything
    LocalElem2 nine{9, 0, 80};
    LocalElem2 i_elt{0, 1, 80};
    CHECK(E.symbol_via_table(nine, i_elt) == 0);
    CHECK(E.symbol_via_table(nine, onepi) == 0);
}

TEST_CASE("embedding a quadratic field at 2") {
    // Q(sqrt(-7)): 2 splits; pi = (1+sqrt(-7))/2 has norm 2
    auto F = QuadField::make(-7);
    QElem pi = QElem::make(1, 1, 2);
    LocalElem2 xp = embed_at_2(F, pi, 64, false);
    LocalElem2 xq = embed_at_2(F, pi, 64, true);
    CHECK(xp.rational());
    // one embedding is a unit, the other has valuation 1
    int v1 = (xp.a == 0) ? 99 : v2_big(xp.a);
    int v2 = (xq.a == 0) ? 99 : v2_big(xq.a);
    CHECK(((v1 == 0 && v2 == 1) || (v1 == 1 && v2 == 0)));
    // product of the embeddings = norm = 2
    cpp_int prod = (xp.a * xq.a) % (cpp_int(1) << 60);
    CHECK(prod == 2);

    // ramified case: -5 = 3 mod 8, completion of class -5
    auto F5 = QuadField::make(-5);
    const auto& E5 = completion_at_2(F5);
    CHECK(E5.d == -5);
    LocalElem2 s5 = embed_at_2(F5, QElem::make(0, 1, 1), 64);
    // sqrt(-5)^2 = -5
    LocalElem2 sq = E5.mul(s5, s5);
    CHECK(sq.b == 0);
    CHECK(static_cast<i64>(sq.a % 1024) == ((-5 % 1024) + 1024) % 1024);
}
