#include "doctest.h"
#include "tmod/f2mat.hpp"

#include <random>

using namespace tmod;

TEST_CASE("rank of small matrices") {
    F2Mat m(2, 3);
    m.set(0, 0, 1);
    m.set(0, 1, 1);
    m.set(0, 2, 1);
    m.set(1, 0, 1);
    m.set(1, 1, 1);
    m.set(1, 2, 1);
    CHECK(m.rank() == 1);
    m.set(1, 2, 0);
    CHECK(m.rank() == 2);
    CHECK(F2Mat(0, 5).rank() == 0);
    CHECK(F2Mat(4, 0).rank() == 0);
}

TEST_CASE("rank is invariant under row operations") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        int r = 1 + static_cast<int>(rng() % 6), c = 1 + static_cast<int>(rng() % 6);
        F2Mat m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m.set(i, j, static_cast<int>(rng() & 1));
        int rk = m.rank();
        F2Mat m2 = m;
        int i = static_cast<int>(rng() % r), j = static_cast<int>(rng() % r);
        if (i != j) m2.add_row_into(i, j);
        CHECK(m2.rank() == rk);
    }
}

TEST_CASE("column_in_span") {
    F2Mat m(3, 2);
    m.set(0, 0, 1);
    m.set(1, 1, 1);
    CHECK(m.column_in_span({1, 1, 0}));
    CHECK_FALSE(m.column_in_span({0, 0, 1}));
}
