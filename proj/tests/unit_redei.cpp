#include "doctest.h"
#include "tmod/redei.hpp"
#include "tmod/contfrac.hpp"

using namespace tmod;

TEST_CASE("norm criteria") {
    auto nc15 = norm_criteria(15);
    CHECK_FALSE(nc15.two);
    CHECK_FALSE(nc15.minus_two);
    CHECK_FALSE(nc15.minus_one);
    CHECK(norm_criteria(119).two);  // 7, 17 both +-1 mod 8
    auto nc1 = norm_criteria(1);
    CHECK((nc1.two && nc1.minus_two && nc1.minus_one));
    CHECK(norm_criteria(33).minus_two);  // 3, 11 = 3 mod 8
    CHECK(norm_criteria(65).minus_one);  // 5, 13 = 1 mod 4
}

TEST_CASE("2-rank formula") {
    CHECK(rk2_T2(QuadField::make(-105)) == 2);           // q = 3, 5, 7
    CHECK(rk2_T2(QuadField::make(-1)) == 0);
    CHECK(rk2_T2(QuadField::make(-7 * 17 * 23)) == 3);   // all +-1 mod 8
    CHECK(rk2_T2(QuadField::make(15)) == 1);
    CHECK(rk2_T2(QuadField::make(-2)) == 0);
}

TEST_CASE("two-route 2-rank equality on a window") {
    SpfSieve sieve(420);
    for (i64 m = -400; m <= 400; ++m) {
        if (m == 0 || m == 1 || !sieve.is_squarefree(m)) continue;
        auto F = QuadField::make(m);
        CAPTURE(m);
        CHECK(rk2_T2(F) == rk2_T2_via_narrow_S(F));
    }
}

TEST_CASE("class group Redei matrix") {
    auto F = QuadField::make(-15);
    F2Mat R = redei_matrix_classgroup(F);
    CHECK(R.rank() == 1);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(R.get(i, j) == 1);
    SUBCASE("rk4 of the class group matches the 2-Sylow structure") {
        // the odd-prime entry matrix controls the class-group 4-rank when the
        // discriminant is odd, i.e. on the comparison-theorem domain
        SpfSieve sieve(600);
        for (i64 m = 3; m <= 500; m += 4) {
            if (!sieve.is_squarefree(m)) continue;
            auto Fm = QuadField::make(-m);
            auto G = ClassGroup::make(Fm.D);
            int rk2cl = G.structure.rank_p(2);
            int rk4cl = G.structure.rank_pk(2, 2);
            F2Mat RCl = redei_matrix_classgroup(Fm);
            CAPTURE(m);
            CHECK(rk2cl == Fm.t - 1);
            CHECK(rk4cl == rk2cl - RCl.rank());
        }
    }
}

TEST_CASE("fast path guards and values") {
    CHECK_THROWS_AS(redei_fast_path(QuadField::make(-33)), wrong_path_error);  // 33 = 1 mod 4
    CHECK_THROWS_AS(redei_fast_path(QuadField::make(-21)), wrong_path_error);  // 21 = 5 mod 8
    CHECK_THROWS_AS(redei_fast_path(QuadField::make(-7)), wrong_path_error);   // 2 is a norm
    auto F = QuadField::make(-15);
    F2Mat R = redei_fast_path(F);
    CHECK(R.rows() == 2);
    CHECK(R.cols() == 3);
    CHECK(R.rank() == 1);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) CHECK(R.get(i, j) == 1);
}

TEST_CASE("full path matrix for small fields") {
    // m = 7: rank 1, rk4 = 0 (T_2(-7) = Z/2)
    auto F7 = QuadField::make(-7);
    F2Mat R7 = redei_matrix_T2(F7);
    CHECK(R7.rank() == 1);
    CHECK(rk4_T2(F7) == 0);
    // m = 15: full path must match the fast path rank
    auto F15 = QuadField::make(-15);
    CHECK(redei_matrix_T2(F15).rank() == redei_fast_path(F15).rank());
    CHECK(rk4_T2(F15) == 0);
    CHECK(rk4_T2(QuadField::make(-1)) == 0);
    CHECK(rk4_T2(QuadField::make(-2)) == 0);
}

TEST_CASE("fast path rank equals full path rank whenever legal") {
    SpfSieve sieve(800);
    for (i64 m = 2; m <= 700; ++m) {
        if (!sieve.is_squarefree(m)) continue;
        auto F = QuadField::make(-m);
        if (!fast_path_legal(F)) continue;
        CAPTURE(m);
        CHECK(redei_fast_path(F).rank() == redei_matrix_T2(F).rank());
    }
}

TEST_CASE("comparison with the tame kernel matrix") {
    CHECK(rk4_K2_matrix(15) == 1);
    CHECK(rk4_T2(QuadField::make(-15)) == rk4_K2_matrix(15) - 1);
    CHECK_THROWS_AS(rk4_K2_matrix(33), wrong_path_error);
    SpfSieve sieve(800);
    for (i64 m = 2; m <= 700; ++m) {
        if (!sieve.is_squarefree(m)) continue;
        auto F = QuadField::make(-m);
        if (!fast_path_legal(F)) continue;
        CAPTURE(m);
        CHECK(rk4_T2(F) == rk4_K2_matrix(m) - 1);
        CHECK(rk2_T2(F) == F.t - 1);
    }
}

TEST_CASE("beta column lies in the class matrix column span") {
    SpfSieve sieve(1000);
    for (i64 m = 7; m <= 900; m += 8) {
        if (!sieve.is_squarefree(m)) continue;
        auto F = QuadField::make(-m);
        if (!fast_path_legal(F)) continue;  // needs a factor = +-3 mod 8
        auto beta = beta_column(F);
        F2Mat RCl = redei_matrix_classgroup(F);
        CAPTURE(m);
        CHECK(RCl.column_in_span(beta));
    }
}

TEST_CASE("Coates order valuations") {
    CHECK(coates_order_valuation(QuadField::make(17), 2) == 1);   // t_2(17) = 2
    CHECK(coates_order_valuation(QuadField::make(7), 2) == 2);    // t_2(7) = 4
    CHECK(coates_order_valuation(QuadField::make(223), 2) == 4);  // t_2(223) = 16
    CHECK(coates_order_valuation(QuadField::make(2), 2) == 0);
    SUBCASE("unit shortcut for prime fields") {
        for (i64 l : sieve_primes(2000)) {
            if (l % 8 != 1 && l % 8 != 7) continue;
            auto u = fundamental_unit(l);
            CAPTURE(l);
            CHECK(coates_order_valuation(QuadField::make(l), 2) == u.v2_a() - 1);
        }
    }
}

TEST_CASE("imaginary family classifier") {
    auto t7 = classify_imaginary_prime_family(7);
    CHECK(t7.t2_minus_l == 2);
    CHECK(t7.t2_minus_2l == 2);
    auto t41 = classify_imaginary_prime_family(41);
    CHECK(t41.t2_minus_l == 4);
    auto t17 = classify_imaginary_prime_family(17);
    CHECK(t17.t2_minus_l == 0);   // at least 8
    CHECK(t17.t2_minus_2l == 0);  // at least 4
}

TEST_CASE("real family classifier") {
    auto t17 = classify_real_prime_family(17);
    CHECK(t17.t2_l == 2);   // 17 = 2*9 - 1, g = 3 mod 4
    CHECK(t17.t2_2l == 2);  // u = 5, (5/17) = -1
    auto t7 = classify_real_prime_family(7);
    CHECK(t7.t2_l == 4);
    CHECK(t7.t2_2l == 2);
    CHECK(h2_minus_2l_tag(7) == 4);
    auto t223 = classify_real_prime_family(223);
    CHECK(t223.t2_l == 0);  // t_2(223) = 16: beyond the decided cases
    SUBCASE("classifier tags match the unit-track orders, l < 2000") {
        for (i64 l : sieve_primes(2000)) {
            if (l % 8 != 1 && l % 8 != 7) continue;
            auto tags = classify_real_prime_family(l);
            i64 t2l = 1LL << (fundamental_unit(l).v2_a() - 1);
            CAPTURE(l);
            if (tags.t2_l != 0)
                CHECK(tags.t2_l == t2l);
            else
                CHECK(t2l >= (l % 8 == 7 ? 16 : 8));
            i64 t2_2l = 1LL << coates_order_valuation(QuadField::make(2 * l), 2);
            if (tags.t2_2l != 0)
                CHECK(tags.t2_2l == t2_2l);
            else
                CHECK(t2_2l >= 8);
        }
    }
}

TEST_CASE("congruence identity triples") {
    auto c7 = congruence_identity_check(7);
    CHECK(c7.holds);
    CHECK(c7.t2_l == 4);
    CHECK(c7.t2_2l == 2);
    CHECK(c7.h2_m2l == 4);
    auto c223 = congruence_identity_check(223);
    CHECK(c223.holds);
    CHECK(c223.t2_l == 16);
    CHECK(c223.t2_2l == 128);
    CHECK(c223.h2_m2l == 32);
    auto c23 = congruence_identity_check(23);
    CHECK(c23.holds);
}

TEST_CASE("report assembly consistency") {
    TpReport r;
    r.m = -41;
    r.p = 2;
    r.set_rk2(1, "congruence");
    r.set_structure(AbGroup{{4}}, "oracle");
    CHECK(*r.rk4 == 1);
    CHECK(*r.order_v == 2);
    CHECK(r.csv_row().find("-41,2,1,1,2,Z/4") == 0);
    TpReport bad;
    bad.set_rk2(2, "a");
    CHECK_THROWS_AS(bad.set_rk2(1, "b"), internal_check_error);
}
