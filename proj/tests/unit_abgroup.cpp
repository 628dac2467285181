#include "doctest.h"
#include "tmod/abgroup.hpp"

using namespace tmod;

TEST_CASE("smith normal form basics") {
    // Z^2 / <(2,0),(0,4)> = Z/2 x Z/4
    auto g = cokernel_structure({{2, 0}, {0, 4}}, 2);
    CHECK(g.factors == std::vector<cpp_int>{2, 4});
    // Z^2 / <(2,1),(0,3)>: det 6, cyclic since gcd of entries is 1
    g = cokernel_structure({{2, 1}, {0, 3}}, 2);
    CHECK(g.factors == std::vector<cpp_int>{6});
    CHECK(g.order() == 6);
    // Z^1 / <6> with an extra redundant relation
    g = cokernel_structure({{6}, {12}}, 1);
    CHECK(g.factors == std::vector<cpp_int>{6});
    CHECK_THROWS(cokernel_structure({{0, 0}}, 2));
}

TEST_CASE("from_cyclic_orders builds a divisibility chain") {
    auto g = AbGroup::from_cyclic_orders({6, 4});
    CHECK(g.factors == std::vector<cpp_int>{2, 12});
    CHECK(g.order() == 24);
    CHECK(g.rank_p(2) == 2);
    CHECK(g.rank_pk(2, 2) == 1);
    CHECK(g.rank_p(3) == 1);
    CHECK(g.p_part(2).factors == std::vector<cpp_int>{2, 4});
    CHECK(g.p_part(3).factors == std::vector<cpp_int>{3});
    CHECK(AbGroup::from_cyclic_orders({1, 1}).trivial());
}

namespace {

// brute-force #Aut for Z/d1 x Z/d2 with small orders: count matrices
// (images of generators) that define an automorphism
int aut_brute(int d1, int d2) {
    int n = d1 * d2;
    auto idx = [&](int a, int b) { return a * d2 + b; };
    int count = 0;
    for (int a1 = 0; a1 < d1; ++a1)
        for (int b1 = 0; b1 < d2; ++b1)
            for (int a2 = 0; a2 < d1; ++a2)
                for (int b2 = 0; b2 < d2; ++b2) {
                    // g1 -> (a1, b1), g2 -> (a2, b2); images must respect the orders
                    if ((d1 * b1) % d2 != 0) continue;  // d1 * image(g1) = 0
                    if ((d2 * a2) % d1 != 0) continue;  // d2 * image(g2) = 0
                    // bijectivity: the images generate all n elements
                    std::vector<char> seen(n, 0);
                    int cnt = 0;
                    for (int i = 0; i < d1; ++i)
                        for (int j = 0; j < d2; ++j) {
                            int x = (i * a1 + j * a2) % d1, y = (i * b1 + j * b2) % d2;
                            if (!seen[idx(x, y)]) {
                                seen[idx(x, y)] = 1;
                                ++cnt;
                            }
                        }
                    if (cnt == n) ++count;
                }
    return count;
}

}  // namespace

TEST_CASE("automorphism counts") {
    CHECK(aut_count(AbGroup{{2}}) == 1);
    CHECK(aut_count(AbGroup{{4}}) == 2);
    CHECK(aut_count(AbGroup{{5}}) == 4);
    CHECK(aut_count(AbGroup{{2, 2}}) == 6);   // GL_2(F_2)
    CHECK(aut_count(AbGroup{{3, 3}}) == 48);  // GL_2(F_3)
    CHECK(aut_count(AbGroup{{2, 4}}) == aut_brute(2, 4));
    CHECK(aut_count(AbGroup{{2, 8}}) == aut_brute(2, 8));
    CHECK(aut_count(AbGroup{{4, 8}}) == aut_brute(4, 8));
    CHECK(aut_count(AbGroup{{3, 9}}) == aut_brute(3, 9));
    CHECK(aut_count(AbGroup{{2, 6}}) == aut_brute(2, 6));
    CHECK(aut_count(AbGroup{{25}}) == 20);
}
