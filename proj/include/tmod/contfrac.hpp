#pragma once

#include <vector>

#include "tmod/intmath.hpp"
#include "tmod/quadfield.hpp"

namespace tmod {

// Fundamental unit of the maximal order of Q(sqrt m), m > 1 squarefree,
// from the continued fraction of (b0 + sqrt D)/2. Coordinates are kept in
// the integral basis (1, w): eps = x + y*w.
struct FundUnit {
    i64 m = 0;
    i64 period = 0;
    int norm = 1;  // (-1)^period

    u64 x_mod = 0, y_mod = 0;  // coordinates mod 2^64

    bool exact = false;  // exact coordinates available (below the size cap)
    cpp_int x, y;

    // coordinates a, b of eps = a + b*sqrt(m), as exact values; requires exact
    std::pair<cpp_int, cpp_int> sqrt_coords() const;

    // nu_2(a) and nu_2(b) from the modular track (or exact when available);
    // throws precision_error when the 64-bit track cannot decide
    int v2_a() const;
    int v2_b() const;
};

FundUnit fundamental_unit(i64 m, size_t exact_bit_cap = 8192);

// eps coordinates (x, y) in the (1, w) basis, modulo a u64 modulus
std::pair<u64, u64> fundamental_unit_mod(i64 m, u64 modulus);

// norm of the fundamental unit: +1 or -1
int fundamental_unit_norm(i64 m);

}  // namespace tmod
