#pragma once

#include <unordered_map>
#include <vector>

#include "tmod/intmath.hpp"
#include "tmod/quadfield.hpp"

namespace tmod {

// Element a + b*w of Q2 or of a quadratic extension of Q2, with both
// coordinates known modulo 2^prec. w is the field's ring generator.
struct LocalElem2 {
    cpp_int a, b;
    int prec = 96;
    bool rational() const { return b == 0; }
};

// Q2 and its seven quadratic extensions, keyed by a square-class
// representative d of Q2^x / (Q2^x)^2:
//   d = 1                      : Q2 itself
//   d = 5                      : unramified quadratic, w^2 = w + 1 (w = (1+sqrt5)/2)
//   d in {-1,-5,2,-2,10,-10}   : ramified quadratic, w = sqrt(d)
class Q2Local {
public:
    static const Q2Local& get(int d);

    // square class of a nonzero 2-adic integer
    static int square_class_of(const cpp_int& x);

    int d = 1;
    int e = 1, f = 1;
    i64 B = 0, C = 0;  // w^2 = B*w + C

    bool is_q2() const { return d == 1; }

    // normalized valuation, v(uniformizer) = 1
    int valuation(const LocalElem2& x) const;

    // additive Hilbert symbol; uses the norm projection when one argument
    // is rational, the square-class table otherwise
    int symbol(const LocalElem2& x, const LocalElem2& y) const;

    // always goes through the square-class table (for cross-checking)
    int symbol_via_table(const LocalElem2& x, const LocalElem2& y) const;

    // independent oracle: primitive-solution search for z^2 = x a^2 + y b^2
    // at a caller-chosen number of extra guard digits
    int symbol_brute_force(const LocalElem2& x, const LocalElem2& y, int guard = 2) const;

    LocalElem2 mul(const LocalElem2& x, const LocalElem2& y) const;
    LocalElem2 conj(const LocalElem2& x) const;
    cpp_int norm(const LocalElem2& x) const;  // exact in the given coordinates

    static LocalElem2 from_int(const cpp_int& v, int prec) { return LocalElem2{v, 0, prec}; }

private:
    struct Lat2 {  // 2-adic lattice with basis (2^k1, 0), (r, 2^k2)
        int k1 = 0, k2 = 0;
        i64 r = 0;
    };

    Lat2 prime_power_lattice(int M) const;
    std::pair<i64, i64> canon(i64 a, i64 b, const Lat2& L) const;
    bool in_lattice(i64 a, i64 b, const Lat2& L) const;
    bool isotropic(std::pair<i64, i64> x, int vx, std::pair<i64, i64> y, int vy) const;

    void build();  // square-class table and Gram matrix

    Lat2 sq_lat_;                                   // p^(2e+1)
    std::unordered_map<u64, uint8_t> unit_class_;   // canonical residue -> 3 bits
    std::pair<i64, i64> class_rep_[8];
    std::pair<i64, i64> pi_;                        // uniformizer
    std::pair<i64, i64> pi_half_sq_ = {1, 0};       // pi^2 / 2 (ramified only)
    int gram_[4][4] = {};                           // basis: pi, g1, g2, g3

    std::pair<i64, i64> unit_part_small(const LocalElem2& x, int& val) const;
};

// The completion of Q(sqrt m) at a prime above 2.
const Q2Local& completion_at_2(const QuadField& F);

// Hensel square root of m / d as a 2-adic integer, normalized to 1 mod 4.
cpp_int sqrt2adic_of_ratio(i64 m, int d, int prec);

// Embedding of an exact, 2-integral element of Q(sqrt m) into the completion
// at 2. When 2 splits, conj selects the other of the two places.
LocalElem2 embed_at_2(const QuadField& F, const QElem& x, int prec, bool conj = false);

}  // namespace tmod
