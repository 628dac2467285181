#pragma once

#include <vector>

#include "tmod/intmath.hpp"

namespace tmod {

enum class Split2 { split, inert, ramified };

// Q(sqrt(m)) for squarefree m != 0, 1. Ramified odd primes are ordered with
// the +-1 mod 8 ones first (k of them), each block ascending.
struct QuadField {
    i64 m = 0;
    i64 D = 0;  // fundamental discriminant
    std::vector<i64> q;
    int k = 0;
    int t = 0;
    Split2 two = Split2::inert;

    static QuadField make(i64 m);

    bool real() const { return m > 0; }
    bool imaginary() const { return m < 0; }
    int num_primes_above_2() const { return two == Split2::split ? 2 : 1; }
};

// Exact element (a + b*sqrt(m)) / den of Q(sqrt(m)), den > 0,
// gcd(a, b, den) = 1 after normalization.
struct QElem {
    cpp_int a, b, den = 1;

    static QElem integer(cpp_int v) { return QElem{std::move(v), 0, 1}; }
    static QElem make(cpp_int a, cpp_int b, cpp_int den);

    bool is_zero() const { return a == 0 && b == 0; }
    QElem conj() const { return QElem{a, -b, den}; }
    QElem neg() const { return QElem{-a, -b, den}; }
    // norm as a rational num/denominator pair: (a^2 - m b^2) / den^2
    std::pair<cpp_int, cpp_int> norm(i64 m) const;

    QElem mul(const QElem& o, i64 m) const;
    QElem mul_int(const cpp_int& c) const;

    bool operator==(const QElem&) const = default;
};

}  // namespace tmod
