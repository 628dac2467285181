#pragma once

#include "tmod/intmath.hpp"
#include "tmod/quadfield.hpp"

namespace tmod {

// Q_p or a quadratic extension of Q_p, elements written a + b*w with the
// same ring generator w as the global order. Valuations are normalized to
// nu(p) = 1 and returned doubled so ramified half-integers stay integral.
struct PadicField {
    i64 p = 2;
    bool quadratic = false;
    i64 B = 0, C = 0;  // w^2 = B w + C

    static PadicField qp(i64 p) { return {p, false, 0, 0}; }
    static PadicField completion(const QuadField& F, i64 p);  // non-split p
};

struct PadicElem {
    cpp_int a, b;
    int prec = 64;  // coordinates known mod p^prec
};

// 2 * nu_p(x); throws precision_error when the coordinates cannot certify it
i64 padic_valuation2(const PadicField& K, const PadicElem& x);

// p-adic logarithm; requires nu(x - 1) > 1/(p-1)
PadicElem padic_log(const PadicField& K, const PadicElem& x);

PadicElem padic_mul(const PadicField& K, const PadicElem& x, const PadicElem& y);

// 2 * nu_p(log_p eps) for the fundamental unit of the real field F,
// computed in the completion at (a place above) p with automatic precision
// escalation. This is 2*nu_p of the p-adic regulator.
i64 regulator_valuation2(const QuadField& F, i64 p);

// Hensel root of x^2 = B x + C mod p^prec (split p); root congruent to the
// smaller residue mod p is returned.
cpp_int split_root(const QuadField& F, i64 p, int prec);

}  // namespace tmod
