#pragma once

#include "tmod/intmath.hpp"
#include "tmod/quadfield.hpp"

namespace tmod {

// Additive Hilbert symbol [a,b]_p over Q_p for prime p, or over R for p = 0.
// a, b nonzero integers (bilinearity reduces rationals to this case).
int hilbert_additive_Q(const cpp_int& a, const cpp_int& b, i64 p);
int hilbert_additive_Q(i64 a, i64 b, i64 p);

// [an/ad, bn/bd]_p
int hilbert_additive_Q_rat(const cpp_int& an, const cpp_int& ad, const cpp_int& bn,
                           const cpp_int& bd, i64 p);

// Sum of [a,b]_v over all places of Q; throws internal_check_error unless 0.
int product_formula_check(const cpp_int& a, const cpp_int& b);

// Additive symbol [x,y] at the ramified prime of F above the odd prime q | m.
// Reduces to the residue-field quadratic character of the tame unit part.
int tame_symbol_ramified(const QuadField& F, i64 q, const QElem& x, const QElem& y);

// Valuation of x at the ramified prime above odd q (normalized, v(sqrt m)=1).
int tame_valuation(const QuadField& F, i64 q, const QElem& x);

// Residue mod q of the unit part x / (sqrt m)^v(x); x != 0.
i64 tame_unit_residue(const QuadField& F, i64 q, const QElem& x);

}  // namespace tmod
