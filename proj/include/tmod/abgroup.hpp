#pragma once

#include <string>
#include <vector>

#include "tmod/intmath.hpp"

namespace tmod {

// Finite abelian group as an invariant-factor list d_1 | d_2 | ... | d_r,
// all d_i >= 2. The trivial group has an empty list.
struct AbGroup {
    std::vector<cpp_int> factors;

    cpp_int order() const;
    bool trivial() const { return factors.empty(); }

    // dim_Fp p^(i-1)G / p^i G
    int rank_pk(i64 p, int i) const;
    int rank_p(i64 p) const { return rank_pk(p, 1); }

    // Sylow p-subgroup, as an AbGroup
    AbGroup p_part(i64 p) const;

    // built from an arbitrary list of cyclic orders (drops 1s, sorts into a
    // divisibility chain via SNF of the diagonal)
    static AbGroup from_cyclic_orders(std::vector<cpp_int> orders);

    std::string to_string() const;  // e.g. "Z/2 x Z/4"
    bool operator==(const AbGroup&) const = default;
};

// Smith normal form of an integer matrix (rows x cols, row-major).
// Returns the diagonal entries d_1 | d_2 | ..., nonnegative.
std::vector<cpp_int> smith_normal_form(std::vector<std::vector<cpp_int>> mat);

// Structure of Z^n / rowspan(relations). Throws unless the quotient is
// finite (relations must have full column rank).
AbGroup cokernel_structure(const std::vector<std::vector<cpp_int>>& relations, int n);

// Number of automorphisms of the abelian p-group of type p^{e_1} x ... x
// p^{e_n} (Hillar-Rhea formula); exact integer.
cpp_int aut_count_abelian_pgroup(i64 p, std::vector<int> exponents);

// #Aut of a finite abelian group: product over Sylow subgroups.
cpp_int aut_count(const AbGroup& g);

}  // namespace tmod
