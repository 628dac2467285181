#pragma once

#include <optional>
#include <string>

#include "tmod/abgroup.hpp"
#include "tmod/bqf.hpp"
#include "tmod/f2mat.hpp"
#include "tmod/quadfield.hpp"

namespace tmod {

// Norm criteria from the congruence classes of the odd prime factors:
// 2 is a norm of Q(sqrt(+-m)) iff q = +-1 mod 8 for every odd q | m, etc.
struct NormCriteria {
    bool two = false;        // 2 in N(Q(sqrt(+-m)))
    bool minus_two = false;  // -2 in N(Q(sqrt m)), m > 0
    bool minus_one = false;  // -1 in N(Q(sqrt m))
};
NormCriteria norm_criteria(i64 m_pos);

// 2-rank of the 2-ramification torsion module: t or t-1 by congruence
int rk2_T2(const QuadField& F);

// independent route: #S + rk_2(narrow S-class group) - 1
int rk2_T2_via_narrow_S(const QuadField& F);

// t x t matrix ([q_i, -m]_{q_j}) controlling rk_4 of Cl(F), F imaginary
F2Mat redei_matrix_classgroup(const QuadField& F);

// rational-symbol matrix of the same rank as the full construction,
// legal when -F.m = 3 mod 4 and neither 2 nor -2 is a norm of Q(sqrt(-F.m))
F2Mat redei_fast_path(const QuadField& F);
bool fast_path_legal(const QuadField& F);

// full construction: rows indexed by the generating ideles a_0..a_t,
// columns by {-1, q_1..q_t [, pi][, alpha]}
F2Mat redei_matrix_T2(const QuadField& F);

// rk_4 = rk_2 - rank(R); fast path when legal, full construction otherwise
int rk4_T2(const QuadField& F);

// 4-rank of the tame kernel of Q(sqrt m) on the comparison-theorem domain
int rk4_K2_matrix(i64 m_pos);

// the column ([sqrt(-m), pi]_{q_i})_i entering the split-case reduction
std::vector<int> beta_column(const QuadField& F);

// nu_p(#T_p) by Coates' order formula for a real field (Leopoldt holds)
i64 coates_order_valuation(const QuadField& F, i64 p);

// ---- classifiers for the prime families ----

// order tags for Q(sqrt(-l)), Q(sqrt(-2l)); value 0 means "at least" the bound
struct ImagFamilyTags {
    i64 t2_minus_l = 0;    // 2, 4, or 0 (= at least 8)
    i64 t2_minus_2l = 0;   // 2, or 0 (= at least 4)
};
ImagFamilyTags classify_imaginary_prime_family(i64 l);

// exact orders where the congruence/symbol criteria decide; 0 = "compute"
struct RealFamilyTags {
    i64 t2_l = 0;
    i64 t2_2l = 0;
};
RealFamilyTags classify_real_prime_family(i64 l);

// 2-class number tags of Q(sqrt(-l)) and Q(sqrt(-2l)); 0 = "at least 16"
i64 h2_minus_l_tag(i64 l);
i64 h2_minus_2l_tag(i64 l);

// t_2(l) = 2 t_2(2l) = h_2(-2l) mod 16 for primes l = 7 mod 8,
// with all three quantities computed independently
struct CongruenceTriple {
    i64 t2_l = 0, t2_2l = 0, h2_m2l = 0;
    bool holds = false;
};
CongruenceTriple congruence_identity_check(i64 l);

// ---- report assembly ----

struct TpReport {
    i64 m = 0, p = 2;
    std::optional<int> rk2, rk4;
    std::optional<i64> order_v;  // nu_p(t_p)
    std::optional<AbGroup> structure;
    std::string methods;

    void set_rk2(int v, const char* tag);
    void set_rk4(int v, const char* tag);
    void set_order(i64 v, const char* tag);
    void set_structure(const AbGroup& g, const char* tag);

    static std::string csv_header();
    std::string csv_row() const;
    std::string text() const;
};

}  // namespace tmod
