#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "tmod/abgroup.hpp"
#include "tmod/intmath.hpp"
#include "tmod/quadfield.hpp"

namespace tmod {

struct BQForm {
    i64 a = 0, b = 0, c = 0;
    bool operator==(const BQForm&) const = default;
    u64 key() const { return (static_cast<u64>(static_cast<uint32_t>(a)) << 32) | static_cast<uint32_t>(b); }
};

// ---------- negative discriminants ----------

BQForm principal_form(i64 D);
BQForm reduce_definite(BQForm f);
bool is_reduced_definite(const BQForm& f);
BQForm compose_definite(const BQForm& f1, const BQForm& f2, i64 D);
BQForm pow_definite(const BQForm& f, cpp_int e, i64 D);
BQForm inverse_form(const BQForm& f);

std::vector<BQForm> reduced_forms_definite(i64 D);
i64 class_number_definite(i64 D);  // counting loop only

// form of norm p above a non-inert prime p (p = 2 allowed)
std::optional<BQForm> prime_form(i64 D, i64 p);

// order of the class of f, using only a class-number upper bound (BSGS)
i64 form_order(const BQForm& f, i64 D);

// Full class group of an imaginary quadratic field: element list, invariant
// factors by Sylow torsion counting, and BFS discrete logs on demand.
struct ClassGroup {
    i64 D = 0;
    std::vector<BQForm> elements;  // all reduced forms
    AbGroup structure;

    i64 h() const { return static_cast<i64>(elements.size()); }

    static ClassGroup make(i64 D);
};

// Presentation of Cl(D) by ideal generators with principal relations,
// for the ray class machinery. Generators are chosen coprime to coprime_to.
struct ClassGroupPresentation {
    std::vector<BQForm> gens;                      // forms with gcd(a, coprime_to) = 1
    std::vector<std::vector<cpp_int>> relations;   // rows: exponent vectors in the relation lattice
    std::vector<QElem> rel_generators;             // generator of prod gens^row (an element of O_F)
};
ClassGroupPresentation class_group_presentation(const QuadField& F, const ClassGroup& G, i64 coprime_to);

// ---------- ideals of the maximal order, D of either sign ----------

// HNF Z-basis [n1, 0], [r, s] with respect to (1, w),
// w = sqrt(m) or (1+sqrt(m))/2 as m mod 4 dictates.
struct OIdeal {
    cpp_int n1, r, s;
    cpp_int norm() const { return n1 * s; }
};

// w^2 = B w + C
std::pair<i64, i64> ring_generator_poly(const QuadField& F);
QElem ring_generator(const QuadField& F);

OIdeal ideal_from_form(const QuadField& F, const BQForm& f);
OIdeal ideal_from_element(const QuadField& F, const QElem& x);  // x integral
OIdeal ideal_mul(const QuadField& F, const OIdeal& I, const OIdeal& J);
OIdeal ideal_pow(const QuadField& F, const OIdeal& I, i64 e);
bool ideal_contains(const QuadField& F, const OIdeal& I, const QElem& x);

// shortest-vector principal generator, imaginary fields only
std::optional<QElem> principal_generator(const QuadField& F, const OIdeal& I);

struct FrakPData {
    int f = 1;            // order of a prime above 2 in the class group
    QElem pi;             // generator of frak_p^f, normalized
    bool two_in_nes = false;
};
// order and generator data for a prime above 2 of an imaginary field
FrakPData frak_p_order_and_pi(const QuadField& F);

// ---------- positive discriminants (indefinite forms) ----------

bool is_reduced_indefinite(const BQForm& f, i64 s);
BQForm rho_indefinite(const BQForm& f, i64 D, i64 s);
std::vector<BQForm> reduced_forms_indefinite(i64 D);

// Narrow class group of a real quadratic field via cycles of reduced forms.
struct NarrowClassGroup {
    i64 D = 0, s = 0;  // s = floor(sqrt(D))
    std::vector<BQForm> forms;
    std::vector<int> cycle_of;                  // parallel to forms
    std::unordered_map<u64, int> form_index;
    std::vector<int> cycle_rep;                 // one form index per cycle

    i64 h_plus() const { return static_cast<i64>(cycle_rep.size()); }
    int cycle_id(BQForm f) const;               // reduce, then look up
    int compose(int c1, int c2) const;          // cycle ids
    static NarrowClassGroup make(i64 D);
};

// (h+, h). The unit norm is taken from the continued-fraction unit.
std::pair<i64, i64> narrow_class_number_real(i64 D);

// 2-rank of Cl+ / <classes of primes above 2> for either sign of m.
int narrow_S_two_rank(const QuadField& F);

}  // namespace tmod
