#pragma once

#include <vector>

#include "tmod/abgroup.hpp"
#include "tmod/bqf.hpp"
#include "tmod/quadfield.hpp"

namespace tmod {

// (O_F / p^n O_F)^x: generators with a complete relation lattice and a
// discrete logarithm. Elements are pairs (a, b) = a + b w mod p^n in the
// integral basis of O_F.
class ResidueUnitGroup {
public:
    static ResidueUnitGroup make(const QuadField& F, i64 p, int n);

    i64 p = 2;
    int n = 1;
    i64 B = 0, C = 0;
    u64 pn = 1;  // p^n
    bool split = false;

    cpp_int order;  // #(O/p^n)^x

    std::vector<std::pair<u64, u64>> gens;
    std::vector<std::vector<cpp_int>> relations;  // rows span the relation lattice

    std::pair<u64, u64> mul(std::pair<u64, u64> x, std::pair<u64, u64> y) const;
    std::pair<u64, u64> pow(std::pair<u64, u64> x, cpp_int e) const;
    std::pair<u64, u64> inv(std::pair<u64, u64> x) const;
    bool is_unit(std::pair<u64, u64> x) const;

    // exponent vector v with prod gens^v = x; verified by reconstruction
    std::vector<cpp_int> dlog(std::pair<u64, u64> x) const;

    // reduce an exact field element with p-coprime denominator into the ring
    std::pair<u64, u64> reduce_elem(const QuadField& F, const QElem& x) const;

private:
    // nonsplit internals
    int e_ = 1;                      // ramification index
    int c_ = 1;                      // 1-unit log threshold (p-adic valuation over frak_p)
    u64 pw_ = 1;                     // working modulus p^(n+slack) for logs
    int slack_ = 0;
    std::pair<u64, u64> pi_{0, 0};   // uniformizer (ramified)
    // frak_p^c lattice mod p^n: basis (p^k1, 0), (r, p^k2)
    int k1_ = 0, k2_ = 0;
    u64 lat_r_ = 0;
    struct HeadEntry {
        std::vector<int> exps;
    };
    std::vector<std::pair<u64, u64>> head_gens_;
    std::vector<i64> head_orders_;
    std::vector<std::pair<u64, u64>> head_coset_;           // representatives mod frak_p^c
    std::vector<std::vector<int>> head_coset_exps_;
    int n_head_ = 0, n_tail_ = 0;
    std::vector<std::pair<cpp_int, cpp_int>> tail_logs_;    // log of tail gens
    // split internals
    u64 root_ = 0;
    std::vector<u64> comp_gens_[2];
    std::pair<u64, u64> crt(u64 s, u64 t) const;
    std::pair<u64, u64> proj(std::pair<u64, u64> x) const;  // both projections
    std::vector<cpp_int> dlog_split(std::pair<u64, u64> x) const;
    std::vector<cpp_int> dlog_nonsplit(std::pair<u64, u64> x) const;
    std::pair<cpp_int, cpp_int> log1unit(std::pair<u64, u64> x) const;
    std::pair<cpp_int, cpp_int> tail_coords(std::pair<cpp_int, cpp_int> xi) const;
    std::pair<u64, u64> canon_mod_head(std::pair<u64, u64> x) const;
    friend struct RayClassCalculator;
};

struct RayClassGroup {
    i64 p = 2;
    int n = 1;
    bool full = true;   // full ray class group (imaginary) or its unit-part
                        // quotient (real fields with trivial p-class group)
    AbGroup structure;
    AbGroup p_part;
    cpp_int expected_order;  // h * #(O/p^n)^x / #image(units); p-part only when !full
};

RayClassGroup ray_class_group(const QuadField& F, i64 p, int n);

// stabilized invariant factors of the Z_p-torsion of the p-ramification
// Galois group, by stripping the free growth from ray class p-parts
AbGroup tp_structure(const QuadField& F, i64 p, int n_max = 24);

}  // namespace tmod
