#include "tmod/rayclass.hpp"

#include <algorithm>

#include "tmod/contfrac.hpp"

namespace tmod {

namespace {

// subgroup index: |G / <rows>| where G = Z^k / rel, via stacked cokernel
cpp_int quotient_order(const std::vector<std::vector<cpp_int>>& rel,
                       const std::vector<std::vector<cpp_int>>& extra, int k) {
    std::vector<std::vector<cpp_int>> all = rel;
    for (auto& r : extra) all.push_back(r);
    return cokernel_structure(all, k).order();
}

struct RayClassCalculator {
    QuadField F;
    i64 p;
    bool imaginary;
    // imaginary: class group data
    ClassGroup cl;
    ClassGroupPresentation pres;
    i64 h = 1;
    // torsion units besides -1: i for m = -1, zeta_6 for m = -3
    std::vector<QElem> units;

    explicit RayClassCalculator(const QuadField& F_, i64 p_) : F(F_), p(p_), imaginary(F_.imaginary()) {
        if (imaginary) {
            cl = ClassGroup::make(F.D);
            h = cl.h();
            i64 coprime_to = 2 * p;
            for (i64 q : F.q) coprime_to *= q;
            pres = class_group_presentation(F, cl, coprime_to);
            units.push_back(QElem::integer(-1));
            if (F.m == -1) units.push_back(QElem::make(0, 1, 1));   // i
            if (F.m == -3) units.push_back(QElem::make(1, 1, 2));   // (1+sqrt(-3))/2
        } else {
            auto [hp, h0] = narrow_class_number_real(F.D);
            if (h0 % p == 0)
                throw unsupported_domain_error("ray_class_group: real field with nontrivial p-class group");
            h = h0;
            units.push_back(QElem::integer(-1));
        }
    }

    RayClassGroup level(int n) const {
        ResidueUnitGroup R = ResidueUnitGroup::make(F, p, n);
        size_t s = R.gens.size();
        size_t w = imaginary ? pres.gens.size() : 0;
        std::vector<std::vector<cpp_int>> rel;
        for (auto& row : R.relations) {
            auto r = row;
            r.resize(s + w, 0);
            rel.push_back(r);
        }
        std::vector<std::vector<cpp_int>> unit_rows;
        auto push_unit = [&](const QElem& u) {
            auto d = R.dlog(R.reduce_elem(F, u));
            d.resize(s + w, 0);
            unit_rows.push_back(d);
            rel.push_back(unit_rows.back());
        };
        for (auto& u : units) push_unit(u);
        if (!imaginary) {
            // fundamental unit coordinates mod p^n in the (1, w) basis
            auto [x, y] = fundamental_unit_mod(F.m, R.pn);
            auto d = R.dlog({x, y});
            d.resize(s + w, 0);
            unit_rows.push_back(d);
            rel.push_back(unit_rows.back());
        }
        if (imaginary) {
            for (size_t i = 0; i < pres.relations.size(); ++i) {
                std::vector<cpp_int> row(s + w, 0);
                auto d = R.dlog(R.reduce_elem(F, pres.rel_generators[i]));
                for (size_t j = 0; j < s; ++j) row[j] = -d[j];
                for (size_t j = 0; j < pres.relations[i].size(); ++j) row[s + j] = pres.relations[i][j];
                rel.push_back(row);
            }
        }
        RayClassGroup out;
        out.p = p;
        out.n = n;
        out.full = imaginary;
        out.structure = cokernel_structure(rel, static_cast<int>(s + w));
        out.p_part = out.structure.p_part(p);

        // exact-sequence cardinality: #Cl(p^n) * #image(units) = h * #(O/p^n)^x
        cpp_int img_order = R.order;
        {
            cpp_int q = quotient_order(R.relations, unit_rows, static_cast<int>(s));
            img_order = R.order / q;
            if (R.order % q != 0) throw internal_check_error("ray_class_group: unit image index");
        }
        if (imaginary) {
            out.expected_order = cpp_int(h) * R.order / img_order;
            if (out.structure.order() != out.expected_order)
                throw internal_check_error("ray_class_group: cardinality identity failed");
        } else {
            // structure = (O/p^n)^x / image(units); p-class number is trivial
            out.expected_order = R.order / img_order;
            if (out.structure.order() != out.expected_order)
                throw internal_check_error("ray_class_group: unit-quotient cardinality failed");
        }
        return out;
    }
};

}  // namespace

RayClassGroup ray_class_group(const QuadField& F, i64 p, int n) {
    RayClassCalculator calc(F, p);
    return calc.level(n);
}

AbGroup tp_structure(const QuadField& F, i64 p, int n_max) {
    RayClassCalculator calc(F, p);
    int r_free = F.imaginary() ? 2 : 1;
    int n0 = (p == 2) ? 3 : 2;
    std::vector<cpp_int> prev_kept, prev_top;
    bool have_prev = false;
    for (int n = n0; n <= n_max; ++n) {
        AbGroup g = calc.level(n).p_part;
        std::vector<cpp_int> f = g.factors;  // ascending
        if (static_cast<int>(f.size()) < r_free) {
            if (f.empty() && n > n0) return AbGroup{};  // torsion-free from the start
            have_prev = false;
            continue;
        }
        std::vector<cpp_int> top(f.end() - r_free, f.end());
        std::vector<cpp_int> kept(f.begin(), f.end() - r_free);
        if (have_prev && kept == prev_kept) {
            // the stripped factors must have grown by exactly p
            bool grew = true;
            for (int i = 0; i < r_free; ++i)
                if (top[i] != prev_top[i] * p) grew = false;
            if (grew) return AbGroup{kept};
        }
        prev_kept = kept;
        prev_top = top;
        have_prev = true;
    }
    throw stabilization_error("tp_structure: no stabilization below the level cap");
}

}  // namespace tmod
