#include "tmod/abgroup.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace tmod {

cpp_int AbGroup::order() const {
    cpp_int n = 1;
    for (auto& d : factors) n *= d;
    return n;
}

int AbGroup::rank_pk(i64 p, int i) const {
    // number of invariant factors divisible by p^i
    cpp_int pi = 1;
    for (int j = 0; j < i; ++j) pi *= p;
    int r = 0;
    for (auto& d : factors)
        if (d % pi == 0) ++r;
    return r;
}

AbGroup AbGroup::p_part(i64 p) const {
    std::vector<cpp_int> out;
    for (auto& d : factors) {
        cpp_int q = 1;
        cpp_int dd = d;
        while (dd % p == 0) {
            dd /= p;
            q *= p;
        }
        if (q > 1) out.push_back(q);
    }
    std::sort(out.begin(), out.end());
    return AbGroup{out};
}

AbGroup AbGroup::from_cyclic_orders(std::vector<cpp_int> orders) {
    std::vector<std::vector<cpp_int>> rel;
    int n = static_cast<int>(orders.size());
    for (int i = 0; i < n; ++i) {
        std::vector<cpp_int> row(n, 0);
        row[i] = orders[i];
        rel.push_back(std::move(row));
    }
    return cokernel_structure(rel, n);
}

std::string AbGroup::to_string() const {
    if (factors.empty()) return "1";
    std::ostringstream os;
    for (size_t i = 0; i < factors.size(); ++i) {
        if (i) os << " x ";
        os << "Z/" << factors[i];
    }
    return os.str();
}

namespace {

void swap_rows(std::vector<std::vector<cpp_int>>& m, int i, int j) { std::swap(m[i], m[j]); }

void swap_cols(std::vector<std::vector<cpp_int>>& m, int i, int j) {
    for (auto& row : m) std::swap(row[i], row[j]);
}

}  // namespace

std::vector<cpp_int> smith_normal_form(std::vector<std::vector<cpp_int>> m) {
    int rows = static_cast<int>(m.size());
    int cols = rows ? static_cast<int>(m[0].size()) : 0;
    int n = std::min(rows, cols);
    std::vector<cpp_int> diag;
    int s = 0;
    while (s < n) {
        // find nonzero entry of minimal absolute value in the trailing block
        int pi = -1, pj = -1;
        cpp_int best;
        for (int i = s; i < rows; ++i) {
            for (int j = s; j < cols; ++j) {
                if (m[i][j] != 0 && (pi < 0 || abs(m[i][j]) < best)) {
                    best = abs(m[i][j]);
                    pi = i;
                    pj = j;
                }
            }
        }
        if (pi < 0) break;  // all zero
        swap_rows(m, s, pi);
        swap_cols(m, s, pj);
        bool clean = true;
        for (int i = s + 1; i < rows; ++i) {
            cpp_int q = m[i][s] / m[s][s];
            if (m[i][s] % m[s][s] != 0) clean = false;
            if (q != 0)
                for (int j = s; j < cols; ++j) m[i][j] -= q * m[s][j];
            if (m[i][s] != 0) clean = false;
        }
        for (int j = s + 1; j < cols; ++j) {
            cpp_int q = m[s][j] / m[s][s];
            if (m[s][j] % m[s][s] != 0) clean = false;
            if (q != 0)
                for (int i = s; i < rows; ++i) m[i][j] -= q * m[i][s];
            if (m[s][j] != 0) clean = false;
        }
        if (!clean) continue;  // remainder produced somewhere; repeat with smaller pivot
        // pivot must divide the rest of the block
        bool divides = true;
        for (int i = s + 1; i < rows && divides; ++i)
            for (int j = s + 1; j < cols; ++j)
                if (m[i][j] % m[s][s] != 0) {
                    // fold row i into row s and retry
                    for (int jj = s; jj < cols; ++jj) m[s][jj] += m[i][jj];
                    divides = false;
                    break;
                }
        if (!divides) continue;
        diag.push_back(abs(m[s][s]));
        ++s;
    }
    return diag;
}

AbGroup cokernel_structure(const std::vector<std::vector<cpp_int>>& relations, int n) {
    auto diag = smith_normal_form(relations);
    if (static_cast<int>(diag.size()) < n)
        throw std::invalid_argument("cokernel_structure: quotient is infinite");
    std::vector<cpp_int> inv;
    for (auto& d : diag) {
        if (d == 0) throw std::invalid_argument("cokernel_structure: quotient is infinite");
        if (d > 1) inv.push_back(d);
    }
    std::sort(inv.begin(), inv.end());
    // SNF diagonal already satisfies the divisibility chain
    return AbGroup{inv};
}

cpp_int aut_count_abelian_pgroup(i64 p, std::vector<int> e) {
    std::sort(e.begin(), e.end());
    int n = static_cast<int>(e.size());
    if (n == 0) return 1;
    // d_k = max{ l : e_l = e_k }, c_k = min{ l : e_l = e_k }  (1-based)
    std::vector<int> d(n), c(n);
    for (int k = 0; k < n; ++k) {
        int dk = k, ck = k;
        while (dk + 1 < n && e[dk + 1] == e[k]) ++dk;
        while (ck - 1 >= 0 && e[ck - 1] == e[k]) --ck;
        d[k] = dk + 1;
        c[k] = ck + 1;
    }
    cpp_int total = 1;
    for (int k = 0; k < n; ++k) {
        cpp_int pk = 1;
        for (int i = 0; i < d[k]; ++i) pk *= p;
        cpp_int pc = 1;
        for (int i = 0; i < k; ++i) pc *= p;
        total *= (pk - pc);
    }
    for (int j = 0; j < n; ++j) {
        cpp_int pe = 1;
        for (int i = 0; i < e[j]; ++i) pe *= p;
        for (int i = 0; i < n - d[j]; ++i) total *= pe;
    }
    for (int i = 0; i < n; ++i) {
        cpp_int pe = 1;
        for (int j = 0; j < e[i] - 1; ++j) pe *= p;
        for (int j = 0; j < n - c[i] + 1; ++j) total *= pe;
    }
    return total;
}

cpp_int aut_count(const AbGroup& g) {
    std::map<i64, std::vector<int>> sylow;
    for (auto& d : g.factors) {
        if (d > std::numeric_limits<i64>::max())
            throw capacity_error("aut_count: invariant factor too large to factor");
        for (auto& [p, e] : factorize(static_cast<i64>(d))) sylow[p].push_back(e);
    }
    cpp_int total = 1;
    for (auto& [p, exps] : sylow) total *= aut_count_abelian_pgroup(p, exps);
    return total;
}

}  // namespace tmod
