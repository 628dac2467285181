#include <algorithm>

#include "tmod/bqf.hpp"
#include "tmod/contfrac.hpp"

namespace tmod {

using i128 = __int128;

bool is_reduced_indefinite(const BQForm& f, i64 s) {
    i64 aa = f.a < 0 ? -f.a : f.a;
    return f.b > 0 && f.b <= s && s - f.b + 1 <= 2 * aa && 2 * aa <= s + f.b;
}

namespace {

struct Form128 {
    i128 a, b, c;
};

Form128 rho128(const Form128& f, i128 D, i64 s) {
    i128 ac = f.c < 0 ? -f.c : f.c;
    i128 M = 2 * ac;
    // r = -b mod M, in (|c|-M, |c|] or (s-M, s]
    i128 lo = (ac > s) ? ac - M : s - M;
    i128 r = (-f.b - lo - 1) % M;
    if (r < 0) r += M;
    r = lo + 1 + r;
    i128 cn = (r * r - D) / (4 * f.c);
    return {f.c, r, cn};
}

BQForm reduce_indefinite_full(BQForm f, i64 D, i64 s) {
    Form128 g{f.a, f.b, f.c};
    int guard = 0;
    while (!(g.b > 0 && g.b <= s &&
             s - g.b + 1 <= 2 * (g.a < 0 ? -g.a : g.a) &&
             2 * (g.a < 0 ? -g.a : g.a) <= s + g.b)) {
        g = rho128(g, D, s);
        if (++guard > 4096) throw internal_check_error("reduce_indefinite: no convergence");
    }
    return {static_cast<i64>(g.a), static_cast<i64>(g.b), static_cast<i64>(g.c)};
}

}  // namespace

BQForm rho_indefinite(const BQForm& f, i64 D, i64 s) {
    Form128 g = rho128({f.a, f.b, f.c}, D, s);
    return {static_cast<i64>(g.a), static_cast<i64>(g.b), static_cast<i64>(g.c)};
}

std::vector<BQForm> reduced_forms_indefinite(i64 D) {
    if (D <= 0) throw std::invalid_argument("reduced_forms_indefinite: D must be positive");
    i64 s = isqrt_ll(D);
    if (s * s == D) throw std::invalid_argument("reduced_forms_indefinite: square discriminant");
    std::vector<BQForm> out;
    for (i64 b = 2 - (D % 2 == 0 ? 2 : 1); b <= s; b += 2) {
        if (b <= 0) continue;
        i64 lo2a = s - b + 1, hi2a = s + b;
        for (i64 a2 = lo2a + (lo2a % 2); a2 <= hi2a; a2 += 2) {
            i64 a = a2 / 2;
            if (a == 0) continue;
            i128 num = static_cast<i128>(b) * b - D;
            if (num % (4 * a) != 0) continue;
            i64 c = static_cast<i64>(num / (4 * a));
            out.push_back({a, b, c});
            out.push_back({-a, b, -c});
        }
    }
    std::sort(out.begin(), out.end(), [](const BQForm& x, const BQForm& y) {
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    return out;
}

namespace {

// same Dirichlet composition core as the definite case
Form128 compose_raw(const BQForm& f1, const BQForm& f2, i64 D) {
    i128 a1 = f1.a, b1 = f1.b, a2 = f2.a, b2 = f2.b, c2 = f2.c;
    auto extgcd128 = [](auto&& self, i128 a, i128 b, i128& x, i128& y) -> i128 {
        if (b == 0) {
            x = a >= 0 ? 1 : -1;
            y = 0;
            return a >= 0 ? a : -a;
        }
        i128 x1, y1;
        i128 g = self(self, b, a % b, x1, y1);
        x = y1;
        y = x1 - (a / b) * y1;
        return g;
    };
    i128 s = (b1 + b2) / 2, n = (b1 - b2) / 2;
    i128 x1, y1, x2, v;
    i128 g1 = extgcd128(extgcd128, a1, a2, x1, y1);
    i128 d = extgcd128(extgcd128, g1, s, x2, v);
    i128 u = y1 * x2;
    i128 A = (a1 / d) * (a2 / d);
    i128 B = b2 + 2 * (a2 / d) * (n * u - c2 * v);
    i128 twoA = 2 * (A < 0 ? -A : A);
    B %= twoA;
    if (B < 0) B += twoA;
    i128 C = (B * B - D) / (4 * A);
    return {A, B, C};
}

}  // namespace

NarrowClassGroup NarrowClassGroup::make(i64 D) {
    NarrowClassGroup G;
    G.D = D;
    G.s = isqrt_ll(D);
    G.forms = reduced_forms_indefinite(D);
    G.cycle_of.assign(G.forms.size(), -1);
    for (size_t i = 0; i < G.forms.size(); ++i) G.form_index.emplace(G.forms[i].key(), static_cast<int>(i));
    for (size_t i = 0; i < G.forms.size(); ++i) {
        if (G.cycle_of[i] >= 0) continue;
        int cid = static_cast<int>(G.cycle_rep.size());
        G.cycle_rep.push_back(static_cast<int>(i));
        BQForm f = G.forms[i];
        size_t cur = i;
        int guard = 0;
        do {
            G.cycle_of[cur] = cid;
            f = rho_indefinite(f, D, G.s);
            auto it = G.form_index.find(f.key());
            if (it == G.form_index.end()) throw internal_check_error("NarrowClassGroup: rho left the reduced set");
            cur = static_cast<size_t>(it->second);
            if (++guard > (1 << 26)) throw internal_check_error("NarrowClassGroup: unbounded cycle");
        } while (G.cycle_of[cur] < 0);
        if (cur != i && G.cycle_of[cur] != cid)
            throw internal_check_error("NarrowClassGroup: rho walk merged two cycles");
    }
    return G;
}

int NarrowClassGroup::cycle_id(BQForm f) const {
    BQForm r = reduce_indefinite_full(f, D, s);
    auto it = form_index.find(r.key());
    if (it == form_index.end()) throw internal_check_error("cycle_id: reduced form not in table");
    return cycle_of[it->second];
}

int NarrowClassGroup::compose(int c1, int c2) const {
    const BQForm& f1 = forms[cycle_rep[c1]];
    const BQForm& f2 = forms[cycle_rep[c2]];
    Form128 raw = compose_raw(f1, f2, D);
    BQForm r = reduce_indefinite_full({static_cast<i64>(raw.a), static_cast<i64>(raw.b), static_cast<i64>(raw.c)}, D, s);
    auto it = form_index.find(r.key());
    if (it == form_index.end()) throw internal_check_error("compose: reduced form not in table");
    return cycle_of[it->second];
}

std::pair<i64, i64> narrow_class_number_real(i64 D) {
    if (D <= 0) throw std::invalid_argument("narrow_class_number_real: D must be positive");
    NarrowClassGroup G = NarrowClassGroup::make(D);
    i64 hp = G.h_plus();
    i64 m = (D % 4 == 0) ? D / 4 : D;
    int norm = fundamental_unit_norm(m);
    i64 h = (norm == 1) ? hp / 2 : hp;
    if (norm == 1 && hp % 2 != 0)
        throw internal_check_error("narrow_class_number_real: odd h+ with norm-one unit");
    return {hp, h};
}

namespace {

int two_rank_of_quotient_count(i64 numerator, i64 denominator) {
    if (numerator % denominator != 0) throw internal_check_error("narrow_S_two_rank: torsion count not divisible");
    i64 t = numerator / denominator;
    int rk = 0;
    while (t > 1) {
        if (t % 2 != 0) throw internal_check_error("narrow_S_two_rank: 2-torsion count not a 2-power");
        t /= 2;
        ++rk;
    }
    return rk;
}

}  // namespace

int narrow_S_two_rank(const QuadField& F) {
    if (F.imaginary()) {
        auto forms = reduced_forms_definite(F.D);
        // subgroup generated by the class of a prime above 2
        std::vector<BQForm> sub{principal_form(F.D)};
        auto pf = prime_form(F.D, 2);
        if (pf) {
            BQForm g = reduce_definite(*pf);
            BQForm x = g;
            while (!(x == principal_form(F.D))) {
                sub.push_back(x);
                x = compose_definite(x, g, F.D);
            }
        }
        std::unordered_map<u64, char> subset;
        for (auto& f : sub) subset.emplace(f.key(), 1);
        i64 count = 0;
        for (auto& f : forms) {
            BQForm sq = compose_definite(f, f, F.D);
            if (subset.count(sq.key())) ++count;
        }
        return two_rank_of_quotient_count(count, static_cast<i64>(sub.size()));
    }
    NarrowClassGroup G = NarrowClassGroup::make(F.D);
    int id = G.cycle_id(principal_form(F.D));
    std::vector<int> sub{id};
    auto pf = prime_form(F.D, 2);
    if (pf) {
        int g = G.cycle_id(*pf);
        int x = g;
        while (x != id) {
            sub.push_back(x);
            x = G.compose(x, g);
        }
    }
    std::vector<char> insub(G.h_plus(), 0);
    for (int c : sub) insub[c] = 1;
    i64 count = 0;
    for (i64 c = 0; c < G.h_plus(); ++c) {
        if (insub[G.compose(static_cast<int>(c), static_cast<int>(c))]) ++count;
    }
    return two_rank_of_quotient_count(count, static_cast<i64>(sub.size()));
}

}  // namespace tmod
