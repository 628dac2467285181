#include "tmod/hilbert.hpp"

#include <limits>
#include <set>

namespace tmod {

namespace {

int eps2(i64 u_mod8) { return (u_mod8 % 4 == 3) ? 1 : 0; }
int omega2(i64 u_mod8) { return (u_mod8 == 3 || u_mod8 == 5) ? 1 : 0; }

int vp_big(const cpp_int& n, i64 q) {
    if (n == 0) throw std::invalid_argument("vp of 0");
    int v = 0;
    cpp_int m = n;
    while (m % q == 0) {
        m /= q;
        ++v;
    }
    return v;
}

}  // namespace

int hilbert_additive_Q(const cpp_int& a, const cpp_int& b, i64 p) {
    if (a == 0 || b == 0) throw std::invalid_argument("hilbert: zero argument");
    if (p == 0) return (a < 0 && b < 0) ? 1 : 0;
    if (p == 2) {
        int alpha = v2_big(a), beta = v2_big(b);
        i64 u = static_cast<i64>((a / (cpp_int(1) << alpha)) % 8);
        i64 v = static_cast<i64>((b / (cpp_int(1) << beta)) % 8);
        if (u < 0) u += 8;
        if (v < 0) v += 8;
        return (eps2(u) * eps2(v) + alpha * omega2(v) + beta * omega2(u)) & 1;
    }
    int alpha = 0, beta = 0;
    cpp_int u = a, v = b;
    while (u % p == 0) {
        u /= p;
        ++alpha;
    }
    while (v % p == 0) {
        v /= p;
        ++beta;
    }
    i64 ur = static_cast<i64>(u % p), vr = static_cast<i64>(v % p);
    if (ur < 0) ur += p;
    if (vr < 0) vr += p;
    int eps_p = static_cast<int>(((p - 1) / 2) & 1);
    int lu = jacobi(ur, p) == 1 ? 0 : 1;
    int lv = jacobi(vr, p) == 1 ? 0 : 1;
    return (alpha * beta * eps_p + beta * lu + alpha * lv) & 1;
}

int hilbert_additive_Q(i64 a, i64 b, i64 p) {
    return hilbert_additive_Q(cpp_int(a), cpp_int(b), p);
}

int hilbert_additive_Q_rat(const cpp_int& an, const cpp_int& ad, const cpp_int& bn,
                           const cpp_int& bd, i64 p) {
    if (an == 0 || ad == 0 || bn == 0 || bd == 0)
        throw std::invalid_argument("hilbert: zero argument");
    // a = an*ad modulo squares
    return hilbert_additive_Q(an * ad, bn * bd, p);
}

int product_formula_check(const cpp_int& a, const cpp_int& b) {
    std::set<i64> places{0, 2};
    for (const cpp_int* x : {&a, &b}) {
        cpp_int n = abs(*x);
        while (n % 2 == 0) n /= 2;
        if (n > std::numeric_limits<i64>::max())
            throw capacity_error("product_formula_check: argument too large");
        for (auto& [p, e] : factorize(static_cast<i64>(n))) places.insert(p);
    }
    int s = 0;
    for (i64 p : places) s ^= hilbert_additive_Q(a, b, p);
    if (s != 0) throw internal_check_error("Hilbert product formula violated");
    return s;
}

int tame_valuation(const QuadField& F, i64 q, const QElem& x) {
    if (x.is_zero()) throw std::invalid_argument("tame_valuation of 0");
    auto [nn, nd] = x.norm(F.m);
    return vp_big(nn, q) - vp_big(nd, q);
}

i64 tame_unit_residue(const QuadField& F, i64 q, const QElem& x) {
    int w = tame_valuation(F, q, x);
    QElem u = x;
    if (w > 0) {
        QElem inv_sqrt = QElem::make(0, 1, F.m);  // 1 / sqrt(m)
        for (int i = 0; i < w; ++i) u = u.mul(inv_sqrt, F.m);
    } else {
        QElem sqrt_m = QElem::make(0, 1, 1);
        for (int i = 0; i < -w; ++i) u = u.mul(sqrt_m, F.m);
    }
    // u = (a + b sqrt m)/den with a and den coprime to q
    i64 aq = static_cast<i64>(u.a % q), dq = static_cast<i64>(u.den % q);
    if (aq < 0) aq += q;
    if (dq < 0) dq += q;
    if (aq == 0 || dq == 0) throw internal_check_error("tame_unit_residue: spurious q in unit part");
    i64 xx, yy;
    extgcd(dq, q, xx, yy);
    i64 inv = ((xx % q) + q) % q;
    return static_cast<i64>(mulmod(static_cast<u64>(aq), static_cast<u64>(inv), static_cast<u64>(q)));
}

int tame_symbol_ramified(const QuadField& F, i64 q, const QElem& x, const QElem& y) {
    if (q % 2 == 0 || F.m % q != 0)
        throw std::invalid_argument("tame_symbol_ramified: q must be an odd ramified prime");
    int vx = tame_valuation(F, q, x), vy = tame_valuation(F, q, y);
    i64 rx = tame_unit_residue(F, q, x), ry = tame_unit_residue(F, q, y);
    int lm1 = jacobi(-1, q) == 1 ? 0 : 1;
    int lx = jacobi(rx, q) == 1 ? 0 : 1;
    int ly = jacobi(ry, q) == 1 ? 0 : 1;
    return (vx * vy * lm1 + vy * lx + vx * ly) & 1;
}

}  // namespace tmod
