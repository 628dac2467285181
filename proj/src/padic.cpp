#include "tmod/padic.hpp"

#include "tmod/bqf.hpp"
#include "tmod/contfrac.hpp"

namespace tmod {

namespace {

cpp_int pow_big(i64 p, int n) {
    cpp_int r = 1;
    for (int i = 0; i < n; ++i) r *= p;
    return r;
}

cpp_int mod_pk(const cpp_int& v, const cpp_int& pk) {
    cpp_int r = v % pk;
    if (r < 0) r += pk;
    return r;
}

int vp_big_local(const cpp_int& n, i64 p) {
    cpp_int m = n;
    int v = 0;
    while (m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

// inverse of a unit mod p^k
cpp_int inv_mod_pk(const cpp_int& a, i64 p, int k) {
    cpp_int pk = pow_big(p, k);
    cpp_int x = 1;
    // Newton from the inverse mod p
    i64 a0 = static_cast<i64>(mod_pk(a, p));
    i64 x0, y0;
    extgcd(a0, p, x0, y0);
    x = mod_pk(cpp_int(x0), p);
    for (int bits = 1; bits < k; bits *= 2) x = mod_pk(x * (2 - mod_pk(a * x, pk)), pk);
    if (mod_pk(a * x, pk) != 1) throw internal_check_error("inv_mod_pk failed");
    return x;
}

}  // namespace

PadicField PadicField::completion(const QuadField& F, i64 p) {
    auto [B, C] = ring_generator_poly(F);
    return {p, true, B, C};
}

i64 padic_valuation2(const PadicField& K, const PadicElem& x) {
    if (!K.quadratic) {
        if (x.a == 0) throw precision_error("padic_valuation2: zero to working precision");
        int v = vp_big_local(x.a, K.p);
        if (v > x.prec - 4) throw precision_error("padic_valuation2: insufficient precision");
        return 2 * v;
    }
    cpp_int N = x.a * x.a + K.B * x.a * x.b - K.C * x.b * x.b;
    if (N == 0) throw precision_error("padic_valuation2: zero norm to working precision");
    int v = vp_big_local(N, K.p);
    if (v > x.prec - 4) throw precision_error("padic_valuation2: insufficient precision");
    return v;  // = 2 * nu for either ramification type
}

PadicElem padic_mul(const PadicField& K, const PadicElem& x, const PadicElem& y) {
    int prec = std::min(x.prec, y.prec);
    cpp_int pk = pow_big(K.p, prec);
    cpp_int a = x.a * y.a + K.C * (x.b * y.b);
    cpp_int b = x.a * y.b + x.b * y.a + K.B * (x.b * y.b);
    return {mod_pk(a, pk), mod_pk(b, pk), prec};
}

PadicElem padic_log(const PadicField& K, const PadicElem& x) {
    // convergence demands nu(x-1) > 1/(p-1); we verify nu(x-1) >= threshold
    PadicElem z{x.a - 1, x.b, x.prec};
    if (z.a == 0 && z.b == 0) return {0, 0, x.prec};
    i64 v2z = padic_valuation2(K, z);
    i64 e = 1;
    if (K.quadratic) {
        // ramified iff disc of w-poly has positive p-valuation
        cpp_int disc = K.B * K.B + 4 * K.C;
        if (disc % K.p == 0) e = 2;
    }
    // nu_rat(z) = v2z / (2e) in units of nu(pi)... normalized nu(p)=1: v2z/2.
    // requirement: v2z/2 > 1/(p-1)
    if (v2z * (K.p - 1) <= 2) throw std::domain_error("padic_log: argument outside convergence domain");

    int terms = 4 * x.prec + 64;
    int slack = 0;
    for (i64 i = 1; i <= terms; i *= K.p) slack += 1;
    int work = x.prec + slack + 4;
    cpp_int pk = pow_big(K.p, work);

    PadicElem zw{mod_pk(z.a, pk), mod_pk(z.b, pk), work};
    PadicElem power = zw;
    cpp_int suma = 0, sumb = 0;
    for (int i = 1; i <= terms; ++i) {
        // term = power / i, sign (-1)^(i+1)
        cpp_int ta = power.a, tb = power.b;
        int vi = vp_big_local(cpp_int(i), K.p);
        if (vi > 0) {
            cpp_int pv = pow_big(K.p, vi);
            if (ta % pv != 0 || tb % pv != 0)
                throw internal_check_error("padic_log: term not divisible by p-part of i");
            ta /= pv;
            tb /= pv;
        }
        cpp_int iu = cpp_int(i) / pow_big(K.p, vi);
        cpp_int inv = inv_mod_pk(iu, K.p, work);
        ta = mod_pk(ta * inv, pk);
        tb = mod_pk(tb * inv, pk);
        if (i % 2 == 1) {
            suma += ta;
            sumb += tb;
        } else {
            suma -= ta;
            sumb -= tb;
        }
        power = padic_mul(K, power, zw);
        // once the remaining terms are beyond the target precision, stop
        if (i > 4 && (v2z * (i + 1)) / 2 > 2 * (x.prec + slack + 2)) break;
    }
    return {mod_pk(suma, pow_big(K.p, x.prec)), mod_pk(sumb, pow_big(K.p, x.prec)), x.prec};
}

cpp_int split_root(const QuadField& F, i64 p, int prec) {
    auto [B, C] = ring_generator_poly(F);
    // roots of f(x) = x^2 - Bx - C mod p, then Newton
    i64 r0 = -1;
    for (i64 r = 0; r < p; ++r) {
        if (((r * r - B * r - C) % p + p) % p == 0) {
            r0 = r;
            break;  // smallest residue first
        }
    }
    if (r0 < 0) throw std::invalid_argument("split_root: polynomial has no root mod p");
    cpp_int pk = pow_big(p, prec);
    cpp_int r = r0;
    for (int bits = 1; bits < prec; bits *= 2) {
        cpp_int cur = pow_big(p, std::min(2 * bits, prec));
        cpp_int fr = mod_pk(r * r - B * r - C, cur);
        cpp_int fp = mod_pk(2 * r - B, cur);
        cpp_int inv = inv_mod_pk(fp, p, std::min(2 * bits, prec));
        r = mod_pk(r - fr * inv, cur);
    }
    if (mod_pk(r * r - B * r - C, pk) != 0) throw internal_check_error("split_root: lift failed");
    return r;
}

namespace {

// fundamental unit coordinates mod p^prec via a big-integer CF track
std::pair<cpp_int, cpp_int> unit_coords_mod(i64 m, i64 p, int prec) {
    cpp_int pk = pow_big(p, prec);
    if (pk <= std::numeric_limits<u64>::max() / 4) {
        auto [x, y] = fundamental_unit_mod(m, static_cast<u64>(pk));
        return {cpp_int(x), cpp_int(y)};
    }
    // exact coordinates are capped; redo the CF with cpp_int residues
    FundUnit u = fundamental_unit(m, 1u << 22);
    if (!u.exact) throw capacity_error("unit_coords_mod: unit too large for the exact track");
    return {mod_pk(u.x, pk), mod_pk(u.y, pk)};
}

}  // namespace

i64 regulator_valuation2(const QuadField& F, i64 p) {
    if (!F.real()) throw std::invalid_argument("regulator_valuation2: real fields only");
    bool split;
    if (p == 2) {
        split = (F.two == Split2::split);
    } else {
        i64 mp = ((F.m % p) + p) % p;
        split = (mp != 0) && jacobi(F.m, p) == 1;
    }
    for (int prec = 64; prec <= 1024; prec *= 2) {
        std::pair<cpp_int, cpp_int> coords;
        try {
            coords = unit_coords_mod(F.m, p, prec + 16);
        } catch (const capacity_error&) {
            throw;
        }
        PadicField K = split ? PadicField::qp(p) : PadicField::completion(F, p);
        PadicElem u;
        if (split) {
            cpp_int r = split_root(F, p, prec + 16);
            cpp_int pk = pow_big(p, prec + 16);
            u = {mod_pk(coords.first + coords.second * r, pk), 0, prec + 16};
        } else {
            u = {coords.first, coords.second, prec + 16};
        }
        try {
            // raise to the multiplicative order in the residue field (u^k = 1 mod frak_p),
            // then square past the convergence bound of the logarithm
            auto is_one_mod_p = [&](const PadicElem& x) {
                PadicElem xm1{x.a - 1, x.b, x.prec};
                if (xm1.a == 0 && xm1.b == 0) return true;
                try {
                    return padic_valuation2(K, xm1) >= (K.quadratic ? 1 : 2);
                } catch (const precision_error&) {
                    return true;  // = 1 to full working precision
                }
            };
            i64 q = p;
            if (!split) {
                cpp_int disc = K.B * K.B + 4 * K.C;
                q = (disc % p == 0) ? p : p * p;
            }
            PadicElem w{1, 0, u.prec};
            i64 rf_order = 0;
            for (i64 d = 1; d <= q - 1; ++d) {
                w = padic_mul(K, w, u);
                if (is_one_mod_p(w)) {
                    rf_order = d;
                    break;
                }
            }
            if (rf_order == 0) throw internal_check_error("regulator: no order in the residue field");
            if (rf_order % p == 0) throw internal_check_error("regulator: residue order divisible by p");
            i64 extra = 0;
            for (;;) {
                PadicElem wm1{w.a - 1, w.b, w.prec};
                if (wm1.a == 0 && wm1.b == 0) throw precision_error("regulator: unit is 1 to precision");
                i64 v2 = padic_valuation2(K, wm1);
                if (v2 * (p - 1) > 2) break;
                w = padic_mul(K, w, w);
                ++extra;
                if (extra > 64) throw internal_check_error("regulator: cannot reach log domain");
            }
            PadicElem lg = padic_log(K, w);
            i64 v2log = padic_valuation2(K, lg);
            return v2log - 2 * extra;
        } catch (const precision_error&) {
            continue;  // escalate
        }
    }
    throw precision_error("regulator_valuation2: precision ceiling reached");
}

}  // namespace tmod
