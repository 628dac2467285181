#include "tmod/bqf.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "tmod/localfield.hpp"

namespace tmod {

using i128 = __int128;

namespace {

struct Form128 {
    i128 a, b, c;
};

Form128 reduce128(Form128 f, i128 D) {
    for (;;) {
        // normalize b into (-a, a]
        i128 twoa = 2 * f.a;
        i128 r = f.b % twoa;
        if (r <= -f.a) r += twoa;
        if (r > f.a) r -= twoa;
        if (r != f.b) {
            f.c = (r * r - D) / (4 * f.a);
            f.b = r;
        }
        if (f.a > f.c) {
            f = {f.c, -f.b, f.a};
            continue;
        }
        break;
    }
    if (f.b < 0 && (f.a == f.c || f.a == -f.b)) f.b = -f.b;
    return f;
}

BQForm to_form(const Form128& f) {
    return {static_cast<i64>(f.a), static_cast<i64>(f.b), static_cast<i64>(f.c)};
}

i128 extgcd128(i128 a, i128 b, i128& x, i128& y) {
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return a >= 0 ? a : -a;
    }
    i128 x1, y1;
    i128 g = extgcd128(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

cpp_int extgcd_big(const cpp_int& a, const cpp_int& b, cpp_int& x, cpp_int& y) {
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return abs(a);
    }
    cpp_int x1, y1;
    cpp_int g = extgcd_big(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

cpp_int round_div_big(const cpp_int& a, const cpp_int& b) {
    cpp_int q = a / b, r = a % b;
    if (2 * r >= abs(b)) q += (b > 0 ? 1 : -1);
    if (-2 * r > abs(b)) q -= (b > 0 ? 1 : -1);
    return q;
}

}  // namespace

BQForm principal_form(i64 D) {
    if ((D % 4 + 4) % 4 == 0) return {1, 0, -D / 4};
    return {1, 1, (1 - D) / 4};
}

bool is_reduced_definite(const BQForm& f) {
    i64 ab = f.b < 0 ? -f.b : f.b;
    if (!(ab <= f.a && f.a <= f.c)) return false;
    if (f.b < 0 && (f.a == f.c || f.a == ab)) return false;
    return true;
}

BQForm reduce_definite(BQForm f) {
    i128 D = static_cast<i128>(f.b) * f.b - 4 * static_cast<i128>(f.a) * f.c;
    return to_form(reduce128({f.a, f.b, f.c}, D));
}

BQForm compose_definite(const BQForm& f1, const BQForm& f2, i64 D) {
    i128 a1 = f1.a, b1 = f1.b, a2 = f2.a, b2 = f2.b, c2 = f2.c;
    if (a1 > a2) {
        a1 = f2.a;
        b1 = f2.b;
        a2 = f1.a;
        b2 = f1.b;
        c2 = f1.c;
    }
    i128 s = (b1 + b2) / 2, n = (b1 - b2) / 2;
    i128 x1, y1, x2, v;
    i128 g1 = extgcd128(a1, a2, x1, y1);
    i128 d = extgcd128(g1, s, x2, v);
    i128 u = y1 * x2;
    i128 A = (a1 / d) * (a2 / d);
    i128 B = b2 + 2 * (a2 / d) * (n * u - c2 * v);
    i128 twoA = 2 * A;
    B %= twoA;
    if (B < 0) B += twoA;
    i128 C = (B * B - D) / (4 * A);
    return to_form(reduce128({A, B, C}, D));
}

BQForm inverse_form(const BQForm& f) {
    return reduce_definite({f.a, -f.b, f.c});
}

BQForm pow_definite(const BQForm& f, cpp_int e, i64 D) {
    BQForm base = f, acc = principal_form(D);
    bool inv = false;
    if (e < 0) {
        inv = true;
        e = -e;
    }
    while (e > 0) {
        if ((e & 1) != 0) acc = compose_definite(acc, base, D);
        base = compose_definite(base, base, D);
        e >>= 1;
    }
    return inv ? inverse_form(acc) : acc;
}

std::vector<BQForm> reduced_forms_definite(i64 D) {
    if (D >= 0) throw std::invalid_argument("reduced_forms_definite: D must be negative");
    std::vector<BQForm> out;
    i64 amax = isqrt_ll(-D / 3);
    for (i64 a = 1; a <= amax; ++a) {
        for (i64 b = (D % 2 + 2) % 2; b <= a; b += 2) {
            i128 num = static_cast<i128>(b) * b - D;
            if (num % (4 * a) != 0) continue;
            i64 c = static_cast<i64>(num / (4 * a));
            if (c < a) continue;
            if (gcd_ll(gcd_ll(a, b), c) != 1) continue;  // fundamental D: always primitive
            out.push_back({a, b, c});
            if (b != 0 && b != a && a != c) out.push_back({a, -b, c});
        }
    }
    std::sort(out.begin(), out.end(), [](const BQForm& x, const BQForm& y) {
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    return out;
}

i64 class_number_definite(i64 D) {
    i64 h = 0;
    i64 amax = isqrt_ll(-D / 3);
    for (i64 a = 1; a <= amax; ++a) {
        for (i64 b = (D % 2 + 2) % 2; b <= a; b += 2) {
            i128 num = static_cast<i128>(b) * b - D;
            if (num % (4 * a) != 0) continue;
            i64 c = static_cast<i64>(num / (4 * a));
            if (c < a) continue;
            h += (b != 0 && b != a && a != c) ? 2 : 1;
        }
    }
    return h;
}

std::optional<BQForm> prime_form(i64 D, i64 p) {
    // raw norm-p form; callers reduce when they want the class representative
    if (p == 2) {
        i64 r = ((D % 8) + 8) % 8;
        if (r == 1) return BQForm{2, 1, static_cast<i64>((1 - D) / 8)};
        if (r == 0) return BQForm{2, 0, -D / 8};
        if (r == 4) return BQForm{2, 2, (4 - D) / 8};
        return std::nullopt;  // D = 5 mod 8: 2 inert
    }
    i64 Dp = ((D % p) + p) % p;
    if (Dp == 0) {
        if (D % 2 != 0) {
            i64 b = p;  // odd, b^2 = D mod 4p
            i128 num = static_cast<i128>(b) * b - D;
            return BQForm{p, b, static_cast<i64>(num / (4 * p))};
        }
        return BQForm{p, 0, -(D / 4) / p};
    }
    auto rt = sqrt_mod_p(static_cast<u64>(Dp), static_cast<u64>(p));
    if (!rt) return std::nullopt;  // inert
    i64 b = static_cast<i64>(*rt);
    if (((b ^ D) & 1) != 0) b = p - b;  // match the parity of D
    i128 num = static_cast<i128>(b) * b - D;
    if (num % (4 * p) != 0) throw internal_check_error("prime_form: no root with matching parity");
    return BQForm{p, b, static_cast<i64>(num / (4 * p))};
}

namespace {

i64 order_from_multiple(const BQForm& f, i64 D, i64 M) {
    for (auto& [p, e] : factorize(M)) {
        for (int i = 0; i < e; ++i) {
            if (M % p == 0 && pow_definite(f, M / p, D) == principal_form(D))
                M /= p;
            else
                break;
        }
    }
    return M;
}

}  // namespace

i64 form_order(const BQForm& f, i64 D) {
    BQForm id = principal_form(D);
    BQForm g = reduce_definite(f);
    if (g == id) return 1;
    double ad = static_cast<double>(-D);
    i64 hmax = static_cast<i64>(std::sqrt(ad) * (std::log(ad) + 2.0) / 3.141592653589793) + 8;
    i64 B = isqrt_ll(hmax) + 1;
    std::unordered_map<u64, i64> baby;
    BQForm x = id;
    for (i64 j = 0; j < B; ++j) {
        baby.emplace(x.key(), j);
        x = compose_definite(x, g, D);
    }
    // x = g^B
    BQForm giant = x, y = x;
    for (i64 i = 1; i <= B + 2; ++i) {
        auto it = baby.find(y.key());
        if (it != baby.end()) {
            i64 M = i * B - it->second;
            if (M > 0) return order_from_multiple(g, D, M);
        }
        y = compose_definite(y, giant, D);
    }
    throw internal_check_error("form_order: BSGS found no multiple");
}

ClassGroup ClassGroup::make(i64 D) {
    ClassGroup G;
    G.D = D;
    G.elements = reduced_forms_definite(D);
    i64 h = G.h();
    // Sylow structure by torsion counting
    std::vector<cpp_int> sylow_factors;
    std::map<i64, std::vector<int>> sylow_exps;
    for (auto& [p, e] : factorize(h)) {
        i64 pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        std::unordered_set<u64> sylow;
        std::vector<BQForm> sylow_elems;
        for (auto& f : G.elements) {
            BQForm s = pow_definite(f, h / pe, D);
            if (sylow.insert(s.key()).second) sylow_elems.push_back(s);
        }
        // c_i = #S[p^i]; the partition follows from the counts
        std::vector<int> log_counts{0};
        i64 pk = 1;
        while (true) {
            pk *= p;
            i64 cnt = 0;
            for (auto& s : sylow_elems)
                if (pow_definite(s, pk, D) == principal_form(D)) ++cnt;
            int lg = 0;
            i64 c = cnt;
            while (c > 1) {
                if (c % p != 0) throw internal_check_error("ClassGroup: torsion count not a p-power");
                c /= p;
                ++lg;
            }
            log_counts.push_back(lg);
            if (cnt == static_cast<i64>(sylow_elems.size())) break;
        }
        std::vector<int> exps;  // e_j multiset via conjugate counts
        for (size_t i = 1; i < log_counts.size(); ++i) {
            int parts_ge_i = log_counts[i] - log_counts[i - 1];
            while (static_cast<int>(exps.size()) < parts_ge_i) exps.push_back(0);
            for (int j = 0; j < parts_ge_i; ++j) ++exps[j];
        }
        sylow_exps[p] = exps;
    }
    // merge Sylow types into invariant factors
    size_t maxlen = 0;
    for (auto& [p, exps] : sylow_exps) maxlen = std::max(maxlen, exps.size());
    std::vector<cpp_int> inv(maxlen, 1);
    for (auto& [p, exps] : sylow_exps) {
        // exps descending by construction
        for (size_t i = 0; i < exps.size(); ++i) {
            cpp_int pe = 1;
            for (int j = 0; j < exps[i]; ++j) pe *= p;
            inv[i] *= pe;
        }
    }
    std::sort(inv.begin(), inv.end());
    std::vector<cpp_int> factors;
    for (auto& d : inv)
        if (d > 1) factors.push_back(d);
    G.structure = AbGroup{factors};
    if (G.structure.order() != h) throw internal_check_error("ClassGroup: structure order mismatch");
    return G;
}

std::pair<i64, i64> ring_generator_poly(const QuadField& F) {
    i64 mm = ((F.m % 4) + 4) % 4;
    if (mm == 1) return {1, (F.m - 1) / 4};  // w = (1+sqrt m)/2
    return {0, F.m};                         // w = sqrt m
}

QElem ring_generator(const QuadField& F) {
    i64 mm = ((F.m % 4) + 4) % 4;
    if (mm == 1) return QElem::make(1, 1, 2);
    return QElem::make(0, 1, 1);
}

OIdeal ideal_from_form(const QuadField& F, const BQForm& f) {
    // [a, (-b + sqrt D)/2] in the (1, w) basis
    i64 mm = ((F.m % 4) + 4) % 4;
    cpp_int r;
    if (mm == 1) {
        if (((f.b % 2) + 2) % 2 != 1) throw std::invalid_argument("ideal_from_form: parity");
        r = cpp_int(-(f.b + 1)) / 2;
    } else {
        if (f.b % 2 != 0) throw std::invalid_argument("ideal_from_form: parity");
        r = cpp_int(-f.b) / 2;
    }
    r %= f.a;
    if (r < 0) r += f.a;
    return {f.a, r, 1};
}

namespace {

// HNF of the Z-lattice spanned by vectors (x, y) in the (1, w) basis
OIdeal hnf_vectors(std::vector<std::pair<cpp_int, cpp_int>> vecs) {
    // second coordinate: gcd with cofactors
    cpp_int s = 0, rx = 0;
    std::vector<std::pair<cpp_int, cpp_int>> work = vecs;
    // combine all vectors into one with y = gcd of ys, collecting x alongside
    std::pair<cpp_int, cpp_int> acc{0, 0};
    for (auto& v : work) {
        if (v.second == 0) continue;
        if (acc.second == 0) {
            acc = v;
            continue;
        }
        cpp_int x, y;
        cpp_int g = extgcd_big(acc.second, v.second, x, y);
        acc = {x * acc.first + y * v.first, g};
    }
    s = acc.second;
    rx = acc.first;
    if (s < 0) {
        s = -s;
        rx = -rx;
    }
    // x-axis sublattice: reduce all vectors' y to 0
    cpp_int n1 = 0;
    for (auto& v : vecs) {
        cpp_int t = (s == 0) ? cpp_int(0) : cpp_int(v.second / s);
        cpp_int x = v.first - t * rx;
        if (s != 0 && v.second % s != 0) throw internal_check_error("hnf_vectors: y not divisible by gcd");
        n1 = gcd(n1, abs(x));
    }
    if (n1 == 0 || s == 0) throw internal_check_error("hnf_vectors: rank deficient lattice");
    rx %= n1;
    if (rx < 0) rx += n1;
    return {n1, rx, s};
}

}  // namespace

OIdeal ideal_mul(const QuadField& F, const OIdeal& I, const OIdeal& J) {
    auto [B, C] = ring_generator_poly(F);
    auto mulw = [&](std::pair<cpp_int, cpp_int> u, std::pair<cpp_int, cpp_int> v) {
        return std::pair<cpp_int, cpp_int>{u.first * v.first + C * u.second * v.second,
                                           u.first * v.second + u.second * v.first + B * u.second * v.second};
    };
    std::pair<cpp_int, cpp_int> i1{I.n1, 0}, i2{I.r, I.s}, j1{J.n1, 0}, j2{J.r, J.s};
    std::vector<std::pair<cpp_int, cpp_int>> prods{mulw(i1, j1), mulw(i1, j2), mulw(i2, j1), mulw(i2, j2)};
    return hnf_vectors(prods);
}

OIdeal ideal_pow(const QuadField& F, const OIdeal& I, i64 e) {
    OIdeal acc{1, 0, 1}, base = I;
    while (e > 0) {
        if (e & 1) acc = ideal_mul(F, acc, base);
        base = ideal_mul(F, base, base);
        e >>= 1;
    }
    return acc;
}

OIdeal ideal_from_element(const QuadField& F, const QElem& x) {
    i64 mm = ((F.m % 4) + 4) % 4;
    cpp_int u, v;
    if (mm == 1) {
        // x = (a + b sqrt m)/den = (a - b)/den + (2b/den) w
        if (x.den == 1) {
            u = x.a - x.b;
            v = 2 * x.b;
        } else if (x.den == 2) {
            if ((x.a - x.b) % 2 != 0) throw std::invalid_argument("ideal_from_element: not integral");
            u = (x.a - x.b) / 2;
            v = x.b;
        } else {
            throw std::invalid_argument("ideal_from_element: not integral");
        }
    } else {
        if (x.den != 1) throw std::invalid_argument("ideal_from_element: not integral");
        u = x.a;
        v = x.b;
    }
    auto [B, C] = ring_generator_poly(F);
    std::pair<cpp_int, cpp_int> e1{u, v};
    std::pair<cpp_int, cpp_int> e2{C * v, u + B * v};  // x * w
    return hnf_vectors({e1, e2});
}

bool ideal_contains(const QuadField& F, const OIdeal& I, const QElem& x) {
    i64 mm = ((F.m % 4) + 4) % 4;
    cpp_int u, v;
    if (mm == 1) {
        cpp_int a2 = x.a * 2 / x.den, b2 = x.b * 2 / x.den;  // assumes divisibility
        if ((a2 - b2) % 2 != 0) return false;
        u = (a2 - b2) / 2;
        v = b2;
    } else {
        if (x.den != 1) return false;
        u = x.a;
        v = x.b;
    }
    if (v % I.s != 0) return false;
    cpp_int t = v / I.s;
    cpp_int xr = u - t * I.r;
    return xr % I.n1 == 0;
}

std::optional<QElem> principal_generator(const QuadField& F, const OIdeal& I) {
    if (!F.imaginary()) throw unsupported_domain_error("principal_generator: imaginary fields only");
    auto [B, C] = ring_generator_poly(F);
    // positive definite norm form N(u + v w) = u^2 + B u v - C v^2, C < 0
    auto q = [&](std::pair<cpp_int, cpp_int> v) { return v.first * v.first + B * v.first * v.second - C * v.second * v.second; };
    auto b2 = [&](std::pair<cpp_int, cpp_int> u, std::pair<cpp_int, cpp_int> v) {
        return q({u.first + v.first, u.second + v.second}) - q(u) - q(v);
    };
    std::pair<cpp_int, cpp_int> v1{I.n1, 0}, v2{I.r, I.s};
    // Lagrange-Gauss reduction
    if (q(v1) < q(v2)) std::swap(v1, v2);
    for (;;) {
        cpp_int mu = round_div_big(b2(v1, v2), 2 * q(v2));
        v1 = {v1.first - mu * v2.first, v1.second - mu * v2.second};
        if (q(v1) >= q(v2)) break;
        std::swap(v1, v2);
    }
    std::pair<cpp_int, cpp_int> best = q(v1) < q(v2) ? v1 : v2;
    if (q(best) != I.norm()) return std::nullopt;
    // convert u + v w back to (a + b sqrt m)/den
    i64 mm = ((F.m % 4) + 4) % 4;
    if (mm == 1) return QElem::make(2 * best.first + best.second, best.second, 2);
    return QElem::make(best.first, best.second, 1);
}

FrakPData frak_p_order_and_pi(const QuadField& F) {
    if (!F.imaginary()) throw unsupported_domain_error("frak_p_order_and_pi: imaginary fields only");
    FrakPData out;
    if (F.two == Split2::inert) {
        out.f = 1;
        out.pi = QElem::integer(2);
        out.two_in_nes = false;
        return out;
    }
    auto pf = prime_form(F.D, 2);
    if (!pf) throw internal_check_error("frak_p_order_and_pi: missing prime form above 2");
    out.f = static_cast<int>(form_order(*pf, F.D));
    OIdeal P = ideal_from_form(F, *pf);
    OIdeal Pf = ideal_pow(F, P, out.f);
    auto gen = principal_generator(F, Pf);
    if (!gen) throw internal_check_error("frak_p_order_and_pi: frak_p^f not principal");
    QElem pi = *gen;
    if (F.two == Split2::split) {
        // match pi to the place of the canonical 2-adic root of m
        int prec = out.f + 32;
        LocalElem2 at_p = embed_at_2(F, pi, prec, false);
        int v = (at_p.a == 0) ? prec : v2_big(at_p.a);
        if (v != out.f) {
            pi = pi.conj();
            at_p = embed_at_2(F, pi, prec, false);
            if (at_p.a == 0 || v2_big(at_p.a) != out.f)
                throw internal_check_error("frak_p_order_and_pi: neither conjugate matches the place");
        }
        // sign normalization: additive (pi, -1) at frak_p must vanish
        cpp_int unit = at_p.a / (cpp_int(1) << out.f);
        i64 u4 = static_cast<i64>(unit % 4);
        if (u4 < 0) u4 += 4;
        if (u4 == 3) pi = pi.neg();
    } else {
        // lexicographic: positive leading coordinate
        if (pi.a < 0 || (pi.a == 0 && pi.b < 0)) pi = pi.neg();
    }
    out.pi = pi;
    out.two_in_nes = (out.f % 2 == 1);
    return out;
}

ClassGroupPresentation class_group_presentation(const QuadField& F, const ClassGroup& G, i64 coprime_to) {
    ClassGroupPresentation P;
    i64 D = F.D;
    i64 h = G.h();
    BQForm id = principal_form(D);

    // translate a form within its class so the leading coefficient is
    // coprime to coprime_to (forms represent such values primitively)
    auto translate_coprime = [&](const BQForm& f) -> BQForm {
        for (i64 y = 0; y < 64; ++y) {
            for (i64 x = 1; x < 64; ++x) {
                if (gcd_ll(x, y) != 1) continue;
                i128 val = static_cast<i128>(f.a) * x * x + static_cast<i128>(f.b) * x * y +
                           static_cast<i128>(f.c) * y * y;
                if (val > std::numeric_limits<i64>::max() / 4) continue;
                i64 v = static_cast<i64>(val);
                if (gcd_ll(v, coprime_to) != 1) continue;
                // complete (x, y) to the unimodular matrix [[x, u],[y, w]]
                i64 s, t;
                extgcd(x, y, s, t);  // x*s + y*t = 1
                i64 u_ = -t, w_ = s;
                i128 bb = 2 * (static_cast<i128>(f.a) * x * u_ + static_cast<i128>(f.c) * y * w_) +
                          static_cast<i128>(f.b) * (static_cast<i128>(x) * w_ + static_cast<i128>(y) * u_);
                i128 cc = static_cast<i128>(f.a) * u_ * u_ + static_cast<i128>(f.b) * u_ * w_ +
                          static_cast<i128>(f.c) * w_ * w_;
                return {v, static_cast<i64>(bb), static_cast<i64>(cc)};
            }
        }
        throw internal_check_error("translate_coprime: no coprime representation found");
    };

    std::unordered_map<u64, std::vector<i64>> closure;  // reduced form key -> dlog vector
    closure.emplace(id.key(), std::vector<i64>{});
    std::vector<BQForm> closure_list{id};
    std::vector<i64> gen_orders;

    while (static_cast<i64>(closure.size()) < h) {
        // element of maximal order in the quotient by the current closure
        i64 best_n = 0;
        BQForm best{};
        for (auto& f : G.elements) {
            if (closure.count(f.key())) continue;
            i64 n = 1;
            BQForm x = f;
            while (!closure.count(x.key())) {
                x = compose_definite(x, f, D);
                ++n;
            }
            if (n > best_n) {
                best_n = n;
                best = f;
            }
        }
        if (best_n == 0) throw internal_check_error("class_group_presentation: stalled");
        int gi = static_cast<int>(P.gens.size());
        P.gens.push_back(best);
        gen_orders.push_back(best_n);
        // extend the closure and dlog vectors
        std::vector<BQForm> old_list = closure_list;
        BQForm xp = best;
        for (i64 j = 1; j < best_n; ++j) {
            for (auto& y : old_list) {
                BQForm z = compose_definite(y, xp, D);
                auto vec = closure[y.key()];
                vec.resize(gi + 1, 0);
                vec[gi] = j;
                if (closure.emplace(z.key(), vec).second) closure_list.push_back(z);
            }
            xp = compose_definite(xp, best, D);
        }
        // xp = best^best_n lies in the old closure: relation row
        auto it = closure.find(xp.key());
        if (it == closure.end()) throw internal_check_error("class_group_presentation: power not in closure");
        std::vector<cpp_int> row(P.gens.size(), 0);
        row[gi] = best_n;
        for (size_t j = 0; j < it->second.size() && j < static_cast<size_t>(gi); ++j) row[j] = -cpp_int(it->second[j]);
        P.relations.push_back(row);
    }
    size_t w = P.gens.size();
    for (auto& row : P.relations) row.resize(w, 0);

    // replace generators by coprime translates (same classes)
    for (auto& g : P.gens) g = translate_coprime(g);

    // generator of prod gens^row for each relation, with conjugates for
    // negative exponents and the rational norm correction folded in
    for (auto& row : P.relations) {
        OIdeal J{1, 0, 1};
        cpp_int denom = 1;
        for (size_t i = 0; i < w; ++i) {
            if (row[i] == 0) continue;
            OIdeal gi = ideal_from_form(F, P.gens[i]);
            if (row[i] > 0) {
                J = ideal_mul(F, J, ideal_pow(F, gi, static_cast<i64>(row[i])));
            } else {
                // conj(I)^k ~ I^-k up to the principal ideal (N(I))^k
                BQForm conj_f = {P.gens[i].a, -P.gens[i].b, P.gens[i].c};
                OIdeal gci = ideal_from_form(F, conj_f);
                i64 k = static_cast<i64>(-row[i]);
                J = ideal_mul(F, J, ideal_pow(F, gci, k));
                cpp_int nk = 1;
                for (i64 j = 0; j < k; ++j) nk *= P.gens[i].a;
                denom *= nk;
            }
        }
        auto gen = principal_generator(F, J);
        if (!gen) throw internal_check_error("class_group_presentation: relation ideal not principal");
        P.rel_generators.push_back(QElem::make(gen->a, gen->b, gen->den * denom));
    }
    return P;
}

}  // namespace tmod
