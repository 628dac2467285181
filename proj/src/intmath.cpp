#include "tmod/intmath.hpp"

#include <algorithm>
#include <cmath>

namespace tmod {

i64 extgcd(i64 a, i64 b, i64& x, i64& y) {
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return a >= 0 ? a : -a;
    }
    i64 x1, y1;
    i64 g = extgcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

i64 isqrt_ll(i64 n) {
    if (n < 0) throw std::invalid_argument("isqrt of negative");
    if (n == 0) return 0;
    i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

cpp_int isqrt_big(const cpp_int& n) {
    if (n < 0) throw std::invalid_argument("isqrt of negative");
    if (n == 0) return 0;
    cpp_int x = cpp_int(1) << (static_cast<unsigned>(msb(n)) / 2 + 1);
    for (;;) {
        cpp_int y = (x + n / x) >> 1;
        if (y >= x) break;
        x = y;
    }
    return x;
}

bool is_square_ll(i64 n, i64& root) {
    if (n < 0) return false;
    root = isqrt_ll(n);
    return root * root == n;
}

int v2_ll(u64 n) {
    return __builtin_ctzll(n);
}

int vp_ll(i64 n, i64 p) {
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

int v2_big(const cpp_int& n) {
    if (n == 0) throw std::invalid_argument("v2 of 0");
    return static_cast<int>(lsb(abs(n)));
}

int jacobi(i64 a, i64 n) {
    if (n <= 0 || n % 2 == 0) throw std::invalid_argument("jacobi: n must be odd positive");
    a %= n;
    if (a < 0) a += n;
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            i64 r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

std::optional<int> jacobi_additive(i64 a, i64 n) {
    int s = jacobi(a, n);
    if (s == 0) return std::nullopt;
    return s == 1 ? 0 : 1;
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int r = v2_ll(d);
    d >>= r;
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 0; i < r - 1; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

std::vector<i64> sieve_primes(i64 bound) {
    if (bound < 2) throw std::invalid_argument("sieve_primes: bound < 2");
    if (bound > (1LL << 31)) throw capacity_error("sieve_primes: bound exceeds memory budget");
    std::vector<bool> comp(static_cast<size_t>(bound) + 1, false);
    std::vector<i64> primes;
    for (i64 i = 2; i <= bound; ++i) {
        if (!comp[i]) {
            primes.push_back(i);
            for (i64 j = i * i; j <= bound; j += i) comp[j] = true;
        }
    }
    return primes;
}

SpfSieve::SpfSieve(i64 bound_) : bound(bound_) {
    if (bound < 1) throw std::invalid_argument("SpfSieve: bound < 1");
    if (bound > (1LL << 31)) throw capacity_error("SpfSieve: bound exceeds memory budget");
    spf.assign(static_cast<size_t>(bound) + 1, 0);
    spf[1] = 1;
    for (i64 i = 2; i <= bound; ++i) {
        if (spf[i] == 0) {
            for (i64 j = i; j <= bound; j += i) {
                if (spf[j] == 0) spf[j] = static_cast<int32_t>(i);
            }
        }
    }
}

bool SpfSieve::is_squarefree(i64 n) const {
    if (n < 0) n = -n;
    if (n == 0) return false;
    while (n > 1) {
        i64 p = spf[n];
        n /= p;
        if (n % p == 0) return false;
    }
    return true;
}

std::vector<i64> SpfSieve::odd_prime_factors(i64 n) const {
    if (n < 0) n = -n;
    std::vector<i64> out;
    while (n > 1) {
        i64 p = spf[n];
        if (p != 2) out.push_back(p);
        while (n % p == 0) n /= p;
    }
    return out;
}

namespace {

u64 pollard_rho(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        while (d == 1) {
            x = (mulmod(x, x, n) + c) % n;
            y = (mulmod(y, y, n) + c) % n;
            y = (mulmod(y, y, n) + c) % n;
            d = gcd_ll(static_cast<i64>(x > y ? x - y : y - x), static_cast<i64>(n));
        }
        if (d != n) return d;
    }
}

void factor_rec(u64 n, std::vector<i64>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.push_back(static_cast<i64>(n));
        return;
    }
    u64 d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

std::vector<std::pair<i64, int>> factorize(i64 n) {
    if (n == 0) throw std::invalid_argument("factorize(0)");
    u64 m = static_cast<u64>(n < 0 ? -n : n);
    std::vector<i64> ps;
    for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
        while (m % p == 0) {
            ps.push_back(p);
            m /= p;
        }
    }
    if (m > 1) factor_rec(m, ps);
    std::sort(ps.begin(), ps.end());
    std::vector<std::pair<i64, int>> out;
    for (i64 p : ps) {
        if (!out.empty() && out.back().first == p)
            ++out.back().second;
        else
            out.push_back({p, 1});
    }
    return out;
}

std::optional<FactoredInt> squarefree_factor(i64 n) {
    if (n == 0) throw std::invalid_argument("squarefree_factor(0)");
    auto f = factorize(n);
    for (auto& [p, e] : f)
        if (e > 1) return std::nullopt;
    FactoredInt out;
    out.value = n;
    out.factors = std::move(f);
    return out;
}

std::optional<int> quartic_symbol(i64 a, i64 l) {
    if (l % 4 != 1 || !is_prime_u64(static_cast<u64>(l)))
        throw std::invalid_argument("quartic_symbol: l must be a prime = 1 mod 4");
    a %= l;
    if (a < 0) a += l;
    if (a == 0) throw std::invalid_argument("quartic_symbol: a not coprime to l");
    if (powmod(static_cast<u64>(a), static_cast<u64>((l - 1) / 2), static_cast<u64>(l)) != 1)
        return std::nullopt;  // symbol undefined off the quadratic residues
    u64 r = powmod(static_cast<u64>(a), static_cast<u64>((l - 1) / 4), static_cast<u64>(l));
    if (r == 1) return 1;
    if (r == static_cast<u64>(l - 1)) return -1;
    throw internal_check_error("quartic_symbol: a^((l-1)/4) not +-1");
}

std::optional<u64> sqrt_mod_p(u64 a, u64 p) {
    a %= p;
    if (a == 0) return 0;
    if (p == 2) return a;
    if (powmod(a, (p - 1) / 2, p) != 1) return std::nullopt;
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    // Tonelli-Shanks
    u64 q = p - 1;
    int s = v2_ll(q);
    q >>= s;
    u64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        u64 t2 = t;
        u64 i = 0;
        while (t2 != 1) {
            t2 = mulmod(t2, t2, p);
            ++i;
        }
        u64 b = c;
        for (u64 j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

std::optional<u64> sqrt_mod_pk(u64 a, u64 p, int k) {
    u64 pk = 1;
    for (int i = 0; i < k; ++i) pk *= p;
    a %= pk;
    if (a % p == 0) return std::nullopt;  // unit roots only
    auto r0 = sqrt_mod_p(a % p, p);
    if (!r0) return std::nullopt;
    u64 r = *r0;
    u64 mod = p;
    while (mod < pk) {
        // Hensel: r' = r - (r^2 - a) / (2r)
        u64 next = (pk / mod < mod) ? pk : mod * mod;
        u64 fr = (mulmod(r, r, next) + next - a % next) % next;
        i64 x, y;
        extgcd(static_cast<i64>(2 * r % next), static_cast<i64>(next), x, y);
        i64 inv = ((x % static_cast<i64>(next)) + static_cast<i64>(next)) % static_cast<i64>(next);
        r = (r + next - mulmod(fr, static_cast<u64>(inv), next)) % next;
        mod = next;
    }
    if (mulmod(r, r, pk) != a) throw internal_check_error("sqrt_mod_pk: lift failed");
    return r;
}

u64 sqrt_mod_2k(u64 a, int k) {
    if (a % 8 != 1) throw std::invalid_argument("sqrt_mod_2k: a must be 1 mod 8");
    if (k > 62) throw capacity_error("sqrt_mod_2k: k too large for u64");
    u64 mask = (k >= 64) ? ~0ULL : ((1ULL << k) - 1);
    u64 r = 1;
    // lift bit by bit: maintain r^2 = a mod 2^j
    for (int j = 3; j < k; ++j) {
        u64 mod = 1ULL << (j + 1);
        if (((r * r - a) & (mod - 1)) != 0) r += 1ULL << (j - 1);
    }
    r &= mask;
    if (((r * r - a) & mask) != 0) throw internal_check_error("sqrt_mod_2k failed");
    if ((r & 3) != 1) r = (~r + 1) & mask;  // normalize to 1 mod 4
    return r;
}

namespace {
// nonnegative residue mod 2^k, safe for negative cpp_int
cpp_int mod2k(const cpp_int& v, int k) {
    cpp_int m = cpp_int(1) << k;
    cpp_int r = v % m;
    if (r < 0) r += m;
    return r;
}
}  // namespace

cpp_int sqrt_mod_2k_big(const cpp_int& a, int k) {
    cpp_int am = mod2k(a, k);
    if (am % 8 != 1) throw std::invalid_argument("sqrt_mod_2k_big: a must be 1 mod 8");
    cpp_int r = 1;
    for (int j = 3; j < k; ++j) {
        if (mod2k(r * r - am, j + 1) != 0) r += cpp_int(1) << (j - 1);
    }
    r = mod2k(r, k);
    if (mod2k(r * r - am, k) != 0) throw internal_check_error("sqrt_mod_2k_big failed");
    if (r % 4 != 1) r = mod2k(-r, k);
    return r;
}

cpp_int inv_mod_2k_big(const cpp_int& a, int k) {
    if (a % 2 == 0) throw std::invalid_argument("inv_mod_2k_big: even argument");
    cpp_int x = 1;  // Newton: x -> x(2 - ax)
    for (int bits = 1; bits < k; bits *= 2) x = mod2k(x * (2 - mod2k(a * x, k)), k);
    if (mod2k(a * x, k) != 1) throw internal_check_error("inv_mod_2k_big failed");
    return x;
}

std::optional<i64> sqrt_mod_squarefree(i64 a, i64 m,
                                       const std::vector<std::pair<i64, int>>& mf) {
    // CRT of square roots mod each odd prime factor; m odd squarefree
    i64 r = 0, mod = 1;
    for (auto& [p, e] : mf) {
        if (e != 1 || p == 2) throw std::invalid_argument("sqrt_mod_squarefree: m must be odd squarefree");
        i64 ap = a % p;
        if (ap < 0) ap += p;
        auto rp = sqrt_mod_p(static_cast<u64>(ap), static_cast<u64>(p));
        if (!rp) return std::nullopt;
        // CRT combine
        i64 x, y;
        extgcd(mod, p, x, y);
        i64 diff = (static_cast<i64>(*rp) - r) % p;
        if (diff < 0) diff += p;
        i64 t = static_cast<i64>(mulmod(static_cast<u64>(diff), static_cast<u64>(((x % p) + p) % p),
                                        static_cast<u64>(p)));
        r = r + mod * t;
        mod *= p;
        r %= mod;
    }
    return r;
}

namespace {

// one Euclidean division step in Z[sqrt(2)]: q = round(a/b), r = a - qb
struct Zs2 {
    cpp_int x, y;  // x + y*sqrt(2)
    cpp_int norm() const { return x * x - 2 * y * y; }
};

Zs2 mul(const Zs2& a, const Zs2& b) {
    return {a.x * b.x + 2 * a.y * b.y, a.x * b.y + a.y * b.x};
}

cpp_int round_div(const cpp_int& a, const cpp_int& b) {
    cpp_int q = a / b, r = a % b;
    if (r * 2 >= abs(b)) q += (b > 0 ? 1 : -1);
    if (-r * 2 > abs(b)) q -= (b > 0 ? 1 : -1);
    return q;
}

Zs2 zs2_gcd(Zs2 a, Zs2 b) {
    while (b.norm() != 0) {
        // a/b = a * conj(b) / N(b)
        cpp_int n = b.norm();
        Zs2 prod = mul(a, {b.x, -b.y});
        Zs2 q{round_div(prod.x, n), round_div(prod.y, n)};
        Zs2 r{a.x - (q.x * b.x + 2 * q.y * b.y), a.y - (q.x * b.y + q.y * b.x)};
        a = b;
        b = r;
    }
    return a;
}

}  // namespace

Rep2GH rep_2g2_h2(i64 m) {
    if (m <= 0) throw std::invalid_argument("rep_2g2_h2: m must be positive");
    auto mf = factorize(m);
    for (auto& [p, e] : mf) {
        if (p == 2) continue;
        i64 r = p % 8;
        if (r != 1 && r != 7) throw no_representation_error("rep_2g2_h2: odd factor not +-1 mod 8");
    }
    i64 g0 = isqrt_ll((m + 1) / 2);
    while (2 * g0 * g0 < m) ++g0;
    i64 cap = g0 + 4 * isqrt_ll(m) + 64;
    for (i64 g = g0; g <= cap; ++g) {
        i64 h;
        if (is_square_ll(2 * g * g - m, h) && h >= 1 && gcd_ll(g, h) == 1) return {g, h, m};
    }
    // lattice fallback: gcd(m, s - sqrt(2)) in Z[sqrt(2)] with s^2 = 2 mod m
    i64 modd = m % 2 == 0 ? m / 2 : m;
    std::vector<std::pair<i64, int>> of;
    for (auto& [p, e] : mf)
        if (p != 2) of.push_back({p, e});
    auto s = sqrt_mod_squarefree(2, modd, of);
    if (!s) throw no_representation_error("rep_2g2_h2: 2 is not a square mod m");
    Zs2 gd = zs2_gcd({modd, 0}, {*s, -1});
    cpp_int n = gd.norm();
    // want norm -m (that is h^2 - 2g^2 = -m); adjust by the norm -1 unit 1+sqrt(2)
    Zs2 v = gd;
    if (m % 2 == 0) v = mul(v, {0, 1});  // multiply by sqrt(2): norm *= -2
    if (v.norm() == m) v = mul(v, {1, 1});
    if (v.norm() != -m) throw internal_check_error("rep_2g2_h2: gcd norm mismatch");
    // v = h + g*sqrt(2) with 2g^2 - h^2 = m; walk the unit orbit to minimal g
    v.x = abs(v.x);
    v.y = abs(v.y);
    for (;;) {
        // (h + g sqrt2) * (3 - 2 sqrt2) = (3h - 4g) + (3g - 2h) sqrt2
        cpp_int h2 = 3 * v.x - 4 * v.y, g2 = 3 * v.y - 2 * v.x;
        if (abs(g2) >= abs(v.y)) break;
        v.x = abs(h2);
        v.y = abs(g2);
    }
    i64 g = static_cast<i64>(v.y), h = static_cast<i64>(v.x);
    if (h < 1 || gcd_ll(g, h) != 1 || 2 * g * g - h * h != m)
        throw no_representation_error("rep_2g2_h2: no valid representation found");
    return {g, h, m};
}

RepUV rep_u2_2v2(i64 l) {
    i64 r8 = l % 8;
    if (!is_prime_u64(static_cast<u64>(l)) || (r8 != 1 && r8 != 7))
        throw std::invalid_argument("rep_u2_2v2: l must be a prime = +-1 mod 8");
    u64 s = *sqrt_mod_p(2, static_cast<u64>(l));
    Zs2 gd = zs2_gcd({l, 0}, {static_cast<i64>(s), -1});
    if (gd.norm() == -l) gd = mul(gd, {1, 1});  // unit of norm -1
    if (gd.norm() != l) throw internal_check_error("rep_u2_2v2: gcd norm mismatch");
    // walk to the positive solution of minimal u, then forward until
    // u = 1 mod 4 when that normalization is requested
    cpp_int u = abs(gd.x), v = abs(gd.y);
    for (;;) {
        cpp_int u2 = abs(3 * u - 4 * v), v2 = abs(3 * v - 2 * u);
        if (u2 >= u) break;
        u = u2;
        v = v2;
    }
    if (l % 8 == 1) {
        while (u % 4 != 1) {
            cpp_int u2 = 3 * u + 4 * v, v2 = 2 * u + 3 * v;
            u = u2;
            v = v2;
        }
    }
    return {static_cast<i64>(u), static_cast<i64>(v), l};
}

RepUV rep_uv_next(const RepUV& r) {
    // multiply u + v*sqrt(2) by the norm-one unit 3 + 2*sqrt(2)
    i64 u = 3 * r.u + 4 * r.v, v = 2 * r.u + 3 * r.v;
    if (u < 0 && v < 0) {
        u = -u;
        v = -v;
    }
    return {u, v, r.l};
}

}  // namespace tmod
