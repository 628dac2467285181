#include "tmod/localfield.hpp"

#include <map>
#include <memory>
#include <unordered_set>

namespace tmod {

namespace {

constexpr int kW = 20;  // working bits for the small residue arithmetic
constexpr i64 kMaskW = (1LL << kW) - 1;

i64 mod_w(i64 v) { return v & kMaskW; }

// nonnegative residue mod 2^k of a cpp_int
i64 low_bits(const cpp_int& v, int k) {
    cpp_int m = cpp_int(1) << k;
    cpp_int r = v % m;
    if (r < 0) r += m;
    return static_cast<i64>(r);
}

int v2_small(i64 v) {
    if (v == 0) return kW;  // "zero mod 2^W"
    return v2_ll(static_cast<u64>(v));
}

}  // namespace

int Q2Local::square_class_of(const cpp_int& x) {
    if (x == 0) throw std::invalid_argument("square_class_of(0)");
    int v = v2_big(x);
    i64 u = static_cast<i64>((x / (cpp_int(1) << v)) % 8);
    if (u < 0) u += 8;
    int odd_class;
    switch (u) {
        case 1: odd_class = 1; break;
        case 3: odd_class = -5; break;
        case 5: odd_class = 5; break;
        default: odd_class = -1; break;
    }
    if (v % 2 == 0) return odd_class;
    switch (odd_class) {
        case 1: return 2;
        case 5: return 10;
        case -1: return -2;
        default: return -10;
    }
}

const Q2Local& Q2Local::get(int d) {
    static std::map<int, std::unique_ptr<Q2Local>> cache;
    auto it = cache.find(d);
    if (it == cache.end()) {
        auto f = std::make_unique<Q2Local>();
        f->d = d;
        if (d == 1) {
            f->e = f->f = 1;
        } else if (d == 5) {
            f->e = 1;
            f->f = 2;
            f->B = 1;
            f->C = 1;  // w = (1+sqrt5)/2
            f->pi_ = {2, 0};
        } else {
            f->e = 2;
            f->f = 1;
            f->B = 0;
            f->C = d;  // w = sqrt(d)
            f->pi_ = (d % 2 == 0) ? std::pair<i64, i64>{0, 1} : std::pair<i64, i64>{1, 1};
        }
        if (d != 1) f->build();
        it = cache.emplace(d, std::move(f)).first;
    }
    return *it->second;
}

LocalElem2 Q2Local::mul(const LocalElem2& x, const LocalElem2& y) const {
    int prec = std::min(x.prec, y.prec);
    cpp_int mask = (cpp_int(1) << prec) - 1;
    cpp_int a = x.a * y.a + C * (x.b * y.b);
    cpp_int b = x.a * y.b + x.b * y.a + B * (x.b * y.b);
    a %= (mask + 1);
    b %= (mask + 1);
    if (a < 0) a += mask + 1;
    if (b < 0) b += mask + 1;
    return {a, b, prec};
}

LocalElem2 Q2Local::conj(const LocalElem2& x) const {
    // conj(a + bw) = a + b(B - w) = (a + Bb) - bw
    return {x.a + B * x.b, -x.b, x.prec};
}

cpp_int Q2Local::norm(const LocalElem2& x) const {
    return x.a * x.a + B * x.a * x.b - C * x.b * x.b;
}

Q2Local::Lat2 Q2Local::prime_power_lattice(int M) const {
    // start with O, multiply M times by the Z2-lattice of pi*O
    auto hnf2 = [](std::vector<std::pair<i64, i64>> vecs) -> Lat2 {
        // pivot on the y-coordinate of minimal 2-valuation
        int best = -1, bestv = kW + 1;
        for (size_t i = 0; i < vecs.size(); ++i) {
            int v = v2_small(mod_w(vecs[i].second));
            if (v < bestv) {
                bestv = v;
                best = static_cast<int>(i);
            }
        }
        Lat2 L;
        if (bestv >= kW) throw internal_check_error("hnf2: rank deficient");
        std::pair<i64, i64> piv = vecs[best];
        // normalize pivot: divide out the odd part of y
        i64 odd = mod_w(piv.second) >> bestv;
        i64 inv = static_cast<i64>(inv_mod_2k_big(cpp_int(odd), kW).convert_to<i64>());
        piv = {mod_w(piv.first * inv), mod_w(1LL << bestv)};
        L.k2 = bestv;
        int bestx = kW + 1;
        for (size_t i = 0; i < vecs.size(); ++i) {
            if (static_cast<int>(i) == best) continue;
            i64 t = mod_w(vecs[i].second) >> bestv;
            i64 x = mod_w(vecs[i].first - t * piv.first);
            bestx = std::min(bestx, v2_small(x));
        }
        if (bestx >= kW) throw internal_check_error("hnf2: rank deficient in x");
        L.k1 = bestx;
        L.r = piv.first & ((1LL << bestx) - 1);
        return L;
    };

    std::vector<std::pair<i64, i64>> basis = {{1, 0}, {0, 1}};  // O
    auto ring_mul = [this](std::pair<i64, i64> u, std::pair<i64, i64> v) -> std::pair<i64, i64> {
        return {mod_w(u.first * v.first + C * u.second * v.second),
                mod_w(u.first * v.second + u.second * v.first + B * u.second * v.second)};
    };
    Lat2 L{0, 0, 0};
    for (int i = 0; i < M; ++i) {
        std::vector<std::pair<i64, i64>> prods;
        std::pair<i64, i64> bas1 = {mod_w(1LL << L.k1), 0}, bas2 = {L.r, mod_w(1LL << L.k2)};
        for (auto& v : {bas1, bas2}) {
            prods.push_back(ring_mul(v, pi_));
            prods.push_back(ring_mul(ring_mul(v, pi_), {0, 1}));  // v*pi*w
        }
        L = hnf2(prods);
    }
    if (L.k1 + L.k2 != f * M) throw internal_check_error("prime_power_lattice: wrong index");
    return L;
}

std::pair<i64, i64> Q2Local::canon(i64 a, i64 b, const Lat2& L) const {
    a = mod_w(a);
    b = mod_w(b);
    i64 t = b >> L.k2;
    b &= (1LL << L.k2) - 1;
    a = (a - t * L.r) & ((L.k1 >= kW) ? kMaskW : ((1LL << L.k1) - 1));
    return {a, b};
}

bool Q2Local::in_lattice(i64 a, i64 b, const Lat2& L) const {
    auto c = canon(a, b, L);
    return c.first == 0 && c.second == 0;
}

void Q2Local::build() {
    sq_lat_ = prime_power_lattice(2 * e + 1);
    auto ring_mul = [this](std::pair<i64, i64> u, std::pair<i64, i64> v) -> std::pair<i64, i64> {
        return {mod_w(u.first * v.first + C * u.second * v.second),
                mod_w(u.first * v.second + u.second * v.first + B * u.second * v.second)};
    };
    Lat2 P = prime_power_lattice(1);
    if (e == 2) {
        auto pi2 = ring_mul(pi_, pi_);
        if (pi2.first % 2 != 0 || pi2.second % 2 != 0)
            throw internal_check_error("Q2Local: pi^2 not divisible by 2");
        pi_half_sq_ = {pi2.first / 2, pi2.second / 2};
    }

    auto key = [](std::pair<i64, i64> c) { return (static_cast<u64>(c.first) << 32) | static_cast<u64>(c.second); };

    // unit residues mod p^(2e+1) and the set of their squares
    std::vector<std::pair<i64, i64>> units;
    std::unordered_set<u64> sq;
    for (i64 i = 0; i < (1LL << sq_lat_.k1); ++i) {
        for (i64 j = 0; j < (1LL << sq_lat_.k2); ++j) {
            if (in_lattice(i, j, P)) continue;
            units.push_back({i, j});
            auto s = ring_mul({i, j}, {i, j});
            sq.insert(key(canon(s.first, s.second, sq_lat_)));
        }
    }

    // square classes: cosets of the square subgroup; u ~ rep iff u*rep is a square
    std::vector<std::pair<int, std::pair<i64, i64>>> classes = {{0, {1, 0}}};
    for (auto& u : units) {
        bool found = false;
        for (auto& [bits, rep] : classes) {
            auto pr = ring_mul(u, rep);
            if (sq.count(key(canon(pr.first, pr.second, sq_lat_)))) {
                found = true;
                break;
            }
        }
        if (!found) {
            size_t n = classes.size();
            if (n >= 8) throw internal_check_error("Q2Local: more than 8 square classes");
            for (size_t c = 0; c < n; ++c) {
                auto rep = ring_mul(classes[c].second, u);
                classes.push_back({classes[c].first | static_cast<int>(n), rep});
            }
        }
    }
    if (classes.size() != 8) throw internal_check_error("Q2Local: expected 8 unit square classes");
    for (auto& [bits, rep] : classes) class_rep_[bits] = rep;

    unit_class_.clear();
    for (auto& u : units) {
        int ubits = -1;
        for (auto& [bits, rep] : classes) {
            auto pr = ring_mul(u, rep);
            if (sq.count(key(canon(pr.first, pr.second, sq_lat_)))) {
                ubits = bits;
                break;
            }
        }
        if (ubits < 0) throw internal_check_error("Q2Local: unclassified unit");
        unit_class_[key(canon(u.first, u.second, sq_lat_))] = static_cast<uint8_t>(ubits);
    }

    // Gram matrix of the Hilbert pairing on the basis (pi, g1, g2, g4)
    std::pair<i64, i64> basis[4] = {pi_, class_rep_[1], class_rep_[2], class_rep_[4]};
    int val[4] = {1, 0, 0, 0};
    for (int i = 0; i < 4; ++i) {
        for (int j = i; j < 4; ++j) {
            int s = isotropic(basis[i], val[i], basis[j], val[j]) ? 0 : 1;
            gram_[i][j] = gram_[j][i] = s;
        }
    }
    // the pairing must be nondegenerate on the 4-dimensional square-class space
    int rows[4];
    for (int i = 0; i < 4; ++i) {
        rows[i] = 0;
        for (int j = 0; j < 4; ++j) rows[i] |= gram_[i][j] << j;
    }
    int rank = 0;
    for (int c = 0; c < 4; ++c) {
        int piv = -1;
        for (int r = rank; r < 4; ++r)
            if (rows[r] & (1 << c)) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[piv], rows[rank]);
        for (int r = 0; r < 4; ++r)
            if (r != rank && (rows[r] & (1 << c))) rows[r] ^= rows[rank];
        ++rank;
    }
    if (rank != 4) throw internal_check_error("Q2Local: degenerate Hilbert pairing");
}

bool Q2Local::isotropic(std::pair<i64, i64> x, int vx, std::pair<i64, i64> y, int vy) const {
    int M = 2 * e + 1 + 2 * std::max(vx, vy);
    Lat2 L = prime_power_lattice(M);
    Lat2 P = prime_power_lattice(1);
    auto ring_mul = [this](std::pair<i64, i64> u, std::pair<i64, i64> v) -> std::pair<i64, i64> {
        return {mod_w(u.first * v.first + C * u.second * v.second),
                mod_w(u.first * v.second + u.second * v.first + B * u.second * v.second)};
    };
    auto key = [](std::pair<i64, i64> c) { return (static_cast<u64>(c.first) << 32) | static_cast<u64>(c.second); };

    i64 n1 = 1LL << L.k1, n2 = 1LL << L.k2;
    std::vector<std::pair<i64, i64>> res;
    std::vector<char> inp;
    std::vector<std::pair<i64, i64>> sqr;
    res.reserve(static_cast<size_t>(n1) * n2);
    for (i64 i = 0; i < n1; ++i) {
        for (i64 j = 0; j < n2; ++j) {
            res.push_back({i, j});
            inp.push_back(in_lattice(i, j, P) ? 1 : 0);
            sqr.push_back(ring_mul({i, j}, {i, j}));
        }
    }
    std::unordered_set<u64> squares;
    for (auto& s : sqr) squares.insert(key(canon(s.first, s.second, L)));

    for (size_t ia = 0; ia < res.size(); ++ia) {
        auto xa2 = ring_mul(x, sqr[ia]);
        for (size_t ib = 0; ib < res.size(); ++ib) {
            if (inp[ia] && inp[ib]) continue;  // primitive pairs only
            auto yb2 = ring_mul(y, sqr[ib]);
            auto w = canon(xa2.first + yb2.first, xa2.second + yb2.second, L);
            if (squares.count(key(w))) return true;
        }
    }
    return false;
}

int Q2Local::valuation(const LocalElem2& x) const {
    if (is_q2()) {
        if (x.a == 0) throw precision_error("valuation: zero to working precision");
        int v = v2_big(x.a);
        if (v > x.prec - 4) throw precision_error("valuation: insufficient precision");
        return v;
    }
    cpp_int N = norm(x);
    if (N == 0) throw precision_error("valuation: zero to working precision");
    int v2N = v2_big(N);
    if (v2N > x.prec - 8) throw precision_error("valuation: insufficient precision");
    if ((e * v2N) % 2 != 0) throw internal_check_error("valuation: parity");
    return e * v2N / 2;
}

std::pair<i64, i64> Q2Local::unit_part_small(const LocalElem2& x, int& val) const {
    cpp_int N = norm(x);
    if (N == 0) throw precision_error("Q2Local: element is zero to working precision");
    int v2N = v2_big(N);
    if (v2N > x.prec - 8) throw precision_error("Q2Local: insufficient precision for valuation");
    if ((e * v2N) % 2 != 0) throw internal_check_error("Q2Local: odd normalized valuation parity");
    val = e * v2N / 2;
    // strip the common power of 2, then at most one division by pi
    cpp_int a = x.a, b = x.b;
    int j = 0;
    while (j < x.prec && a % 2 == 0 && b % 2 == 0 && !(a == 0 && b == 0)) {
        a /= 2;
        b /= 2;
        ++j;
    }
    int rem = val - e * j;
    if (rem < 0 || rem > 1) throw internal_check_error("Q2Local: primitive part valuation out of range");
    if (rem == 1) {
        // divide by pi: multiply by conj(pi), divide by N(pi) = 2 * odd
        LocalElem2 t{a, b, x.prec - j};
        LocalElem2 cp = conj(LocalElem2{cpp_int(pi_.first), cpp_int(pi_.second), t.prec});
        t = mul(t, cp);
        cpp_int npi = norm(LocalElem2{cpp_int(pi_.first), cpp_int(pi_.second), 64});
        int v = v2_big(npi);
        cpp_int odd = npi / (cpp_int(1) << v);
        if (v != 1) throw internal_check_error("Q2Local: uniformizer norm valuation != 1");
        if (t.a % 2 != 0 || t.b % 2 != 0) throw internal_check_error("Q2Local: pi division not exact");
        int pr = t.prec - 1;
        cpp_int inv = inv_mod_2k_big(odd, pr);
        a = (t.a / 2) * inv;
        b = (t.b / 2) * inv;
    }
    std::pair<i64, i64> u{low_bits(a, kW), low_bits(b, kW)};
    // in a ramified field, the stripped 2^j differs from pi^(2j) by the
    // unit pi^2/2; only the parity of j moves the square class
    if (e == 2 && (j & 1)) {
        auto ring_mul = [this](std::pair<i64, i64> s, std::pair<i64, i64> t2) -> std::pair<i64, i64> {
            return {mod_w(s.first * t2.first + C * s.second * t2.second),
                    mod_w(s.first * t2.second + s.second * t2.first + B * s.second * t2.second)};
        };
        u = ring_mul(u, pi_half_sq_);
    }
    return u;
}

int Q2Local::symbol_via_table(const LocalElem2& x, const LocalElem2& y) const {
    if (is_q2()) return symbol(x, y);
    int vx, vy;
    auto ux = unit_part_small(x, vx);
    auto uy = unit_part_small(y, vy);
    auto lookup = [&](std::pair<i64, i64> u) -> int {
        auto c = canon(u.first, u.second, sq_lat_);
        auto it = unit_class_.find((static_cast<u64>(c.first) << 32) | static_cast<u64>(c.second));
        if (it == unit_class_.end()) throw internal_check_error("Q2Local: unit residue not classified");
        return it->second;
    };
    int cx[4] = {vx & 1, 0, 0, 0}, cy[4] = {vy & 1, 0, 0, 0};
    int bx = lookup(ux), by = lookup(uy);
    for (int i = 0; i < 3; ++i) {
        cx[i + 1] = (bx >> i) & 1;
        cy[i + 1] = (by >> i) & 1;
    }
    int s = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s ^= (cx[i] & cy[j]) & gram_[i][j];
    return s;
}

namespace {

// additive Hilbert symbol over Q2 from 2-adically approximated integers
int q2_symbol_from_approx(const cpp_int& a, int preca, const cpp_int& b, int precb) {
    if (a == 0 || b == 0) throw precision_error("q2 symbol: zero argument at working precision");
    int va = v2_big(a), vb = v2_big(b);
    if (va > preca - 4 || vb > precb - 4) throw precision_error("q2 symbol: insufficient precision");
    auto unit8 = [](const cpp_int& v, int val) {
        i64 u = static_cast<i64>((v / (cpp_int(1) << val)) % 8);
        return u < 0 ? u + 8 : u;
    };
    i64 u = unit8(a, va), v = unit8(b, vb);
    auto eps2 = [](i64 x) { return (x % 4 == 3) ? 1 : 0; };
    auto omega2 = [](i64 x) { return (x == 3 || x == 5) ? 1 : 0; };
    return (eps2(u) * eps2(v) + va * omega2(v) + vb * omega2(u)) & 1;
}

}  // namespace

int Q2Local::symbol(const LocalElem2& x, const LocalElem2& y) const {
    if (is_q2()) {
        if (!x.rational() || !y.rational()) throw std::invalid_argument("Q2 symbol: nonrational element");
        return q2_symbol_from_approx(x.a, x.prec, y.a, y.prec);
    }
    if (x.rational()) return q2_symbol_from_approx(x.a, x.prec, norm(y), y.prec);
    if (y.rational()) return q2_symbol_from_approx(norm(x), x.prec, y.a, y.prec);
    return symbol_via_table(x, y);
}

int Q2Local::symbol_brute_force(const LocalElem2& x, const LocalElem2& y, int guard) const {
    if (is_q2()) {
        // z^2 = x a^2 + y b^2 search in Z2 at modulus 2^M
        int vx = v2_big(x.a), vy = v2_big(y.a);
        int M = 3 + 2 * std::max(vx, vy) + guard;
        i64 mod = 1LL << M;
        i64 xa = low_bits(x.a, M), ya = low_bits(y.a, M);
        std::unordered_set<i64> squares;
        for (i64 z = 0; z < mod; ++z) squares.insert((z * z) & (mod - 1));
        for (i64 a = 0; a < mod; ++a) {
            for (i64 b = 0; b < mod; ++b) {
                if (a % 2 == 0 && b % 2 == 0) continue;
                if (squares.count((xa * a % mod * a + ya * b % mod * b) & (mod - 1))) return 0;
            }
        }
        return 1;
    }
    int vx, vy;
    auto ux = unit_part_small(x, vx);
    auto uy = unit_part_small(y, vy);
    // reattach one uniformizer when the valuation is odd
    auto ring_mul = [this](std::pair<i64, i64> u, std::pair<i64, i64> v) -> std::pair<i64, i64> {
        return {mod_w(u.first * v.first + C * u.second * v.second),
                mod_w(u.first * v.second + u.second * v.first + B * u.second * v.second)};
    };
    std::pair<i64, i64> xs = ux, ys = uy;
    int vxs = 0, vys = 0;
    if (vx & 1) {
        xs = ring_mul(xs, pi_);
        vxs = 1;
    }
    if (vy & 1) {
        ys = ring_mul(ys, pi_);
        vys = 1;
    }
    int M = 2 * e + 1 + 2 * std::max(vxs, vys) + guard * e;
    Lat2 L = prime_power_lattice(M);
    Lat2 P = prime_power_lattice(1);
    auto key = [](std::pair<i64, i64> c) { return (static_cast<u64>(c.first) << 32) | static_cast<u64>(c.second); };
    i64 n1 = 1LL << L.k1, n2 = 1LL << L.k2;
    std::vector<std::pair<i64, i64>> res;
    std::vector<char> inp;
    std::vector<std::pair<i64, i64>> sqr;
    for (i64 i = 0; i < n1; ++i)
        for (i64 j = 0; j < n2; ++j) {
            res.push_back({i, j});
            inp.push_back(in_lattice(i, j, P) ? 1 : 0);
            sqr.push_back(ring_mul({i, j}, {i, j}));
        }
    std::unordered_set<u64> squares;
    for (auto& s : sqr) squares.insert(key(canon(s.first, s.second, L)));
    for (size_t ia = 0; ia < res.size(); ++ia) {
        auto xa2 = ring_mul(xs, sqr[ia]);
        for (size_t ib = 0; ib < res.size(); ++ib) {
            if (inp[ia] && inp[ib]) continue;
            auto yb2 = ring_mul(ys, sqr[ib]);
            auto w = canon(xa2.first + yb2.first, xa2.second + yb2.second, L);
            if (squares.count(key(w))) return 0;
        }
    }
    return 1;
}

const Q2Local& completion_at_2(const QuadField& F) {
    return Q2Local::get(Q2Local::square_class_of(cpp_int(F.m)));
}

cpp_int sqrt2adic_of_ratio(i64 m, int d, int prec) {
    cpp_int a = m, b = d;
    while (a % 2 == 0 && b % 2 == 0) {
        a /= 2;
        b /= 2;
    }
    if (a % 2 == 0 || b % 2 == 0) throw std::invalid_argument("sqrt2adic_of_ratio: mismatched classes");
    cpp_int ratio = a * inv_mod_2k_big(b, prec + 3);
    return sqrt_mod_2k_big(ratio, prec);
}

LocalElem2 embed_at_2(const QuadField& F, const QElem& x, int prec, bool conj) {
    int d = Q2Local::square_class_of(cpp_int(F.m));
    int work = prec + 8;
    cpp_int s = sqrt2adic_of_ratio(F.m, d, work);
    if (conj) s = -s;
    // sqrt(m) = s * sqrt(d); express sqrt(d) in the (1, w) basis
    cpp_int pa, pb;  // x*den = a + b*sqrt(m) -> pa + pb*w
    if (d == 1) {
        pa = x.a + x.b * s;
        pb = 0;
    } else if (d == 5) {
        pa = x.a - x.b * s;  // sqrt(5) = 2w - 1
        pb = 2 * x.b * s;
    } else {
        pa = x.a;
        pb = x.b * s;
    }
    // divide by den = 2^j * odd
    cpp_int den = x.den;
    int j = 0;
    while (den % 2 == 0) {
        den /= 2;
        ++j;
    }
    cpp_int inv = inv_mod_2k_big(den, work);
    pa *= inv;
    pb *= inv;
    cpp_int mod = cpp_int(1) << work;
    pa %= mod;
    pb %= mod;
    if (pa < 0) pa += mod;
    if (pb < 0) pb += mod;
    for (int i = 0; i < j; ++i) {
        if (pa % 2 != 0 || pb % 2 != 0)
            throw std::invalid_argument("embed_at_2: element not integral at 2");
        pa /= 2;
        pb /= 2;
    }
    int out_prec = work - j;
    cpp_int outmod = cpp_int(1) << out_prec;
    return {pa % outmod, pb % outmod, out_prec};
}

}  // namespace tmod
