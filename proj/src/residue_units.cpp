#include <algorithm>

#include "tmod/rayclass.hpp"

namespace tmod {

namespace {

u64 pow_u64(i64 p, int n) {
    u64 r = 1;
    for (int i = 0; i < n; ++i) {
        if (r > (1ULL << 62) / static_cast<u64>(p)) throw capacity_error("residue ring modulus overflow");
        r *= static_cast<u64>(p);
    }
    return r;
}

int vp_u64(u64 x, i64 p) {
    if (x == 0) return 1 << 20;
    int v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

u64 inv_mod_u64(u64 a, u64 m) {
    i64 x, y;
    i64 g = extgcd(static_cast<i64>(a % m), static_cast<i64>(m), x, y);
    if (g != 1) throw internal_check_error("inv_mod_u64: not a unit");
    i64 r = x % static_cast<i64>(m);
    if (r < 0) r += m;
    return static_cast<u64>(r);
}

// dlog in the cyclic group <g> of order p^k * q0 inside (Z/p^n)^x style
// groups: Pohlig-Hellman with a baby-step table per prime factor
u64 dlog_cyclic(u64 x, u64 g, u64 order, u64 mod) {
    u64 result = 0, result_mod = 1;
    for (auto& [q, e] : factorize(static_cast<i64>(order))) {
        u64 qe = 1;
        for (int i = 0; i < e; ++i) qe *= static_cast<u64>(q);
        // solve in the subgroup of order q^e
        u64 gq = powmod(g, order / qe, mod);
        u64 xq = powmod(x, order / qe, mod);
        u64 digit_base = powmod(gq, qe / q, mod);  // order q
        u64 cur = 0, qpow = 1;
        for (int i = 0; i < e; ++i) {
            u64 target = powmod(mulmod(xq, inv_mod_u64(powmod(gq, cur, mod), mod), mod),
                                qe / (qpow * static_cast<u64>(q)), mod);
            u64 d = 0, t = 1;
            while (t != target) {
                t = mulmod(t, digit_base, mod);
                ++d;
                if (d > static_cast<u64>(q)) throw internal_check_error("dlog_cyclic: digit not found");
            }
            cur += d * qpow;
            qpow *= static_cast<u64>(q);
        }
        // CRT accumulate
        u64 m1 = result_mod, m2 = qe;
        i64 xx, yy;
        extgcd(static_cast<i64>(m1 % m2), static_cast<i64>(m2), xx, yy);
        u64 inv = static_cast<u64>(((xx % static_cast<i64>(m2)) + static_cast<i64>(m2)) % static_cast<i64>(m2));
        u64 diff = (cur + m2 - result % m2) % m2;
        result = result + m1 * mulmod(diff, inv, m2);
        result_mod *= m2;
    }
    return result;
}

}  // namespace

std::pair<u64, u64> ResidueUnitGroup::mul(std::pair<u64, u64> x, std::pair<u64, u64> y) const {
    u64 a = (mulmod(x.first, y.first, pw_) +
             mulmod(static_cast<u64>(((C % static_cast<i64>(pw_)) + static_cast<i64>(pw_)) % static_cast<i64>(pw_)),
                    mulmod(x.second, y.second, pw_), pw_)) %
            pw_;
    u64 b = (mulmod(x.first, y.second, pw_) + mulmod(x.second, y.first, pw_) +
             mulmod(static_cast<u64>(((B % static_cast<i64>(pw_)) + static_cast<i64>(pw_)) % static_cast<i64>(pw_)),
                    mulmod(x.second, y.second, pw_), pw_)) %
            pw_;
    return {a, b};
}

std::pair<u64, u64> ResidueUnitGroup::pow(std::pair<u64, u64> x, cpp_int e) const {
    if (e < 0) return pow(inv(x), -e);
    std::pair<u64, u64> acc{1, 0}, base = x;
    while (e > 0) {
        if ((e & 1) != 0) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

std::pair<u64, u64> ResidueUnitGroup::inv(std::pair<u64, u64> x) const {
    // x^-1 = conj(x) / N(x)
    u64 Bm = static_cast<u64>(((B % static_cast<i64>(pw_)) + static_cast<i64>(pw_)) % static_cast<i64>(pw_));
    std::pair<u64, u64> cj{(x.first + mulmod(Bm, x.second, pw_)) % pw_, (pw_ - x.second) % pw_};
    auto prod = mul(x, cj);
    if (prod.second != 0) throw internal_check_error("inv: conjugate product not rational");
    u64 ninv = inv_mod_u64(prod.first, pw_);
    return {mulmod(cj.first, ninv, pw_), mulmod(cj.second, ninv, pw_)};
}

bool ResidueUnitGroup::is_unit(std::pair<u64, u64> x) const {
    // N(x) must be a unit mod p
    u64 pm = static_cast<u64>(p);
    u64 a = x.first % pm, b = x.second % pm;
    u64 Bm = static_cast<u64>(((B % p) + p) % p), Cm = static_cast<u64>(((C % p) + p) % p);
    u64 N = (mulmod(a, a, pm) + mulmod(Bm, mulmod(a, b, pm), pm) +
             mulmod((pm - Cm) % pm, mulmod(b, b, pm), pm)) %
            pm;
    return N != 0;
}

std::pair<u64, u64> ResidueUnitGroup::crt(u64 s, u64 t) const {
    // element with projections (s, t) under w -> root, w -> B - root
    u64 denom = (2 * root_ % pn + pn - static_cast<u64>(((B % static_cast<i64>(pn)) + static_cast<i64>(pn)) % static_cast<i64>(pn))) % pn;
    u64 dinv = inv_mod_u64(denom, pn);
    u64 b = mulmod((s + pn - t % pn) % pn, dinv, pn);
    u64 a = (s + pn - mulmod(b, root_, pn)) % pn;
    return {a, b};
}

std::pair<u64, u64> ResidueUnitGroup::proj(std::pair<u64, u64> x) const {
    u64 s = (x.first + mulmod(x.second, root_, pn)) % pn;
    u64 Bm = static_cast<u64>(((B % static_cast<i64>(pn)) + static_cast<i64>(pn)) % static_cast<i64>(pn));
    u64 t = (x.first + mulmod(x.second, (Bm + pn - root_) % pn, pn)) % pn;
    return {s, t};
}

ResidueUnitGroup ResidueUnitGroup::make(const QuadField& F, i64 p, int n) {
    ResidueUnitGroup G;
    G.p = p;
    G.n = n;
    auto [B, C] = ring_generator_poly(F);
    G.B = B;
    G.C = C;
    G.pn = pow_u64(p, n);

    bool ramified = (F.D % p == 0);
    bool split;
    if (p == 2)
        split = (F.two == Split2::split);
    else
        split = !ramified && jacobi(((F.D % p) + p) % p, p) == 1;
    G.split = split;
    G.e_ = ramified ? 2 : 1;

    if (split) {
        G.pw_ = G.pn;
        // Hensel root of x^2 - Bx - C
        u64 r = 0;
        while (r < static_cast<u64>(p)) {
            if ((static_cast<i64>(r) * static_cast<i64>(r) - B * static_cast<i64>(r) - C) % p == 0) break;
            ++r;
        }
        if (r >= static_cast<u64>(p)) throw internal_check_error("ResidueUnitGroup: no split root");
        u64 mod = p;
        while (mod < G.pn) {
            u64 next = (G.pn / mod < mod) ? G.pn : mod * mod;
            u64 fr = (mulmod(r, r, next) + 2 * next - (mulmod(static_cast<u64>(((B % static_cast<i64>(next)) + static_cast<i64>(next)) % static_cast<i64>(next)), r, next) + static_cast<u64>(((C % static_cast<i64>(next)) + static_cast<i64>(next)) % static_cast<i64>(next))) % next) % next;
            u64 fp = (2 * r % next + next - static_cast<u64>(((B % static_cast<i64>(next)) + static_cast<i64>(next)) % static_cast<i64>(next))) % next;
            r = (r + next - mulmod(fr, inv_mod_u64(fp, next), next)) % next;
            mod = next;
        }
        G.root_ = r;
        // component generators of (Z/p^n)^x
        auto component_gens = [&](std::vector<u64>& out, std::vector<cpp_int>& orders) {
            if (p == 2) {
                if (n >= 2) {
                    out.push_back(G.pn - 1);
                    orders.push_back(2);
                }
                if (n >= 3) {
                    out.push_back(5);
                    orders.push_back(cpp_int(1) << (n - 2));
                }
            } else {
                // primitive root mod p, adjusted to stay primitive mod p^2
                u64 g = 2;
                auto fac = factorize(p - 1);
                for (;; ++g) {
                    bool ok = true;
                    for (auto& [q, e] : fac)
                        if (powmod(g, static_cast<u64>((p - 1) / q), static_cast<u64>(p)) == 1) ok = false;
                    if (ok) break;
                }
                if (n >= 2 && powmod(g, static_cast<u64>(p - 1), static_cast<u64>(p) * p) == 1) g += p;
                cpp_int ord = p - 1;
                for (int i = 1; i < n; ++i) ord *= p;
                out.push_back(g % G.pn);
                orders.push_back(ord);
            }
        };
        std::vector<u64> cg;
        std::vector<cpp_int> cord;
        component_gens(cg, cord);
        for (size_t i = 0; i < cg.size(); ++i) {
            G.comp_gens_[0].push_back(cg[i]);
            G.gens.push_back(G.crt(cg[i], 1));
        }
        for (size_t i = 0; i < cg.size(); ++i) {
            G.comp_gens_[1].push_back(cg[i]);
            G.gens.push_back(G.crt(1, cg[i]));
        }
        size_t k = G.gens.size();
        for (size_t i = 0; i < k; ++i) {
            std::vector<cpp_int> row(k, 0);
            row[i] = cord[i % cord.size()];
            G.relations.push_back(row);
        }
        G.order = 1;
        for (size_t i = 0; i < k; ++i) G.order *= cord[i % cord.size()];
        return G;
    }

    // tiny moduli: brute-force the whole unit group
    if ((p == 2 && n <= 2) || (p != 2 && n == 1)) {
        G.pw_ = G.pn;
        std::vector<std::pair<u64, u64>> elems;
        for (u64 i = 0; i < G.pn; ++i)
            for (u64 j = 0; j < G.pn; ++j)
                if (G.is_unit({i, j})) elems.push_back({i, j});
        G.order = elems.size();
        G.n_head_ = -1;  // marks the brute path
        std::unordered_map<u64, size_t> seen;
        auto key = [](std::pair<u64, u64> x) { return (x.first << 32) | x.second; };
        G.head_coset_.push_back({1, 0});
        G.head_coset_exps_.push_back({});
        seen[key({1, 0})] = 0;
        while (G.head_coset_.size() < elems.size()) {
            i64 best_ord = 0;
            std::pair<u64, u64> best{1, 0};
            for (auto& x : elems) {
                if (seen.count(key(x))) continue;
                i64 o = 1;
                auto y = x;
                while (!seen.count(key(y))) {
                    y = G.mul(y, x);
                    ++o;
                }
                if (o > best_ord) {
                    best_ord = o;
                    best = x;
                }
            }
            if (best_ord == 0) throw internal_check_error("brute unit group: stalled");
            int gi = static_cast<int>(G.head_gens_.size());
            G.head_gens_.push_back(best);
            G.head_orders_.push_back(best_ord);
            auto old = G.head_coset_;
            auto olde = G.head_coset_exps_;
            auto xp = best;
            for (i64 j2 = 1; j2 < best_ord; ++j2) {
                for (size_t ei = 0; ei < old.size(); ++ei) {
                    auto z = G.mul(old[ei], xp);
                    if (!seen.count(key(z))) {
                        seen[key(z)] = G.head_coset_.size();
                        G.head_coset_.push_back(z);
                        auto ex = olde[ei];
                        ex.resize(gi + 1, 0);
                        ex[gi] = static_cast<int>(j2);
                        G.head_coset_exps_.push_back(ex);
                    }
                }
                xp = G.mul(xp, best);
            }
        }
        for (auto& e2 : G.head_coset_exps_) e2.resize(G.head_gens_.size(), 0);
        G.gens = G.head_gens_;
        size_t k = G.gens.size();
        for (size_t i = 0; i < k; ++i) {
            // gens[i]^order = product of earlier generators
            auto w = G.pow(G.gens[i], G.head_orders_[i]);
            auto it = seen.find(key(w));
            if (it == seen.end()) throw internal_check_error("brute unit group: power escaped");
            std::vector<cpp_int> row(k, 0);
            row[i] = G.head_orders_[i];
            for (size_t j = 0; j < k; ++j) row[j] -= G.head_coset_exps_[it->second][j];
            row[i] += G.head_coset_exps_[it->second][i];
            if (G.head_coset_exps_[it->second][i] != 0)
                throw internal_check_error("brute unit group: self-referential relation");
            G.relations.push_back(row);
        }
        AbGroup chk = cokernel_structure(G.relations, static_cast<int>(k));
        if (chk.order() != G.order) throw internal_check_error("brute unit group: relation order mismatch");
        return G;
    }

    // nonsplit: head (units mod frak_p^c) + tail (1-units via log);
    // c is the least level past the convergence bound e/(p-1)
    G.c_ = G.e_ / static_cast<int>(p - 1) + 1;
    G.slack_ = 0;
    for (i64 i = 1; i <= 4 * n + 8; i *= p) G.slack_ += 1;
    G.pw_ = pow_u64(p, n + G.slack_);
    if (ramified) {
        i64 mm = ((F.m % 4) + 4) % 4;
        if (p == 2) {
            G.pi_ = (mm == 2 || F.m % 2 == 0) ? std::pair<u64, u64>{0, 1} : std::pair<u64, u64>{1, 1};
        } else {
            // sqrt(m) in the (1, w) basis
            G.pi_ = (mm == 1) ? std::pair<u64, u64>{G.pw_ - 1, 2} : std::pair<u64, u64>{0, 1};
        }
    }

    // lattice of frak_p^c as a Z_p-module mod p^n, basis (p^k1, 0), (r, p^k2)
    {
        std::vector<std::pair<u64, u64>> vecs{{1, 0}, {0, 1}};
        int steps = ramified ? G.c_ : 0;  // inert: frak_p^c = p^c O
        if (!ramified) {
            G.k1_ = G.k2_ = (p == 2) ? G.c_ : G.c_;
            G.lat_r_ = 0;
        } else {
            for (int s = 0; s < steps; ++s) {
                std::vector<std::pair<u64, u64>> prods;
                std::pair<u64, u64> b1{pow_u64(p, G.k1_), 0}, b2{G.lat_r_, pow_u64(p, G.k2_)};
                if (s == 0) {
                    b1 = {1, 0};
                    b2 = {0, 1};
                }
                for (auto& v : {b1, b2}) {
                    prods.push_back(G.mul(v, G.pi_));
                    prods.push_back(G.mul(G.mul(v, G.pi_), {0, 1}));
                }
                // p-adic HNF of the generated lattice
                int bestv = 1 << 20, besti = -1;
                for (size_t i = 0; i < prods.size(); ++i) {
                    int v = vp_u64(prods[i].second % G.pn, p);
                    if (v < bestv) {
                        bestv = v;
                        besti = static_cast<int>(i);
                    }
                }
                if (besti < 0 || bestv >= n) throw internal_check_error("frak lattice: rank deficient");
                auto piv = prods[besti];
                u64 oddpart = (piv.second % G.pn) / pow_u64(p, bestv);
                u64 oinv = inv_mod_u64(oddpart, G.pn);
                piv = {mulmod(piv.first % G.pn, oinv, G.pn), pow_u64(p, bestv)};
                int bestx = 1 << 20;
                for (size_t i = 0; i < prods.size(); ++i) {
                    if (static_cast<int>(i) == besti) continue;
                    u64 t = (prods[i].second % G.pn) / pow_u64(p, bestv);
                    u64 xr = (prods[i].first % G.pn + G.pn - mulmod(t % G.pn, piv.first, G.pn)) % G.pn;
                    bestx = std::min(bestx, vp_u64(xr, p));
                }
                if (bestx >= n + 1) throw internal_check_error("frak lattice: x rank deficient");
                G.k1_ = bestx;
                G.k2_ = bestv;
                G.lat_r_ = piv.first % pow_u64(p, bestx);
            }
        }
    }

    // tail generators 1 + v_i
    u64 pk1 = pow_u64(p, G.k1_), pk2 = pow_u64(p, G.k2_);
    std::vector<std::pair<u64, u64>> tail_gens{{(1 + pk1) % G.pw_, 0}, {(1 + G.lat_r_) % G.pw_, pk2}};
    G.n_tail_ = 2;

    // head: coset representatives of U_c inside the units, mod frak_p^c
    // enumerate residues i + j w with i < p^k1, j < p^k2 scaled... the head
    // lives mod frak_p^c whose residues are i in [0, p^k1), j in [0, p^k2)
    auto canon_head = [&](std::pair<u64, u64> x) -> std::pair<u64, u64> {
        u64 a = x.first % G.pn, b = x.second % G.pn;
        u64 t = b / pk2;
        b %= pk2;
        a = (a + G.pn - mulmod(t % G.pn, G.lat_r_, G.pn)) % G.pn;
        a %= pk1;
        return {a, b};
    };
    std::vector<std::pair<u64, u64>> head_elems;
    for (u64 i = 0; i < pk1; ++i)
        for (u64 j = 0; j < pk2; ++j)
            if (G.is_unit({i, j})) head_elems.push_back({i, j});
    // brute-force structure of the head group (tiny)
    struct HeadGroup {
        std::vector<std::pair<u64, u64>> gens;
        std::vector<i64> orders;
        std::vector<std::pair<u64, u64>> coset;
        std::vector<std::vector<int>> exps;
    } H;
    {
        std::unordered_map<u64, size_t> seen;
        auto key = [](std::pair<u64, u64> x) { return (x.first << 32) | x.second; };
        H.coset.push_back({1, 0});
        H.exps.push_back({});
        seen[key({1, 0})] = 0;
        while (H.coset.size() < head_elems.size()) {
            // pick the element of maximal order in the quotient
            i64 best_ord = 0;
            std::pair<u64, u64> best{1, 0};
            for (auto& x : head_elems) {
                if (seen.count(key(canon_head(x)))) continue;
                i64 o = 1;
                auto y = x;
                while (!seen.count(key(canon_head(y)))) {
                    y = G.mul(y, x);
                    ++o;
                }
                if (o > best_ord) {
                    best_ord = o;
                    best = x;
                }
            }
            if (best_ord == 0) throw internal_check_error("head group: stalled");
            int gi = static_cast<int>(H.gens.size());
            H.gens.push_back(best);
            H.orders.push_back(best_ord);
            auto old = H.coset;
            auto olde = H.exps;
            auto xp = best;
            for (i64 j2 = 1; j2 < best_ord; ++j2) {
                for (size_t ei = 0; ei < old.size(); ++ei) {
                    auto z = G.mul(old[ei], xp);
                    auto ck = canon_head(z);
                    if (!seen.count(key(ck))) {
                        seen[key(ck)] = H.coset.size();
                        H.coset.push_back(z);
                        auto ex = olde[ei];
                        ex.resize(gi + 1, 0);
                        ex[gi] = static_cast<int>(j2);
                        H.exps.push_back(ex);
                    }
                }
                xp = G.mul(xp, best);
            }
        }
        for (auto& e2 : H.exps) e2.resize(H.gens.size(), 0);
    }
    G.head_gens_ = H.gens;
    G.head_orders_ = H.orders;
    G.head_coset_ = H.coset;
    G.head_coset_exps_ = H.exps;
    G.n_head_ = static_cast<int>(H.gens.size());

    G.gens = G.head_gens_;
    for (auto& t : tail_gens) G.gens.push_back(t);

    // tail logs and orders
    for (auto& t : tail_gens) G.tail_logs_.push_back(G.log1unit(t));
    // order of tail gen i: smallest p^E with p^E * log = 0 mod p^n (coords)
    std::vector<cpp_int> tail_orders;
    for (auto& lg : G.tail_logs_) {
        auto co = G.tail_coords(lg);
        // order = p^E with E = max over coordinates of (modulus exponent - valuation)
        auto vpc = [&](const cpp_int& c, int kk) {
            if (c % pow_u64(p, n - kk) == 0) return n - kk;
            cpp_int cc = c;
            int v = 0;
            while (cc % p == 0) {
                cc /= p;
                ++v;
            }
            return v;
        };
        int E1 = n - G.k1_ - std::min(vpc(co.first, G.k1_), n - G.k1_);
        int E2 = n - G.k2_ - std::min(vpc(co.second, G.k2_), n - G.k2_);
        int E = std::max(std::max(E1, E2), 0);
        cpp_int ord = 1;
        for (int i = 0; i < E; ++i) ord *= p;
        tail_orders.push_back(ord);
    }

    // relations
    size_t k = G.gens.size();
    for (int i = 0; i < G.n_head_; ++i) {
        // h_i^{o_i} * (prod_{j<i} h_j^{e_j})^{-1} lies in U_c
        auto w = G.pow(G.head_gens_[i], G.head_orders_[i]);
        auto ck = canon_head(w);
        // find its head coset exponents (must involve only j < i)
        std::vector<int> ce;
        {
            bool found = false;
            for (size_t ci = 0; ci < G.head_coset_.size(); ++ci) {
                if (canon_head(G.head_coset_[ci]) == ck) {
                    ce = G.head_coset_exps_[ci];
                    found = true;
                    break;
                }
            }
            if (!found) throw internal_check_error("head relation: coset not found");
        }
        std::vector<cpp_int> row(k, 0);
        row[i] = G.head_orders_[i];
        std::pair<u64, u64> corr{1, 0};
        for (int j = 0; j < G.n_head_; ++j) {
            if (ce[j] == 0) continue;
            row[j] -= ce[j];
            corr = G.mul(corr, G.pow(G.head_gens_[j], ce[j]));
        }
        auto u_c = G.mul(w, G.inv(corr));
        auto co = G.tail_coords(G.log1unit(u_c));
        // u_c = t1^x t2^y with (x, y) the lattice coordinates
        row[G.n_head_ + 0] -= co.first;
        row[G.n_head_ + 1] -= co.second;
        G.relations.push_back(row);
    }
    for (int i = 0; i < 2; ++i) {
        std::vector<cpp_int> row(k, 0);
        row[G.n_head_ + i] = tail_orders[i];
        G.relations.push_back(row);
    }

    // group order: #head * p^(2n - f*c... ) = #head * index of frak_p^c in p^n O
    cpp_int tail_size = 1;
    for (int i = 0; i < 2 * n - (G.k1_ + G.k2_); ++i) tail_size *= p;
    G.order = cpp_int(head_elems.size()) * tail_size;
    // closed-form consistency
    cpp_int expected;
    if (ramified) {
        expected = p - 1;
        for (int i = 0; i < 2 * n - 1; ++i) expected *= p;
    } else {
        expected = cpp_int(p) * p - 1;
        for (int i = 0; i < 2 * (n - 1); ++i) expected *= p;
    }
    if (G.order != expected) throw internal_check_error("ResidueUnitGroup: order mismatch with closed form");
    // relation cokernel must also have that order
    AbGroup chk = cokernel_structure(G.relations, static_cast<int>(k));
    if (chk.order() != G.order) throw internal_check_error("ResidueUnitGroup: relation lattice order mismatch");
    return G;
}

std::pair<cpp_int, cpp_int> ResidueUnitGroup::log1unit(std::pair<u64, u64> x) const {
    // log(1+z) with z = x - 1 in frak_p^c, computed mod p^n in both coords
    std::pair<u64, u64> z{(x.first + pw_ - 1) % pw_, x.second % pw_};
    std::pair<u64, u64> power = z;
    cpp_int suma = 0, sumb = 0;
    u64 pnn = pn;
    int terms = 4 * n + 8;
    for (int i = 1; i <= terms; ++i) {
        u64 ta = power.first, tb = power.second;
        int vi = vp_ll(i, p);
        u64 pv = pow_u64(p, vi);
        if (ta % pv != 0 || tb % pv != 0) throw internal_check_error("log1unit: inexact division");
        ta /= pv;
        tb /= pv;
        u64 iu = static_cast<u64>(i) / pv;
        u64 iinv = inv_mod_u64(iu % pw_, pw_);
        ta = mulmod(ta, iinv, pw_);
        tb = mulmod(tb, iinv, pw_);
        if (i % 2 == 1) {
            suma += ta;
            sumb += tb;
        } else {
            suma += pw_ - ta;
            sumb += pw_ - tb;
        }
        power = mul(power, z);
        if (power.first == 0 && power.second == 0) break;
    }
    return {suma % pnn, sumb % pnn};
}

std::pair<cpp_int, cpp_int> ResidueUnitGroup::tail_coords(std::pair<cpp_int, cpp_int> xi) const {
    // solve x*(p^k1, 0) + y*(r, p^k2) = xi mod p^n, using that the tail-gen
    // logs form a unimodular-correction of that basis
    // first express xi in the lattice basis
    u64 pk1 = 1, pk2 = 1;
    for (int i = 0; i < k1_; ++i) pk1 *= static_cast<u64>(p);
    for (int i = 0; i < k2_; ++i) pk2 *= static_cast<u64>(p);
    cpp_int pnn = pn;
    auto reduce = [&](cpp_int v) {
        v %= pnn;
        if (v < 0) v += pnn;
        return v;
    };
    cpp_int xb = reduce(xi.second);
    if (xb % pk2 != 0) throw internal_check_error("tail_coords: xi not in the lattice (w part)");
    cpp_int y = xb / pk2;
    cpp_int xa = reduce(xi.first - y * lat_r_);
    if (xa % pk1 != 0) throw internal_check_error("tail_coords: xi not in the lattice (1 part)");
    cpp_int x = xa / pk1;
    // correct through the actual logs of the tail generators:
    // log t1 = a11 v1 + a12 v2, log t2 = a21 v1 + a22 v2 with A = I mod p
    // solve (s, t) with s log t1 + t log t2 = xi, i.e. A^T (s,t) = (x,y)
    auto coords_of = [&](const std::pair<cpp_int, cpp_int>& lg) {
        cpp_int lb = reduce(lg.second);
        if (lb % pk2 != 0) throw internal_check_error("tail_coords: log not in lattice");
        cpp_int b2 = lb / pk2;
        cpp_int la = reduce(lg.first - b2 * lat_r_);
        if (la % pk1 != 0) throw internal_check_error("tail_coords: log not in lattice");
        return std::pair<cpp_int, cpp_int>{la / pk1, b2};
    };
    auto [a11, a12] = coords_of(tail_logs_[0]);
    auto [a21, a22] = coords_of(tail_logs_[1]);
    // moduli of the coordinates
    cpp_int m1 = pnn / pk1, m2 = pnn / pk2;
    cpp_int det = a11 * a22 - a12 * a21;
    cpp_int mbig = m1 * m2;
    // det must be a unit mod p
    if (det % p == 0) throw internal_check_error("tail_coords: singular log matrix");
    // solve modulo m1*m2 with Cramer, then reduce each coordinate
    cpp_int dinv = 0;
    {
        cpp_int d = ((det % mbig) + mbig) % mbig;
        cpp_int r0 = mbig, r1 = d, s0 = 0, s1 = 1;
        while (r1 != 0) {
            cpp_int q = r0 / r1;
            r0 -= q * r1;
            std::swap(r0, r1);
            s0 -= q * s1;
            std::swap(s0, s1);
        }
        if (r0 != 1) throw internal_check_error("tail_coords: det not invertible");
        dinv = ((s0 % mbig) + mbig) % mbig;
    }
    cpp_int s = ((a22 * x - a21 * y) % mbig) * dinv % mbig;
    cpp_int t2 = ((a11 * y - a12 * x) % mbig) * dinv % mbig;
    s = ((s % m1) + m1) % m1;
    t2 = ((t2 % m2) + m2) % m2;
    return {s, t2};
}

std::pair<u64, u64> ResidueUnitGroup::canon_mod_head(std::pair<u64, u64> x) const {
    u64 pk1 = 1, pk2 = 1;
    for (int i = 0; i < k1_; ++i) pk1 *= static_cast<u64>(p);
    for (int i = 0; i < k2_; ++i) pk2 *= static_cast<u64>(p);
    u64 a = x.first % pn, b = x.second % pn;
    u64 t = b / pk2;
    b %= pk2;
    a = (a + pn - mulmod(t % pn, lat_r_, pn)) % pn;
    a %= pk1;
    return {a, b};
}

std::vector<cpp_int> ResidueUnitGroup::dlog_split(std::pair<u64, u64> x) const {
    auto [s, t] = proj(x);
    std::vector<cpp_int> out;
    auto comp_dlog = [&](u64 v) {
        std::vector<cpp_int> d;
        if (p == 2) {
            if (n >= 2) {
                // v = (-1)^a 5^b
                int a = 0;
                if (n == 2) {
                    a = (v == 3) ? 1 : 0;
                    d.push_back(a);
                    return d;
                }
                if (v % 4 == 3) {
                    a = 1;
                    v = pn - v;
                }
                d.push_back(a);
                u64 b = dlog_cyclic(v, 5, pn / 4, pn);
                d.push_back(b);
            }
            return d;
        }
        cpp_int ord = p - 1;
        for (int i = 1; i < n; ++i) ord *= p;
        d.push_back(dlog_cyclic(v, comp_gens_[0][0], static_cast<u64>(ord), pn));
        return d;
    };
    auto d1 = comp_dlog(s), d2 = comp_dlog(t);
    for (auto& v : d1) out.push_back(v);
    for (auto& v : d2) out.push_back(v);
    return out;
}

std::vector<cpp_int> ResidueUnitGroup::dlog_nonsplit(std::pair<u64, u64> x) const {
    if (n_head_ < 0) {  // brute-force table for tiny moduli
        for (size_t ci = 0; ci < head_coset_.size(); ++ci) {
            if (head_coset_[ci].first % pn == x.first && head_coset_[ci].second % pn == x.second) {
                std::vector<cpp_int> out;
                for (int e2 : head_coset_exps_[ci]) out.push_back(e2);
                return out;
            }
        }
        throw internal_check_error("dlog: element not in the brute-force table");
    }
    std::vector<cpp_int> out(gens.size(), 0);
    auto ck = canon_mod_head(x);
    int found = -1;
    for (size_t ci = 0; ci < head_coset_.size(); ++ci) {
        if (canon_mod_head(head_coset_[ci]) == ck) {
            found = static_cast<int>(ci);
            break;
        }
    }
    if (found < 0) throw internal_check_error("dlog: head coset not found");
    std::pair<u64, u64> corr{1, 0};
    for (int j = 0; j < n_head_; ++j) {
        int e2 = head_coset_exps_[found][j];
        out[j] = e2;
        if (e2) corr = mul(corr, pow(head_gens_[j], e2));
    }
    auto u_c = mul(x, inv(corr));
    auto co = tail_coords(log1unit(u_c));
    out[n_head_ + 0] = co.first;
    out[n_head_ + 1] = co.second;
    return out;
}

std::vector<cpp_int> ResidueUnitGroup::dlog(std::pair<u64, u64> x) const {
    x = {x.first % pn, x.second % pn};
    if (!is_unit(x)) throw std::invalid_argument("dlog: not a unit");
    std::vector<cpp_int> out = split ? dlog_split(x) : dlog_nonsplit(x);
    // verify by reconstruction
    std::pair<u64, u64> acc{1, 0};
    for (size_t i = 0; i < gens.size(); ++i) acc = mul(acc, pow(gens[i], out[i]));
    if (acc.first % pn != x.first % pn || acc.second % pn != x.second % pn)
        throw internal_check_error("dlog: reconstruction failed");
    return out;
}

std::pair<u64, u64> ResidueUnitGroup::reduce_elem(const QuadField& F, const QElem& x) const {
    // x = (a + b sqrt m)/den in the (1, w) basis, den with p-coprime odd part
    i64 mm = ((F.m % 4) + 4) % 4;
    cpp_int u, v, den = x.den;
    if (mm == 1) {
        // sqrt m = 2w - 1
        u = x.a - x.b;
        v = 2 * x.b;
    } else {
        u = x.a;
        v = x.b;
    }
    // strip powers of 2 from den when they divide both coordinates
    while (den % 2 == 0 && u % 2 == 0 && v % 2 == 0) {
        den /= 2;
        u /= 2;
        v /= 2;
    }
    if (p == 2 && den % 2 == 0) throw std::invalid_argument("reduce_elem: denominator not invertible");
    cpp_int pnn = pn;
    cpp_int dr = ((den % pnn) + pnn) % pnn;
    // invert dr mod p^n
    cpp_int r0 = pnn, r1 = dr, s0 = 0, s1 = 1;
    while (r1 != 0) {
        cpp_int q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        s0 -= q * s1;
        std::swap(s0, s1);
    }
    if (r0 != 1) throw std::invalid_argument("reduce_elem: denominator not invertible");
    cpp_int dinv = ((s0 % pnn) + pnn) % pnn;
    cpp_int ua = (((u % pnn) + pnn) % pnn) * dinv % pnn;
    cpp_int va = (((v % pnn) + pnn) % pnn) * dinv % pnn;
    return {static_cast<u64>(ua), static_cast<u64>(va)};
}

}  // namespace tmod
