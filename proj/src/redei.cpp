#include "tmod/redei.hpp"

#include <sstream>

#include "tmod/contfrac.hpp"
#include "tmod/hilbert.hpp"
#include "tmod/localfield.hpp"
#include "tmod/padic.hpp"

namespace tmod {

NormCriteria norm_criteria(i64 m_pos) {
    if (m_pos <= 0) throw std::invalid_argument("norm_criteria: m must be positive");
    auto sf = squarefree_factor(m_pos);
    if (!sf) throw std::invalid_argument("norm_criteria: m not squarefree");
    NormCriteria out{true, true, true};
    for (auto& [q, e] : sf->factors) {
        if (q == 2) continue;
        i64 r8 = q % 8;
        if (r8 != 1 && r8 != 7) out.two = false;
        if (r8 != 1 && r8 != 3) out.minus_two = false;
        if (r8 != 1 && r8 != 5) out.minus_one = false;
    }
    return out;
}

int rk2_T2(const QuadField& F) {
    return (F.k == F.t) ? F.t : F.t - 1;
}

int rk2_T2_via_narrow_S(const QuadField& F) {
    return F.num_primes_above_2() + narrow_S_two_rank(F) - 1;
}

F2Mat redei_matrix_classgroup(const QuadField& F) {
    if (!F.imaginary()) throw std::invalid_argument("redei_matrix_classgroup: imaginary fields only");
    F2Mat R(F.t, F.t);
    for (int i = 0; i < F.t; ++i)
        for (int j = 0; j < F.t; ++j)
            R.set(i, j, hilbert_additive_Q(F.q[i], F.m, F.q[j]));
    return R;
}

bool fast_path_legal(const QuadField& F) {
    if (!F.imaginary()) return false;
    i64 m = -F.m;
    if (((m % 4) + 4) % 4 != 3) return false;
    auto nc = norm_criteria(m);
    return !nc.two && !nc.minus_two;
}

F2Mat redei_fast_path(const QuadField& F) {
    if (!fast_path_legal(F))
        throw wrong_path_error("redei_fast_path: requires -m = 3 mod 4 with 2, -2 both non-norms");
    i64 m = -F.m;
    F2Mat R(F.t, F.t + 1);
    bool m3 = (m % 8 == 3);
    for (int i = 0; i < F.t; ++i) {
        int tau = *jacobi_additive(m3 ? -2 : 2, F.q[i]);
        R.set(i, 0, tau);
        for (int j = 0; j < F.t; ++j) R.set(i, j + 1, hilbert_additive_Q(F.q[i], F.m, F.q[j]));
    }
    return R;
}

namespace {

constexpr int kEmbedPrec = 48;

struct FullPathData {
    std::vector<QElem> b_elems;       // -1, q_1..q_t [, pi][, alpha]
    int pi_col = -1, alpha_col = -1;  // indices into b_elems, -1 if absent
    FrakPData frak;
    bool has_alpha = false;
};

FullPathData full_path_columns(const QuadField& F) {
    FullPathData d;
    i64 m = -F.m;
    d.b_elems.push_back(QElem::integer(-1));
    for (i64 q : F.q) d.b_elems.push_back(QElem::integer(q));
    d.frak = frak_p_order_and_pi(F);
    if (!(d.frak.pi == QElem::integer(2))) {
        d.pi_col = static_cast<int>(d.b_elems.size());
        d.b_elems.push_back(d.frak.pi);
    }
    bool two_norm = (F.k == F.t);
    if (two_norm && !d.frak.two_in_nes) {
        auto rep = rep_2g2_h2(m);
        d.has_alpha = true;
        d.alpha_col = static_cast<int>(d.b_elems.size());
        d.b_elems.push_back(QElem::make(rep.h, 1, 1));  // h + sqrt(-m)
    }
    return d;
}

}  // namespace

F2Mat redei_matrix_T2(const QuadField& F) {
    if (!F.imaginary()) throw std::invalid_argument("redei_matrix_T2: imaginary fields only");
    i64 m = -F.m;
    if (F.t == 0) return F2Mat(0, 0);  // Q(i), Q(sqrt -2): trivial torsion
    FullPathData d = full_path_columns(F);
    int cols = static_cast<int>(d.b_elems.size());
    F2Mat R(F.t + 1, cols);

    const Q2Local& E = completion_at_2(F);
    bool split = (F.two == Split2::split);
    int places2 = split ? 2 : 1;

    // embeddings of every column element at the places over 2; the pi
    // column needs precision beyond its valuation f
    std::vector<std::vector<LocalElem2>> b_at2(places2);
    for (int pl = 0; pl < places2; ++pl)
        for (int j = 0; j < cols; ++j) {
            int prec = (j == d.pi_col) ? d.frak.f + 24 : kEmbedPrec;
            b_at2[pl].push_back(embed_at_2(F, d.b_elems[j], prec, pl == 1));
        }

    // row a_0
    if (((m % 8) + 8) % 8 == 1) {
        // F_p = Q2(i): component sqrt(-1)
        LocalElem2 iu{0, 1, kEmbedPrec};
        for (int j = 0; j < cols; ++j) R.set(0, j, E.symbol(iu, b_at2[0][j]));
    } else if (split) {
        LocalElem2 minus_one{cpp_int(-1), 0, kEmbedPrec};
        for (int j = 0; j < cols; ++j) R.set(0, j, E.symbol(minus_one, b_at2[0][j]));
    }
    // otherwise a_0 is the trivial idele: zero row

    QElem sqrt_minus_m = QElem::make(0, 1, 1);
    for (int i = 1; i <= F.t; ++i) {
        i64 qi = F.q[i - 1];
        bool middle = (i > F.k && i < F.t);  // components at q_i, q_t and v | 2
        bool plain = (i <= F.k);             // components at q_i and v | 2
        if (!middle && !plain) continue;     // a_t = 1 when k < t: zero row
        // 2-adic unit sqrt(q_i^*) or sqrt(q_i^* q_t^*)
        i64 qs = (qi % 4 == 1) ? qi : -qi;
        if (middle) {
            i64 qt = F.q[F.t - 1];
            qs *= (qt % 4 == 1) ? qt : -qt;
        }
        cpp_int u2 = sqrt_mod_2k_big(cpp_int(qs), kEmbedPrec);
        LocalElem2 uloc{u2, 0, kEmbedPrec};
        for (int j = 0; j < cols; ++j) {
            int s = tame_symbol_ramified(F, qi, sqrt_minus_m, d.b_elems[j]);
            if (middle) s ^= tame_symbol_ramified(F, F.q[F.t - 1], sqrt_minus_m, d.b_elems[j]);
            for (int pl = 0; pl < places2; ++pl) s ^= E.symbol(uloc, b_at2[pl][j]);
            R.set(i, j, s);
        }
    }
    return R;
}

int rk4_T2(const QuadField& F) {
    if (!F.imaginary()) throw std::invalid_argument("rk4_T2: imaginary fields only");
    int rk2 = rk2_T2(F);
    if (rk2 == 0) return 0;
    F2Mat R = fast_path_legal(F) ? redei_fast_path(F) : redei_matrix_T2(F);
    int rank = R.rank();
    int rk4 = rk2 - rank;
    if (rk4 < 0) throw internal_check_error("rk4_T2: matrix rank exceeds the 2-rank");
    return rk4;
}

int rk4_K2_matrix(i64 m_pos) {
    auto F = QuadField::make(-m_pos);
    if (!fast_path_legal(F))
        throw wrong_path_error("rk4_K2_matrix: requires m = 3 mod 4 with 2, -2 both non-norms");
    F2Mat R = redei_fast_path(F);
    return F.t - R.rank();
}

std::vector<int> beta_column(const QuadField& F) {
    if (!F.imaginary() || F.two != Split2::split)
        throw std::invalid_argument("beta_column: 2 must split");
    FrakPData frak = frak_p_order_and_pi(F);
    QElem sqrt_minus_m = QElem::make(0, 1, 1);
    std::vector<int> beta;
    for (i64 q : F.q) beta.push_back(tame_symbol_ramified(F, q, sqrt_minus_m, frak.pi));
    return beta;
}

i64 coates_order_valuation(const QuadField& F, i64 p) {
    if (!F.real()) throw std::invalid_argument("coates_order_valuation: real fields only");
    auto [hp, h] = narrow_class_number_real(F.D);
    i64 vh = 0;
    while (h % p == 0) {
        h /= p;
        ++vh;
    }
    i64 cyc = (p == 2 && F.m == 2) ? 1 : 0;  // nu_p of [K cap Q^{p,cyc} : Q]
    i64 reg2 = regulator_valuation2(F, p);
    i64 vD = vp_ll(F.D, p);
    i64 sum_np;  // sum of nu_p(N frak_p) over primes above p
    bool ramified = (F.D % p == 0);
    sum_np = ramified ? 1 : 2;
    i64 twice = 2 * 1 + 2 * cyc + 2 * vh + reg2 - vD - 2 * sum_np;
    if (twice % 2 != 0) throw internal_check_error("coates_order_valuation: half-integral result");
    i64 v = twice / 2;
    if (v < 0) throw internal_check_error("coates_order_valuation: negative valuation");
    return v;
}

// ---- classifiers ----

ImagFamilyTags classify_imaginary_prime_family(i64 l) {
    i64 r8 = l % 8;
    if (!is_prime_u64(static_cast<u64>(l)) || (r8 != 1 && r8 != 7))
        throw std::invalid_argument("classify_imaginary_prime_family: l must be a prime = +-1 mod 8");
    ImagFamilyTags tags;
    if (r8 == 7) {
        tags.t2_minus_l = 2;
        tags.t2_minus_2l = 2;
    } else if (l % 16 == 9) {
        tags.t2_minus_l = 4;
        tags.t2_minus_2l = 2;
    } else {  // l = 1 mod 16
        tags.t2_minus_l = 0;   // at least 8
        tags.t2_minus_2l = 0;  // at least 4
    }
    return tags;
}

RealFamilyTags classify_real_prime_family(i64 l) {
    i64 r8 = l % 8;
    if (!is_prime_u64(static_cast<u64>(l)) || (r8 != 1 && r8 != 7))
        throw std::invalid_argument("classify_real_prime_family: l must be a prime = +-1 mod 8");
    RealFamilyTags tags;
    if (r8 == 7) {
        if (l % 16 == 7) {
            tags.t2_l = 4;
            tags.t2_2l = 2;
        } else {
            auto uv = rep_u2_2v2(l);
            int sgn = ((l + 1) / 16) % 2 == 0 ? 1 : -1;
            int sym = jacobi(2 * uv.u, uv.v);
            if (sym == 0) throw internal_check_error("classify_real: (2u/v) undefined");
            if (sgn * sym == -1) {
                tags.t2_l = 8;
                tags.t2_2l = 4;
            }  // otherwise both of order at least 16 / 8: compute
        }
        return tags;
    }
    // l = 1 mod 8
    auto gh = rep_2g2_h2(l);
    if (gh.g % 4 == 3) {
        tags.t2_l = 2;
    } else {
        int sgn = ((l - 1) / 8) % 2 == 0 ? 1 : -1;
        int s1 = jacobi(2 * gh.h, gh.g);
        auto s2 = quartic_symbol(gh.g, l);
        if (!s2) throw internal_check_error("classify_real: (g/l)_4 undefined");
        if (s1 == 0) throw internal_check_error("classify_real: (2h/g) undefined");
        if (sgn * s1 * *s2 == -1) tags.t2_l = 4;
    }
    auto uv = rep_u2_2v2(l);
    i64 u = uv.u;
    int su = jacobi(((u % l) + l) % l, l);
    if (su == -1) {
        tags.t2_2l = 2;
    } else {
        int sgn = ((l - 1) / 8) % 2 == 0 ? 1 : -1;
        auto s4 = quartic_symbol(((u % l) + l) % l, l);
        if (!s4) throw internal_check_error("classify_real: (u/l)_4 undefined");
        if (sgn * *s4 == -1) tags.t2_2l = 4;
    }
    return tags;
}

i64 h2_minus_l_tag(i64 l) {
    if (l % 8 != 1) throw std::invalid_argument("h2_minus_l_tag: l must be 1 mod 8");
    auto gh = rep_2g2_h2(l);
    if (gh.g % 4 == 3) return 4;
    int s1 = jacobi(2 * gh.h, gh.g);
    auto s2 = quartic_symbol(gh.g, l);
    if (!s2 || s1 == 0) throw internal_check_error("h2_minus_l_tag: symbol undefined");
    return (s1 * *s2 == -1) ? 8 : 0;
}

i64 h2_minus_2l_tag(i64 l) {
    i64 r8 = l % 8;
    if (r8 == 1) {
        auto uv = rep_u2_2v2(l);
        i64 u8 = ((uv.u % 8) + 8) % 8;
        if (u8 == 5) return 4;
        auto s4 = quartic_symbol(((uv.u % l) + l) % l, l);
        if (!s4) throw internal_check_error("h2_minus_2l_tag: (u/l)_4 undefined");
        return (*s4 == -1) ? 8 : 0;
    }
    if (r8 == 7) {
        if (l % 16 == 7) return 4;
        auto uv = rep_u2_2v2(l);
        int sgn = ((l + 1) / 16) % 2 == 0 ? 1 : -1;
        int sym = jacobi(2 * uv.u, uv.v);
        return (sgn * sym == -1) ? 8 : 0;
    }
    throw std::invalid_argument("h2_minus_2l_tag: l must be +-1 mod 8");
}

CongruenceTriple congruence_identity_check(i64 l) {
    if (l % 8 != 7 || !is_prime_u64(static_cast<u64>(l)))
        throw std::invalid_argument("congruence_identity_check: l must be a prime = 7 mod 8");
    CongruenceTriple out;
    i64 v_l = coates_order_valuation(QuadField::make(l), 2);
    i64 v_2l = coates_order_valuation(QuadField::make(2 * l), 2);
    out.t2_l = 1LL << v_l;
    out.t2_2l = 1LL << v_2l;
    i64 h = class_number_definite(-8 * l);
    out.h2_m2l = 1;
    while (h % 2 == 0) {
        h /= 2;
        out.h2_m2l *= 2;
    }
    out.holds = ((out.t2_l - 2 * out.t2_2l) % 16 == 0) && ((out.t2_l - out.h2_m2l) % 16 == 0);
    return out;
}

// ---- report assembly ----

namespace {

void append_method(std::string& s, const char* tag) {
    if (!s.empty()) s += '+';
    s += tag;
}

}  // namespace

void TpReport::set_rk2(int v, const char* tag) {
    if (rk2 && *rk2 != v) throw internal_check_error("TpReport: rk2 disagreement between methods");
    rk2 = v;
    append_method(methods, tag);
}

void TpReport::set_rk4(int v, const char* tag) {
    if (rk4 && *rk4 != v) throw internal_check_error("TpReport: rk4 disagreement between methods");
    rk4 = v;
    append_method(methods, tag);
}

void TpReport::set_order(i64 v, const char* tag) {
    if (order_v && *order_v != v) throw internal_check_error("TpReport: order disagreement between methods");
    order_v = v;
    append_method(methods, tag);
}

void TpReport::set_structure(const AbGroup& g, const char* tag) {
    if (structure && !(*structure == g)) throw internal_check_error("TpReport: structure disagreement");
    structure = g;
    i64 p_ = p;
    int r = g.rank_p(p_);
    int r2 = g.rank_pk(p_, 2);
    cpp_int ord = g.order();
    i64 v = 0;
    while (ord % p_ == 0) {
        ord /= p_;
        ++v;
    }
    if (ord != 1) throw internal_check_error("TpReport: structure is not a p-group");
    if (rk2 && *rk2 != r) throw internal_check_error("TpReport: structure contradicts rk2");
    if (rk4 && *rk4 != r2) throw internal_check_error("TpReport: structure contradicts rk4");
    if (order_v && *order_v != v) throw internal_check_error("TpReport: structure contradicts order");
    rk2 = r;
    rk4 = r2;
    order_v = v;
    append_method(methods, tag);
}

std::string TpReport::csv_header() {
    return "m,p,rk2,rk4,order_valuation,structure,methods";
}

std::string TpReport::csv_row() const {
    std::ostringstream os;
    os << m << ',' << p << ',';
    if (rk2) os << *rk2;
    os << ',';
    if (rk4) os << *rk4;
    os << ',';
    if (order_v) os << *order_v;
    os << ',';
    if (structure) os << structure->to_string();
    os << ',' << methods;
    return os.str();
}

std::string TpReport::text() const {
    std::ostringstream os;
    os << "T_" << p << "(" << m << ")";
    if (structure)
        os << " = " << structure->to_string();
    else if (order_v)
        os << " of order " << p << "^" << *order_v;
    os << "\n";
    if (rk2) os << "  rk_" << p << "   = " << *rk2 << "\n";
    if (rk4) os << "  rk_" << p << "^2 = " << *rk4 << "\n";
    if (order_v) os << "  nu_" << p << "(order) = " << *order_v << "\n";
    os << "  methods: " << (methods.empty() ? "-" : methods) << "\n";
    return os.str();
}

}  // namespace tmod
