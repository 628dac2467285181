#include "tmod/contfrac.hpp"

namespace tmod {

namespace {

struct SurdState {
    i64 P, Q, D, s;  // alpha = (P + sqrt D)/Q
    i64 step() {     // returns partial quotient, advances
        i64 a = (P + s) / Q;  // Q > 0 on the principal cycle
        i64 Pn = a * Q - P;
        i64 Qn = (D - Pn * Pn) / Q;
        P = Pn;
        Q = Qn;
        return a;
    }
};

struct CfRun {
    i64 a0 = 0, period = 0;
    // q_{T}, q_{T-1} trackers
    u64 qT_mod = 0, qT1_mod = 0;
    cpp_int qT, qT1;
    bool exact = true;
};

// run the continued fraction of (b0 + sqrt D)/2 over one full period
CfRun run_cf(i64 D, size_t exact_bit_cap, u64 extra_mod = 0, u64* qT_em = nullptr,
             u64* qT1_em = nullptr) {
    i64 b0 = ((D % 2) + 2) % 2;
    i64 s = isqrt_ll(D);
    SurdState st{b0, 2, D, s};
    CfRun out;
    out.a0 = st.step();
    i64 P1 = st.P, Q1 = st.Q;
    if (Q1 <= 0) throw internal_check_error("run_cf: nonpositive Q on principal cycle");

    u64 qk1m = 0, qkm = 1;  // q_{-1}, q_0 mod 2^64
    cpp_int qk1e = 0, qke = 1;
    u64 em_qk1 = 0, em_qk = 1 % (extra_mod ? extra_mod : 2);
    bool exact = true;

    i64 T = 0;
    for (;;) {
        i64 a = st.step();
        ++T;
        u64 am = static_cast<u64>(a);
        u64 qn = am * qkm + qk1m;
        qk1m = qkm;
        qkm = qn;
        if (extra_mod) {
            u64 qe = (mulmod(am % extra_mod, em_qk, extra_mod) + em_qk1) % extra_mod;
            em_qk1 = em_qk;
            em_qk = qe;
        }
        if (exact) {
            cpp_int qe = a * qke + qk1e;
            qk1e = qke;
            qke = qe;
            if (msb(qke) > exact_bit_cap) exact = false;
        }
        if (st.P == P1 && st.Q == Q1) break;
        if (T > (1LL << 40)) throw capacity_error("run_cf: period too long");
    }
    out.period = T;
    out.qT_mod = qkm;
    out.qT1_mod = qk1m;
    out.exact = exact;
    if (exact) {
        out.qT = qke;
        out.qT1 = qk1e;
    }
    if (qT_em) *qT_em = em_qk;
    if (qT1_em) *qT1_em = em_qk1;
    return out;
}

}  // namespace

FundUnit fundamental_unit(i64 m, size_t exact_bit_cap) {
    if (m <= 1) throw std::invalid_argument("fundamental_unit: m must be > 1");
    auto F = QuadField::make(m);
    CfRun r = run_cf(F.D, exact_bit_cap);
    FundUnit u;
    u.m = m;
    u.period = r.period;
    u.norm = (r.period % 2 == 0) ? 1 : -1;
    // eps = q_{T-1} * alpha0 + (q_T - a0 q_{T-1}), alpha0 = (b0 + sqrt D)/2
    // in the (1, w) basis: alpha0 = w exactly (both for D = m and D = 4m)
    u.y_mod = r.qT1_mod;
    u.x_mod = r.qT_mod - static_cast<u64>(r.a0) * r.qT1_mod;
    u.exact = r.exact;
    if (r.exact) {
        u.y = r.qT1;
        u.x = r.qT - r.a0 * r.qT1;
        // exact norm check: N(x + y w) = x^2 + B x y - C y^2
        i64 mm = ((m % 4) + 4) % 4;
        cpp_int B = (mm == 1) ? 1 : 0, C = (mm == 1) ? (m - 1) / 4 : m;
        cpp_int N = u.x * u.x + B * u.x * u.y - C * u.y * u.y;
        if (N != u.norm) throw internal_check_error("fundamental_unit: norm mismatch");
    }
    return u;
}

std::pair<u64, u64> fundamental_unit_mod(i64 m, u64 modulus) {
    auto F = QuadField::make(m);
    u64 qT = 0, qT1 = 0;
    CfRun r = run_cf(F.D, 1 /* no exact track */, modulus, &qT, &qT1);
    u64 x = (qT + modulus - mulmod(static_cast<u64>(r.a0) % modulus, qT1, modulus)) % modulus;
    return {x, qT1};
}

int fundamental_unit_norm(i64 m) {
    auto F = QuadField::make(m);
    CfRun r = run_cf(F.D, 1);
    return (r.period % 2 == 0) ? 1 : -1;
}

std::pair<cpp_int, cpp_int> FundUnit::sqrt_coords() const {
    if (!exact) throw precision_error("FundUnit: exact coordinates unavailable");
    i64 mm = ((m % 4) + 4) % 4;
    if (mm == 1) {
        // x + y(1+sqrt m)/2 = (2x+y)/2 + (y/2) sqrt m
        return {cpp_int(2 * x + y), y};  // over denominator 2
    }
    return {x, y};
}

namespace {

int v2_u64_tracked(u64 v) {
    if (v == 0) throw precision_error("FundUnit: 2-adic valuation beyond 64-bit track");
    return v2_ll(v);
}

}  // namespace

int FundUnit::v2_a() const {
    i64 mm = ((m % 4) + 4) % 4;
    if (exact) {
        cpp_int a;
        if (mm == 1) {
            if (y % 2 != 0) throw std::domain_error("FundUnit: a is a half-integer");
            a = x + y / 2;
        } else {
            a = x;
        }
        if (a == 0) throw std::domain_error("FundUnit: a = 0");
        return v2_big(a);
    }
    if (mm == 1) {
        // a = x + y/2 mod 2^63; y must be even
        if (y_mod % 2 != 0) throw std::domain_error("FundUnit: a is a half-integer");
        u64 a = (x_mod + (y_mod >> 1)) & ((1ULL << 63) - 1);
        if (a == 0) throw precision_error("FundUnit: nu2(a) beyond 63-bit track");
        return v2_ll(a);
    }
    return v2_u64_tracked(x_mod);
}

int FundUnit::v2_b() const {
    i64 mm = ((m % 4) + 4) % 4;
    if (exact) {
        cpp_int b = (mm == 1) ? y / 2 : y;
        if (mm == 1 && y % 2 != 0) throw std::domain_error("FundUnit: b is a half-integer");
        if (b == 0) throw std::domain_error("FundUnit: b = 0");
        return v2_big(b);
    }
    if (mm == 1) {
        if (y_mod % 2 != 0) throw std::domain_error("FundUnit: b is a half-integer");
        u64 b = y_mod >> 1;
        if (b == 0) throw precision_error("FundUnit: nu2(b) beyond 63-bit track");
        return v2_ll(b);
    }
    return v2_u64_tracked(y_mod);
}

}  // namespace tmod
