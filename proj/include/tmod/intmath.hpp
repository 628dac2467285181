#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tmod {

using boost::multiprecision::cpp_int;
using i64 = long long;
using u64 = unsigned long long;

struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct wrong_path_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct unsupported_domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct stabilization_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct no_representation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// raised when a consistency identity the code relies on fails (e.g. the
// Hilbert product formula summing to a nonzero value)
struct internal_check_error : std::logic_error {
    using std::logic_error::logic_error;
};

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

inline u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = m == 1 ? 0 : 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

inline i64 gcd_ll(i64 a, i64 b) {
    while (b) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}

// g = ax + by
i64 extgcd(i64 a, i64 b, i64& x, i64& y);

i64 isqrt_ll(i64 n);
cpp_int isqrt_big(const cpp_int& n);
bool is_square_ll(i64 n, i64& root);

int v2_ll(u64 n);              // n != 0
int vp_ll(i64 n, i64 p);       // n != 0
int v2_big(const cpp_int& n);  // n != 0

// Jacobi symbol (a/n) for odd n > 0; returns 0 when gcd(a,n) > 1.
int jacobi(i64 a, i64 n);

// Additive Jacobi symbol in F2 (0 <-> +1, 1 <-> -1); empty when gcd(a,n) > 1.
std::optional<int> jacobi_additive(i64 a, i64 n);

// Deterministic Miller-Rabin, valid for all n < 3.3e24 (we use n < 2^63).
bool is_prime_u64(u64 n);

// Eratosthenes up to bound (inclusive). bound >= 2.
std::vector<i64> sieve_primes(i64 bound);

// Smallest-prime-factor sieve, shared read-only by the batch drivers.
struct SpfSieve {
    i64 bound = 0;
    std::vector<int32_t> spf;  // spf[n] = smallest prime factor, spf[1] = 1
    explicit SpfSieve(i64 bound_);
    bool is_squarefree(i64 n) const;
    // odd prime factors of squarefree |n|, ascending
    std::vector<i64> odd_prime_factors(i64 n) const;
};

std::vector<std::pair<i64, int>> factorize(i64 n);  // |n| >= 1, n != 0

struct FactoredInt {
    cpp_int value;                            // signed
    std::vector<std::pair<i64, int>> factors; // primes ascending, exponents > 0
};

// All-exponents-one factorization, or empty if |n| is not squarefree.
std::optional<FactoredInt> squarefree_factor(i64 n);

// Rational quartic residue symbol (a/l)_4 for l = 1 mod 4 prime, gcd(a,l)=1.
// Defined (+-1) only when a is a quadratic residue mod l; empty otherwise.
std::optional<int> quartic_symbol(i64 a, i64 l);

// Tonelli-Shanks square root mod an odd prime; empty if a is not a QR.
std::optional<u64> sqrt_mod_p(u64 a, u64 p);

// Square root of a mod p^k (odd p, a a unit and QR mod p).
std::optional<u64> sqrt_mod_pk(u64 a, u64 p, int k);

// Square root of a mod 2^k for a = 1 mod 8, normalized to root = 1 mod 4.
u64 sqrt_mod_2k(u64 a, int k);
cpp_int sqrt_mod_2k_big(const cpp_int& a, int k);

// Inverse of odd a mod 2^k.
cpp_int inv_mod_2k_big(const cpp_int& a, int k);

// Solutions of x^2 = a mod m by CRT over the factorization of squarefree m.
std::optional<i64> sqrt_mod_squarefree(i64 a, i64 m,
                                       const std::vector<std::pair<i64, int>>& mf);

struct Rep2GH {
    i64 g = 0, h = 0, m = 0;  // m = 2g^2 - h^2, g,h > 0, gcd(g,h) = 1
};

struct RepUV {
    i64 u = 0, v = 0, l = 0;  // l = u^2 - 2v^2, v > 0
};

// Minimal-g representation m = 2g^2 - h^2 (requires every odd prime factor
// of m to be +-1 mod 8). Ascending search from ceil(sqrt(m/2)) with a
// Z[sqrt(2)]-gcd fallback past the search cap.
Rep2GH rep_2g2_h2(i64 m);

// l = u^2 - 2v^2 for a prime l = +-1 mod 8, via gcd(l, s - sqrt(2)) in the
// Euclidean domain Z[sqrt(2)]. Normalization: u = 1 mod 4 when l = 1 mod 8;
// u, v > 0 when l = 7 mod 8.
RepUV rep_u2_2v2(i64 l);

// Next representation in the unit orbit: multiply by 3 + 2*sqrt(2).
RepUV rep_uv_next(const RepUV& r);

}  // namespace tmod
