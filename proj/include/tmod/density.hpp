#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tmod/abgroup.hpp"
#include "tmod/redei.hpp"

namespace tmod {

enum class FamilyTag { imag_all, real_all, minus_l, minus_2l, plus_l, plus_2l };
enum class Method { auto_pick, redei, coates, rayclass, classifier, units };

FamilyTag parse_family_tag(const std::string& s);
Method parse_method(const std::string& s);

struct Family {
    FamilyTag tag = FamilyTag::imag_all;
    i64 p = 2;
    i64 bound = 0;                 // on l for prime families, on |m| or |D| otherwise
    bool bound_on_disc = false;    // interpret bound as |D| <= B
    i64 modulus = 0;               // congruence filter (on l, or on |m|)
    std::vector<i64> residues;
};

struct DensityRow {
    std::string label;
    i64 count = 0;
    double ratio = 0.0;
    std::optional<double> predicted;
    std::optional<double> deviation;
};

struct FamilyResult {
    Family family;
    i64 total = 0;
    i64 undetermined = 0;
    std::vector<DensityRow> rows;
    std::vector<std::string> raw_csv;  // per-field records, deterministic order

    std::string table_csv() const;
    std::string table_markdown() const;
};

// eta_s(q) = prod_{i=1..s} (1 - q^-i); s < 0 means the infinite product
double eta(i64 q, int s);

// closed-form rank-r density of the imaginary 4-rank distribution
double predicted_density_rk4(int r);

// full-family conjecture weights: (eta_inf(p)/eta_1(p)) / (#G #Aut G) for
// imaginary fields, eta_inf(p)/#Aut(G) for real ones
double predicted_full_family(i64 p, const AbGroup& G, bool real_family);

// sub-family predictions: 3/4^(i+1) for the 1 mod 16 imaginary towers,
// 1/2^(i+1) for the real towers
double predicted_minus_tower(int i);
double predicted_plus_tower(int i);

// per-field computation with the chosen method policy
TpReport compute_tp(i64 m, i64 p, Method method, int nmax = 24, i64 disc_cutoff = 100000);

FamilyResult run_family(const Family& fam, Method method, const std::string& cache_path = "",
                        int nmax = 24);

// append-only result cache keyed by (m, p, method-version)
struct ResultCache {
    std::string path;
    explicit ResultCache(const std::string& path);
    std::optional<std::string> get(i64 m, i64 p, const std::string& method) const;
    void put(i64 m, i64 p, const std::string& method, const std::string& value);

private:
    std::unordered_map<std::string, std::string> map_;
};

}  // namespace tmod
