#include "tmod/density.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <functional>
#include <memory>
#include <sstream>

#include "tmod/contfrac.hpp"
#include "tmod/rayclass.hpp"

namespace tmod {

FamilyTag parse_family_tag(const std::string& s) {
    if (s == "imag-all") return FamilyTag::imag_all;
    if (s == "real-all") return FamilyTag::real_all;
    if (s == "minus-l") return FamilyTag::minus_l;
    if (s == "minus-2l") return FamilyTag::minus_2l;
    if (s == "plus-l") return FamilyTag::plus_l;
    if (s == "plus-2l") return FamilyTag::plus_2l;
    throw std::invalid_argument("unknown family tag: " + s);
}

Method parse_method(const std::string& s) {
    if (s == "auto") return Method::auto_pick;
    if (s == "redei") return Method::redei;
    if (s == "coates") return Method::coates;
    if (s == "rayclass") return Method::rayclass;
    if (s == "classifier") return Method::classifier;
    if (s == "units") return Method::units;
    throw std::invalid_argument("unknown method: " + s);
}

double eta(i64 q, int s) {
    double prod = 1.0;
    int limit = (s < 0) ? 64 : s;
    double qi = 1.0;
    for (int i = 1; i <= limit; ++i) {
        qi /= static_cast<double>(q);
        prod *= (1.0 - qi);
        if (s < 0 && qi < 1e-18) break;
    }
    return prod;
}

double predicted_density_rk4(int r) {
    double num = eta(2, -1);
    double denom = std::pow(2.0, static_cast<double>(r) * (r + 1)) * eta(2, r) * eta(2, r + 1);
    return num / denom;
}

double predicted_full_family(i64 p, const AbGroup& G, bool real_family) {
    double aut = static_cast<double>(aut_count(G));
    if (real_family) return eta(p, -1) / aut;
    double order = static_cast<double>(G.order());
    return (eta(p, -1) / eta(p, 1)) / (order * aut);
}

double predicted_minus_tower(int i) { return 3.0 / std::pow(4.0, i + 1); }
double predicted_plus_tower(int i) { return 1.0 / std::pow(2.0, i + 1); }

namespace {

std::string g4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string order_label(i64 p, i64 v) {
    if (v == 0) return "1";
    cpp_int pv = 1;
    for (i64 i = 0; i < v; ++i) pv *= p;
    return "Z/" + pv.str();
}

}  // namespace

std::string FamilyResult::table_csv() const {
    std::ostringstream os;
    os << "label,count,ratio,predicted,deviation\n";
    for (auto& r : rows) {
        os << r.label << ',' << r.count << ',' << g4(r.ratio) << ',';
        if (r.predicted) os << g4(*r.predicted);
        os << ',';
        if (r.deviation) os << g4(*r.deviation);
        os << '\n';
    }
    os << "total," << total << ",,,\n";
    os << "undetermined," << undetermined << ",,,\n";
    return os.str();
}

std::string FamilyResult::table_markdown() const {
    std::ostringstream os;
    os << "| label | count | ratio | predicted | deviation |\n";
    os << "|---|---|---|---|---|\n";
    for (auto& r : rows) {
        os << "| " << r.label << " | " << r.count << " | " << g4(r.ratio) << " | "
           << (r.predicted ? g4(*r.predicted) : "") << " | "
           << (r.deviation ? g4(*r.deviation) : "") << " |\n";
    }
    os << "| total | " << total << " | | | |\n";
    os << "| undetermined | " << undetermined << " | | | |\n";
    return os.str();
}

ResultCache::ResultCache(const std::string& path) : path(path) {
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto pos = line.rfind(',');
        if (pos == std::string::npos) continue;
        map_[line.substr(0, pos)] = line.substr(pos + 1);
    }
}

std::optional<std::string> ResultCache::get(i64 m, i64 p, const std::string& method) const {
    std::ostringstream k;
    k << m << ',' << p << ',' << method;
    auto it = map_.find(k.str());
    if (it == map_.end()) return std::nullopt;
    return it->second;
}

void ResultCache::put(i64 m, i64 p, const std::string& method, const std::string& value) {
    std::ostringstream k;
    k << m << ',' << p << ',' << method;
    if (map_.count(k.str())) return;
    map_[k.str()] = value;
    bool fresh = map_.size() == 1;
    std::ofstream out(path, std::ios::app);
    if (fresh && out.tellp() == 0) out << "# tmod cache schema=1: m,p,method,value\n";
    out << k.str() << ',' << value << '\n';
}

TpReport compute_tp(i64 m, i64 p, Method method, int nmax, i64 disc_cutoff) {
    auto F = QuadField::make(m);
    TpReport rep;
    rep.m = m;
    rep.p = p;
    bool want_redei = method == Method::redei || method == Method::auto_pick;
    bool want_coates = method == Method::coates || (method == Method::auto_pick && F.real());
    bool want_oracle = method == Method::rayclass ||
                       (method == Method::auto_pick && std::abs(F.D) <= disc_cutoff);
    if (p == 2 && want_redei) {
        rep.set_rk2(rk2_T2(F), "congruence");
        if (F.imaginary()) rep.set_rk4(rk4_T2(F), "redei");
    }
    if (p == 2 && method == Method::units && F.real()) {
        rep.set_order(coates_order_valuation(F, p), "coates");
    }
    if (want_coates && F.real()) {
        rep.set_order(coates_order_valuation(F, p), "coates");
    }
    if (want_oracle) {
        bool supported = F.imaginary();
        if (!supported) {
            auto [hp, h] = narrow_class_number_real(F.D);
            supported = (h % p != 0);
        }
        if (supported)
            rep.set_structure(tp_structure(F, p, nmax), "rayclass");
        else if (method == Method::rayclass)
            throw unsupported_domain_error("compute_tp: real field with nontrivial p-class group");
    }
    return rep;
}

namespace {

struct HistBuilder {
    std::map<std::string, i64> counts;
    void add(const std::string& label) { ++counts[label]; }
};

void finish_rows(FamilyResult& out, HistBuilder& hist,
                 const std::function<std::optional<double>(const std::string&)>& predict) {
    std::vector<std::string> labels;
    for (auto& [k, v] : hist.counts) labels.push_back(k);
    std::sort(labels.begin(), labels.end(), [&](const std::string& a, const std::string& b) {
        // numeric-ish sort: shorter first, then lexicographic
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    for (auto& lab : labels) {
        DensityRow row;
        row.label = lab;
        row.count = hist.counts[lab];
        row.ratio = out.total ? static_cast<double>(row.count) / static_cast<double>(out.total) : 0.0;
        row.predicted = predict(lab);
        if (row.predicted) row.deviation = std::abs(row.ratio - *row.predicted);
        out.rows.push_back(row);
    }
}

bool residue_ok(const Family& fam, i64 v) {
    if (fam.modulus == 0) return true;
    i64 r = ((v % fam.modulus) + fam.modulus) % fam.modulus;
    for (i64 s : fam.residues)
        if (((s % fam.modulus) + fam.modulus) % fam.modulus == r) return true;
    return false;
}

}  // namespace

FamilyResult run_family(const Family& fam, Method method, const std::string& cache_path, int nmax) {
    FamilyResult out;
    out.family = fam;
    std::unique_ptr<ResultCache> cache;
    if (!cache_path.empty()) cache = std::make_unique<ResultCache>(cache_path);
    HistBuilder hist;

    bool prime_family = fam.tag == FamilyTag::minus_l || fam.tag == FamilyTag::minus_2l ||
                        fam.tag == FamilyTag::plus_l || fam.tag == FamilyTag::plus_2l;
    std::string method_version = "v1";

    auto record = [&](i64 key, const std::string& label) {
        hist.add(label);
        ++out.total;
        std::ostringstream line;
        line << key << ',' << fam.p << ',' << label;
        out.raw_csv.push_back(line.str());
    };

    if (prime_family) {
        auto primes = sieve_primes(fam.bound);
        for (i64 l : primes) {
            i64 r8 = l % 8;
            if (r8 != 1 && r8 != 7) continue;
            if (!residue_ok(fam, l)) continue;
            i64 m = (fam.tag == FamilyTag::minus_l)    ? -l
                    : (fam.tag == FamilyTag::minus_2l) ? -2 * l
                    : (fam.tag == FamilyTag::plus_l)   ? l
                                                       : 2 * l;
            std::string label;
            std::string mkey;
            {
                std::ostringstream k;
                k << "fam" << static_cast<int>(fam.tag) << "-" << static_cast<int>(method) << "-"
                  << method_version;
                mkey = k.str();
            }
            if (cache) {
                auto hit = cache->get(m, fam.p, mkey);
                if (hit) {
                    record(l, *hit);
                    continue;
                }
            }
            switch (method) {
                case Method::classifier: {
                    if (fam.tag == FamilyTag::minus_l) {
                        auto tags = classify_imaginary_prime_family(l);
                        label = tags.t2_minus_l ? order_label(2, tags.t2_minus_l == 2 ? 1 : 2) : ">=Z/8";
                    } else if (fam.tag == FamilyTag::minus_2l) {
                        auto tags = classify_imaginary_prime_family(l);
                        label = tags.t2_minus_2l ? order_label(2, 1) : ">=Z/4";
                    } else {
                        auto tags = classify_real_prime_family(l);
                        i64 t = (fam.tag == FamilyTag::plus_l) ? tags.t2_l : tags.t2_2l;
                        if (t) {
                            i64 v = 0;
                            while ((1LL << v) < t) ++v;
                            label = order_label(2, v);
                        } else {
                            label = (fam.tag == FamilyTag::plus_l && l % 8 == 7) ? ">=Z/16" : ">=Z/8";
                        }
                    }
                    break;
                }
                case Method::units: {
                    if (fam.tag != FamilyTag::plus_l)
                        throw std::invalid_argument("units method applies to the plus-l family");
                    auto u = fundamental_unit(l);
                    label = order_label(2, u.v2_a() - 1);
                    break;
                }
                case Method::coates: {
                    i64 v = coates_order_valuation(QuadField::make(m), 2);
                    label = order_label(2, v);
                    break;
                }
                case Method::rayclass:
                case Method::auto_pick: {
                    auto T = tp_structure(QuadField::make(m), fam.p, nmax);
                    label = T.to_string();
                    break;
                }
                default:
                    throw std::invalid_argument("run_family: method not valid for this family");
            }
            if (cache) cache->put(m, fam.p, mkey, label);
            record(l, label);
        }
    } else {
        // all-field families, filtered by squarefree m (bound on |m| or |D|)
        i64 mbound = fam.bound_on_disc ? fam.bound : fam.bound;
        SpfSieve sieve(mbound + 1);
        for (i64 mm = 2; mm <= mbound; ++mm) {
            if (!sieve.is_squarefree(mm)) continue;
            i64 m = (fam.tag == FamilyTag::imag_all) ? -mm : mm;
            auto F = QuadField::make(m);
            if (fam.bound_on_disc && std::abs(F.D) > fam.bound) continue;
            if (!residue_ok(fam, mm)) continue;
            std::string label;
            if (fam.p == 2 && fam.tag == FamilyTag::imag_all &&
                (method == Method::redei || method == Method::auto_pick)) {
                label = "rk4=" + std::to_string(rk4_T2(F));
            } else if (method == Method::rayclass || method == Method::auto_pick) {
                bool supported = F.imaginary();
                if (!supported) {
                    auto [hp, h] = narrow_class_number_real(F.D);
                    supported = (h % fam.p != 0);
                }
                if (!supported) {
                    ++out.undetermined;
                    ++out.total;
                    continue;
                }
                label = tp_structure(F, fam.p, nmax).to_string();
            } else {
                throw std::invalid_argument("run_family: method not valid for this family");
            }
            record(mm, label);
        }
    }

    auto predict = [&](const std::string& label) -> std::optional<double> {
        if (fam.tag == FamilyTag::imag_all && fam.p == 2 && label.rfind("rk4=", 0) == 0) {
            return predicted_density_rk4(std::stoi(label.substr(4)));
        }
        if ((fam.tag == FamilyTag::imag_all || fam.tag == FamilyTag::real_all) && fam.p > 2) {
            // parse "Z/a x Z/b" labels back into a group
            if (label == "1") return predicted_full_family(fam.p, AbGroup{}, fam.tag == FamilyTag::real_all);
            AbGroup G;
            std::stringstream ss(label);
            std::string tok;
            while (std::getline(ss, tok, 'x')) {
                auto pos = tok.find("Z/");
                if (pos == std::string::npos) return std::nullopt;
                G.factors.push_back(cpp_int(tok.substr(pos + 2)));
            }
            return predicted_full_family(fam.p, G, fam.tag == FamilyTag::real_all);
        }
        if (prime_family && fam.modulus == 16 && fam.residues == std::vector<i64>{1}) {
            // the 1 mod 16 towers
            i64 base = (fam.tag == FamilyTag::minus_l) ? 8 : 4;
            for (int i = 0; i < 30; ++i) {
                cpp_int v = cpp_int(base) << i;
                if (label == "Z/" + v.str()) return predicted_minus_tower(i);
            }
            return std::nullopt;
        }
        if (fam.tag == FamilyTag::plus_l || fam.tag == FamilyTag::plus_2l) {
            // towers 1/2^(i+1); the exponent offset depends on the residue class
            int e = (!fam.residues.empty() && (fam.residues[0] % 8 + 8) % 8 == 7) ? 1 : 0;
            int base_exp = (fam.tag == FamilyTag::plus_l) ? 1 + e : 1;
            for (int i = 0; i < 30; ++i) {
                std::string lab = "Z/" + (cpp_int(1) << (base_exp + i)).str();
                if (label == lab) return predicted_plus_tower(i);
            }
        }
        return std::nullopt;
    };
    finish_rows(out, hist, predict);
    return out;
}

}  // namespace tmod
