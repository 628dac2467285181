#include "tmod/quadfield.hpp"

#include <algorithm>

namespace tmod {

QuadField QuadField::make(i64 m) {
    if (m == 0 || m == 1) throw std::invalid_argument("QuadField: m must be squarefree, != 0, 1");
    auto sf = squarefree_factor(m);
    if (!sf) throw std::invalid_argument("QuadField: m not squarefree");
    QuadField F;
    F.m = m;
    i64 mm = m % 4;
    if (mm < 0) mm += 4;
    F.D = (mm == 1) ? m : 4 * m;
    std::vector<i64> pm1, pm3;
    for (auto& [p, e] : sf->factors) {
        if (p == 2) continue;
        i64 r = p % 8;
        (r == 1 || r == 7 ? pm1 : pm3).push_back(p);
    }
    std::sort(pm1.begin(), pm1.end());
    std::sort(pm3.begin(), pm3.end());
    F.k = static_cast<int>(pm1.size());
    F.q = pm1;
    F.q.insert(F.q.end(), pm3.begin(), pm3.end());
    F.t = static_cast<int>(F.q.size());
    i64 m8 = m % 8;
    if (m8 < 0) m8 += 8;
    if (m8 == 1)
        F.two = Split2::split;
    else if (m8 == 5)
        F.two = Split2::inert;
    else
        F.two = Split2::ramified;
    return F;
}

QElem QElem::make(cpp_int a, cpp_int b, cpp_int den) {
    if (den == 0) throw std::invalid_argument("QElem: zero denominator");
    if (den < 0) {
        a = -a;
        b = -b;
        den = -den;
    }
    cpp_int g = gcd(gcd(abs(a), abs(b)), den);
    if (g > 1) {
        a /= g;
        b /= g;
        den /= g;
    }
    return QElem{std::move(a), std::move(b), std::move(den)};
}

std::pair<cpp_int, cpp_int> QElem::norm(i64 m) const {
    return {a * a - m * b * b, den * den};
}

QElem QElem::mul(const QElem& o, i64 m) const {
    return make(a * o.a + m * b * o.b, a * o.b + b * o.a, den * o.den);
}

QElem QElem::mul_int(const cpp_int& c) const {
    return make(a * c, b * c, den);
}

}  // namespace tmod
