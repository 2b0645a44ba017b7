#include "difftop/gw.hpp"

#include "difftop/correlators.hpp"
#include "difftop/curve.hpp"
#include "difftop/toprec.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace difftop {

Q GwTable::at(const std::vector<int>& k) const {
    auto it = entries.find(k);
    return it == entries.end() ? Q(0) : it->second;
}

std::string GwTable::to_csv() const {
    std::ostringstream o;
    for (int i = 0; i < n; ++i) o << "k" << i + 1 << ",";
    o << "value\n";
    for (const auto& [k, v] : entries) {
        for (int x : k) o << x << ",";
        o << to_str(v) << "\n";
    }
    return o.str();
}

namespace gw {

namespace {

std::string tuple_str(const std::vector<int>& k) {
    std::string s = "(";
    for (size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
    return s + ")";
}

// all tuples in [0, kmax]^n
std::vector<std::vector<int>> tuples(int n, int kmax) {
    std::vector<std::vector<int>> out;
    std::vector<int> k(n, 0);
    for (;;) {
        out.push_back(k);
        int i = 0;
        while (i < n && ++k[i] > kmax) k[i++] = 0;
        if (i == n) break;
    }
    return out;
}

}  // namespace

bool selection_allows(int g, const std::vector<int>& k) {
    int s = 0;
    for (int x : k) s += x;
    int d2 = s - (2 * g - 2);
    return d2 >= 0 && d2 % 2 == 0;
}

GwTable extract(int g, int n, int kmax) {
    if (2 * g - 2 + n <= 0) throw std::invalid_argument("unstable (g, n)");
    auto w = toprec::omega(g, n);
    int order = kmax + 2;
    std::map<std::pair<int, int>, Laurent> forms;
    auto form = [&](int a, int k) -> const Laurent& {
        auto it = forms.find({a, k});
        if (it == forms.end()) it = forms.emplace(std::make_pair(a, k), curve::form_at_infinity(a, k, order)).first;
        return it->second;
    };
    std::vector<std::pair<std::vector<const Laurent*>, Q>> terms;
    for (const auto& [key, c] : w->coeffs) {
        std::vector<const Laurent*> fs;
        for (int i = 0; i < n; ++i) {
            Slot sl = slot_of(key, i);
            fs.push_back(&form(sl.a, sl.k));
        }
        terms.emplace_back(std::move(fs), c);
    }
    GwTable t{g, n, kmax, {}};
    for (const auto& k : tuples(n, kmax)) {
        Q v = 0;
        for (const auto& [fs, c] : terms) {
            Q p = c;
            for (int i = 0; i < n && p != 0; ++i) p *= fs[i]->coeff(k[i] + 2);
            v += p;
        }
        for (int x : k) v /= Q(factorial(static_cast<unsigned>(x + 1)));
        if (v != 0) t.entries[k] = v;
    }
    return t;
}

Report table_check(const GwTable& t) {
    Report r;
    r.suite = "gw-table";
    r.clause("selection-rule");
    r.clause("symmetry");
    for (const auto& [k, v] : t.entries) {
        r.check("selection-rule", selection_allows(t.g, k), tuple_str(k) + " = " + to_str(v));
        std::vector<int> s = k;
        std::sort(s.begin(), s.end());
        do {
            r.check("symmetry", t.at(s) == v, tuple_str(k) + " vs " + tuple_str(s));
        } while (std::next_permutation(s.begin(), s.end()));
    }
    if (t.g == 0 && t.n == 3) r.check("tau0^3=1", t.at({0, 0, 0}) == 1, "got " + to_str(t.at({0, 0, 0})));
    return r;
}

Report positivity_check(int gmax, int kmax) {
    Report r;
    r.suite = "gw-positivity";
    r.clause("nonnegative");
    for (int g = 1; g <= gmax; ++g) {
        GwTable t = extract(g, 1, kmax);
        for (const auto& [k, v] : t.entries)
            r.check("nonnegative", v >= 0, "g=" + std::to_string(g) + " k=" + std::to_string(k[0]) + ": " + to_str(v));
    }
    return r;
}

CnSeries cn_series(const MTower& m, const std::vector<Q>& zs, int K) {
    int n = static_cast<int>(zs.size());
    if (n < 2) throw std::invalid_argument("C_n needs n >= 2");
    CnSeries c;
    c.points = zs;
    c.determinantal = corr::wn_eval(m, zs, K).values;
    c.omega_sum.assign(K + 1, Q(0));
    Q jac = 1;
    for (const Q& z : zs) jac *= 1 - 1 / (z * z);
    for (int g = 0; n - 2 + 2 * g <= K; ++g) {
        Q v;
        if (g == 0 && n == 2) {
            Q dx = zs[0] + 1 / zs[0] - zs[1] - 1 / zs[1];
            v = toprec::omega_02(zs[0], zs[1]) / jac - 1 / (dx * dx);
        } else {
            v = toprec::omega(g, n)->eval(zs) / jac;
        }
        c.omega_sum[n - 2 + 2 * g] = v;
    }
    return c;
}

Report cn_check(const MTower& m, const std::vector<std::vector<Q>>& tuples, int K) {
    Report r;
    r.suite = "gw-cn";
    r.clause("two-path");
    for (const auto& zs : tuples) {
        CnSeries c = cn_series(m, zs, K);
        for (int k = 0; k <= K; ++k)
            if (c.determinantal[k] != c.omega_sum[k]) {
                std::string at = "(";
                for (size_t i = 0; i < zs.size(); ++i) at += (i ? "," : "") + to_str(zs[i]);
                r.fail("two-path", at + ") hbar^" + std::to_string(k));
                break;
            }
    }
    return r;
}

}  // namespace gw
}  // namespace difftop
