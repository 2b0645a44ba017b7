#include "difftop/correlators.hpp"

#include "difftop/curve.hpp"
#include "difftop/toprec.hpp"

#include <algorithm>
#include <exception>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace difftop {

// ---- LogPoly

namespace {

void trim(std::vector<int>& k) {
    while (!k.empty() && k.back() == 0) k.pop_back();
}

}  // namespace

LogPoly::LogPoly(const Q& q) {
    if (q != 0) c[{}] = q;
}

LogPoly LogPoly::in_symbol(const std::vector<Q>& coeffs, int s) {
    LogPoly r;
    for (int j = 0; j < static_cast<int>(coeffs.size()); ++j) {
        if (coeffs[j] == 0) continue;
        std::vector<int> k(s + 1, 0);
        k[s] = j;
        trim(k);
        r.c[k] += coeffs[j];
    }
    return r;
}

int LogPoly::degree_in(int s) const {
    int d = c.empty() ? -1 : 0;
    for (const auto& [k, v] : c)
        if (s < static_cast<int>(k.size())) d = std::max(d, k[s]);
    return d;
}

LogPoly LogPoly::operator-() const {
    LogPoly r = *this;
    for (auto& [k, v] : r.c) v = -v;
    return r;
}

LogPoly operator+(const LogPoly& a, const LogPoly& b) {
    LogPoly r = a;
    for (const auto& [k, v] : b.c) {
        Q& t = r.c[k];
        t += v;
        if (t == 0) r.c.erase(k);
    }
    return r;
}

LogPoly operator*(const LogPoly& a, const LogPoly& b) {
    LogPoly r;
    for (const auto& [ka, va] : a.c)
        for (const auto& [kb, vb] : b.c) {
            std::vector<int> k(std::max(ka.size(), kb.size()), 0);
            for (size_t i = 0; i < ka.size(); ++i) k[i] += ka[i];
            for (size_t i = 0; i < kb.size(); ++i) k[i] += kb[i];
            Q& t = r.c[k];
            t += va * vb;
            if (t == 0) r.c.erase(k);
        }
    return r;
}

std::string LogPoly::str() const {
    if (c.empty()) return "0";
    std::string s;
    for (const auto& [k, v] : c) {
        if (!s.empty()) s += " + ";
        s += to_str(v);
        for (size_t i = 0; i < k.size(); ++i)
            if (k[i]) s += "*L" + std::to_string(i) + (k[i] > 1 ? "^" + std::to_string(k[i]) : "");
    }
    return s;
}

namespace corr {

namespace {

Q inv_fact(int j) { return Q(1) / Q(factorial(j)); }

Q xq(const Q& z) { return z + Q(1) / z; }

template <class S>
using HM = std::vector<Mat2<S>>;

template <class S>
HM<S> hmul(const HM<S>& a, const HM<S>& b, int K) {
    HM<S> r(K + 1, Mat2<S>::zero());
    for (int i = 0; i <= K && i < static_cast<int>(a.size()); ++i)
        for (int j = 0; i + j <= K && j < static_cast<int>(b.size()); ++j) r[i + j] += a[i] * b[j];
    return r;
}

template <class S>
Mat2<S> lift(const QMat& m) {
    return m.map([](const Q& q) { return S(q); });
}

template <class S>
HM<S> lift(const std::vector<QMat>& m) {
    HM<S> r;
    for (const auto& e : m) r.push_back(lift<S>(e));
    return r;
}

// (-1)^(n+1)/n sum_{S_n} Tr(prod M)/prod cyclic differences, minus 1/(x1-x2)^2 for n = 2
template <class S>
std::vector<S> cyclic_sum(const std::vector<HM<S>>& Ms, const std::vector<S>& xs, int K) {
    const int n = static_cast<int>(Ms.size());
    std::vector<int> perm(n - 1);
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<S> out(K + 1, S(Q(0)));
    do {
        std::vector<int> ord{0};
        ord.insert(ord.end(), perm.begin(), perm.end());
        HM<S> prod = Ms[ord[0]];
        for (int i = 1; i < n; ++i) prod = hmul(prod, Ms[ord[i]], K);
        S den(Q(1));
        for (int i = 0; i < n; ++i) den = den * (xs[ord[i]] - xs[ord[(i + 1) % n]]);
        for (int k = 0; k <= K; ++k) {
            S tr = prod[k].trace();
            out[k] = out[k] + tr / den;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (n % 2 == 0)
        for (auto& v : out) v = -v;
    if (n == 2) {
        S d = xs[0] - xs[1];
        out[0] = out[0] - S(Q(1)) / (d * d);
    }
    return out;
}

void need(const MTower& t, int K, const char* who) {
    if (static_cast<int>(t.M.size()) <= K)
        throw std::invalid_argument(std::string(who) + ": M tower too short");
}

std::string tuple_str(const std::vector<Q>& zs) {
    std::string s = "(";
    for (size_t i = 0; i < zs.size(); ++i) s += (i ? "," : "") + to_str(zs[i]);
    return s + ")";
}

bool poles_at_branchpoints_only(const RatFunc& f) {
    if (f.is_zero()) return true;
    Poly den = f.den();
    for (int a : {1, -1}) den = den.strip_root(a).second;
    if (den.deg() > 0) return false;
    // O(1/x^2) on both ends of the x-line
    return f.order_at(0) >= 2 && f.order_at_infinity() >= 2;
}

RatFunc limit_at_infinity(const RatFunc& f) {
    int dn = f.num().deg(), dd = f.den().deg();
    if (dn > dd) throw std::domain_error("w1_tower: primitive grows at infinity");
    if (dn < dd || f.is_zero()) return RatFunc(Q(0));
    return RatFunc(f.num().lead() / f.den().lead());
}

}  // namespace

std::vector<QMat> m_at(const MTower& t, const Q& z, int K) {
    need(t, K, "m_at");
    std::vector<QMat> r;
    for (int k = 0; k <= K; ++k) r.push_back(t.M[k].map([&](const RatFunc& f) { return f.eval(z); }));
    return r;
}

W1Tower w1_tower(const MTower& t, int K) {
    need(t, K + 1, "w1_tower");
    W1Tower r;
    r.wm1 = LogElement::lambda_pow(1, RatFunc(Q(-1)));
    // dW[m + 1][j] = d^j W^(m)/dx^j; slot j = 0 of W^(-1) is unused
    std::vector<std::vector<RatFunc>> dW;
    LogElement d1 = r.wm1.dx();
    if (d1.lambda_deg() > 0) throw std::logic_error("w1_tower: derivative of W^(-1) is not rational");
    dW.push_back({RatFunc(Q(0)), d1.part(0)});
    auto get = [&](int m, int j) -> const RatFunc& {
        auto& row = dW.at(m + 1);
        while (static_cast<int>(row.size()) <= j) row.push_back(diffsys::ddx(row.back()));
        return row[j];
    };
    for (int k = 0; k <= K; ++k) {
        RatFunc F = t.M[k + 1](0, 1);
        for (int j = 2; j <= k + 2; ++j) F -= get(k + 1 - j, j) * inv_fact(j);
        RfPrimitive p = integrate_rf(F * curve::dx_dz());
        if (p.log_coeff != 0) throw NonIntegrableResidue("0", p.log_coeff);
        RatFunc w = p.rational - limit_at_infinity(p.rational);
        r.w.push_back(w);
        dW.push_back({w});
    }
    return r;
}

bool valid_points(const std::vector<Q>& zs) {
    for (size_t i = 0; i < zs.size(); ++i) {
        if (zs[i] == 0 || zs[i] == 1 || zs[i] == -1) return false;
        for (size_t j = 0; j < i; ++j)
            if (zs[i] == zs[j] || zs[i] * zs[j] == 1) return false;
    }
    return true;
}

CorrelatorSample wn_eval(const MTower& t, const std::vector<Q>& zs, int K) {
    if (zs.size() < 2) throw std::invalid_argument("wn_eval: n >= 2");
    if (!valid_points(zs)) throw std::invalid_argument("wn_eval: coincident or invalid points " + tuple_str(zs));
    std::vector<HM<Q>> Ms;
    std::vector<Q> xs;
    for (const auto& z : zs) {
        Ms.push_back(m_at(t, z, K));
        xs.push_back(xq(z));
    }
    return CorrelatorSample{zs, K, cyclic_sum<Q>(Ms, xs, K)};
}

std::vector<RatFunc> wn_symbolic(const MTower& t, const std::vector<Q>& zs, int slot, int K) {
    need(t, K, "wn_symbolic");
    std::vector<HM<RatFunc>> Ms;
    std::vector<RatFunc> xs;
    for (int i = 0; i < static_cast<int>(zs.size()); ++i) {
        if (i == slot) {
            Ms.push_back(HM<RatFunc>(t.M.begin(), t.M.begin() + K + 1));
            xs.push_back(curve::x_of_z());
        } else {
            Ms.push_back(lift<RatFunc>(m_at(t, zs[i], K)));
            xs.push_back(RatFunc(xq(zs[i])));
        }
    }
    return cyclic_sum<RatFunc>(Ms, xs, K);
}

std::vector<RatFunc> wn_diagonal_symbolic(const MTower& t, int K) {
    need(t, K, "wn_diagonal");
    std::vector<RMat> d2;
    for (int k = 0; k <= K; ++k) d2.push_back(t.M[k].map([](const RatFunc& f) { return diffsys::ddx(diffsys::ddx(f)); }));
    std::vector<RatFunc> r(K + 1, RatFunc(Q(0)));
    for (int i = 0; i <= K; ++i)
        for (int j = 0; i + j <= K; ++j) r[i + j] += (t.M[i] * d2[j]).trace() * Q(1, 2);
    return r;
}

std::vector<Q> wn_diagonal(const MTower& t, const Q& z, int K) {
    std::vector<Q> r;
    for (const auto& f : wn_diagonal_symbolic(t, K)) r.push_back(f.eval(z));
    return r;
}

std::vector<std::vector<Q>> random_tuples(std::uint64_t seed, int n, int count) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    std::vector<std::vector<Q>> out;
    while (static_cast<int>(out.size()) < count) {
        std::vector<Q> zs;
        for (int i = 0; i < n; ++i) zs.push_back(frac(num(rng), den(rng)));
        if (valid_points(zs)) out.push_back(zs);
    }
    return out;
}

std::vector<CorrelatorSample> sample_values(const MTower& t, const std::vector<std::vector<Q>>& tuples, int K,
                                            bool parallel) {
    const int N = static_cast<int>(tuples.size());
    std::vector<CorrelatorSample> out(N);
    if (!parallel) {
        for (int i = 0; i < N; ++i) out[i] = wn_eval(t, tuples[i], K);
        return out;
    }
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < N; ++i) {
        try {
            out[i] = wn_eval(t, tuples[i], K);
        } catch (...) {
#pragma omp critical
            err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    return out;
}

// ---- loop equations

namespace {

using HL = HM<LogPoly>;

LogPoly log_at(const LogElement& e, const Q& z, int sym) { return LogPoly::in_symbol(e.eval(z), sym); }

HL d_at(const DTower& d, const Q& z, int sym, int K, bool deriv) {
    if (static_cast<int>(d.D.size()) <= K) throw std::invalid_argument("loop: D tower too short");
    HL r;
    for (int k = 0; k <= K; ++k) {
        const LMat& m = d.D[k];
        r.push_back(m.map([&](const LogElement& e) { return log_at(deriv ? e.dx() : e, z, sym); }));
    }
    return r;
}

void add_shifted(HLog& acc, const std::vector<LogPoly>& v, int shift, int lo, int hi, const Q& s = Q(1)) {
    for (int k = 0; k < static_cast<int>(v.size()); ++k) {
        int o = k + shift;
        if (o < lo || o > hi) continue;
        acc[o] += v[k] * LogPoly(s);
    }
}

std::vector<LogPoly> traces(const HL& m) {
    std::vector<LogPoly> r;
    for (const auto& e : m) r.push_back(e.trace());
    return r;
}

HLog hl_mul(const HLog& a, const HLog& b, int hi) {
    HLog r;
    for (const auto& [i, x] : a)
        for (const auto& [j, y] : b)
            if (i + j <= hi) r[i + j] += x * y;
    return r;
}

HLog hl_add(HLog a, const HLog& b, const Q& s = Q(1)) {
    for (const auto& [k, v] : b) a[k] += v * LogPoly(s);
    return a;
}

HLog hl_scale(HLog a, const Q& s) {
    for (auto& [k, v] : a) v = v * LogPoly(s);
    return a;
}

HLog from_q(const std::vector<Q>& v) {
    HLog r;
    for (int k = 0; k < static_cast<int>(v.size()); ++k) r[k] = LogPoly(v[k]);
    return r;
}

HLog w1_at(const W1Tower& w, const Q& z, int sym, int K) {
    HLog r;
    r[-1] = log_at(w.wm1, z, sym);
    for (int k = 0; k <= K; ++k) r[k] = LogPoly(w.w[k].eval(z));
    return r;
}

HLog w1_prime_at(const W1Tower& w, const Q& z, int K) {
    HLog r;
    LogElement d = w.wm1.dx();
    r[-1] = LogPoly(d.part(0).eval(z));
    for (int k = 0; k <= K; ++k) r[k] = LogPoly(diffsys::ddx(w.w[k]).eval(z));
    return r;
}

void clean(HLog& h) {
    for (auto it = h.begin(); it != h.end();)
        it = it->second.is_zero() ? h.erase(it) : std::next(it);
}

bool hl_equal(HLog a, HLog b) {
    clean(a);
    clean(b);
    return a == b;
}

std::string first_nonzero(HLog h) {
    clean(h);
    return h.empty() ? "" : "hbar^" + std::to_string(h.begin()->first);
}

}  // namespace

HLog p1_at(const DTower& d, const Q& z, int K) {
    HL D = d_at(d, z, 0, K + 2, false);
    HLog r;
    for (int i = 0; i <= K + 2; ++i)
        for (int j = 0; i + j <= K + 2; ++j) {
            // -det D/hbar^2 (= Tr D^2/(2 hbar^2) for traceless D)
            LogPoly v = D[i](0, 1) * D[j](1, 0) - D[i](0, 0) * D[j](1, 1);
            r[i + j - 2] += v;
        }
    clean(r);
    return r;
}

HLog pn_at(const DTower& d, const MTower& m, const Q& z, const std::vector<Q>& L, int K) {
    const int n = static_cast<int>(L.size());
    if (n < 1) throw std::invalid_argument("pn_at: n >= 1");
    if (n == 1) return p2_direct_at(d, m, z, L[0], K);
    const Q x = xq(z);
    std::vector<HL> Ms;
    std::vector<Q> xs;
    for (const auto& p : L) {
        Ms.push_back(lift<LogPoly>(m_at(m, p, K + 1)));
        xs.push_back(xq(p));
    }
    HL Dx = d_at(d, z, 0, K + 1, false);
    HLog Qx, res;
    std::vector<int> sg(n);
    std::iota(sg.begin(), sg.end(), 0);
    do {
        HL P = Ms[sg[0]];
        for (int i = 1; i < n; ++i) P = hmul(P, Ms[sg[i]], K + 1);
        Q inner = 1;
        for (int i = 0; i + 1 < n; ++i) inner *= xs[sg[i]] - xs[sg[i + 1]];
        const int a = sg[0], b = sg[n - 1];
        Q den = (x - xs[a]) * inner * (xs[b] - x);
        add_shifted(Qx, traces(hmul(Dx, P, K + 1)), -1, -1, K, Q(1) / den);
        HL Da = d_at(d, L[a], a + 1, K + 1, false);
        HL Db = d_at(d, L[b], b + 1, K + 1, false);
        add_shifted(res, traces(hmul(Da, P, K + 1)), -1, -1, K, Q(1) / (inner * (xs[b] - xs[a]) * (x - xs[a])));
        add_shifted(res, traces(hmul(Db, P, K + 1)), -1, -1, K, Q(-1) / ((xs[b] - xs[a]) * inner * (x - xs[b])));
    } while (std::next_permutation(sg.begin(), sg.end()));
    HLog r = hl_add(Qx, res, Q(-1));
    if (n % 2) r = hl_scale(r, Q(-1));
    clean(r);
    return r;
}

HLog p2_direct_at(const DTower& d, const MTower& m, const Q& z, const Q& z2, int K) {
    const Q x = xq(z), x2 = xq(z2);
    HL M2 = lift<LogPoly>(m_at(m, z2, K + 1));
    HL Dx = d_at(d, z, 0, K + 1, false);
    HL D2 = d_at(d, z2, 1, K + 1, false);
    HL Dp2 = d_at(d, z2, 1, K + 1, true);
    HLog r;
    const Q e = x - x2;
    add_shifted(r, traces(hmul(Dx, M2, K + 1)), -1, -1, K, Q(1) / (e * e));
    add_shifted(r, traces(hmul(D2, M2, K + 1)), -1, -1, K, Q(-1) / (e * e));
    add_shifted(r, traces(hmul(Dp2, M2, K + 1)), -1, -1, K, Q(-1) / e);
    clean(r);
    return r;
}

namespace {

// W_n at the listed points; points equal to z (index 0) beyond the first are taken as a diagonal limit
HLog w_at(const MTower& m, const W1Tower& w1, const std::vector<Q>& pts, const std::vector<int>& syms, int K) {
    if (pts.size() == 1) return w1_at(w1, pts[0], syms[0], K);
    bool coincident = !valid_points(pts);
    if (!coincident) return from_q(wn_eval(m, pts, K).values);
    // exactly one duplicated pair at slots 0 and 1
    std::vector<RatFunc> s = wn_symbolic(m, pts, 1, K);
    std::vector<Q> v;
    for (const auto& f : s) v.push_back(f.eval(pts[1]));
    return from_q(v);
}

}  // namespace

Report loop_check(const DTower& d, const MTower& m, const LoopInput& in) {
    Report rep;
    rep.suite = "loop";
    const int K = in.K;
    W1Tower w1 = w1_tower(m, K + 1);
    const int n = static_cast<int>(in.extra.size());
    std::vector<HLog> Ps;
    for (const auto& z : in.samples) {
        const std::string tag = "z=" + to_str(z);
        // (a) P1 = W2(x,x) + W1^2
        HLog p1 = p1_at(d, z, K);
        HLog w1x = w1_at(w1, z, 0, K + 1);
        HLog rhs = hl_add(from_q(wn_diagonal(m, z, K)), hl_mul(w1x, w1x, K));
        HLog diff = hl_add(p1, rhs, Q(-1));
        for (auto it = diff.begin(); it != diff.end();)
            it = it->first > K ? diff.erase(it) : std::next(it);
        rep.check("P1=W2(x,x)+W1^2", hl_equal(diff, {}), tag + " " + first_nonzero(diff));
        if (n == 0) continue;
        std::vector<Q> all{z};
        all.insert(all.end(), in.extra.begin(), in.extra.end());
        HLog P = pn_at(d, m, z, in.extra, K);
        Ps.push_back(P);
        // (c) residual of the loop equation of rank n
        std::vector<int> syms(n + 1);
        std::iota(syms.begin(), syms.end(), 0);
        HLog R = P;
        {
            std::vector<Q> pts{z, z};
            pts.insert(pts.end(), in.extra.begin(), in.extra.end());
            R = hl_add(R, w_at(m, w1, pts, {0, 0}, K));
        }
        R = hl_add(R, hl_scale(hl_mul(w1x, w_at(m, w1, all, syms, K + 1), K), Q(2)));
        for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
            std::vector<Q> A{z}, B{z};
            std::vector<int> sa{0}, sb{0};
            for (int j = 0; j < n; ++j) {
                if (mask & (1u << j)) {
                    A.push_back(in.extra[j]);
                    sa.push_back(j + 1);
                } else {
                    B.push_back(in.extra[j]);
                    sb.push_back(j + 1);
                }
            }
            R = hl_add(R, hl_mul(w_at(m, w1, A, sa, K), w_at(m, w1, B, sb, K), K));
        }
        const Q x = xq(z);
        for (int j = 0; j < n; ++j) {
            const Q xj = xq(in.extra[j]);
            std::vector<Q> withx{z};
            std::vector<int> sw{0};
            for (int i = 0; i < n; ++i)
                if (i != j) {
                    withx.push_back(in.extra[i]);
                    sw.push_back(i + 1);
                }
            HLog Wl, Wl_prime;
            if (n == 1) {
                Wl = w1_at(w1, in.extra[0], 1, K);
                Wl_prime = w1_prime_at(w1, in.extra[0], K);
            } else {
                Wl = from_q(wn_eval(m, in.extra, K).values);
                std::vector<RatFunc> s = wn_symbolic(m, in.extra, j, K);
                std::vector<Q> v;
                for (const auto& f : s) v.push_back(diffsys::ddx(f).eval(in.extra[j]));
                Wl_prime = from_q(v);
            }
            HLog num = hl_add(w_at(m, w1, withx, sw, K), Wl, Q(-1));
            R = hl_add(R, hl_scale(num, Q(1) / ((x - xj) * (x - xj))));
            R = hl_add(R, hl_scale(Wl_prime, Q(-1) / (x - xj)));
        }
        for (auto it = R.begin(); it != R.end();)
            it = it->first > K ? R.erase(it) : std::next(it);
        rep.check("loop-equation-rank-" + std::to_string(n), hl_equal(R, {}), tag + " " + first_nonzero(R));
    }
    // (b) constancy in x: no ln z_x dependence and identical values across samples, order by order
    auto constancy = [&](const std::vector<HLog>& v, const std::string& id) {
        for (size_t i = 0; i < v.size(); ++i)
            for (int k = -1; k <= K; ++k) {
                auto get = [&](const HLog& h) {
                    auto it = h.find(k);
                    return it == h.end() ? LogPoly() : it->second;
                };
                LogPoly a = get(v[i]);
                if (a.degree_in(0) > 0) {
                    rep.fail(id, "hbar^" + std::to_string(k) + " depends on ln z at z=" + to_str(in.samples[i]));
                    return;
                }
                if (get(v[0]) != a) {
                    rep.fail(id, "hbar^" + std::to_string(k) + " differs between z=" + to_str(in.samples[0]) +
                                     " and z=" + to_str(in.samples[i]));
                    return;
                }
            }
        rep.clause(id);
    };
    if (n >= 1) constancy(Ps, "P" + std::to_string(n + 1) + "-constant");
    return rep;
}

// ---- audits

Report tt_audit(const MTower& m, int K, int nmax, std::uint64_t seed, int tuples) {
    Report rep;
    rep.suite = "tt";
    // n = 1
    try {
        W1Tower w1 = w1_tower(m, K);
        for (int k = 0; k <= K; ++k) {
            if (k % 2 == 0) rep.check("parity", w1.w[k].is_zero(), "n=1 hbar^" + std::to_string(k));
            else rep.check("poles", poles_at_branchpoints_only(w1.w[k]), "n=1 hbar^" + std::to_string(k));
        }
    } catch (const NonIntegrableResidue& e) {
        rep.fail("poles", std::string("n=1 ") + e.what());
    }
    rep.clause("leading-order");
    for (int n = 2; n <= nmax; ++n) {
        auto tup = random_tuples(seed + n, n, tuples);
        for (const auto& s : sample_values(m, tup, K)) {
            for (int k = 0; k <= K; ++k) {
                const std::string where = "n=" + std::to_string(n) + " hbar^" + std::to_string(k) + " at " + tuple_str(s.points);
                if ((k - n) % 2 != 0) rep.check("parity", s.values[k] == 0, where);
                if (k < n - 2) rep.check("leading-order", s.values[k] == 0, where);
            }
        }
        std::vector<RatFunc> sym = wn_symbolic(m, tup[0], 0, K);
        for (int k = 0; k <= K; ++k) {
            if (n == 2 && k == 0) continue;  // the Bergmann part, audited separately
            rep.check("poles", poles_at_branchpoints_only(sym[k]),
                      "n=" + std::to_string(n) + " hbar^" + std::to_string(k) + " at " + tuple_str(tup[0]));
        }
    }
    rep.clause("series");
    return rep;
}

Report tr_compare(const MTower& m, int g, int n, int trials, std::uint64_t seed) {
    Report rep;
    rep.suite = "tr(" + std::to_string(g) + "," + std::to_string(n) + ")";
    if (g == 0 && n == 2) {
        rep.check("bergmann", bergmann_identity(m), "symbolic");
        return rep;
    }
    const int order = n - 2 + 2 * g;
    auto w = toprec::omega(g, n);
    if (n == 1) {
        W1Tower w1 = w1_tower(m, order);
        rep.check("symbolic", w1.w[order] * curve::dx_dz() == w->as_ratfunc(), "z");
        return rep;
    }
    for (const auto& s : sample_values(m, random_tuples(seed, n, trials), order)) {
        Q lhs = s.values[order];
        for (const auto& z : s.points) lhs *= curve::dx_dz().eval(z);
        rep.check("tuples", lhs == w->eval(s.points), tuple_str(s.points));
    }
    return rep;
}

namespace {

// polynomial in (z1, z2)
using Bi = std::map<std::pair<int, int>, Q>;

Bi bi_mul(const Bi& a, const Bi& b) {
    Bi r;
    for (const auto& [ka, va] : a)
        for (const auto& [kb, vb] : b) r[{ka.first + kb.first, ka.second + kb.second}] += va * vb;
    for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
    return r;
}

Bi bi_add(Bi a, const Bi& b) {
    for (const auto& [k, v] : b) a[k] += v;
    for (auto it = a.begin(); it != a.end();) it = it->second == 0 ? a.erase(it) : std::next(it);
    return a;
}

Bi bi_from(const Poly& p, int var) {
    Bi r;
    for (int i = 0; i <= p.deg(); ++i)
        if (p.coeff(i) != 0) r[var == 0 ? std::make_pair(i, 0) : std::make_pair(0, i)] = p.coeff(i);
    return r;
}

}  // namespace

bool bergmann_identity(const MTower& m) {
    need(m, 0, "bergmann_identity");
    const RMat& M0 = m.M[0];
    // common denominator of M0
    Poly d = Poly::constant(1);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const Poly& e = M0(i, j).den();
            d = d * e.exact_div(Poly::gcd(d, e));
        }
    RMat P = M0.map([&](const RatFunc& f) { return f * RatFunc(d); });
    Bi tr;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            if (!P(i, j).den().is_constant() || !P(j, i).den().is_constant()) return false;
            Poly a = P(i, j).num() * (Q(1) / P(i, j).den().lead());
            Poly b = P(j, i).num() * (Q(1) / P(j, i).den().lead());
            tr = bi_add(tr, bi_mul(bi_from(a, 0), bi_from(b, 1)));
        }
    // Tr(M(z1) M(z2)) x'(z1) x'(z2) (z1-z2)^2 = (x1-x2)^2, cleared by z1^2 z2^2 d(z1) d(z2)
    Poly q = Poly::monomial(1, 2) - Poly::constant(1);  // z^2 - 1
    Bi lhs = bi_mul(bi_mul(tr, bi_from(q, 0)), bi_from(q, 1));
    Bi diff{{{1, 0}, Q(1)}, {{0, 1}, Q(-1)}};
    lhs = bi_mul(lhs, bi_mul(diff, diff));
    Bi zz1{{{1, 1}, Q(1)}, {{0, 0}, Q(-1)}};
    Bi rhs = bi_mul(bi_mul(diff, diff), bi_mul(zz1, zz1));
    rhs = bi_mul(rhs, bi_mul(bi_from(d, 0), bi_from(d, 1)));
    return lhs == rhs;
}

}  // namespace corr
}  // namespace difftop
