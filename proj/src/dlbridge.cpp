#include "difftop/dlbridge.hpp"

#include "difftop/curve.hpp"

#include <string>

namespace difftop::dl {

namespace {

std::string order_tag(int k) { return "order " + std::to_string(k); }
Q inv_fact(int j) { return Q(1) / Q(factorial(j)); }

RatFunc z_() { return RatFunc::variable(); }
RatFunc rc(const Q& q) { return RatFunc(q); }

LMat dxm(const LMat& m) {
    return m.map([](const LogElement& e) { return e.dx(); });
}

// d^j D_k / dx^j, filled on demand
class LDeriv {
public:
    explicit LDeriv(const std::vector<LMat>& D) {
        for (const auto& d : D) d_.push_back({d});
    }
    void push(const LMat& m) { d_.push_back({m}); }
    const LMat& get(int k, int j) {
        auto& row = d_.at(k);
        while (static_cast<int>(row.size()) <= j) row.push_back(dxm(row.back()));
        return row[j];
    }

private:
    std::vector<std::vector<LMat>> d_;
};

struct LData {
    std::vector<LMat> L, Lp;  // L_l and dL_l/dx
    LMat at(int l) const { return l < static_cast<int>(L.size()) ? L[l] : LMat::zero(); }
    LMat d_at(int l) const { return l >= 0 && l < static_cast<int>(Lp.size()) ? Lp[l] : LMat::zero(); }
};

LData make_ldata(const LSeries& L) {
    LData d;
    for (const auto& m : L) {
        d.L.push_back(to_log(m));
        d.Lp.push_back(to_log(m.map(diffsys::ddx)));
    }
    return d;
}

bool is_zero_mat(const LMat& m) {
    return m(0, 0).is_zero() && m(0, 1).is_zero() && m(1, 0).is_zero() && m(1, 1).is_zero();
}

// hbar^n coefficient of L D - D(x+hbar) L + hbar L' using D_i for i <= imax only
// (sign flipped so that, with imax = n - 1, the result equals [L0, D_n])
LMat residual(int n, int imax, LDeriv& dd, const LData& Ld) {
    LMat r = LMat::zero();
    for (int i = 0; i <= imax && i <= n; ++i)
        for (int j = 0; i + j <= n; ++j) {
            LMat Ll = Ld.at(n - i - j);
            if (is_zero_mat(Ll)) continue;
            r += (dd.get(i, j) * Ll).scaled(inv_fact(j));
        }
    r -= Ld.d_at(n - 1);
    for (int i = 0; i <= imax && i <= n; ++i) {
        LMat Ll = Ld.at(n - i);
        if (is_zero_mat(Ll)) continue;
        r -= Ll * dd.get(i, 0);
    }
    return r;
}

bool is_p1_l0(const RMat& L0) {
    return L0 == RMat(curve::x_of_z(), rc(-1), rc(1), rc(0));
}

LMat next_d(int k, LDeriv& dd, const LData& Ld) {
    const RatFunc x = curve::x_of_z();
    const RatFunc z = z_();
    LMat O = residual(k, k - 1, dd, Ld);
    LMat rest = residual(k + 1, k - 1, dd, Ld);
    LogElement T = -rest.trace();
    // (x^2-4) b' + x b = -2T + x O12' + 2 O11'
    LogElement rhs = T * Q(-2) + O(0, 1).dx().times(x) + O(0, 0).dx() * Q(2);
    LogElement G = rhs.times(RatFunc(Q(1)) / z).integrate();
    Laurent g1 = G.local(1, 0);
    if (g1.valuation() < 0) throw std::logic_error("d_from_l: primitive has a pole at z = 1, " + order_tag(k));
    G += LogElement(g1.coeff(0) * Q(-1));
    LogElement b = G.times(z / (z * z - rc(1)));
    LogElement a = b.times(x * Q(-1, 2)) + O(0, 1) * Q(1, 2);
    LogElement c = -b - O(0, 0);
    LMat Dk(a, b, c, -a);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (Dk(i, j).local(-1, 0).valuation() < 0)
                throw ResidualPoleAtMinusOne("pole at z = -1 survives in D at " + order_tag(k));
    return Dk;
}

Laurent exp_series(int prec) {
    std::vector<Q> c;
    for (int n = 0; n < prec; ++n) c.push_back(Q(1) / Q(factorial(n)));
    return Laurent(0, prec, c);
}

// v = u^2 as a series in w = 2(cosh u - 1) = sum_{n>=1} 2 v^n/(2n)!
Laurent v_of_w(int prec) {
    Laurent w = Laurent::monomial(1, 1, prec);
    Laurent v = w;
    for (int it = 0; it < prec; ++it) {
        Laurent corr = Laurent::zero(prec);
        Laurent vp = v * v;
        for (int n = 2; n < prec + 1; ++n) {
            corr = corr + vp * (Q(2) / Q(factorial(2 * n)));
            vp = vp * v;
        }
        v = w - corr;
    }
    return v;
}

using HMat = std::vector<Mat2<Laurent>>;  // hbar grading

Mat2<Laurent> zero_w(int prec) {
    Laurent z0 = Laurent::zero(prec);
    return Mat2<Laurent>(z0, z0, z0, z0);
}

Mat2<Laurent> wmap(const LMat& m, int W) {
    return m.map([W](const LogElement& e) { return w_series(e, W); });
}

Mat2<Laurent> dw(const Mat2<Laurent>& m) {
    return m.map([](const Laurent& s) { return s.derivative(); });
}

HMat hmul(const HMat& a, const HMat& b, int K, int prec) {
    HMat r(K + 1, zero_w(prec));
    for (int i = 0; i <= K; ++i)
        for (int j = 0; i + j <= K; ++j) r[i + j] += a[i] * b[j];
    return r;
}

bool w_zero(const Laurent& s, int W) {
    for (int i = std::min(s.val(), 0); i <= W; ++i)
        if (s.coeff(i) != 0) return false;
    return true;
}

}  // namespace

LMat to_log(const RMat& m) {
    return m.map([](const RatFunc& f) { return LogElement(f); });
}

LMat d0_p1() {
    const RatFunc z = z_();
    const RatFunc q = z * z - rc(1);
    RatFunc d = (z * z + rc(1)) / (q * Q(2));
    RatFunc o = z / q;
    auto L = [](const RatFunc& f) { return LogElement::lambda_pow(1, f * Q(2)); };
    return LMat(L(d), L(-o), L(o), L(-d));
}

LMat d0_printed() {
    LMat d = d0_p1();
    return LMat(-d(0, 0), d(0, 1), d(1, 0), -d(1, 1));
}

RMat exp_closed_form(const LMat& d0) {
    RMat A = d0.map([](const LogElement& e) {
        if (e.lambda_deg() > 1 || !e.part(0).is_zero())
            throw std::invalid_argument("exp_closed_form: entry is not lambda times a rational function");
        return e.part(1) * Q(1, 2);
    });
    if (A * A != RMat::identity().scaled(Q(1, 4)))
        throw std::invalid_argument("exp_closed_form: A^2 != I/4");
    return RMat::identity().scaled(curve::x_of_z() * Q(1, 2)) + A.scaled(curve::sqrt_delta());
}

LMat d_from_l(const std::vector<LMat>& D, const LSeries& L) {
    if (!is_p1_l0(L.at(0))) throw std::invalid_argument("d_from_l: L0 is not the P^1 matrix");
    LDeriv dd(D);
    LData Ld = make_ldata(L);
    return next_d(static_cast<int>(D.size()), dd, Ld);
}

DTower d_tower(int K, const Q& lambda) {
    DTower t;
    t.lambda = lambda;
    LData Ld = make_ldata(diffsys::l_p1(lambda));
    t.D.push_back(d0_p1());
    LDeriv dd(t.D);
    for (int k = 1; k <= K; ++k) {
        t.D.push_back(next_d(k, dd, Ld));
        dd.push(t.D.back());
    }
    return t;
}

bool regular_at_branchpoints(const LMat& d) {
    for (int a : {1, -1})
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                if (d(i, j).local(a, 0).valuation() < 0) return false;
    return true;
}

bool poles_in_zero_infinity(const LMat& d) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (const auto& [p, f] : d(i, j).parts()) {
                (void)p;
                Poly den = f.den();
                for (int a : {0, 1, -1}) den = den.strip_root(a).second;
                if (den.deg() > 0) return false;
            }
    return regular_at_branchpoints(d);
}

Laurent w_series(const LogElement& f, int W) {
    const int up = 2 * W + 2;  // u-precision needed
    int pole = 0;
    for (const auto& [j, g] : f.parts()) {
        (void)j;
        pole = std::max(pole, -std::min(g.order_at(1), 0));
    }
    const int P = up + 2 * pole + 4;
    Laurent ez = exp_series(P);
    Laurent s = Laurent::zero(up);
    for (const auto& [j, g] : f.parts()) {
        Laurent gs = rf_at_series(g, ez).shifted(j);
        s = s + gs.truncated(up);
    }
    if (s.prec() < up) throw TruncationError("w_series: lost precision");
    std::vector<Q> cv;
    for (int i = std::min(s.val(), 0); i < up; ++i) {
        Q c = s.coeff(i);
        if (c == 0) continue;
        if (i < 0) throw std::domain_error("w_series: pole at x = 2");
        if (i % 2) throw std::domain_error("w_series: odd in u");
    }
    for (int i = 0; 2 * i < up; ++i) cv.push_back(s.coeff(2 * i));
    // Horner in v(w)
    Laurent v = v_of_w(W + 1);
    Laurent r = Laurent::zero(W + 1);
    for (int i = static_cast<int>(cv.size()) - 1; i >= 0; --i)
        r = r * v + Laurent::monomial(cv[i], 0, W + 1);
    return r;
}

std::vector<std::vector<Mat2<Laurent>>> a_sequence(const DTower& t, int K, int W, int kmax) {
    const int Wp = W + K + 1;
    int nd = std::min<int>(K, static_cast<int>(t.D.size()) - 1);
    // derivatives d^n D_m/dw^n as w-series
    std::vector<std::vector<Mat2<Laurent>>> Dd(nd + 1);
    for (int m = 0; m <= nd; ++m) {
        Dd[m].push_back(wmap(t.D[m], Wp));
        for (int n = 1; n <= K; ++n) Dd[m].push_back(dw(Dd[m].back()));
    }
    auto DD = [&](int n) {  // hbar-graded d^n D
        HMat h(K + 1, zero_w(Wp));
        for (int m = 0; m <= nd; ++m) h[m] = Dd[m][n];
        return h;
    };
    std::vector<HMat> A;
    HMat A0(K + 1, zero_w(Wp));
    A0[0](0, 0) = Laurent::monomial(1, 0, Wp);
    A0[0](1, 1) = Laurent::monomial(1, 0, Wp);
    A.push_back(A0);
    for (int k = 1; k <= kmax; ++k) {
        HMat Ak(K + 1, zero_w(Wp));
        for (int i = 0; i <= k - 1; ++i) {
            int n = k - 1 - i;
            if (n > K) continue;
            HMat p = hmul(DD(n), A[i], K, Wp);
            Q bc(binom(k - 1, i));
            for (int m = 0; m + n <= K; ++m) Ak[m + n] += p[m].scaled(bc);
        }
        A.push_back(Ak);
    }
    return A;
}

WMatSeries l_from_d(const DTower& t, int K, int W) {
    if (static_cast<int>(t.D.size()) <= K) throw std::invalid_argument("l_from_d: tower too short");
    const int Wp = W + K + 1;
    const int kmax = 2 * W + 4 * K + 4;
    std::vector<Mat2<Laurent>> Dw;
    for (int m = 0; m <= K; ++m) Dw.push_back(wmap(t.D[m], Wp));
    // B_k = A_k/k!, B_{k+1} = (hbar B_k' + B_k D)/(k+1)
    HMat B(K + 1, zero_w(Wp));
    B[0](0, 0) = Laurent::monomial(1, 0, Wp);
    B[0](1, 1) = Laurent::monomial(1, 0, Wp);
    HMat S = B;
    for (int k = 0; k < kmax; ++k) {
        HMat nb = hmul(B, Dw, K, Wp);
        for (int m = 1; m <= K; ++m) nb[m] += dw(B[m - 1]);
        Q f = Q(1) / Q(k + 1);
        for (auto& m : nb) m = m.scaled(f);
        B = nb;
        for (int m = 0; m <= K; ++m) S[m] += B[m];
    }
    for (const auto& m : B)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                if (!w_zero(m(i, j), W)) throw std::logic_error("l_from_d: exponential series not converged");
    WMatSeries r;
    r.K = K;
    r.W = W;
    for (auto& m : S) r.h.push_back(m.map([W](const Laurent& s) { return s.truncated(W + 1); }));
    return r;
}

Report round_trip_check(const WMatSeries& s, const Q& lambda) {
    Report rep;
    rep.suite = "round-trip";
    for (int m = 0; m <= s.K; ++m) {
        Q e[2][2] = {{0, 0}, {0, 0}};
        Q lin00 = 0;
        if (m == 0) {
            e[0][0] = 2;
            lin00 = 1;
            e[0][1] = -1;
            e[1][0] = 1;
        } else if (m == 1) {
            e[0][0] = lambda;
        }
        bool ok = true;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                const Laurent& c = s.h[m](i, j);
                for (int p = 0; p <= s.W; ++p) {
                    Q want = p == 0 ? e[i][j] : (p == 1 && i == 0 && j == 0 ? lin00 : Q(0));
                    if (c.coeff(p) != want) ok = false;
                }
            }
        std::string id = m == 0 ? "hbar0" : m == 1 ? "hbar1" : "hbar>=2";
        rep.check(id, ok, order_tag(m));
    }
    return rep;
}

Report compatibility_check(const DTower& t, const LSeries& L, int K) {
    Report rep;
    rep.suite = "compatibility";
    LDeriv dd(t.D);
    LData Ld = make_ldata(L);
    int n = std::min<int>(K, static_cast<int>(t.D.size()) - 1);
    for (int k = 0; k <= n; ++k) {
        rep.check("equation", is_zero_mat(residual(k, k, dd, Ld)), order_tag(k));
        rep.check("trace", residual(k + 1, k, dd, Ld).trace().is_zero(), order_tag(k));
        rep.check("traceless", t.D[k].trace().is_zero(), order_tag(k));
        rep.check("regular-at-branchpoints", regular_at_branchpoints(t.D[k]), order_tag(k));
        rep.check("poles-in-0-infinity", poles_in_zero_infinity(t.D[k]), order_tag(k));
    }
    return rep;
}

Report parity_probe(const DTower& t, int K) {
    Report rep;
    rep.suite = "parity";
    struct G {
        const char* name;
        RMat g, ginv;
    };
    const std::vector<G> gs = {
        {"J", RMat(rc(0), rc(1), rc(-1), rc(0)), RMat(rc(0), rc(-1), rc(1), rc(0))},
        {"-J", RMat(rc(0), rc(-1), rc(1), rc(0)), RMat(rc(0), rc(1), rc(-1), rc(0))},
        {"diag(1,-1)", RMat(rc(1), rc(0), rc(0), rc(-1)), RMat(rc(1), rc(0), rc(0), rc(-1))},
        {"diag(-1,1)", RMat(rc(-1), rc(0), rc(0), rc(1)), RMat(rc(-1), rc(0), rc(0), rc(1))},
        {"identity", RMat::identity(), RMat::identity()},
    };
    int n = std::min<int>(K, static_cast<int>(t.D.size()) - 1);
    for (const auto& g : gs)
        for (int k = 0; k <= n; ++k) {
            LMat lhs = to_log(g.ginv) * t.D[k].transpose() * to_log(g.g);
            LMat rhs = t.D[k].scaled(Q(k % 2 ? -1 : 1));
            rep.check(g.name, lhs == rhs, order_tag(k));
        }
    return rep;
}

}  // namespace difftop::dl
