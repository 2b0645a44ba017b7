#include "difftop/diffsys.hpp"

#include "difftop/curve.hpp"

#include <stdexcept>
#include <string>

namespace difftop {

Chart Chart::p1() { return Chart{curve::sqrt_delta(), diffsys::ddx}; }

const RMat& DerivTable::get(int k, int j) {
    auto& row = d_.at(k);
    while (static_cast<int>(row.size()) <= j) row.push_back(row.back().map(chart_.ddx));
    return row[j];
}

namespace diffsys {

namespace {

RatFunc rc(const Q& q) { return RatFunc(q); }
Q inv_fact(int j) { return Q(1) / Q(factorial(j)); }
RMat zero_mat() { return RMat::zero(); }

std::string order_tag(int k) { return "order " + std::to_string(k); }

}  // namespace

RatFunc ddx(const RatFunc& f) { return f.derivative() * curve::dz_dx(); }

LSeries l_p1(const Q& lambda) {
    RMat L0(curve::x_of_z(), rc(-1), rc(1), rc(0));
    RMat L1(rc(lambda), rc(0), rc(0), rc(0));
    return {L0, L1};
}

RMat m0_general(const RMat& L0, const Chart& c) {
    if (L0(0, 1).is_zero()) throw std::domain_error("m0_general: (L0)_12 vanishes");
    RatFunc half_tr = L0.trace() * Q(1, 2);
    RatFunc inv = RatFunc(Q(1)) / c.sqrt_delta;
    RMat A(L0(0, 0) - half_tr, L0(0, 1), L0(1, 0), L0(1, 1) - half_tr);
    return RMat::identity().scaled(Q(1, 2)) + A.scaled(inv);
}

RatFunc system_determinant(const RMat& L0) {
    RatFunc tr = L0.trace();
    return L0(0, 1) * (tr * tr - L0.det() * Q(4));
}

RMat m_next_general(const std::vector<RMat>& M, const LSeries& L, const Chart& c, DerivTable& dt) {
    const int k = static_cast<int>(M.size()) - 1;
    auto Lk = [&](int i) { return i < static_cast<int>(L.size()) ? L[i] : zero_mat(); };
    // C = sum_{m<=k} L_{k+1-m} M_m - sum_{i+j+m=k+1, m<=k} (1/j!) M_m^(j) L_i  (= [M_{k+1}, L0])
    RMat C = zero_mat();
    for (int m = 0; m <= k; ++m) {
        RMat Li = Lk(k + 1 - m);
        if (!(Li == zero_mat())) C += Li * M[m];
    }
    for (int m = 0; m <= k; ++m)
        for (int j = 0; j <= k + 1 - m; ++j) {
            int i = k + 1 - m - j;
            RMat Li = Lk(i);
            if (Li == zero_mat()) continue;
            C -= (dt.get(m, j) * Li).scaled(inv_fact(j));
        }
    RatFunc S = rc(0);
    for (int j = 1; j <= k; ++j) {
        RMat P = M[j] * M[k + 1 - j];
        S += P(0, 0);
    }
    const RMat& L0 = L[0];
    RatFunc d = L0(1, 1) - L0(0, 0);
    // unknowns (m11, m12, m21)
    RatFunc A[3][3] = {{rc(0), L0(1, 0), -L0(0, 1)},
                       {L0(0, 1) * Q(2), d, rc(0)},
                       {d, -L0(1, 0), -L0(0, 1)}};
    RatFunc b[3] = {C(0, 0), C(0, 1), c.sqrt_delta * S};
    auto det3 = [](RatFunc m[3][3]) {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    RatFunc D = det3(A);
    if (D.is_zero()) throw std::domain_error("m_next_general: singular recursion matrix");
    RatFunc x[3];
    for (int col = 0; col < 3; ++col) {
        RatFunc Ac[3][3];
        for (int r = 0; r < 3; ++r)
            for (int s = 0; s < 3; ++s) Ac[r][s] = (s == col) ? b[r] : A[r][s];
        x[col] = det3(Ac) / D;
    }
    return RMat(x[0], x[1], x[2], -x[0]);
}

MTower m_tower_general(const LSeries& L, int K, const Chart& c) {
    MTower t;
    t.lambda = L.size() > 1 ? L[1](0, 0) .constant_value() : Q(0);
    DerivTable dt(c);
    t.M.push_back(m0_general(L[0], c));
    dt.push(t.M.back());
    for (int k = 0; k < K; ++k) {
        t.M.push_back(m_next_general(t.M, L, c, dt));
        dt.push(t.M.back());
    }
    return t;
}

MTower m_p1(int K, const Q& lambda) {
    MTower t;
    t.lambda = lambda;
    const Chart c = Chart::p1();
    DerivTable dt(c);
    const RatFunc x = curve::x_of_z(), s = c.sqrt_delta;
    const RatFunc inv_delta = RatFunc(Q(1)) / (x * x - rc(4));
    t.M.push_back(m0_general(l_p1(lambda)[0], c));
    dt.push(t.M.back());
    for (int k = 0; k < K; ++k) {
        RatFunc v1 = rc(0), v2 = t.M[k](0, 1) * lambda, v3 = rc(0);
        for (int j = 1; j <= k + 1; ++j) {
            const RMat& d = dt.get(k + 1 - j, j);
            v1 -= (x * d(0, 0) + d(0, 1)) * inv_fact(j);
            v2 += d(0, 0) * inv_fact(j);
        }
        for (int j = 1; j <= k; ++j) v1 -= dt.get(k - j, j)(0, 0) * (lambda * inv_fact(j));
        for (int j = 1; j <= k; ++j)
            v3 += t.M[j](0, 0) * t.M[k + 1 - j](0, 0) + t.M[j](0, 1) * t.M[k + 1 - j](1, 0);
        v3 = v3 * s;
        RatFunc m11 = (x * v1 + v2 * Q(2) - x * v3) * inv_delta;
        RatFunc m12 = (v1 * Q(-2) - x * v2 + v3 * Q(2)) * inv_delta;
        RatFunc m21 = ((x * x - rc(2)) * v1 + x * v2 - v3 * Q(2)) * inv_delta;
        t.M.push_back(RMat(m11, m12, m21, -m11));
        dt.push(t.M.back());
    }
    return t;
}

Report m_audit(const MTower& t, const LSeries& L, int K, bool p1_symmetries) {
    Report r;
    r.suite = "m-structure";
    const Chart c = Chart::p1();
    DerivTable dt(c);
    for (const auto& m : t.M) dt.push(m);
    const int top = std::min(K, static_cast<int>(t.M.size()) - 1);
    auto Lk = [&](int i) { return i < static_cast<int>(L.size()) ? L[i] : zero_mat(); };

    for (int k = 0; k <= top; ++k) {
        RMat sq = zero_mat();
        RatFunc det = rc(0);
        for (int i = 0; i <= k; ++i) {
            sq += t.M[i] * t.M[k - i];
            det += t.M[i](0, 0) * t.M[k - i](1, 1) - t.M[i](0, 1) * t.M[k - i](1, 0);
        }
        r.check("idempotent", sq == t.M[k], order_tag(k));
        r.check("trace", t.M[k].trace() == rc(k == 0 ? 1 : 0), order_tag(k));
        r.check("det", det.is_zero(), order_tag(k));

        // M(x + hbar) L = L M(x)
        RMat lhs = zero_mat(), rhs = zero_mat();
        for (int m = 0; m <= k; ++m) {
            rhs += Lk(k - m) * t.M[m];
            for (int j = 0; j <= k - m; ++j) {
                RMat Li = Lk(k - m - j);
                if (Li == zero_mat()) continue;
                lhs += (dt.get(m, j) * Li).scaled(inv_fact(j));
            }
        }
        r.check("shift", lhs == rhs, order_tag(k));

        // x -> infinity is z -> infinity; M_0 -> diag(1,0) (its off-diagonal is -1/sqrt(x^2-4) ~ 1/x),
        // M_k = O(1/x^2) for k >= 1
        RMat tail = k == 0 ? t.M[0] - RMat(rc(1), rc(0), rc(0), rc(0)) : t.M[k];
        const int need = k == 0 ? 1 : 2;
        bool decay = true;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                if (!tail(i, j).is_zero() && tail(i, j).order_at_infinity() < need) decay = false;
        r.check("decay", decay, order_tag(k));

        bool poles = true;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                Poly rest = t.M[k](i, j).den().strip_root(1).second.strip_root(-1).second;
                if (rest.deg() > 0) poles = false;
            }
        r.check("poles", poles, order_tag(k));

        if (p1_symmetries) {
            if (k % 2 == 1) r.check("odd-diagonal", t.M[k](0, 0).is_zero(), order_tag(k));
            RatFunc expect = k % 2 == 1 ? t.M[k](0, 1) : -t.M[k](0, 1);
            if (k >= 1) r.check("offdiag-sign", t.M[k](1, 0) == expect, order_tag(k));
        }
    }
    return r;
}

Report reduced_system_diagnostic(const MTower& t, int K) {
    Report r;
    r.suite = "reduced-system";
    const Chart c = Chart::p1();
    DerivTable dt(c);
    for (const auto& m : t.M) dt.push(m);
    const RatFunc x = curve::x_of_z(), s = c.sqrt_delta;
    const RatFunc inv_delta = RatFunc(Q(1)) / (x * x - rc(4));
    auto d11 = [&](int m, int j) { return dt.get(m, j)(0, 0) * inv_fact(j); };
    auto d12 = [&](int m, int j) { return dt.get(m, j)(0, 1) * inv_fact(j); };
    auto M11 = [&](int m) { return t.M[m](0, 0); };
    auto M12 = [&](int m) { return t.M[m](0, 1); };
    const int top = std::min(K, static_cast<int>(t.M.size()) - 1);

    for (int k = 0; 2 * k + 1 <= top; ++k) {
        // first line as printed, read with (M_{2k+1})_{1,2} on the left
        for (int variant = 0; variant < 2; ++variant) {
            RatFunc pre = variant == 0 ? (rc(2) - x) * (rc(2) - x) : rc(2) - x * x;
            RatFunc b = rc(0);
            for (int l = 0; l <= k; ++l) b += pre * d11(2 * k - 2 * l, 2 * l + 1);
            for (int l = 1; l <= k; ++l) b -= x * Q(1, 2) * d11(2 * k - 2 * l, 2 * l);
            for (int l = 1; l <= k; ++l) b -= x * d12(2 * k - 2 * l + 1, 2 * l);
            for (int l = 0; l <= k; ++l) b -= x * d12(2 * k - 2 * l, 2 * l + 1);
            b = b * inv_delta;
            r.check(variant == 0 ? "odd-line-as-printed" : "odd-line-(2-x^2)", b == M12(2 * k + 1),
                    order_tag(2 * k + 1));
        }
    }
    for (int k = 1; 2 * k <= top; ++k) {
        RatFunc quad = rc(0);
        for (int l = 1; l <= k - 1; ++l) quad += M11(2 * l) * M11(2 * k - 2 * l) - M12(2 * l) * M12(2 * k - 2 * l);
        for (int l = 1; l <= k; ++l) quad += M12(2 * l - 1) * M12(2 * k - 2 * l + 1);

        RatFunc a = rc(0);
        for (int l = 1; l <= k; ++l) a += (rc(2) - x * x) * d11(2 * k - 2 * l, 2 * l);
        for (int l = 1; l <= k; ++l) a -= x * Q(1, 2) * d11(2 * k - 2 * l, 2 * l - 1);
        for (int l = 1; l <= k; ++l) a -= x * d12(2 * k - 2 * l, 2 * l);
        for (int l = 1; l <= k; ++l) a -= x * d12(2 * k - 2 * l + 1, 2 * l - 1);
        a += M12(2 * k - 1);
        RatFunc m11 = a * inv_delta - x * s * quad;
        r.check("even-11-as-printed", m11 == M11(2 * k), order_tag(2 * k));
        r.check("even-11-(x/sqrt)", a * inv_delta - x * quad / s == M11(2 * k), order_tag(2 * k));

        RatFunc b = rc(0);
        for (int l = 1; l <= k; ++l) b += x * d11(2 * k - 2 * l, 2 * l);
        for (int l = 1; l <= k; ++l) b += d11(2 * k - 2 * l, 2 * l - 1);
        for (int l = 1; l <= k; ++l) b += d12(2 * k - 2 * l, 2 * l) * Q(2);
        for (int l = 1; l <= k; ++l) b += d12(2 * k - 2 * l + 1, 2 * l - 1) * Q(2);
        b -= x * Q(1, 2) * M12(2 * k - 1);
        RatFunc m12 = b * inv_delta + quad * Q(2) / s;
        r.check("even-12-as-printed", m12 == M12(2 * k), order_tag(2 * k));
    }
    return r;
}

}  // namespace diffsys
}  // namespace difftop
