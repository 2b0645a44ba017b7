#include "difftop/curve.hpp"

#include <stdexcept>

namespace difftop::curve {

namespace {

RatFunc zvar() { return RatFunc::variable(Var::z); }

// symmetric Laurent polynomial sum_{i} c[i - lo] z^i (c_i = c_-i) as a polynomial in x = z + 1/z
Poly sym_to_x(std::vector<Q> c, int lo) {
    int hi = lo + static_cast<int>(c.size()) - 1;
    while (hi >= 0 && c[hi - lo] == 0) --hi;
    if (hi < 0) return Poly(Var::x);
    std::vector<Q> px(hi + 1);
    auto at = [&](int e) -> Q& {
        if (e < lo || e - lo >= static_cast<int>(c.size())) throw std::logic_error("sym_to_x: not symmetric");
        return c[e - lo];
    };
    for (int e = hi; e >= 0; --e) {
        Q s = at(e);
        if (s == 0) continue;
        px[e] = s;
        for (int j = 0; j <= e; ++j) at(e - 2 * j) -= s * Q(binom(e, j));
    }
    for (const Q& q : c)
        if (q != 0) throw std::logic_error("sym_to_x: not symmetric under z -> 1/z");
    return Poly(std::move(px), Var::x);
}

RatFunc symmetric_to_x(const RatFunc& f) {
    if (f.is_zero()) return RatFunc(Var::x);
    const int dd = f.den().deg();
    Poly dbar = f.den().reversed(dd);
    // N(z) D(1/z) and D(z) D(1/z), both z^(-dd) times a polynomial
    Poly num = f.num() * dbar, den = f.den() * dbar;
    return RatFunc(sym_to_x(num.coeffs(), -dd), sym_to_x(den.coeffs(), -dd));
}

}  // namespace

RatFunc x_of_z() { return zvar() + RatFunc(Poly::constant(1), Poly::monomial(1, 1)); }
RatFunc sqrt_delta() { return zvar() - RatFunc(Poly::constant(1), Poly::monomial(1, 1)); }
RatFunc dx_dz() { return RatFunc(Poly({-1, 0, 1}), Poly::monomial(1, 2)); }
RatFunc dz_dx() { return RatFunc(Poly::monomial(1, 2), Poly({-1, 0, 1})); }

Laurent ydiff_local(int a, int order) {
    if (a != 1 && a != -1) throw std::invalid_argument("ydiff_local: branchpoint must be +1 or -1");
    return Laurent::log1p(Q(a), order + 1) * Q(2);
}

Laurent z_of_x_series(int order) {
    const int prec = order + 1;
    std::vector<Q> c(prec + 1);
    c[0] = 1;  // u^-1
    for (int k = 0; 2 * k + 1 < prec; ++k) {
        Z cat = binom(2 * k, k) / (k + 1);
        c[2 * k + 2] = -Q(cat);
    }
    return Laurent(-1, prec, std::move(c), Point::inf());
}

Laurent form_at_infinity(int a, int k, int order) {
    if (k < 2) throw std::invalid_argument("form_at_infinity: k >= 2");
    const int p = order + 2;
    Laurent zs = z_of_x_series(p);
    // dz/dx = 1 + sum (2k+1) C_k u^(2k+2)
    std::vector<Q> d(p + 1);
    d[0] = 1;
    for (int j = 0; 2 * j + 2 <= p; ++j) d[2 * j + 2] = Q(binom(2 * j, j) / (j + 1)) * (2 * j + 1);
    Laurent dzdx(0, p + 1, std::move(d), Point::inf());
    Laurent shifted = zs - Laurent::monomial(Q(a), 0, zs.prec(), Point::inf());
    return (shifted.inverse().pow(k) * dzdx).truncated(order + 1);
}

Laurent expand_at_infinity(const RatFunc& f, int order) {
    if (f.is_zero()) return Laurent::zero(order + 1, Point::inf());
    int extra = 2 * (f.num().deg() + f.den().deg()) + 4;
    for (;;) {
        Laurent r = rf_at_series(f, z_of_x_series(order + extra));
        if (r.prec() > order) return r.truncated(order + 1);
        extra *= 2;
    }
}

RatFunc x_to_z(const RatFunc& g) { return g.compose(x_of_z()); }

XForm to_x_form(const RatFunc& f) {
    RatFunc fb = f.involute();
    RatFunc even = (f + fb) * Q(1, 2);
    RatFunc odd = (f - fb) / (sqrt_delta() * Q(2));
    return {symmetric_to_x(even), symmetric_to_x(odd)};
}

RatFunc from_x_form(const XForm& f) { return x_to_z(f.r0) + x_to_z(f.r1) * sqrt_delta(); }

}  // namespace difftop::curve
