#include "difftop/logelem.hpp"

#include <algorithm>

namespace difftop {

namespace {

// positive divisors of |n|, or empty if n is zero or too large to factor by trial division
std::vector<Z> small_divisors(Z n) {
    n = abs(n);
    std::vector<Z> ds;
    if (n == 0 || n > Z(1000000000)) return ds;
    unsigned long m = n.get_ui();
    for (unsigned long d = 1; d * d <= m; ++d)
        if (m % d == 0) {
            ds.push_back(Z(d));
            if (d * d != m) ds.push_back(Z(m / d));
        }
    return ds;
}

// Locate a rational root of d where a/d has a nonzero residue, for the error report.
NonIntegrableResidue residue_error(const Poly& a, const Poly& d) {
    Poly dd = d.derivative();
    Z lcm = 1;
    for (const Q& c : d.coeffs()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Z> ic;
    for (const Q& c : d.coeffs()) ic.push_back(Z(c * lcm));
    int lo = 0;
    while (ic[lo] == 0) ++lo;
    for (const Z& p : small_divisors(ic[lo]))
        for (const Z& q : small_divisors(ic.back()))
            for (int sg : {1, -1}) {
                Q r = frac(Z(sg * p), q);
                if (d.eval(r) != 0) continue;
                Q res = a.eval(r) / dd.eval(r);
                if (res != 0) return NonIntegrableResidue(to_str(r), res);
            }
    return NonIntegrableResidue("irrational root of " + d.str(), Q(0));
}

}  // namespace

RfPrimitive integrate_rf(const RatFunc& f) {
    const Var v = f.var();
    if (f.is_zero()) return {RatFunc(v), 0};
    auto integrate_poly = [v](const Poly& p) {
        std::vector<Q> c(p.deg() + 2);
        for (int i = 0; i <= p.deg(); ++i) c[i + 1] = p.coeff(i) / (i + 1);
        return Poly(std::move(c), v);
    };
    auto [poly_part, rem] = Poly::divmod(f.num(), f.den());
    RatFunc g(integrate_poly(poly_part));
    if (rem.is_zero()) return {g, 0};

    // pure z^m denominator: termwise
    Poly den = f.den();
    auto [m, cof] = den.strip_root(0);
    if (cof.deg() == 0) {
        Q log_c = 0;
        Q inv = 1 / cof.coeff(0);
        for (int i = 0; i <= rem.deg(); ++i) {
            Q c = rem.coeff(i) * inv;
            if (c == 0) continue;
            int e = i - m;  // c z^e
            if (e == -1) log_c += c;
            else g += RatFunc(Poly::constant(c / (e + 1), v), Poly::monomial(1, -(e + 1), v));
        }
        return {g, log_c};
    }

    // Hermite reduction
    Poly A = rem, D = den;
    Poly Dm = Poly::gcd(D, D.derivative());
    Poly Ds = D.exact_div(Dm);
    while (Dm.deg() > 0) {
        Poly Dm2 = Poly::gcd(Dm, Dm.derivative());
        Poly Dms = Dm.exact_div(Dm2);
        Poly lhs = -(Ds * Dm.derivative()).exact_div(Dm);
        auto [B, C] = Poly::solve_bezout(lhs, Dms, A);
        A = C - (B.derivative() * Ds).exact_div(Dms);
        g += RatFunc(B, Dm);
        Dm = Dm2;
    }
    auto [pp, a] = Poly::divmod(A, Ds);
    g += RatFunc(integrate_poly(pp));
    Q log_c = 0;
    if (!a.is_zero()) {
        // only a simple pole at 0 may remain
        auto [m0, ds0] = Ds.strip_root(0);
        if (m0 == 1) {
            log_c = a.eval(0) / Ds.derivative().eval(0);
            // a/Ds - log_c/z
            Poly rest = a - Poly::constant(log_c, v) * ds0;
            if (!rest.is_zero()) throw residue_error(rest.strip_root(0).second, ds0);
        } else {
            throw residue_error(a, Ds);
        }
    }
    return {g, log_c};
}

LogElement::LogElement(const RatFunc& f) {
    if (!f.is_zero()) parts_.emplace(0, f);
}

LogElement LogElement::lambda_pow(int j, const RatFunc& f) {
    LogElement r;
    r.set(j, f);
    return r;
}

void LogElement::set(int j, const RatFunc& f) {
    if (f.is_zero()) parts_.erase(j);
    else parts_[j] = f;
}

RatFunc LogElement::part(int j) const {
    auto it = parts_.find(j);
    return it == parts_.end() ? RatFunc() : it->second;
}

LogElement LogElement::operator-() const {
    LogElement r = *this;
    for (auto& [j, f] : r.parts_) f = -f;
    return r;
}

LogElement operator+(const LogElement& a, const LogElement& b) {
    LogElement r = a;
    for (const auto& [j, f] : b.parts_) r.set(j, r.part(j) + f);
    return r;
}

LogElement operator*(const LogElement& a, const LogElement& b) {
    LogElement r;
    for (const auto& [i, f] : a.parts_)
        for (const auto& [j, g] : b.parts_) r.set(i + j, r.part(i + j) + f * g);
    return r;
}

LogElement operator*(const LogElement& a, const Q& s) {
    if (s == 0) return {};
    LogElement r = a;
    for (auto& [j, f] : r.parts_) f = f * s;
    return r;
}

LogElement LogElement::times(const RatFunc& g) const {
    LogElement r;
    for (const auto& [j, f] : parts_) r.set(j, f * g);
    return r;
}

LogElement LogElement::dz() const {
    LogElement r;
    const RatFunc inv_z(Poly::constant(1), Poly::monomial(1, 1));
    for (const auto& [j, f] : parts_) {
        r.set(j, r.part(j) + f.derivative());
        if (j > 0) r.set(j - 1, r.part(j - 1) + f * inv_z * Q(j));
    }
    return r;
}

LogElement LogElement::dx() const {
    const RatFunc fac(Poly::monomial(1, 2), Poly(std::vector<Q>{-1, 0, 1}));
    return dz().times(fac);
}

LogElement LogElement::integrate() const {
    // int f l^j = F l^j + c l^(j+1)/(j+1) - j int (F/z) l^(j-1), with F' + c/z = f
    LogElement work = *this, r;
    const RatFunc inv_z(Poly::constant(1), Poly::monomial(1, 1));
    while (!work.is_zero()) {
        int j = work.lambda_deg();
        RatFunc f = work.part(j);
        work.parts_.erase(j);
        RfPrimitive p = integrate_rf(f);
        r.set(j, r.part(j) + p.rational);
        if (p.log_coeff != 0) r.set(j + 1, r.part(j + 1) + RatFunc(p.log_coeff / (j + 1)));
        if (j > 0 && !p.rational.is_zero())
            work.set(j - 1, work.part(j - 1) - p.rational * inv_z * Q(j));
    }
    return r;
}

LogElement LogElement::involute() const {
    LogElement r;
    for (const auto& [j, f] : parts_) r.set(j, (j % 2 ? -f : f).involute());
    return r;
}

std::vector<Q> LogElement::eval(const Q& z) const {
    std::vector<Q> c(lambda_deg() + 1);
    for (const auto& [j, f] : parts_) c[j] = f.eval(z);
    return c;
}

Q LogElement::eval(const Q& z, const Q& lambda) const {
    Q r = 0, lp = 1;
    int k = 0;
    for (const auto& [j, f] : parts_) {
        while (k < j) {
            lp *= lambda;
            ++k;
        }
        r += f.eval(z) * lp;
    }
    return r;
}

Laurent LogElement::local(const Q& a, int order) const {
    if (a != 1 && a != -1) throw std::invalid_argument("LogElement::local: a must be +1 or -1");
    const Point pt = Point::at(a);
    Laurent r = Laurent::zero(order + 1, pt);
    for (const auto& [j, f] : parts_) {
        int vf = std::min(f.order_at(a), 0);
        Laurent fs = laurent_expand(f, pt, order);
        if (j == 0) {
            r = r + fs;
            continue;
        }
        Laurent lam = Laurent::log1p(a, order + 2 - vf);
        Laurent lp = lam.pow(j);
        Laurent term = fs * lp;
        r = r + term.truncated(order + 1);
    }
    return r;
}

std::string LogElement::str() const {
    if (parts_.empty()) return "0";
    std::string s;
    for (const auto& [j, f] : parts_) {
        if (!s.empty()) s += " + ";
        s += "(" + f.str() + ")";
        if (j == 1) s += "*L";
        else if (j > 1) s += "*L^" + std::to_string(j);
    }
    return s;
}

}  // namespace difftop
