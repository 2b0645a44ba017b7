#include "difftop/ratfunc.hpp"

#include <stdexcept>

namespace difftop {

namespace {

void check_var(const RatFunc& a, const RatFunc& b) {
    if (a.var() != b.var() && !a.is_constant() && !b.is_constant())
        throw std::invalid_argument("rational functions in different variables");
}

Var pick_var(const RatFunc& a, const RatFunc& b) { return a.is_constant() ? b.var() : a.var(); }

}  // namespace

RatFunc::RatFunc(Poly num) : num_(std::move(num)), den_(Poly::constant(1, num_.var())) {}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    den_.set_var(num_.var());
    normalize();
}

RatFunc RatFunc::from_reduced(Poly num, Poly den) {
    RatFunc r;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    return r;
}

void RatFunc::normalize() {
    Var v = num_.var();
    if (num_.is_zero()) {
        den_ = Poly::constant(1, v);
        return;
    }
    if (den_.deg() > 0) {
        Poly g = Poly::gcd(num_, den_);
        if (g.deg() > 0) {
            num_ = num_.exact_div(g);
            den_ = den_.exact_div(g);
        }
    }
    Q l = den_.lead();
    if (l != 1) {
        Q inv = 1 / l;
        num_ *= inv;
        den_ *= inv;
    }
    num_.set_var(v);
    den_.set_var(v);
}

RatFunc RatFunc::operator-() const { return from_reduced(-num_, den_); }

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    check_var(a, b);
    Var v = pick_var(a, b);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) {
        Poly n = a.num_ + b.num_;
        n.set_var(v);
        Poly d = a.den_;
        d.set_var(v);
        if (d.deg() == 0) return RatFunc::from_reduced(n, d);
        return RatFunc(n, d);
    }
    if (a.den_.deg() == 0) {
        Poly n = a.num_ * b.den_ + b.num_;
        n.set_var(v);
        return RatFunc::from_reduced(n, b.den_);
    }
    if (b.den_.deg() == 0) {
        Poly n = a.num_ + b.num_ * a.den_;
        n.set_var(v);
        return RatFunc::from_reduced(n, a.den_);
    }
    Poly g = Poly::gcd(a.den_, b.den_);
    Poly da = a.den_.exact_div(g), db = b.den_.exact_div(g);
    Poly n = a.num_ * db + b.num_ * da;
    Poly d = a.den_ * db;
    n.set_var(v);
    d.set_var(v);
    return RatFunc(n, d);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    check_var(a, b);
    Var v = pick_var(a, b);
    if (a.is_zero() || b.is_zero()) return RatFunc(v);
    if (a.den_.deg() == 0 && b.den_.deg() == 0) {
        Poly n = a.num_ * b.num_;
        n.set_var(v);
        return RatFunc::from_reduced(n, Poly::constant(1, v));
    }
    // cross-cancel then multiply
    Poly g1 = Poly::gcd(a.num_, b.den_), g2 = Poly::gcd(b.num_, a.den_);
    Poly n = a.num_.exact_div(g1) * b.num_.exact_div(g2);
    Poly d = a.den_.exact_div(g2) * b.den_.exact_div(g1);
    n.set_var(v);
    d.set_var(v);
    Q l = d.lead();
    if (l != 1) {
        Q inv = 1 / l;
        n *= inv;
        d *= inv;
    }
    return RatFunc::from_reduced(n, d);
}

RatFunc operator*(const RatFunc& a, const Q& s) {
    if (s == 0) return RatFunc(a.var());
    RatFunc r = a;
    r.num_ *= s;
    return r;
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw std::domain_error("division by the zero rational function");
    return a * RatFunc::from_reduced(b.den_, b.num_).pow(1);
}

RatFunc RatFunc::derivative() const {
    Var v = var();
    if (den_.deg() == 0) return RatFunc::from_reduced(num_.derivative(), den_);
    Poly n = num_.derivative() * den_ - num_ * den_.derivative();
    n.set_var(v);
    return RatFunc(n, den_ * den_);
}

RatFunc RatFunc::pow(int e) const {
    if (e == 0) return RatFunc(Q(1), var());
    if (e < 0) {
        if (is_zero()) throw std::domain_error("zero to a negative power");
        RatFunc inv(den_, num_);
        return inv.pow(-e);
    }
    if (e == 1) {
        // re-normalize (used by operator/ to make the inverted pair monic)
        RatFunc r = *this;
        r.normalize();
        return r;
    }
    Poly n = num_.pow(e), d = den_.pow(e);
    return RatFunc::from_reduced(n, d);
}

Q RatFunc::eval(const Q& x) const {
    Q d = den_.eval(x);
    if (d == 0) throw std::domain_error("evaluation at a pole");
    return num_.eval(x) / d;
}

RatFunc RatFunc::compose(const RatFunc& q) const {
    RatFunc n(q.var()), d(q.var());
    for (int i = num_.deg(); i >= 0; --i) n = n * q + RatFunc(num_.coeff(i), q.var());
    for (int i = den_.deg(); i >= 0; --i) d = d * q + RatFunc(den_.coeff(i), q.var());
    return n / d;
}

RatFunc RatFunc::involute() const {
    // f(1/z) = z^(dd-dn) rev(num)/rev(den)
    Var v = var();
    int dn = std::max(num_.deg(), 0), dd = den_.deg();
    Poly rn = num_.is_zero() ? Poly(v) : num_.reversed(dn);
    Poly rd = den_.reversed(dd);
    int shift = dd - dn;
    if (shift > 0) rn = rn * Poly::monomial(1, shift, v);
    else if (shift < 0) rd = rd * Poly::monomial(1, -shift, v);
    return RatFunc(rn, rd);
}

int RatFunc::order_at(const Q& a) const {
    if (is_zero()) throw std::domain_error("order of the zero function");
    return num_.strip_root(a).first - den_.strip_root(a).first;
}

std::string RatFunc::str() const {
    if (den_.deg() == 0) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace difftop
