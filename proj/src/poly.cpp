#include "difftop/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace difftop {

const char* var_name(Var v) {
    switch (v) {
        case Var::z: return "z";
        case Var::x: return "x";
        case Var::u: return "u";
        case Var::t: return "t";
        case Var::w: return "w";
    }
    return "?";
}

Poly::Poly(std::vector<Q> c, Var v) : c_(std::move(c)), var_(v) { trim(); }

Poly Poly::constant(const Q& c, Var v) { return Poly(std::vector<Q>{c}, v); }

Poly Poly::monomial(const Q& c, int deg, Var v) {
    if (c == 0) return Poly(v);
    std::vector<Q> cs(deg + 1);
    cs[deg] = c;
    return Poly(std::move(cs), v);
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& q : r.c_) q = -q;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator*=(const Q& s) {
    if (s == 0) {
        c_.clear();
        return *this;
    }
    for (auto& q : c_) q *= s;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.var_);
    std::vector<Q> r(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r), a.var_);
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.deg() < b.deg()) return {Poly(a.var_), a};
    std::vector<Q> r = a.c_;
    std::vector<Q> q(a.deg() - b.deg() + 1);
    Q inv = 1 / b.lead();
    const int db = b.deg();
    for (int i = a.deg(); i >= db; --i) {
        if (r[i] == 0) continue;
        Q f = r[i] * inv;
        q[i - db] = f;
        for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b.c_[j];
    }
    r.resize(db);
    return {Poly(std::move(q), a.var_), Poly(std::move(r), a.var_)};
}

Poly Poly::exact_div(const Poly& b) const {
    auto [q, r] = divmod(*this, b);
    if (!r.is_zero()) throw std::logic_error("inexact polynomial division");
    return q;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    Poly r = *this;
    Q inv = 1 / lead();
    r *= inv;
    return r;
}

std::pair<int, Poly> Poly::strip_root(const Q& a) const {
    int m = 0;
    Poly p = *this;
    while (!p.is_zero() && p.deg() >= 1 && p.eval(a) == 0) {
        // synthetic division by (t - a)
        std::vector<Q> q(p.deg());
        Q carry = 0;
        for (int i = p.deg(); i >= 1; --i) {
            carry = p.c_[i] + carry * a;
            q[i - 1] = carry;
        }
        p = Poly(std::move(q), var_);
        ++m;
    }
    return {m, p};
}

namespace {

Poly euclid(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = Poly::divmod(a, b).second;
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

}  // namespace

Poly Poly::gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return constant(1, a.var_);
    // roots 0 and +-1 dominate everything this engine builds; strip them first
    Poly g = constant(1, a.var_);
    Poly ra = a, rb = b;
    for (int r : {0, 1, -1}) {
        auto [ma, ca] = ra.strip_root(r);
        auto [mb, cb] = rb.strip_root(r);
        int m = std::min(ma, mb);
        if (m > 0) g = g * Poly(std::vector<Q>{Q(-r), Q(1)}, a.var_).pow(m);
        ra = std::move(ca);
        rb = std::move(cb);
    }
    if (ra.is_constant() || rb.is_constant()) return g;
    return g * euclid(ra.monic(), rb.monic());
}

std::pair<Poly, Poly> Poly::solve_bezout(const Poly& a, const Poly& b, const Poly& c) {
    // extended Euclid for s0*a + t0*b = 1
    Poly r0 = a, r1 = b;
    Poly s0 = constant(1, a.var_), s1(a.var_);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        Poly s2 = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.deg() != 0) throw std::logic_error("solve_bezout: operands not coprime");
    Q inv = 1 / r0.lead();
    s0 *= inv;
    Poly s = divmod(s0 * c, b).second;
    Poly t = (c - s * a).exact_div(b);
    return {s, t};
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly(var_);
    std::vector<Q> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
    return Poly(std::move(r), var_);
}

Poly Poly::taylor_shift(const Q& a) const {
    if (a == 0 || c_.size() <= 1) return *this;
    std::vector<Q> r = c_;
    const int n = static_cast<int>(r.size());
    for (int i = 0; i < n - 1; ++i)
        for (int j = n - 2; j >= i; --j) r[j] += a * r[j + 1];
    return Poly(std::move(r), var_);
}

Poly Poly::reversed(int n) const {
    if (n < deg()) throw std::invalid_argument("reversed: n < deg");
    std::vector<Q> r(n + 1);
    for (int i = 0; i <= deg(); ++i) r[n - i] = c_[i];
    return Poly(std::move(r), var_);
}

Poly Poly::pow(unsigned e) const {
    Poly r = constant(1, var_), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

Q Poly::eval(const Q& x) const {
    Q r = 0;
    for (int i = deg(); i >= 0; --i) r = r * x + c_[i];
    return r;
}

Poly Poly::compose(const Poly& q) const {
    Poly r(q.var_);
    for (int i = deg(); i >= 0; --i) r = r * q + constant(c_[i], q.var_);
    return r;
}

std::string Poly::str() const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = deg(); i >= 0; --i) {
        if (c_[i] == 0) continue;
        std::string cs = to_str(c_[i]);
        if (!s.empty()) s += (c_[i] > 0) ? " + " : " - ";
        else if (c_[i] < 0) s += "-";
        Q ab = abs(c_[i]);
        bool one = (ab == 1);
        if (!one || i == 0) s += to_str(ab);
        if (i >= 1) {
            if (!one) s += "*";
            s += var_name(var_);
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

}  // namespace difftop
