#pragma once

#include "difftop/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace difftop {

enum class Var { z, x, u, t, w };
const char* var_name(Var v);

// Dense univariate polynomial, lowest degree first, trailing zeros trimmed.
class Poly {
public:
    Poly() = default;
    explicit Poly(Var v) : var_(v) {}
    Poly(std::vector<Q> c, Var v = Var::z);
    static Poly constant(const Q& c, Var v = Var::z);
    static Poly monomial(const Q& c, int deg, Var v = Var::z);
    static Poly variable(Var v = Var::z) { return monomial(1, 1, v); }

    int deg() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const Q& lead() const { return c_.back(); }
    Q coeff(int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Q(0); }
    const std::vector<Q>& coeffs() const { return c_; }
    Var var() const { return var_; }
    void set_var(Var v) { var_ = v; }

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Q& s);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Q& s) { return a *= s; }
    friend Poly operator*(const Q& s, Poly a) { return a *= s; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // a = q*b + r, deg r < deg b
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
    Poly exact_div(const Poly& b) const;  // throws if remainder != 0
    static Poly gcd(const Poly& a, const Poly& b);  // monic
    // s*a + t*b = c with deg s < deg b; requires gcd(a,b) = 1
    static std::pair<Poly, Poly> solve_bezout(const Poly& a, const Poly& b, const Poly& c);

    Poly derivative() const;
    Poly monic() const;
    Poly taylor_shift(const Q& a) const;  // p(a + t)
    Poly reversed(int n) const;           // t^n p(1/t), n >= deg
    Poly pow(unsigned e) const;
    Q eval(const Q& x) const;
    // p(q(t)) for polynomial q
    Poly compose(const Poly& q) const;
    // multiplicity of root a and the cofactor
    std::pair<int, Poly> strip_root(const Q& a) const;

    std::string str() const;

private:
    void trim();
    std::vector<Q> c_;
    Var var_ = Var::z;
};

}  // namespace difftop
