#pragma once

#include "difftop/poly.hpp"

#include <string>

namespace difftop {

// Reduced num/den with monic denominator.
class RatFunc {
public:
    RatFunc() : num_(Var::z), den_(Poly::constant(1, Var::z)) {}
    explicit RatFunc(Var v) : num_(v), den_(Poly::constant(1, v)) {}
    RatFunc(const Q& c, Var v = Var::z) : num_(Poly::constant(c, v)), den_(Poly::constant(1, v)) {}
    RatFunc(Poly num);
    RatFunc(Poly num, Poly den);
    static RatFunc variable(Var v = Var::z) { return RatFunc(Poly::variable(v)); }
    // trust caller: already reduced, den monic
    static RatFunc from_reduced(Poly num, Poly den);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    Var var() const { return num_.var(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.deg() == 0; }
    bool is_constant() const { return den_.deg() == 0 && num_.deg() <= 0; }
    Q constant_value() const { return num_.coeff(0); }

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const Q& s);
    friend RatFunc operator*(const Q& s, const RatFunc& a) { return a * s; }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    RatFunc derivative() const;
    RatFunc pow(int e) const;
    Q eval(const Q& x) const;  // throws at a pole
    // f(q) for a rational function q in another (or same) variable
    RatFunc compose(const RatFunc& q) const;
    RatFunc involute() const;  // f(1/z)
    // order of vanishing at a (negative for poles)
    int order_at(const Q& a) const;
    // -(deg num - deg den): order at infinity in 1/z
    int order_at_infinity() const { return den_.deg() - num_.deg(); }

    std::string str() const;

private:
    void normalize();
    Poly num_, den_;
};

}  // namespace difftop
