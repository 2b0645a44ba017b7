#pragma once

#include "difftop/ratfunc.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace difftop {

struct TruncationError : std::runtime_error {
    explicit TruncationError(const std::string& m) : std::runtime_error(m) {}
};

// Expansion point: finite a, or infinity (local coordinate 1/z).
struct Point {
    bool infinite = false;
    Q a = 0;
    static Point at(const Q& a) { return Point{false, a}; }
    static Point inf() { return Point{true, 0}; }
    bool operator==(const Point& o) const { return infinite == o.infinite && (infinite || a == o.a); }
};

// sum_{val <= i < prec} c[i - val] t^i + O(t^prec)
class Laurent {
public:
    Laurent() = default;
    Laurent(int val, int prec, std::vector<Q> c, Point p = {});
    static Laurent zero(int prec, Point p = {});
    static Laurent monomial(const Q& c, int power, int prec, Point p = {});
    static Laurent from_poly(const Poly& p, int prec, Point pt = {});  // exact poly in t, truncated
    static Laurent log1p(const Q& s, int prec);  // ln(1 + s t)
    static Laurent geometric(const Q& s, int prec);  // 1/(1 - s t)

    int val() const { return val_; }
    int prec() const { return prec_; }
    const Point& point() const { return pt_; }
    Q coeff(int i) const;  // throws TruncationError for i >= prec
    bool is_zero() const;  // all known coefficients vanish
    // first power with a nonzero coefficient, or prec if none
    int valuation() const;
    Laurent normalized() const;  // strip leading zeros
    Laurent truncated(int prec) const;

    Laurent operator-() const;
    friend Laurent operator+(const Laurent& a, const Laurent& b);
    friend Laurent operator-(const Laurent& a, const Laurent& b) { return a + (-b); }
    friend Laurent operator*(const Laurent& a, const Laurent& b);
    friend Laurent operator*(const Laurent& a, const Q& s);
    friend Laurent operator*(const Q& s, const Laurent& a) { return a * s; }
    Laurent inverse() const;
    friend Laurent operator/(const Laurent& a, const Laurent& b) { return a * b.inverse(); }
    Laurent pow(int e) const;
    Laurent derivative() const;
    Laurent shifted(int k) const;  // multiply by t^k
    Q residue() const { return coeff(-1); }

    std::string str() const;

private:
    int val_ = 0, prec_ = 0;
    std::vector<Q> c_;
    Point pt_;
};

// Expansion of f at a (or infinity) through t^(order) inclusive.
Laurent laurent_expand(const RatFunc& f, const Point& p, int order);

// f(s) for a Laurent series s (Horner on numerator and denominator)
Laurent rf_at_series(const RatFunc& f, const Laurent& s);

}  // namespace difftop
