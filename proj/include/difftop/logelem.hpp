#pragma once

#include "difftop/laurent.hpp"
#include "difftop/ratfunc.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace difftop {

// Raised when a quadrature would need a logarithm at a finite point other than 0.
struct NonIntegrableResidue : std::runtime_error {
    NonIntegrableResidue(std::string point, Q value)
        : std::runtime_error("nonzero residue " + to_str(value) + " at z = " + point),
          point(std::move(point)), value(std::move(value)) {}
    std::string point;
    Q value;
};

// Antiderivative of a rational function: rational part + log_coeff * ln z.
struct RfPrimitive {
    RatFunc rational;
    Q log_coeff;
};
RfPrimitive integrate_rf(const RatFunc& f);

// sum_j parts[j] * lambda^j, lambda = ln z
class LogElement {
public:
    LogElement() = default;
    LogElement(const RatFunc& f);
    LogElement(const Q& c) : LogElement(RatFunc(c)) {}
    static LogElement lambda_pow(int j, const RatFunc& f = RatFunc(Q(1)));

    int lambda_deg() const { return parts_.empty() ? -1 : parts_.rbegin()->first; }
    bool is_zero() const { return parts_.empty(); }
    RatFunc part(int j) const;
    const std::map<int, RatFunc>& parts() const { return parts_; }

    LogElement operator-() const;
    friend LogElement operator+(const LogElement& a, const LogElement& b);
    friend LogElement operator-(const LogElement& a, const LogElement& b) { return a + (-b); }
    friend LogElement operator*(const LogElement& a, const LogElement& b);
    friend LogElement operator*(const LogElement& a, const Q& s);
    friend LogElement operator*(const Q& s, const LogElement& a) { return a * s; }
    LogElement& operator+=(const LogElement& o) { return *this = *this + o; }
    LogElement& operator-=(const LogElement& o) { return *this = *this - o; }
    friend bool operator==(const LogElement& a, const LogElement& b) { return a.parts_ == b.parts_; }
    friend bool operator!=(const LogElement& a, const LogElement& b) { return !(a == b); }

    // every part times a rational function
    LogElement times(const RatFunc& f) const;
    LogElement dz() const;
    LogElement dx() const;  // z^2/(z^2-1) d/dz
    LogElement integrate() const;  // in z, zero constant in every part
    LogElement involute() const;   // z -> 1/z, lambda -> -lambda

    std::vector<Q> eval(const Q& z) const;      // coefficients in lambda
    Q eval(const Q& z, const Q& lambda) const;
    // Series at z = a + t, lambda -> ln(1 + a t) (a = +-1, ln(-1) dropped at a = -1)
    Laurent local(const Q& a, int order) const;

    std::string str() const;

private:
    void set(int j, const RatFunc& f);
    std::map<int, RatFunc> parts_;
};

}  // namespace difftop
