#pragma once

#include "difftop/diffsys.hpp"
#include "difftop/dlbridge.hpp"
#include "difftop/logelem.hpp"
#include "difftop/report.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace difftop {

struct CorrelatorSample {
    std::vector<Q> points;  // z-values
    int K = 0;
    std::vector<Q> values;  // coefficients of hbar^0..hbar^K
};

struct W1Tower {
    LogElement wm1;          // hbar^-1 coefficient
    std::vector<RatFunc> w;  // hbar^k, k >= 0
};

// Polynomial in formal logarithms lambda_s = ln z_s, one symbol per sample point.
// Keys are exponent vectors with trailing zeros trimmed.
struct LogPoly {
    std::map<std::vector<int>, Q> c;

    LogPoly() = default;
    LogPoly(const Q& q);
    // sum_j coeffs[j] lambda_s^j
    static LogPoly in_symbol(const std::vector<Q>& coeffs, int s);

    bool is_zero() const { return c.empty(); }
    int degree_in(int s) const;
    LogPoly operator-() const;
    friend LogPoly operator+(const LogPoly& a, const LogPoly& b);
    friend LogPoly operator-(const LogPoly& a, const LogPoly& b) { return a + (-b); }
    friend LogPoly operator*(const LogPoly& a, const LogPoly& b);
    LogPoly& operator+=(const LogPoly& o) { return *this = *this + o; }
    LogPoly& operator-=(const LogPoly& o) { return *this = *this - o; }
    friend bool operator==(const LogPoly& a, const LogPoly& b) { return a.c == b.c; }
    friend bool operator!=(const LogPoly& a, const LogPoly& b) { return !(a == b); }
    std::string str() const;
};

// hbar power -> coefficient
using HLog = std::map<int, LogPoly>;

namespace corr {

using QMat = Mat2<Q>;

std::vector<QMat> m_at(const MTower& t, const Q& z, int K);

// W_1^(-1) = -lambda; d/dx W_1^(k) = (M_{k+1})_12 - sum_{j=2}^{k+2} (1/j!) d^j W_1^(k+1-j); zero at z = infinity
W1Tower w1_tower(const MTower& t, int K);

// true when the x-values of the points are pairwise distinct and no point is 0 or +-1
bool valid_points(const std::vector<Q>& zs);

// determinantal W_n at distinct points, n >= 2
CorrelatorSample wn_eval(const MTower& t, const std::vector<Q>& zs, int K);
// the same with z at position `slot` kept symbolic (its entry in zs is ignored)
std::vector<RatFunc> wn_symbolic(const MTower& t, const std::vector<Q>& zs, int slot, int K);
// W_2(x, x) = (1/2) Tr(M M'') order by order
std::vector<Q> wn_diagonal(const MTower& t, const Q& z, int K);
// W_2(x(z), x(z)) as a rational function of z
std::vector<RatFunc> wn_diagonal_symbolic(const MTower& t, int K);

// seeded random tuples of valid points with small numerators and denominators
std::vector<std::vector<Q>> random_tuples(std::uint64_t seed, int n, int count);

// evaluates many tuples; the OpenMP version and the serial reference return identical data
std::vector<CorrelatorSample> sample_values(const MTower& t, const std::vector<std::vector<Q>>& tuples, int K,
                                            bool parallel = true);

// loop equations at the given x-samples with fixed extra points L
struct LoopInput {
    std::vector<Q> samples;  // z-values for x
    std::vector<Q> extra;    // z-values for x_1..x_n (n = 1 or 2)
    int K = 4;
};
// -det D/hbar^2
HLog p1_at(const DTower& d, const Q& z, int K);
// P_2 from the direct display for n = 1; P_{n+1}(x; L_n) from Q_{n+1} with residues for n >= 2
HLog pn_at(const DTower& d, const MTower& m, const Q& z, const std::vector<Q>& L, int K);
// P_2 as displayed directly in terms of D(x) - D(x_2) - (x - x_2) D'(x_2)
HLog p2_direct_at(const DTower& d, const MTower& m, const Q& z, const Q& z2, int K);
Report loop_check(const DTower& d, const MTower& m, const LoopInput& in);

// topological type audit: parity, pole structure, leading order
Report tt_audit(const MTower& m, int K, int nmax, std::uint64_t seed, int tuples = 3);

// W_n^(n-2+2g) prod dx/dz against omega(g, n)
Report tr_compare(const MTower& m, int g, int n, int trials, std::uint64_t seed);
// (W_2^(0) + 1/(x1-x2)^2) dx1 dx2 = dz1 dz2/(z1-z2)^2 with both variables symbolic
bool bergmann_identity(const MTower& m);

}  // namespace corr
}  // namespace difftop
