#pragma once

#include "difftop/diffsys.hpp"
#include "difftop/laurent.hpp"
#include "difftop/logelem.hpp"
#include "difftop/mat2.hpp"
#include "difftop/report.hpp"

#include <stdexcept>
#include <vector>

namespace difftop {

using LMat = Mat2<LogElement>;

struct ResidualPoleAtMinusOne : std::runtime_error {
    explicit ResidualPoleAtMinusOne(const std::string& m) : std::runtime_error(m) {}
};

struct DTower {
    Q lambda = Q(1, 2);
    std::vector<LMat> D;
};

namespace dl {

LMat to_log(const RMat& m);

// log L0 with exp(D0) = L0: ln(z^2) A, A = (L0 - (x/2) I)/sqrt(x^2-4)
LMat d0_p1();
// the same matrix with the two diagonal entries swapped in sign
LMat d0_printed();
// exp(2 lambda A) = cosh(lambda) I + 2 sinh(lambda) A for A^2 = I/4, with z = e^lambda
RMat exp_closed_form(const LMat& d0);

// D_k from D_0..D_{k-1}; constant fixed by regularity at z = +1, regularity at z = -1 asserted
LMat d_from_l(const std::vector<LMat>& D, const LSeries& L);
DTower d_tower(int K, const Q& lambda = Q(1, 2));

// regular at z = +-1 and rational parts with poles only at 0, +-1
bool regular_at_branchpoints(const LMat& d);
bool poles_in_zero_infinity(const LMat& d);

// sum_k A_k/k! expanded at x = 2 in w = x - 2, hbar orders 0..K, through w^W
struct WMatSeries {
    int K = 0, W = 0;
    // [hbar order][entry] -> series in w
    std::vector<Mat2<Laurent>> h;
};
WMatSeries l_from_d(const DTower& t, int K, int W);
// compares with [[x + lambda hbar, -1], [1, 0]] at x = 2 + w
Report round_trip_check(const WMatSeries& s, const Q& lambda);
// the A_k themselves (w-adic) for small k
std::vector<std::vector<Mat2<Laurent>>> a_sequence(const DTower& t, int K, int W, int kmax);
// w-series of a LogElement at z = 1 (z = e^u, lambda = u, w = 2(cosh u - 1)); throws if odd in u
Laurent w_series(const LogElement& f, int W);

// 0 = hbar L' + L D - D(x + hbar) L order by order
Report compatibility_check(const DTower& t, const LSeries& L, int K);
// tests G^{-1} D_k^t G = (-1)^k D_k for the candidate G
Report parity_probe(const DTower& t, int K);

}  // namespace dl
}  // namespace difftop
