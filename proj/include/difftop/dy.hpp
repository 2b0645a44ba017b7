#pragma once

#include "difftop/diffsys.hpp"
#include "difftop/rational.hpp"
#include "difftop/report.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace difftop {

// (hbar power, n) -> coefficient of hbar^h x^(-n); n may be <= 0 after multiplying by x
using Cells = std::map<std::pair<int, int>, Q>;

enum class DyKind { alpha, P, Q };

struct DySeries {
    DyKind kind = DyKind::alpha;
    int K = 0, N = 0;  // hbar powers <= K, x^(-n) with n <= N
    Cells c;
    Q at(int h, int n) const;
};

namespace dy {

DyKind parse_kind(const std::string& s);  // "alpha"/"α", "P", "Q"; throws std::invalid_argument
std::string kind_name(DyKind k);

// triple sums with the bracket binom(2i, l) - binom(2i, l - 1)
DySeries generate(DyKind kind, int K, int N);
// the (m, s) regrouping with a single binomial
DySeries generate_rewritten(DyKind kind, int K, int N);

// M~_k, k = 0..K, entries as cells in x^(-n) with hbar index 0
std::vector<Mat2<std::vector<Q>>> assemble(int K, int N);

// f(x + hbar) = sum_j hbar^j/j! f^(j)(x), truncated to the box of f
Cells taylor_shift(const DySeries& f);
// the closed forms for alpha(x + hbar), P(x + hbar), Q(x + hbar)
Cells printed_shift(DyKind kind, int K, int N);
Report shift_check(int K, int N);

// sum_l (-1)^l (2j+1-2l)^(2j+1) (2j)!/(l!(2j-l+1)!)
Q coefficient_sum(int j);
// one side minus the other of the six (s, p) finite sums as printed
Q printed_identity_residual(int which, int s, int p);
// relations from M~(x+hbar) L = L M~ split by entry and hbar parity; corrected = with the
// constants at p = 0 and Q_{2p+1} in the first line, otherwise as printed
Report reduced_system(int smax, int pmax, bool corrected);
Report identity_battery(int smax, int pmax);
// the six finite sums exactly as printed, one clause each
Report printed_finite_sums(int smax, int pmax);

// M_k at x -> infinity against M~_k, k <= Kmax, through x^(-N)
Report compare(const MTower& m, int Kmax, int N);

// rows hbar powers 0..K, columns n = 0..N, "p/q" cells
std::string to_csv(const DySeries& s);

}  // namespace dy
}  // namespace difftop
