#pragma once

#include "difftop/diffsys.hpp"
#include "difftop/rational.hpp"
#include "difftop/report.hpp"

#include <map>
#include <string>
#include <vector>

namespace difftop {

// <tau_k1(omega) ... tau_kn(omega)>_{g,n}, degree summed
struct GwTable {
    int g = 0, n = 0, kmax = 0;
    std::map<std::vector<int>, Q> entries;
    Q at(const std::vector<int>& k) const;
    std::string to_csv() const;
};

// C_n at a point tuple, hbar^0..hbar^K, computed two ways
struct CnSeries {
    std::vector<Q> points;
    std::vector<Q> determinantal;  // from M
    std::vector<Q> omega_sum;      // sum_g hbar^(n-2+2g) omega_n^(g) / prod dx_i
};

namespace gw {

// coefficient of prod x_i^-(k_i+2) in omega(g, n) divided by prod (k_i+1)!
GwTable extract(int g, int n, int kmax);
// sum k_i = 2g - 2 + 2d with d >= 0
bool selection_allows(int g, const std::vector<int>& k);
// zeros off the selection rule, symmetry, and <tau_0^3>_0 = 1 when (g, n) = (0, 3)
Report table_check(const GwTable& t);
// g <= gmax, n = 1, k <= kmax: brackets nonnegative
Report positivity_check(int gmax, int kmax);

// n >= 2; needs M through K
CnSeries cn_series(const MTower& m, const std::vector<Q>& zs, int K);
Report cn_check(const MTower& m, const std::vector<std::vector<Q>>& tuples, int K);

}  // namespace gw
}  // namespace difftop
