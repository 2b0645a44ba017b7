#pragma once

#include "difftop/mat2.hpp"
#include "difftop/ratfunc.hpp"
#include "difftop/report.hpp"

#include <functional>
#include <vector>

namespace difftop {

using RMat = Mat2<RatFunc>;

// Coordinate data for a 2x2 system written in z: the chosen sqrt of the discriminant and d/dx.
struct Chart {
    RatFunc sqrt_delta;
    std::function<RatFunc(const RatFunc&)> ddx;
    static Chart p1();
};

// L(x; hbar) = sum L_k hbar^k
using LSeries = std::vector<RMat>;

// Caches d^j/dx^j of a growing list of matrices.
class DerivTable {
public:
    explicit DerivTable(const Chart& c) : chart_(c) {}
    void push(const RMat& m) { d_.push_back({m}); }
    const RMat& get(int k, int j);  // d^j M_k / dx^j
    int size() const { return static_cast<int>(d_.size()); }

private:
    Chart chart_;
    std::vector<std::vector<RMat>> d_;
};

struct MTower {
    Q lambda = Q(1, 2);
    std::vector<RMat> M;
};

namespace diffsys {

LSeries l_p1(const Q& lambda = Q(1, 2));
RMat m0_general(const RMat& L0, const Chart& c);
// solves the 3x3 system for M_{k+1} from M_0..M_k
RMat m_next_general(const std::vector<RMat>& M, const LSeries& L, const Chart& c, DerivTable& dt);
// determinant of the 3x3 recursion matrix, L12 ((Tr L0)^2 - 4 det L0)
RatFunc system_determinant(const RMat& L0);

MTower m_tower_general(const LSeries& L, int K, const Chart& c = Chart::p1());
// the P^1 corollary recursion with shift lambda in place of 1/2
MTower m_p1(int K, const Q& lambda = Q(1, 2));

Report m_audit(const MTower& t, const LSeries& L, int K, bool p1_symmetries = true);
// evaluates the printed reduced system for orders <= K and reports which lines reproduce the tower
Report reduced_system_diagnostic(const MTower& t, int K);

// d^j/dx^j in the P^1 chart
RatFunc ddx(const RatFunc& f);

}  // namespace diffsys
}  // namespace difftop
