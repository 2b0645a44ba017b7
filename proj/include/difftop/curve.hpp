#pragma once

#include "difftop/laurent.hpp"
#include "difftop/ratfunc.hpp"

namespace difftop::curve {

RatFunc x_of_z();       // z + 1/z
RatFunc sqrt_delta();   // z - 1/z, the branch of sqrt(x^2 - 4) positive for z > 1
RatFunc dx_dz();        // 1 - 1/z^2
RatFunc dz_dx();        // z^2/(z^2 - 1)

inline RatFunc involute(const RatFunc& f) { return f.involute(); }

// y(z) - y(1/z) at z = a + t: 2 ln(1 + a t)
Laurent ydiff_local(int a, int order);

// z(x) = x - sum C_k x^(-2k-1), as a series in u = 1/x (valuation -1), through u^order
Laurent z_of_x_series(int order);
// [1/(z(x) - a)^k] dz/dx in u = 1/x, through u^order
Laurent form_at_infinity(int a, int k, int order);
// f(z(x)) expanded at x = infinity in u = 1/x, through u^order
Laurent expand_at_infinity(const RatFunc& f, int order);

// g(x) for a rational g in x, as a rational function of z
RatFunc x_to_z(const RatFunc& g);
// f(z) = r0(x) + r1(x) sqrt(x^2 - 4)
struct XForm {
    RatFunc r0, r1;  // in Var::x
};
XForm to_x_form(const RatFunc& f);
RatFunc from_x_form(const XForm& f);

}  // namespace difftop::curve
