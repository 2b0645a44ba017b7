#include "doctest.h"

#include "difftop/curve.hpp"

using namespace difftop;

TEST_CASE("chart identities") {
    RatFunc s = curve::sqrt_delta(), x = curve::x_of_z();
    CHECK(s * s == x * x - RatFunc(Q(4)));
    CHECK(curve::involute(RatFunc::variable()) == RatFunc(Q(1)) / RatFunc::variable());
    CHECK(curve::involute(x) == x);
    CHECK(curve::involute(s) == -s);
    CHECK(curve::dx_dz() == x.derivative());
    CHECK(curve::dx_dz().order_at(1) == 1);
    CHECK(curve::dx_dz().order_at(-1) == 1);
}

TEST_CASE("ydiff_local") {
    Laurent p = curve::ydiff_local(1, 3), m = curve::ydiff_local(-1, 3);
    CHECK(p.coeff(0) == 0);
    CHECK(p.coeff(1) == 2);
    CHECK(p.coeff(2) == -1);
    CHECK(p.coeff(3) == Q(2, 3));
    CHECK(m.coeff(1) == -2);
    CHECK(m.coeff(2) == -1);
    CHECK(m.coeff(3) == Q(-2, 3));
}

TEST_CASE("z of x") {
    Laurent zs = curve::z_of_x_series(7);
    CHECK(zs.coeff(-1) == 1);
    CHECK(zs.coeff(1) == -1);
    CHECK(zs.coeff(3) == -1);
    CHECK(zs.coeff(5) == -2);
    CHECK(zs.coeff(7) == -5);
    Laurent back = zs + zs.inverse();
    CHECK(back.coeff(-1) == 1);
    for (int i = 0; i <= 7; ++i) CHECK(back.coeff(i) == 0);
    Laurent inv = zs.inverse();
    CHECK(inv.coeff(1) == 1);
    CHECK(inv.coeff(3) == 1);
    CHECK(inv.coeff(5) == 2);
    // Catalan recurrence through k = 10
    Laurent big = curve::z_of_x_series(21);
    std::vector<Q> cat{1};
    for (int k = 0; k < 10; ++k) {
        Q s = 0;
        for (int i = 0; i <= k; ++i) s += cat[i] * cat[k - i];
        cat.push_back(s);
    }
    for (int k = 0; k <= 10; ++k) CHECK(big.coeff(2 * k + 1) == -cat[k]);
}

TEST_CASE("forms at infinity") {
    Laurent p = curve::form_at_infinity(1, 2, 2), m = curve::form_at_infinity(-1, 2, 2);
    CHECK(p.valuation() == 2);
    CHECK(p.coeff(2) == 1);
    CHECK(m.coeff(2) == 1);
}

TEST_CASE("x-form round trip") {
    RatFunc z = RatFunc::variable();
    RatFunc f = z * z / (z * z - RatFunc(Q(1)));
    curve::XForm xf = curve::to_x_form(f);
    CHECK(curve::from_x_form(xf) == f);
    // z^2/(z^2-1) = 1/2 + x/(2 sqrt(x^2-4))
    RatFunc x = RatFunc::variable(Var::x);
    CHECK(xf.r0 == RatFunc(Q(1, 2), Var::x));
    CHECK(xf.r1 == x / (x * x - RatFunc(Q(4), Var::x)) * Q(1, 2));
}
