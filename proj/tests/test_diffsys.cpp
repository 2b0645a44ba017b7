#include "doctest.h"

#include "difftop/curve.hpp"
#include "difftop/diffsys.hpp"

using namespace difftop;

namespace {

RatFunc X() { return RatFunc::variable(Var::x); }
RatFunc cx(const Q& q) { return RatFunc(q, Var::x); }
RatFunc delta_pow(int e) { return (X() * X() - cx(4)).pow(e); }

}  // namespace

TEST_CASE("L for P^1") {
    for (Q lam : {Q(0), Q(1, 2), Q(1)}) {
        LSeries L = diffsys::l_p1(lam);
        CHECK(L[0].det() == RatFunc(Q(1)));
        CHECK(L[1](0, 0) == RatFunc(lam));
    }
}

TEST_CASE("M0 and system determinant") {
    LSeries L = diffsys::l_p1();
    RMat M0 = diffsys::m0_general(L[0], Chart::p1());
    CHECK(M0.trace() == RatFunc(Q(1)));
    CHECK(M0 * M0 == M0);
    CHECK(M0 * L[0] == L[0] * M0);
    curve::XForm e = curve::to_x_form(M0(0, 0));
    CHECK(e.r0 == cx(Q(1, 2)));
    CHECK(e.r1 == X() / (X() * X() - cx(4)) * Q(1, 2));
    RatFunc x = curve::x_of_z();
    CHECK(diffsys::system_determinant(L[0]) == -(x * x - RatFunc(Q(4))));
}

TEST_CASE("M tower agrees between the general solve and the P^1 recursion") {
    LSeries L = diffsys::l_p1();
    MTower g = diffsys::m_tower_general(L, 6);
    MTower p = diffsys::m_p1(6);
    for (int k = 0; k <= 6; ++k) CHECK(g.M[k] == p.M[k]);
    MTower g0 = diffsys::m_tower_general(diffsys::l_p1(0), 4);
    MTower p0 = diffsys::m_p1(4, 0);
    for (int k = 0; k <= 4; ++k) CHECK(g0.M[k] == p0.M[k]);
}

TEST_CASE("printed first orders") {
    MTower t = diffsys::m_p1(5);
    auto xf = [&](int k, int i, int j) { return curve::to_x_form(t.M[k](i, j)); };
    // M1 off-diagonal x/(2 (x^2-4)^(3/2))
    CHECK(xf(1, 0, 1).r0.is_zero());
    CHECK(xf(1, 0, 1).r1 == X() / delta_pow(2) * Q(1, 2));
    CHECK(t.M[1](0, 0).is_zero());
    CHECK(xf(2, 0, 0).r1 == X() * (X() * X() + cx(16)) / delta_pow(4) * Q(1, 4));
    RatFunc m3 = X() * (X().pow(4) + X() * X() * Q(42) + cx(96)) / delta_pow(5) * Q(1, 8);
    CHECK(xf(3, 0, 1).r1 == m3);
    // M1 in z
    RatFunc z = RatFunc::variable();
    RatFunc z2m1 = z * z - RatFunc(Q(1));
    CHECK(t.M[1](0, 1) == z * z * (z * z + RatFunc(Q(1))) / (z2m1.pow(3) * Q(2)));
}

TEST_CASE("M audit") {
    LSeries L = diffsys::l_p1();
    MTower t = diffsys::m_p1(6);
    Report r = diffsys::m_audit(t, L, 6);
    CHECK(r.pass());
    MTower bad = t;
    bad.M[1](0, 1) = bad.M[1](0, 1) + RatFunc(Q(1));
    Report rb = diffsys::m_audit(bad, L, 6);
    CHECK_FALSE(rb.pass());
    CHECK(rb.clause("shift").first_failure == "order 1");
    // lambda = 0: the shift identity still holds, the P^1 sign symmetries do not
    LSeries L0 = diffsys::l_p1(0);
    MTower t0 = diffsys::m_p1(4, 0);
    Report r0 = diffsys::m_audit(t0, L0, 4);
    CHECK(r0.clause("shift").pass);
    CHECK(r0.clause("idempotent").pass);
}
