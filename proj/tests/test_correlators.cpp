#include "doctest.h"

#include "difftop/correlators.hpp"
#include "difftop/curve.hpp"
#include "difftop/toprec.hpp"

using namespace difftop;

namespace {

const MTower& mt() {
    static const MTower m = diffsys::m_p1(7);
    return m;
}

RatFunc rc(const Q& q) { return RatFunc(q); }

}  // namespace

TEST_CASE("W1 low orders") {
    W1Tower w = corr::w1_tower(mt(), 4);
    // d/dx(-ln z) = (M0)_12
    CHECK(w.wm1.dx() == LogElement(mt().M[0](0, 1)));
    CHECK(w.w[0].is_zero());
    CHECK(w.w[2].is_zero());
    CHECK(w.w[4].is_zero());
    CHECK(w.w[1] * curve::dx_dz() == toprec::omega(1, 1)->as_ratfunc());
    CHECK(w.w[3] * curve::dx_dz() == toprec::omega(2, 1)->as_ratfunc());
}

TEST_CASE("W2 at (2,3) matches the chart") {
    CorrelatorSample s = corr::wn_eval(mt(), {Q(2), Q(3)}, 2);
    Q x2 = Q(5, 2), x3 = Q(10, 3);
    Q lhs = s.values[0] + Q(1) / ((x2 - x3) * (x2 - x3));
    Q rhs = Q(1) / (curve::dx_dz().eval(2) * curve::dx_dz().eval(3));
    CHECK(lhs == rhs);
    CHECK(s.values[1] == 0);
}

TEST_CASE("W_n is symmetric under permutations") {
    std::vector<Q> pts{Q(2), Q(3), frac(-5, 2), Q(7)};
    CorrelatorSample a = corr::wn_eval(mt(), pts, 4);
    std::vector<Q> rot{pts[1], pts[2], pts[3], pts[0]};
    std::vector<Q> sw{pts[1], pts[0], pts[2], pts[3]};
    CHECK(corr::wn_eval(mt(), rot, 4).values == a.values);
    CHECK(corr::wn_eval(mt(), sw, 4).values == a.values);
}

TEST_CASE("W3 at (2,3,5): hbar^1 is omega(0,3)") {
    CorrelatorSample s = corr::wn_eval(mt(), {Q(2), Q(3), Q(5)}, 3);
    CHECK(s.values[0] == 0);
    Q lhs = s.values[1];
    for (Q z : {Q(2), Q(3), Q(5)}) lhs *= curve::dx_dz().eval(z);
    CHECK(lhs == toprec::omega(0, 3)->eval({Q(2), Q(3), Q(5)}));
}

TEST_CASE("coincident points are rejected") {
    CHECK_THROWS_AS(corr::wn_eval(mt(), {Q(2), frac(1, 2)}, 1), std::invalid_argument);
    CHECK_THROWS_AS(corr::wn_eval(mt(), {Q(2), Q(1)}, 1), std::invalid_argument);
}

TEST_CASE("diagonal W2 agrees with the symbolic two-point limit") {
    std::vector<Q> d = corr::wn_diagonal(mt(), Q(2), 4);
    std::vector<RatFunc> s = corr::wn_symbolic(mt(), {Q(2), Q(0)}, 1, 4);
    for (int k = 0; k <= 4; ++k) CHECK(s[k].eval(2) == d[k]);
    // Tr M^2 = 1 and its derivative vanishes
    for (int k = 0; k <= 3; ++k) {
        RatFunc t = rc(0);
        for (int i = 0; i <= k; ++i) t += (mt().M[i] * mt().M[k - i]).trace();
        CHECK(t == rc(k == 0 ? 1 : 0));
    }
}

TEST_CASE("parallel and serial sample loops agree") {
    auto tup = corr::random_tuples(11, 3, 6);
    auto a = corr::sample_values(mt(), tup, 3, true);
    auto b = corr::sample_values(mt(), tup, 3, false);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i].values == b[i].values);
}

TEST_CASE("random tuples are reproducible and valid") {
    auto a = corr::random_tuples(5, 4, 10);
    CHECK(a == corr::random_tuples(5, 4, 10));
    for (const auto& t : a) CHECK(corr::valid_points(t));
}

TEST_CASE("Bergmann identity") { CHECK(corr::bergmann_identity(mt())); }

TEST_CASE("TR comparison through 2g-2+n = 3") {
    for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 3}, {1, 1}, {0, 4}, {1, 2}, {2, 1}, {0, 5}})
        CHECK(corr::tr_compare(mt(), g, n, 3, 99).pass());
}

TEST_CASE("TT audit: lambda = 1/2 passes, lambda = 0 fails parity at n = 1") {
    Report r = corr::tt_audit(mt(), 4, 3, 3, 2);
    CHECK(r.pass());
    Report r0 = corr::tt_audit(diffsys::m_p1(5, Q(0)), 4, 3, 3, 2);
    CHECK_FALSE(r0.clause("parity").pass);
    CHECK(r0.clause("parity").first_failure == "n=1 hbar^0");
}

TEST_CASE("P1 at leading order is (ln z)^2") {
    DTower d = dl::d_tower(3);
    HLog p = corr::p1_at(d, Q(3), 1);
    CHECK(p[-2] == LogPoly::in_symbol({Q(0), Q(0), Q(1)}, 0));
}

TEST_CASE("loop equations hold; an injected W2 error is detected") {
    DTower d = dl::d_tower(4);
    corr::LoopInput in{{Q(2), Q(5)}, {Q(3)}, 2};
    Report r = corr::loop_check(d, mt(), in);
    CHECK(r.clause("P1=W2(x,x)+W1^2").pass);
    CHECK(r.clause("loop-equation-rank-1").pass);
    MTower bad = mt();
    bad.M[0](0, 0) += rc(frac(1, 1000));
    Report rb = corr::loop_check(d, bad, in);
    CHECK_FALSE(rb.clause("P1=W2(x,x)+W1^2").pass);
}

TEST_CASE("LogPoly arithmetic") {
    LogPoly a = LogPoly::in_symbol({Q(1), Q(2)}, 0);
    LogPoly b = LogPoly::in_symbol({Q(0), Q(3)}, 1);
    LogPoly p = a * b;
    CHECK(p.degree_in(0) == 1);
    CHECK(p.degree_in(1) == 1);
    CHECK((p - p).is_zero());
    CHECK(a * LogPoly(Q(0)) == LogPoly());
}
