#include "doctest.h"

#include "difftop/correlators.hpp"
#include "difftop/gw.hpp"

using namespace difftop;

TEST_CASE("tau_0^3 in genus zero") {
    GwTable t = gw::extract(0, 3, 6);
    CHECK(t.at({0, 0, 0}) == 1);
    CHECK(gw::table_check(t).pass());
    // odd total degree
    CHECK(t.at({1, 0, 0}) == 0);
    CHECK(t.at({2, 1, 0}) == 0);
}

TEST_CASE("selection rule") {
    CHECK(gw::selection_allows(0, {0, 0, 0}));
    CHECK(!gw::selection_allows(0, {1, 0, 0}));
    CHECK(gw::selection_allows(1, {0}));
    CHECK(!gw::selection_allows(2, {0}));
    CHECK(gw::selection_allows(2, {2}));
}

TEST_CASE("genus one, one point") {
    GwTable t = gw::extract(1, 1, 4);
    CHECK(t.at({0}) == Q(-1, 24));
    CHECK(t.at({1}) == 0);
    CHECK(t.at({2}) == Q(1, 24));
    CHECK(gw::table_check(t).pass());
}

TEST_CASE("symmetric tables") {
    CHECK(gw::table_check(gw::extract(0, 4, 4)).pass());
    CHECK(gw::table_check(gw::extract(1, 2, 4)).pass());
}

TEST_CASE("table check catches a planted entry") {
    GwTable t = gw::extract(0, 3, 3);
    t.entries[{1, 0, 0}] = 1;
    Report r = gw::table_check(t);
    CHECK(!r.pass());
}

TEST_CASE("positivity probe reports the degree zero genus one bracket") {
    Report r = gw::positivity_check(2, 8);
    REQUIRE(r.clauses.size() == 1);
    CHECK(!r.pass());
    CHECK(r.clauses[0].first_failure == "g=1 k=0: -1/24");
}

TEST_CASE("C_n two paths") {
    MTower m = diffsys::m_p1(5);
    CnSeries c = gw::cn_series(m, {2, 3}, 4);
    CHECK(c.determinantal == c.omega_sum);
    CHECK(c.determinantal[1] == 0);
    CHECK(c.determinantal[0] != 0);
    CnSeries c3 = gw::cn_series(m, {2, 3, 5}, 3);
    CHECK(c3.determinantal == c3.omega_sum);
    CHECK(c3.determinantal[0] == 0);
    CHECK(gw::cn_check(m, corr::random_tuples(11, 2, 5), 4).pass());
    CHECK_THROWS(gw::cn_series(m, {2}, 2));
}

TEST_CASE("gw csv") {
    GwTable t = gw::extract(1, 1, 2);
    CHECK(t.to_csv() == "k1,value\n0,-1/24\n2,1/24\n");
}
