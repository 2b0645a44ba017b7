#include "doctest.h"

#include "difftop/curve.hpp"
#include "difftop/dy.hpp"

using namespace difftop;

namespace {

bool clause_passes(const Report& r, const std::string& id) {
    for (const auto& c : r.clauses)
        if (c.id == id) return c.pass;
    FAIL("missing clause " << id);
    return false;
}

}  // namespace

TEST_CASE("dy leading coefficients") {
    CHECK(dy::generate(DyKind::alpha, 4, 10).at(0, 2) == 1);
    CHECK(dy::generate(DyKind::P, 4, 10).at(0, 1) == 1);
    CHECK(dy::generate(DyKind::Q, 4, 10).at(1, 2) == Q(1, 2));
}

TEST_CASE("dy sparsity pattern") {
    for (DyKind k : {DyKind::alpha, DyKind::P, DyKind::Q}) {
        DySeries s = dy::generate(k, 9, 25);
        CHECK(!s.c.empty());
        for (const auto& [key, v] : s.c) {
            auto [h, n] = key;
            CHECK(v != 0);
            if (k == DyKind::alpha) CHECK((h % 2 == 0 && n % 2 == 0 && n >= 2));
            if (k == DyKind::P) CHECK((h % 2 == 0 && n % 2 == 1));
            if (k == DyKind::Q) CHECK((h % 2 == 1 && n % 2 == 0 && n >= 2));
        }
    }
}

TEST_CASE("P0 is 1/sqrt(x^2-4) at infinity") {
    DySeries p = dy::generate(DyKind::P, 0, 7);
    CHECK(p.at(0, 1) == 1);
    CHECK(p.at(0, 3) == 2);
    CHECK(p.at(0, 5) == 6);
    CHECK(p.at(0, 7) == 20);
}

TEST_CASE("coefficient sum normalization") {
    CHECK(dy::coefficient_sum(0) == 1);
    CHECK(dy::coefficient_sum(1) == 8);
    CHECK(dy::coefficient_sum(2) == 384);
    // the bare power of four is off from j = 1 on
    CHECK(dy::coefficient_sum(1) != 4);
}

TEST_CASE("assembled M~ against closed forms") {
    auto m = dy::assemble(2, 12);
    // trace 1 at every order
    for (int k = 0; k <= 2; ++k)
        for (int n = 0; n <= 12; ++n) CHECK(m[k](0, 0)[n] + m[k](1, 1)[n] == (k == 0 && n == 0 ? 1 : 0));
    // (M~_1)_12 = x/(2 (x^2-4)^(3/2)) = 1/(2x^2) + ...
    CHECK(m[1](0, 1)[2] == Q(1, 2));
    Laurent ref = curve::expand_at_infinity(curve::x_of_z() / (curve::sqrt_delta().pow(3) * Q(2)), 12);
    for (int n = 0; n <= 12; ++n) CHECK(m[1](0, 1)[n] == ref.coeff(n));
}

TEST_CASE("Taylor shift oracle on a monomial") {
    DySeries f{DyKind::P, 3, 6, {{{0, 1}, Q(1)}}};
    Cells s = dy::taylor_shift(f);
    // 1/(x + h) = 1/x - h/x^2 + h^2/x^3 - h^3/x^4
    CHECK(s.at({0, 1}) == 1);
    CHECK(s.at({1, 2}) == -1);
    CHECK(s.at({2, 3}) == 1);
    CHECK(s.at({3, 4}) == -1);
    CHECK(s.size() == 4);
}

TEST_CASE("printed shift formulas match the oracle") {
    Report r = dy::shift_check(6, 16);
    CHECK(r.pass());
    // the shifted Q picks up even hbar powers
    Cells q = dy::printed_shift(DyKind::Q, 4, 10);
    bool even = false;
    for (const auto& [key, v] : q) even |= key.first % 2 == 0;
    CHECK(even);
}

TEST_CASE("reduced system with and without the p = 0 constants") {
    Report fixed = dy::reduced_system(3, 3, true);
    CHECK(fixed.pass());
    Report printed = dy::reduced_system(3, 3, false);
    CHECK(!clause_passes(printed, "relation-1"));
    CHECK(!clause_passes(printed, "relation-2"));
    CHECK(clause_passes(printed, "relation-3"));
    CHECK(clause_passes(printed, "relation-4"));
    CHECK(!clause_passes(printed, "relation-5"));
    CHECK(clause_passes(printed, "relation-6"));
}

TEST_CASE("printed finite sums") {
    CHECK(dy::printed_identity_residual(3, 0, 0) == 0);
    Report r = dy::printed_finite_sums(4, 4);
    CHECK(clause_passes(r, "identity-2"));
    CHECK(clause_passes(r, "identity-3"));
    CHECK(clause_passes(r, "identity-6"));
    // the empty left sum at s = 0 cannot produce the right side
    CHECK(dy::printed_identity_residual(1, 0, 0) == -1);
    CHECK(dy::printed_identity_residual(1, 2, 3) == 0);
}

TEST_CASE("identity battery") {
    Report r = dy::identity_battery(4, 4);
    CHECK(r.pass());
}

TEST_CASE("large-x comparison with the M tower") {
    MTower m = diffsys::m_p1(3);
    CHECK(dy::compare(m, 3, 12).pass());
    MTower bad = m;
    bad.M[2](0, 1) = bad.M[2](0, 1) + RatFunc(Q(1)) / curve::x_of_z().pow(5);
    Report r = dy::compare(bad, 3, 12);
    CHECK(!r.pass());
    CHECK(r.clauses[0].first_failure.find("k=2 entry 12 x^-5") == 0);
}

TEST_CASE("dy csv grid") {
    std::string csv = dy::to_csv(dy::generate(DyKind::Q, 1, 2));
    CHECK(csv == "hbar,x^-0,x^-1,x^-2\n0,0,0,0\n1,0,0,1/2\n");
    CHECK(dy::parse_kind("α") == DyKind::alpha);
    CHECK_THROWS(dy::parse_kind("beta"));
}
