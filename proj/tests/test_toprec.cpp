#include "doctest.h"

#include "difftop/toprec.hpp"

using namespace difftop;

namespace {

BasisKey key(std::initializer_list<Slot> s) { return pack(std::vector<Slot>(s)); }

}  // namespace

TEST_CASE("omega_3^0") {
    auto w = toprec::omega(0, 3);
    CHECK(w->coeffs.size() == 2);
    CHECK(w->coeffs.at(key({{1, 2}, {1, 2}, {1, 2}})) == Q(1, 2));
    CHECK(w->coeffs.at(key({{-1, 2}, {-1, 2}, {-1, 2}})) == Q(1, 2));
}

TEST_CASE("omega_1^1") {
    auto w = toprec::omega(1, 1);
    std::map<BasisKey, Q> expect{{key({{1, 2}}), Q(-1, 48)},  {key({{1, 3}}), Q(1, 16)},
                                 {key({{1, 4}}), Q(1, 16)},   {key({{-1, 2}}), Q(-1, 48)},
                                 {key({{-1, 3}}), Q(-1, 16)}, {key({{-1, 4}}), Q(1, 16)}};
    CHECK(w->coeffs == expect);
}

TEST_CASE("omega symmetry") {
    for (auto [g, n] : {std::pair{0, 4}, {1, 2}, {0, 5}, {1, 3}}) {
        auto w = toprec::omega(g, n);
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        while (std::next_permutation(perm.begin(), perm.end())) CHECK(w->permuted(perm) == *w);
    }
}

TEST_CASE("memo determinism") {
    PoleBasisForm warm = *toprec::omega(2, 1);
    toprec::clear_memo();
    PoleBasisForm cold = *toprec::omega(2, 1);
    CHECK(warm == cold);
}

TEST_CASE("residues and primitives") {
    CHECK(toprec::residue(Laurent::monomial(1, -1, 2)) == 1);
    CHECK(toprec::residue(Laurent::monomial(1, 0, 2)) == 0);
    PoleBasisForm one;
    one.n = 1;
    one.add(key({{1, 2}}), 1);
    PoleBasisForm p = toprec::primitive(one);
    // -1/(z-1) - 1
    CHECK(p.eval({Q(0)}) == 0);
    CHECK(p.eval({Q(3)}) == Q(-3, 2));
    CHECK(toprec::f_gn(1, 1).eval({Q(0)}) == 0);
    CHECK(toprec::omega_02(2, 3) == 1);
}
