#include "doctest.h"

#include "difftop/laurent.hpp"
#include "difftop/logelem.hpp"
#include "difftop/mat2.hpp"

#include <random>

using namespace difftop;

namespace {

RatFunc z() { return RatFunc::variable(); }
RatFunc c(long p, long q = 1) { return RatFunc(frac(p, q)); }

RatFunc random_rf(std::mt19937& rng) {
    std::uniform_int_distribution<int> coef(-5, 5), deg(0, 3);
    auto rp = [&](bool nonzero) {
        for (;;) {
            std::vector<Q> cs(deg(rng) + 1);
            for (auto& q : cs) q = coef(rng);
            Poly p(cs);
            if (!nonzero || !p.is_zero()) return p;
        }
    };
    return RatFunc(rp(false), rp(true));
}

}  // namespace

TEST_CASE("rational function normalization") {
    CHECK((z() * z() - c(1)) / (z() - c(1)) == z() + c(1));
    CHECK((c(1) / (z() - c(1))).derivative() == c(-1) / ((z() - c(1)) * (z() - c(1))));
    RatFunc f(Poly({2, 0, 2}), Poly({0, 4}));
    CHECK(f == (z() * z() + c(1)) / (c(2) * z()));
    CHECK(f.den().lead() == 1);
    CHECK(to_str(frac(-3, 6)) == "-1/2");
    CHECK(parse_q("-1/2") == Q(-1, 2));
    CHECK_THROWS(c(1) / RatFunc());
}

TEST_CASE("normalization audit on random products") {
    std::mt19937 rng(1);
    for (int i = 0; i < 100; ++i) {
        RatFunc a = random_rf(rng), b = random_rf(rng);
        RatFunc p = a * b;
        CHECK(Poly::gcd(p.num(), p.den()).deg() == 0);
        CHECK(p.den().lead() == 1);
        CHECK(a + b - b == a);
    }
}

TEST_CASE("laurent expansion") {
    RatFunc f = c(1) / ((z() - c(1)) * (z() - c(1)));
    Laurent s = laurent_expand(f, Point::at(1), 3);
    CHECK(s.val() == -2);
    CHECK(s.coeff(-2) == 1);
    CHECK(s.coeff(0) == 0);

    Laurent g = laurent_expand(c(1) / (z() * z() - c(1)), Point::at(1), 2);
    CHECK(g.valuation() == -1);
    CHECK(g.coeff(-1) == Q(1, 2));
    CHECK(g.coeff(0) == Q(-1, 4));
    CHECK(g.coeff(1) == Q(1, 8));
    CHECK(g.coeff(2) == Q(-1, 16));
    CHECK_THROWS_AS(g.coeff(3), TruncationError);

    Laurent l = Laurent::log1p(1, 4);
    CHECK(l.coeff(1) == 1);
    CHECK(l.coeff(2) == Q(-1, 2));
    CHECK(l.coeff(3) == Q(1, 3));

    Laurent inf = laurent_expand(z() / (z() * z() - c(1)), Point::inf(), 5);
    CHECK(inf.coeff(1) == 1);
    CHECK(inf.coeff(3) == 1);
    CHECK(inf.coeff(5) == 1);
    CHECK(inf.coeff(2) == 0);
}

TEST_CASE("laurent expansion is multiplicative") {
    std::mt19937 rng(2);
    int done = 0;
    while (done < 100) {
        RatFunc a = random_rf(rng), b = random_rf(rng);
        if (a.is_zero() || b.is_zero()) continue;
        Point p = Point::at(Q(done % 3 - 1));
        const int order = 6;
        Laurent ea = laurent_expand(a, p, order), eb = laurent_expand(b, p, order);
        Laurent prod = ea * eb;
        Laurent direct = laurent_expand(a * b, p, order);
        for (int i = direct.val(); i < std::min(prod.prec(), direct.prec()); ++i)
            CHECK(prod.coeff(i) == direct.coeff(i));
        ++done;
    }
}

TEST_CASE("rf at series") {
    // 1/(1 - t) evaluated on s = t
    Laurent s = Laurent::monomial(1, 1, 8);
    Laurent r = rf_at_series(c(1) / (c(1) - z()), s);
    for (int i = 0; i < 8; ++i) CHECK(r.coeff(i) == 1);
}

TEST_CASE("antiderivative") {
    auto zm1 = z() - c(1);
    RfPrimitive p = integrate_rf(c(1) / (zm1 * zm1));
    CHECK(p.rational == c(-1) / zm1);
    CHECK(p.log_coeff == 0);
    p = integrate_rf(c(1) / z());
    CHECK(p.rational.is_zero());
    CHECK(p.log_coeff == 1);
    try {
        integrate_rf(c(1) / (z() * z() - c(1)));
        CHECK(false);
    } catch (const NonIntegrableResidue& e) {
        CHECK(e.point == "1");
        CHECK(e.value == Q(1, 2));
    }
    // mixed: 3/z + 2z/(z^2-1)^2 -> 3 ln z - 1/(z^2-1)
    auto zz = z() * z() - c(1);
    p = integrate_rf(c(3) / z() + c(2) * z() / (zz * zz));
    CHECK(p.rational == c(-1) / zz);
    CHECK(p.log_coeff == 3);
}

TEST_CASE("antiderivative inverts derivative") {
    std::mt19937 rng(3);
    for (int i = 0; i < 50; ++i) {
        RatFunc f = random_rf(rng);
        RatFunc g = f - c(0);
        RfPrimitive p = integrate_rf(g.derivative());
        CHECK(p.log_coeff == 0);
        CHECK((p.rational - g).derivative().is_zero());
    }
}

TEST_CASE("log ring") {
    LogElement lam = LogElement::lambda_pow(1);
    LogElement l2 = lam * lam;
    CHECK(l2.dz() == LogElement::lambda_pow(1, c(2) / z()));
    CHECK(LogElement::lambda_pow(1, c(1) / z()).integrate() == LogElement::lambda_pow(2, c(1, 2)));
    CHECK(LogElement(z()) * lam == LogElement::lambda_pow(1, z()));
    std::mt19937 rng(4);
    for (int i = 0; i < 20; ++i) {
        LogElement e;
        for (int j = 0; j <= 3; ++j) e += LogElement::lambda_pow(j, random_rf(rng));
        LogElement back = e.dz().integrate();
        CHECK((back - e).dz().is_zero());
    }
    // lambda local at +1 is ln(1+t)
    Laurent loc = lam.local(1, 3);
    CHECK(loc.coeff(1) == 1);
    CHECK(loc.coeff(2) == Q(-1, 2));
    // ln(z^2)/(z^2-1) -> 1 at z = 1
    LogElement q = LogElement::lambda_pow(1, c(2) / (z() * z() - c(1)));
    CHECK(q.local(1, 2).coeff(0) == 1);
    CHECK(q.local(1, 2).coeff(-1) == 0);
}

TEST_CASE("mat2") {
    Mat2<Q> a(1, 2, 3, 4);
    CHECK(a.det() == -2);
    CHECK((a * Mat2<Q>::identity()) == a);
    CHECK(a.transpose()(0, 1) == 3);
}
