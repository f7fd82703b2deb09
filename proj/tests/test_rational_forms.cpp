#include "doctest.h"

#include "acl/errors.hpp"
#include "acl/rational_function.hpp"

#include <random>

using namespace acl;
using RF = LocalRationalFunction;
using P = RF::Poly;

namespace {

P poly(std::initializer_list<long long> c) {
    std::vector<GaussianRational> v;
    for (auto x : c) v.emplace_back(x);
    return P(std::move(v));
}

}  // namespace

TEST_CASE("evaluate_at_s examples") {
    CHECK(evaluate_at_s(RF(3, poly({1}), poly({1, -1})), Rational(1)) == CoefficientValue(Rational(3, 2)));
    CHECK(evaluate_at_s(RF::variable(5), Rational(0)) == CoefficientValue(1));
    CHECK(evaluate_at_s(RF(2, poly({1, -2, 1}), poly({1})), Rational(0)) == CoefficientValue(0));
}

TEST_CASE("poles carry their order") {
    RF r(3, poly({1}), poly({1, -2, 1}));
    try {
        (void)evaluate_at_s(r, Rational(0));
        FAIL("expected a pole");
    } catch (const PoleError& e) {
        CHECK(e.order() == 2);
    }
}

TEST_CASE("half-integer and complex s use the principal branch") {
    RF r(4, poly({1}), poly({1, -1}));  // 1/(1 - 4^{-s})
    auto v = evaluate_at_s(r, Rational(1, 2));
    CHECK(!v.is_exact());
    CHECK(std::abs(v.to_complex() - std::complex<double>(2.0, 0.0)) < 1e-12);
    auto w = evaluate_at_s(r, std::complex<double>(1.0, 0.5));
    auto x = std::exp(-std::complex<double>(1.0, 0.5) * std::log(4.0));
    CHECK(std::abs(w.to_complex() - 1.0 / (1.0 - x)) < 1e-12);
}

TEST_CASE("order_at_X examples") {
    CHECK(order_at_X(RF(3, poly({1, -2, 1}), poly({1, 1})), 1) == 2);
    CHECK(order_at_X(RF(3, poly({1}), poly({1, -1})), 1) == -1);
    CHECK(order_at_X(RF::variable(3), 1) == 0);
    CHECK_THROWS_AS((void)order_at_X(RF::constant(3, 0), 1), ZeroFunctionError);
}

TEST_CASE("equal examples") {
    CHECK(equal(RF(3, poly({1}), poly({1, -1})), RF(3, poly({1, 1}), poly({1, 0, -1}))));
    CHECK(!equal(RF::variable(3), RF::monomial(3, 1, 2)));
    CHECK(equal(RF(3, poly({1, 0, -1}), poly({1})), RF(3, poly({1, -1}) * poly({1, 1}), poly({1}))));
    CHECK_THROWS_AS((void)equal(RF::variable(3), RF::variable(5)), MismatchError);
}

TEST_CASE("reduced form is canonical") {
    RF a(3, poly({1, 1}), poly({1, 0, -1}));
    CHECK(a.denominator() == poly({-1, 1}));
    CHECK(a.numerator() == poly({-1}));
}

TEST_CASE("order is additive and equal is an equivalence on random products") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> coef(-3, 3), deg(0, 3), root(-2, 2);
    auto random_poly = [&] {
        P p = poly({1});
        int d = deg(rng);
        for (int i = 0; i < d; ++i) p = p * poly({-root(rng), 1});
        int c = coef(rng);
        return GaussianRational(c == 0 ? 1 : c) * p;
    };
    for (int i = 0; i < 200; ++i) {
        P n1 = random_poly(), d1 = random_poly(), n2 = random_poly(), d2 = random_poly();
        if (n1.is_zero() || n2.is_zero()) continue;
        RF r1(3, n1, d1), r2(3, n2, d2);
        for (int x0 = -2; x0 <= 2; ++x0)
            CHECK(order_at_X(r1 * r2, x0) == order_at_X(r1, x0) + order_at_X(r2, x0));
        RF r1b(3, n1 * d2, d1 * d2);
        CHECK(equal(r1, r1b));
        CHECK(equal(r1b, r1));
        CHECK(equal(r1 * r2, r2 * r1));
    }
}

TEST_CASE("substitute_monomial") {
    RF r(3, poly({1}), poly({1, -1}));  // 1/(1-X)
    RF inv = r.substitute_monomial(GaussianRational(Rational(1, 3)), -1);  // 1/(1 - 1/(3X))
    RF expected(3, poly({0, 3}), poly({-1, 3}));
    CHECK(equal(inv, expected));
    CHECK(equal(r.substitute_monomial(2, 1), RF(3, poly({1}), poly({1, -2}))));
}

TEST_CASE("float backend compares within tolerance") {
    RF r(3, poly({1}), poly({1, -1}));
    auto f = to_float(r);
    CHECK(equal(f, to_float(RF(3, poly({1, 1}), poly({1, 0, -1})))));
    CHECK(order_at_X(f, 1) == -1);
}
