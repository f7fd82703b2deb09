#include "doctest.h"

#include "acl/errors.hpp"
#include "acl/padic.hpp"

#include <random>
#include <set>

using namespace acl;

TEST_CASE("valuation of small rationals") {
    CHECK(valuation(PAdicRational(9, PrimeLocalField(3))) == 2);
    CHECK(valuation(PAdicRational(Rational(1, 3), PrimeLocalField(3))) == -1);
    CHECK(valuation(PAdicRational(12, PrimeLocalField(2))) == 2);
    CHECK_THROWS_AS((void)valuation(PAdicRational(0, PrimeLocalField(5))), ValuationError);
}

TEST_CASE("absolute value") {
    CHECK(absolute_value(PAdicRational(3, PrimeLocalField(3))) == Rational(1, 3));
    CHECK(absolute_value(PAdicRational(1, PrimeLocalField(5))) == 1);
    CHECK(absolute_value(PAdicRational(Rational(4, 9), PrimeLocalField(3))) == 9);
    // Residue degree two: q = 9 and p is still a uniformizer.
    CHECK(absolute_value(PAdicRational(3, PrimeLocalField(3, 2))) == Rational(1, 9));
    CHECK_THROWS_AS((void)absolute_value(PAdicRational(0, PrimeLocalField(3))), ValuationError);
}

TEST_CASE("unit residues") {
    CHECK(unit_residues(PrimeLocalField(3), 1) == std::vector<std::int64_t>{1, 2});
    CHECK(unit_residues(PrimeLocalField(3), 2) == std::vector<std::int64_t>{1, 2, 4, 5, 7, 8});
    CHECK(unit_residues(PrimeLocalField(2), 3) == std::vector<std::int64_t>{1, 3, 5, 7});
    for (std::int64_t p : {2, 3, 5, 7})
        for (int N = 1; N <= 4; ++N)
            CHECK(unit_residues(PrimeLocalField(p), N).size() == static_cast<std::size_t>(ipow(p, N - 1) * (p - 1)));
    CHECK_THROWS_AS((void)unit_residues(PrimeLocalField(3, 2), 2), EnumerationError);
}

TEST_CASE("valuation and absolute value laws on random pairs") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long long> num(-5000, 5000), den(1, 5000);
    for (std::int64_t p : {2, 3, 5}) {
        PrimeLocalField F(p);
        for (int i = 0; i < 1000; ++i) {
            Rational x(num(rng), den(rng)), y(num(rng), den(rng));
            if (x == 0 || y == 0) continue;
            PAdicRational X(x, F), Y(y, F);
            CHECK(valuation(PAdicRational(x * y, F)) == valuation(X) + valuation(Y));
            CHECK(absolute_value(PAdicRational(x * y, F)) == absolute_value(X) * absolute_value(Y));
            if (x + y == 0) continue;
            Rational s = absolute_value(PAdicRational(x + y, F));
            Rational mx = std::max(absolute_value(X), absolute_value(Y));
            CHECK(s <= mx);
            if (absolute_value(X) != absolute_value(Y)) CHECK(s == mx);
        }
    }
}

TEST_CASE("modular helpers") {
    CHECK(invmod(2, 9) == 5);
    CHECK(mulmod(-1, 1, 7) == 6);
    CHECK(residue(Rational(1, 2), 27) == 14);
    CHECK_THROWS_AS((void)invmod(3, 9), DomainError);
    CHECK_THROWS_AS(PrimeLocalField(4), DomainError);
}
