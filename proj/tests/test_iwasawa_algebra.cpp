#include "doctest.h"

#include "acl/errors.hpp"
#include "acl/iwasawa.hpp"
#include "acl/padic.hpp"

#include <random>

using namespace acl;

namespace {

GroupAlgebraElement random_element(std::mt19937_64& rng, const FiniteLevelGroup& G, bool integral = true) {
    std::uniform_int_distribution<int> c(-5, 5), den(1, 4);
    GroupAlgebraElement out(G);
    for (std::size_t g = 0; g < G.order(); ++g)
        if (rng() % 3 == 0) out.set(g, integral ? Rational(c(rng)) : Rational(c(rng), den(rng)));
    return out;
}

// A random integral element of the augmentation ideal.
GroupAlgebraElement random_augmentation(std::mt19937_64& rng, const FiniteLevelGroup& G) {
    auto mu = random_element(rng, G);
    mu.set(0, mu[0] - degree(mu));
    return mu;
}

}  // namespace

TEST_CASE("group tabulation") {
    const FiniteLevelGroup G(3, 2, 2);
    CHECK(G.order() == 81);
    for (std::size_t i = 0; i < G.order(); ++i) {
        CHECK(G.index(G.element(i)) == i);
        CHECK(G.add(i, G.negate(i)) == 0);
    }
    CHECK(G.element(G.basis(1)) == FiniteLevelGroup::Element{0, 1});
    CHECK_THROWS_AS(FiniteLevelGroup(4, 1, 1), DomainError);
}

TEST_CASE("convolution examples and degree") {
    const FiniteLevelGroup G(3, 2, 2);
    const auto g = G.index({2, 7}), h = G.index({8, 4});
    const auto dg = GroupAlgebraElement::dirac(G, g), dh = GroupAlgebraElement::dirac(G, h);
    CHECK(convolve(dg, dh) == GroupAlgebraElement::dirac(G, G.index({1, 2})));
    CHECK(convolve(dg, GroupAlgebraElement::dirac(G, 0)) == dg);
    CHECK(degree(dg) == 1);
    CHECK(degree(phi_map(G, g)) == 0);
    CHECK(degree(Rational(3) * dg + Rational(2) * dh) == 5);
    CHECK(phi_map(G, 0).is_zero());
    CHECK_THROWS_AS((void)convolve(dg, GroupAlgebraElement(FiniteLevelGroup(3, 2, 1))), MismatchError);

    std::mt19937_64 rng(1);
    for (int i = 0; i < 20; ++i) {
        const auto x = random_element(rng, G, false), y = random_element(rng, G, false);
        CHECK(degree(convolve(x, y)) == degree(x) * degree(y));
    }
}

TEST_CASE("algebra axioms exhaustively at p=2, N=2, r=1") {
    const FiniteLevelGroup G(2, 1, 2);
    // Integral coefficient vectors in {-1, 0, 1}^4 (81 elements); check on a grid of triples.
    std::vector<GroupAlgebraElement> all;
    for (int code = 0; code < 81; ++code) {
        GroupAlgebraElement x(G);
        int c = code;
        for (std::size_t g = 0; g < 4; ++g, c /= 3) x.set(g, c % 3 - 1);
        all.push_back(x);
    }
    const auto one = GroupAlgebraElement::dirac(G, 0);
    for (std::size_t i = 0; i < all.size(); ++i) {
        CHECK(convolve(all[i], one) == all[i]);
        for (std::size_t j = 0; j < all.size(); ++j) {
            const auto xy = convolve(all[i], all[j]);
            REQUIRE(xy == convolve(all[j], all[i]));
            const auto& z = all[(i * 7 + j * 13) % all.size()];
            REQUIRE(convolve(xy, z) == convolve(all[i], convolve(all[j], z)));
        }
    }
}

TEST_CASE("integration") {
    const FiniteLevelGroup G(5, 1, 2);
    const auto f = [](const FiniteLevelGroup::Element& g) { return Rational(g[0] * g[0] + 1); };
    CHECK(integrate(GroupAlgebraElement::dirac(G, 7), f) == 50);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 10; ++i) {
        const auto x = random_element(rng, G, false), y = random_element(rng, G, false);
        CHECK(integrate(x, [](const auto&) { return Rational(1); }) == degree(x));
        CHECK(integrate(Rational(2) * x + y, f) == 2 * integrate(x, f) + integrate(y, f));
        const auto f2 = [](const FiniteLevelGroup::Element& g) { return Rational(g[0], 3); };
        CHECK(integrate(x, [&](const auto& g) { return f(g) - 4 * f2(g); }) == integrate(x, f) - 4 * integrate(x, f2));
    }
}

TEST_CASE("psi and phi") {
    SUBCASE("psi(phi(e_1)) at r = 2") {
        const FiniteLevelGroup G(3, 2, 2);
        CHECK(psi_class(phi_map(G, G.basis(0)), 12) == std::vector<std::int64_t>{1, 0});
        CHECK_THROWS_AS((void)psi_class(GroupAlgebraElement::dirac(G, 1), 12), NotInAugmentationIdeal);
    }
    SUBCASE("psi o phi is the coordinate map, exhaustively") {
        for (auto [p, N, r] : {std::tuple{2, 2, 1}, std::tuple{3, 2, 2}, std::tuple{3, 3, 1}, std::tuple{3, 3, 2}}) {
            const FiniteLevelGroup G(p, r, N);
            for (std::size_t g = 0; g < G.order(); ++g) REQUIRE(psi_class(phi_map(G, g), 12) == G.element(g));
        }
    }
    SUBCASE("psi kills I^2 and the additivity defect of phi") {
        const FiniteLevelGroup G(3, 2, 2);
        std::mt19937_64 rng(17);
        const std::vector<std::int64_t> zero{0, 0};
        for (int i = 0; i < 60; ++i) {
            const auto x = random_augmentation(rng, G), y = random_augmentation(rng, G);
            CHECK(psi_class(convolve(x, y), 12) == zero);
            const std::size_t g = rng() % G.order(), h = rng() % G.order();
            CHECK(psi_class(convolve(phi_map(G, g), phi_map(G, h)), 12) == zero);
            CHECK(psi_class(phi_map(G, G.add(g, h)) - phi_map(G, g) - phi_map(G, h), 12) == zero);
        }
        // Precision below the level truncates the coordinates.
        CHECK(psi_class(phi_map(G, G.index({5, 7})), 1) == std::vector<std::int64_t>{2, 1});
    }
}

TEST_CASE("I/I^2 is (Z/p^N)^r with basis phi(e_i)") {
    for (auto [p, N, r] : {std::tuple{2, 2, 1}, std::tuple{3, 2, 2}, std::tuple{3, 3, 1}, std::tuple{2, 2, 2}, std::tuple{5, 1, 2}}) {
        const FiniteLevelGroup G(p, r, N);
        const auto q = augmentation_quotient(G);
        CAPTURE(p);
        CAPTURE(N);
        CAPTURE(r);
        CHECK(q.lattice_rank == static_cast<int>(G.order()) - 1);
        CHECK(q.order == BigInt(ipow(p, N * r)));
        CHECK(q.exponent_divides_pN);
        CHECK(q.generated_by_phi_basis);
        CHECK(phi_span_full_rank(G));
    }
}

TEST_CASE("boundedness of compatible families") {
    const std::int64_t p = 3;
    const int Nmax = 4;
    auto haar = [&](Rational scale, bool normalized) {
        std::vector<GroupAlgebraElement> levels;
        for (int k = 1; k <= Nmax; ++k) {
            const FiniteLevelGroup G(p, 1, k);
            GroupAlgebraElement mu(G);
            for (std::size_t g = 0; g < G.order(); ++g)
                mu.set(g, scale * (normalized ? Rational(1, ipow(p, k)) : Rational(g == 0 ? 1 : 0)));
            levels.push_back(mu);
        }
        return CompatibleFamily(levels);
    };
    // The Dirac measure at 0: constant coefficients.
    const auto dirac = is_bounded(haar(1, false));
    CHECK(dirac.bounded);
    CHECK(dirac.infimum_valuation == 0);
    // Haar measure: level-k coefficients p^{-k}.
    const auto h = is_bounded(haar(1, true));
    CHECK_FALSE(h.bounded);
    CHECK(h.infimum_valuation == -Nmax);
    // A single global denominator.
    const auto scaled = is_bounded(haar(Rational(1, 27), false));
    CHECK(scaled.bounded);
    CHECK(scaled.infimum_valuation == -3);

    std::vector<GroupAlgebraElement> bad{GroupAlgebraElement::dirac(FiniteLevelGroup(p, 1, 1), 0),
                                         GroupAlgebraElement::dirac(FiniteLevelGroup(p, 1, 2), 1)};
    CHECK_THROWS_AS(CompatibleFamily{bad}, MismatchError);
}
