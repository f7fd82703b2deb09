#include "doctest.h"

#include "acl/errors.hpp"
#include "acl/steinberg.hpp"

#include <random>

using namespace acl;

namespace {

TorusCoordinate random_torus(std::mt19937_64& rng, std::int64_t p, int R, int kmax = 3) {
    const std::int64_t pR = ipow(p, R);
    std::uniform_int_distribution<int> kd(-kmax, kmax);
    std::uniform_int_distribution<std::int64_t> ud(1, pR - 1);
    std::int64_t u;
    do u = ud(rng);
    while (u % p == 0);
    return {kd(rng), u};
}

LocalHomomorphism random_hom(std::mt19937_64& rng, std::int64_t p, int M) {
    std::uniform_int_distribution<std::int64_t> c(0, ipow(p, M) - 1);
    return {p, c(rng), c(rng), M};
}

Rational random_nonzero(std::mt19937_64& rng, std::int64_t p) {
    std::uniform_int_distribution<int> num(-60, 60), den(1, 20), e(-3, 3);
    for (;;) {
        Rational x(num(rng), den(rng));
        if (x != 0) return x * rational_pow(Rational(p), e(rng));
    }
}

}  // namespace

TEST_CASE("log coordinate is normalized, additive and agrees with the logarithm series") {
    for (std::int64_t p : {2, 3, 5, 7}) {
        const int M = p == 2 ? 10 : 6;
        const int R = unit_resolution(p, M);
        const std::int64_t pR = ipow(p, R), pM = ipow(p, M);
        CHECK(log_coordinate(p == 2 ? 5 : 1 + p, p, M) == 1);
        CHECK(log_coordinate(1, p, M) == 0);
        CHECK(log_coordinate(pR - 1, p, M) == 0);  // -1 is torsion
        std::mt19937_64 rng(static_cast<unsigned>(p));
        std::uniform_int_distribution<std::int64_t> ud(1, pR - 1);
        for (int i = 0; i < 40; ++i) {
            std::int64_t u = ud(rng), v = ud(rng);
            if (u % p == 0 || v % p == 0) continue;
            CHECK(log_coordinate(mulmod(u, v, pR), p, M) ==
                  mod(log_coordinate(u, p, M) + log_coordinate(v, p, M), pM));
            CHECK(log_coordinate(u, p, M) == log_coordinate_series(Rational(u), p, M));
        }
    }
    // Beyond the cached table range the direct discrete log is used.
    CHECK(log_coordinate(6, 5, 12) == log_coordinate_series(Rational(6), 5, 12));
    CHECK_THROWS_AS((void)log_coordinate(9, 3, 4), DomainError);
}

TEST_CASE("local homomorphisms are additive on rationals") {
    std::mt19937_64 rng(11);
    const LocalHomomorphism l(3, 4, 7, 8);
    for (int i = 0; i < 50; ++i) {
        const Rational x = random_nonzero(rng, 3), y = random_nonzero(rng, 3);
        CHECK(l(x * y) == mod(l(x) + l(y), l.modulus()));
    }
    CHECK(LocalHomomorphism::ord(3, 8)(Rational(1, 27)) == mod(-3, ipow(3, 8)));
    CHECK(LocalHomomorphism::log_coordinate(3, 8)(Rational(4)) == 1);
}

TEST_CASE("cocycle examples") {
    const std::int64_t p = 3;
    const int M = 8, R = unit_resolution(p, M);
    const auto ord = LocalHomomorphism::ord(p, M);

    SUBCASE("ord with ord(t) = 1 is t . 1_U") {
        for (std::int64_t u : {1, 2, 5, 4001}) {
            const TorusCoordinate t{1, u};
            const auto z = cocycle_z(ord, t, 6);
            CHECK(z.equal_mod_constants(SteinbergElement::indicator_U(p, M, R).translate(t)));
        }
    }
    SUBCASE("identity gives zero") {
        const LocalHomomorphism l(p, 5, 2, M);
        CHECK(cocycle_z(l, {0, 1}, 6).is_constant());
        CHECK(cocycle_z(l, {0, 1}, 6).inside() == 0);
    }
    SUBCASE("strict level policy refuses an unresolvable level") {
        CHECK_THROWS_AS((void)cocycle_z(ord, {1, 1}, 6, RefinePolicy::strict), RefinementError);
        CHECK_NOTHROW((void)cocycle_z(ord, {1, 1}, R, RefinePolicy::strict));
    }
    SUBCASE("pointwise values follow the defining formula") {
        const LocalHomomorphism l(p, 2, 1, M);
        const TorusCoordinate t{2, 7};
        const auto z = cocycle_z(l, t, 6);
        // w a unit: l(w) - 0
        CHECK(z.at_point(Rational(2)) == l(Rational(2)));
        // w = 9 * 7 * x with x a unit: l(w) - l(x) = l(t)
        CHECK(z.at_point(Rational(9 * 7 * 5)) == l(Rational(63)));
        CHECK(z.at_point(Rational(0)) == l(Rational(63)));
        CHECK(z.at_point(Rational(1, 3)) == 0);
        CHECK(z.at_point(std::nullopt) == 0);
    }
}

TEST_CASE("cocycle identity on random data") {
    const std::int64_t p = 3;
    const int M = 8, R = unit_resolution(p, M);
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 25; ++i) {
        const auto l = random_hom(rng, p, M);
        const auto t1 = random_torus(rng, p, R), t2 = random_torus(rng, p, R);
        CHECK(check_cocycle_identity(l, t1, t2, 6));
        CHECK(check_cocycle_identity(LocalHomomorphism::ord(p, M), t1, t2, 6));
    }
    // t2 = t1^{-1}
    const TorusCoordinate t{2, 5};
    const TorusCoordinate t_inv{-2, invmod(5, ipow(p, R))};
    CHECK(check_cocycle_identity(LocalHomomorphism(p, 3, 1, M), t, t_inv, 6));
    // A deliberately wrong right-hand side is detected.
    const LocalHomomorphism l(p, 1, 1, M);
    const auto wrong = cocycle_z(l, t, 6) + cocycle_z(l, t, 6);
    CHECK_FALSE(cocycle_z(l, multiply(t, t, p, R), 6).equal_mod_constants(wrong));
}

TEST_CASE("cocycle identity at p = 2 and p = 5") {
    std::mt19937_64 rng(7);
    for (std::int64_t p : {2, 5}) {
        const int M = p == 2 ? 6 : 4, R = unit_resolution(p, M);
        for (int i = 0; i < 6; ++i)
            CHECK(check_cocycle_identity(random_hom(rng, p, M), random_torus(rng, p, R, 2), random_torus(rng, p, R, 2), R));
    }
}

TEST_CASE("linearity in l") {
    const std::int64_t p = 3;
    const int M = 6, R = unit_resolution(p, M);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 8; ++i) {
        const auto l1 = random_hom(rng, p, M), l2 = random_hom(rng, p, M);
        const auto t = random_torus(rng, p, R);
        const std::int64_t a = 4, b = 11;
        CHECK(cocycle_z(a * l1 + b * l2, t, R) == a * cocycle_z(l1, t, R) + b * cocycle_z(l2, t, R));
    }
}

TEST_CASE("compact-support form when l(t) = 0") {
    const std::int64_t p = 3;
    const int M = 8, R = unit_resolution(p, M);
    const std::int64_t pM = ipow(p, M), pR = ipow(p, R);
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::int64_t> cd(0, pM - 1);
    for (int k : {-2, -1, 1, 2, 3}) {
        const std::int64_t a = cd(rng);
        std::int64_t b = cd(rng);
        if (b % p == 0) ++b;
        const LocalHomomorphism l(p, a, b, M);
        // u = (1+p)^j with L(u) = j and a k + b j = 0.
        const std::int64_t j = mod(-mulmod(mod(a * k, pM), invmod(b, pM), pM), pM);
        const TorusCoordinate t{k, powmod(1 + p, static_cast<std::uint64_t>(j), pR)};
        REQUIRE(l.on(t.k, t.unit) == 0);
        const auto z = cocycle_z(l, t, 6);
        CHECK(z.has_compact_representative());
        CHECK(z.inside() == 0);
        CHECK(z.outside() == 0);
        // z = sign * l * 1_{U_t}, with U_t = U \ tU for k > 0 and tU \ U for k < 0.
        const int sign = k > 0 ? 1 : -1;
        for (int v = std::min(0, k) - 1; v <= std::max(0, k); ++v) {
            for (std::int64_t u : {1, 2, 4, 5, 7, 6562}) {
                const bool in_Ut = k > 0 ? (v >= 0 && v < k) : (v >= k && v < 0);
                const std::int64_t expected = in_Ut ? mod(sign * l.on(v, u), pM) : 0;
                CHECK(z.at(v, u) == expected);
            }
        }
    }
}

TEST_CASE("telescoping of z_ord") {
    const std::int64_t p = 3;
    const int M = 6, R = unit_resolution(p, M);
    const auto ord = LocalHomomorphism::ord(p, M);
    const TorusCoordinate t1{1, 5};
    TorusCoordinate tk{0, 1};
    for (int k = 1; k <= 4; ++k) {
        tk = multiply(tk, t1, p, R);
        SteinbergElement sum = SteinbergElement::constant(p, M, R, 0);
        TorusCoordinate tj{0, 1};
        for (int j = 0; j < k; ++j) {
            sum = sum + cocycle_z(ord, t1, R).translate(tj);
            tj = multiply(tj, t1, p, R);
        }
        CHECK(cocycle_z(ord, tk, R).equal_mod_constants(sum));
    }
}

TEST_CASE("phi_1 section: Lambda equivariance and coboundary") {
    const std::int64_t p = 3;
    const int M = 8, R = unit_resolution(p, M);
    std::mt19937_64 rng(31);
    for (int n_T : {0, 1, 2}) {
        const SplitEmbedding emb(p, n_T);
        const auto l = random_hom(rng, p, M);
        const Phi1Section phi(l, emb);
        for (int i = 0; i < 30; ++i) {
            Rational a = random_nonzero(rng, p), b = random_nonzero(rng, p), c = random_nonzero(rng, p),
                     d = random_nonzero(rng, p);
            if (i % 7 == 0) d = 0;
            if (i % 11 == 0) d = -c / emb.C();  // phi(g) = x_1
            if (a * d - b * c == 0) continue;
            const GL2Element g(a, b, c, d);
            const Rational x = random_nonzero(rng, p);
            const GL2Element t = emb.matrix(x);
            CHECK(phi.Lambda1(g * t) == phi.Lambda1(g) * x);
            CHECK(phi.Lambda2(g * t) == phi.Lambda2(g));

            // phi_1(g t^{-1}) - phi_1(g) = z(t)(phi(g)) - l(psi(t))
            const auto z = cocycle_z(l, TorusCoordinate::from_rational(x, p, R), 6);
            const std::int64_t lhs = mod(phi(g * t.inverse()) - phi(g), l.modulus());
            const std::int64_t rhs = mod(z.at_point(phi.w_coordinate(g)) - l(x), l.modulus());
            CHECK(lhs == rhs);
        }
        const Phi1Section zero(LocalHomomorphism(p, 0, 0, M), emb);
        CHECK(zero(GL2Element(1, 2, 3, 9)) == 0);
        CHECK(zero(GL2Element(0, 1, 1, 0)) == 0);
    }
}
