#include "doctest.h"

#include "acl/errors.hpp"
#include "acl/local_integrals.hpp"
#include "acl/principal_series.hpp"

#include <random>

using namespace acl;

namespace {

Rational random_rational(std::mt19937_64& rng, std::int64_t p) {
    std::uniform_int_distribution<int> num(-40, 40), den(1, 12), e(-3, 3);
    Rational x(num(rng), den(rng));
    return x * rational_pow(Rational(p), e(rng));
}

GL2Element random_gl2(std::mt19937_64& rng, std::int64_t p) {
    for (;;) {
        Rational a = random_rational(rng, p), b = random_rational(rng, p), c = random_rational(rng, p),
                 d = random_rational(rng, p);
        if (rng() % 4 == 0) c = 0;
        if (a * d - b * c != 0) return {a, b, c, d};
    }
}

ShellFunction random_shell_function(std::mt19937_64& rng, const LocalTorusCase& c, int level) {
    ShellFunction f(c, level);
    const int terms = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < terms; ++i)
        f.set(static_cast<int>(rng() % 3) - 1, rng() % f.quotient().size(), static_cast<int>(rng() % 5) + 1);
    return f;
}

}  // namespace

TEST_CASE("Iwasawa decomposition") {
    const std::int64_t p = 3;
    const auto d1 = iwasawa_decompose(GL2Element::diag(3, 1), p);
    CHECK(d1.b == GL2Element::diag(3, 1));
    CHECK(d1.k == GL2Element::identity());
    const auto d2 = iwasawa_decompose(GL2Element::omega(), p);
    CHECK(d2.b == GL2Element::identity());
    CHECK(d2.k == GL2Element::omega());
    // (1 0; 1/3 1): the Borel part has v(b11/b22) = 2, checked by multiplying back.
    const GL2Element g(1, 0, Rational(1, 3), 1);
    const auto d3 = iwasawa_decompose(g, p);
    CHECK(d3.b * d3.k == g);
    CHECK(valuation(d3.b.a() / d3.b.d(), p) == 2);

    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const std::int64_t q = i % 3 == 0 ? 2 : (i % 3 == 1 ? 3 : 5);
        const GL2Element h = random_gl2(rng, q);
        const auto dec = iwasawa_decompose(h, q);
        CHECK(dec.b * dec.k == h);
        CHECK(dec.b.is_upper_triangular());
        CHECK(dec.k.is_integral_unit(q));
    }
}

TEST_CASE("mu_alpha") {
    CHECK(mu_alpha(GL2Element::diag(1, 3), -1, 3) == CoefficientValue(-1));
    CHECK(mu_alpha(GL2Element::diag(3, 3), 5, 3) == CoefficientValue(1));
    const CoefficientValue a(GaussianRational(1, 1));
    CHECK(mu_alpha(GL2Element::diag(4, 1), a, 2) == (a * a).inverse());
    CHECK_THROWS_AS((void)mu_alpha(GL2Element(1, 0, 1, 1), 1, 3), DomainError);
}

TEST_CASE("P^1 at finite level") {
    const P1Level P(3, 2);
    CHECK(P.size() == 12);
    for (std::size_t i = 0; i < P.size(); ++i) {
        const auto [u, v] = P.lift(P.point(i));
        CHECK(P.index(P.reduce(u, v)) == i);
        CHECK(P.index(P.reduce(u * 7, v * 7)) == i);
    }
    CHECK_THROWS_AS((void)P.reduce(0, 0), DomainError);
}

TEST_CASE("delta_T") {
    const LocalTorusCase c(TorusKind::split, PrimeLocalField(3), 1);
    const SplitEmbedding emb(3, 1);
    const auto f = ShellFunction::indicator_H(c, 2, 1);
    // t in H_1: g = t is already in T, so the Borel part is trivial.
    CHECK(delta_T_at(f, -1, emb, emb.matrix(Rational(4))) == CoefficientValue(1));
    CHECK(delta_T_at(f, -1, emb, emb.matrix(Rational(2))) == CoefficientValue(0));
    // phi(g) at the excluded points: bottom rows (1 : 0) and (-C : 1).
    CHECK(delta_T_at(f, 1, emb, GL2Element(0, 1, 1, 0)) == CoefficientValue(0));
    CHECK(delta_T_at(f, 1, emb, GL2Element(1, 0, -emb.C(), 1)) == CoefficientValue(0));

    std::mt19937_64 rng(5);
    const auto& Q = f.quotient();
    for (int i = 0; i < 50; ++i) {
        const auto h = random_shell_function(rng, c, 2);
        const TorusElement t{static_cast<int>(rng() % 5) - 2, rng() % Q.size()};
        const auto [ua, ub] = Q.element(t.unit);
        const Rational x = rational_pow(Rational(3), t.m) * (Rational(ua) + Rational(ub)) / Rational(ua);
        const GL2Element g = random_gl2(rng, 3);
        const CoefficientValue alpha = i % 2 == 0 ? 1 : -1;
        // delta_T(t * f)(g) = delta_T(f)(g t)
        CHECK(delta_T_at(h.translate(t), alpha, emb, g) == delta_T_at(h, alpha, emb, g * emb.matrix(x)));
    }
    // Tabulated version: a compactly supported f needs a fine enough level.
    const auto tab = delta_T(f, 1, emb, 4);
    CHECK(tab.evaluate(emb.matrix(Rational(4))) == CoefficientValue(1));
    CHECK_THROWS_AS((void)delta_T(f, 1, emb, 1), RefinementError);
}

TEST_CASE("Hecke operator on the spherical vector") {
    for (std::int64_t q : {2, 3, 5})
        for (int a : {1, -1}) {
            const auto v = PrincipalSeriesVector::spherical(q, 3, a);
            const auto w = hecke_TP(v);
            CHECK(w == CoefficientValue(a + q * a) * v);
        }
    const auto v = PrincipalSeriesVector::spherical(3, 2, -1);
    CHECK(hecke_TP(v + v) == hecke_TP(v) + hecke_TP(v));
    auto bad = v;
    bad.set(0, 7);
    CHECK_THROWS_AS((void)hecke_TP(bad), DomainError);
    CHECK_THROWS_AS((void)hecke_TP(PrincipalSeriesVector::spherical(3, 1, 1)), RefinementError);
}

TEST_CASE("intertwining integral: direct N_P integral against the torus form") {
    std::mt19937_64 rng(23);
    for (int nT : {0, 1, 2}) {
        const LocalTorusCase c(TorusKind::split, PrimeLocalField(3), nT);
        const SplitEmbedding emb(3, nT);
        std::optional<CoefficientValue> ratio;
        for (int i = 0; i < 10; ++i) {
            const auto f = random_shell_function(rng, c, 1 + static_cast<int>(rng() % 2));
            const TorusElement t{static_cast<int>(rng() % 3) - 1, rng() % f.quotient().size()};
            const int alpha = i % 2 == 0 ? 1 : -1;
            const auto closed = intertwine_I(f, alpha, Rational(2), t);
            const auto direct = intertwine_I_oracle(f, alpha, Rational(2), t, emb, 40);
            if (closed.is_zero()) {
                CHECK(direct.is_zero());
                continue;
            }
            const auto r = direct / closed;
            if (!ratio) ratio = r;
            CHECK(r == *ratio);
        }
        REQUIRE(ratio.has_value());
        // The comparison constant is the volume of p^{n_T} O^x: q^{-n_T}(1 - 1/q).
        CHECK(*ratio == CoefficientValue(rational_pow(Rational(3), -nT) * Rational(2, 3)));
    }
    const LocalTorusCase c(TorusKind::split, PrimeLocalField(3), 0);
    const auto f = ShellFunction::indicator_H(c, 1, 0);
    CHECK_THROWS_AS((void)intertwine_I_oracle(f, 1, Rational(1, 2), {0, 0}, SplitEmbedding(3, 0), 40), DivergenceError);
}

TEST_CASE("twisted integral of the intertwined function on compact tori") {
    // sum_t Lambda(f)(t) chi(t) = I_T(chi, s) * int f chi^{-1}.
    std::mt19937_64 rng(3);
    for (auto kind : {TorusKind::inert, TorusKind::ramified})
        for (std::int64_t q : {2, 3}) {
            const LocalTorusCase c(kind, PrimeLocalField(q), 1);
            const int L = 2;
            for (int nchi = 0; nchi <= L; ++nchi) {
                const auto chi = TorusCharacter::construct(
                    c, nchi, kind == TorusKind::ramified ? std::optional<CoefficientValue>(-1) : std::nullopt, 1);
                ShellFunction f(c, L);
                for (std::size_t j = 0; j < f.quotient().size(); ++j)
                    if (rng() % 2) f.set(static_cast<int>(rng() % 2), j, static_cast<int>(rng() % 3));
                const Rational cell = shell_volume(c, L);
                for (const Rational s : {Rational(2), Rational(3), Rational(5, 2)}) {
                    CoefficientValue lhs = 0;
                    for (int m : {0, 1}) {
                        if (kind == TorusKind::inert && m == 1) continue;
                        for (std::size_t j = 0; j < f.quotient().size(); ++j) {
                            CoefficientValue chi_t = chi.value_at(f.quotient(), j);
                            if (m == 1) chi_t = chi_t * *chi.uniformizer_value();
                            lhs = lhs + evaluate_at_s(intertwine_closed_form(f, 1, {m, j}), s) * chi_t * cell;
                        }
                    }
                    const auto rhs = evaluate_at_s(i_t_statement(c, 1, chi), s) * f.integrate(chi.inverse());
                    CHECK(lhs.approx_equal(rhs, 1e-9));
                }
            }
        }
}
