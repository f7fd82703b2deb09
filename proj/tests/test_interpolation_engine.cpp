#include "doctest.h"

#include "acl/errors.hpp"
#include "acl/interpolation.hpp"

#include <cmath>
#include <random>

using namespace acl;

namespace {

LocalTorusCase make(TorusKind k, std::int64_t q, int nT = 0) { return {k, PrimeLocalField(q), nT}; }

std::optional<CoefficientValue> unif(TorusKind k, int u) {
    if (k == TorusKind::inert) return std::nullopt;
    return CoefficientValue(u);
}

PlaceData place(TorusKind torus, RepresentationKind pi, int alpha) {
    PlaceData d;
    d.q = 5;
    d.torus = torus;
    d.pi = pi;
    d.alpha = alpha;
    return d;
}

}  // namespace

TEST_CASE("euler factor examples") {
    const auto c = make(TorusKind::split, 3);
    const auto st = SteinbergDatum::special(1);
    CHECK(euler_factor_C(c, st, TorusCharacter::trivial(c)) == CoefficientValue(0));
    // 1/L(-1/2) = (1 - alpha chi(p))(1 - alpha chi(p)^{-1}) = 2 * 2
    CHECK(euler_factor_C(c, st, TorusCharacter::symbolic(c, 0, CoefficientValue(-1))) == CoefficientValue(4));
    // Ramified chi: q^{n_chi} / L(1/2) with L(1/2) = 1.
    CHECK(euler_factor_C(c, st, TorusCharacter::construct(c, 1)) == CoefficientValue(3));
    // Spherical: L(1, ad)/L(1/2) with supplied values.
    const auto sph = SteinbergDatum::spherical(CoefficientValue(GaussianRational(1, 1)), 2);
    SphericalLValues vals{CoefficientValue(Rational(5, 2)), CoefficientValue(Rational(5, 4))};
    CHECK(euler_factor_C(make(TorusKind::split, 2), sph, TorusCharacter::trivial(make(TorusKind::split, 2)), vals) ==
          CoefficientValue(2));
}

TEST_CASE("euler factor vanishes exactly on exceptional configurations") {
    int zeros = 0, total = 0;
    for (auto kind : {TorusKind::split, TorusKind::inert, TorusKind::ramified})
        for (std::int64_t q : {2, 3, 5})
            for (int nT : {0, 1, 2})
                for (int alpha : {1, -1})
                    for (int nchi = 0; nchi <= 4; ++nchi)
                        for (int u : {1, -1}) {
                            const auto c = make(kind, q, nT);
                            const auto chi = TorusCharacter::symbolic(c, nchi, unif(kind, u));
                            const auto e = euler_factor_C(c, SteinbergDatum::special(alpha), chi);
                            REQUIRE(e.is_exact());
                            CHECK(e.exact().is_zero() == is_exceptional(alpha, chi, c));
                            zeros += e.exact().is_zero() ? 1 : 0;
                            ++total;
                        }
    CHECK(zeros > 0);
    CHECK(zeros < total);
}

TEST_CASE("local constants C_v") {
    const CoefficientValue one(1), minus_one(-1);
    SUBCASE("inert") {
        const auto c = c_v_constant(place(TorusKind::inert, RepresentationKind::spherical, 1), one);
        CHECK(c.value.value == CoefficientValue(1));
        CHECK(c.value.deps == std::set<std::string>{"vol_T"});
        auto p = place(TorusKind::inert, RepresentationKind::special, -1);
        p.vol_T = CoefficientValue(Rational(1, 2));
        CHECK(c_v_constant(p, one).value.value == CoefficientValue(Rational(1, 2)));
    }
    SUBCASE("ramified special, matrix algebra") {
        const auto ok = c_v_constant(place(TorusKind::ramified, RepresentationKind::special, 1), minus_one);
        CHECK(ok.value.value == CoefficientValue(1));
        CHECK_FALSE(ok.hom_space_vanishes);
        const auto bad = c_v_constant(place(TorusKind::ramified, RepresentationKind::special, 1), one);
        CHECK(bad.hom_space_vanishes);
        CHECK(bad.value.value == CoefficientValue(0));
    }
    SUBCASE("ramified quaternionic") {
        auto p = place(TorusKind::ramified, RepresentationKind::special, -1);
        p.divides_quaternion_discriminant = true;
        const auto ok = c_v_constant(p, minus_one);
        CHECK(ok.value.value == CoefficientValue(1));
        CHECK_FALSE(ok.hom_space_vanishes);
        CHECK(c_v_constant(p, one).hom_space_vanishes);
    }
    SUBCASE("ramified spherical") {
        auto p = place(TorusKind::ramified, RepresentationKind::spherical, 1);
        CHECK_THROWS_AS((void)c_v_constant(p, one), ConfigError);
        p.l_half_pi_chi = CoefficientValue(Rational(3, 2));
        p.l_one_ad = CoefficientValue(Rational(5, 4));
        p.vol_T = CoefficientValue(2);
        // (3/2)(25/24)/(5/4) * 2
        CHECK(c_v_constant(p, one).value.value == CoefficientValue(Rational(5, 2)));
        p.squarefree_level_condition = false;
        CHECK_THROWS_AS((void)c_v_constant(p, one), DomainError);
    }
    SUBCASE("split") {
        auto p = place(TorusKind::split, RepresentationKind::spherical, 1);
        CHECK_THROWS_AS((void)c_v_constant(p, one), ConfigError);
        p.l_half_pi_chi = CoefficientValue(Rational(7, 3));
        p.norm_different = CoefficientValue(4);
        p.whittaker_norm = CoefficientValue(Rational(2, 3));
        CHECK(c_v_constant(p, one).value.value == CoefficientValue(14));
        CHECK(c_v_constant(p, one).value.deps.empty());
    }
}

TEST_CASE("interpolation formula assembly") {
    CHECK(interpolation_value(MeasureSetting::definite, 1, 3, 1, 2, 0.5, 1) == doctest::Approx(std::sqrt(3.0) / 2));
    CHECK(interpolation_value(MeasureSetting::indefinite, 1, 3, 1, 2, 0.5, 1) == doctest::Approx(std::sqrt(3.0) / 4));
    CHECK(interpolation_value(MeasureSetting::definite, 2, 7, 3, 0, 0.5, 2) == 0.0);
    CHECK_THROWS_AS((void)interpolation_value(MeasureSetting::definite, 1, -3, 1, 1, 1, 1), DomainError);
    CHECK_THROWS_AS((void)interpolation_value(MeasureSetting::definite, 1, 3, 1, 1, 1, 0), DomainError);
}

TEST_CASE("Steinberg constant C(pi_P)") {
    for (std::int64_t q : {2, 3, 5, 7, 9}) {
        CHECK(steinberg_l_factor_is_zeta_squared(q));
        const Rational zeta_two = Rational(1) / (1 - Rational(1, q * q));
        CHECK(c_pi_steinberg(q) == CoefficientValue(-zeta_two));
        CHECK_FALSE(c_pi_steinberg(q, CoefficientValue(Rational(2, 7))).is_zero());
    }
    CHECK(c_pi_steinberg(3, CoefficientValue(Rational(9, 8))) == CoefficientValue(Rational(-9, 8)));
}

TEST_CASE("geometric L-invariant, rank one") {
    const std::int64_t p = 3;
    const int M = 10;
    const auto ord = LocalHomomorphism::ord(p, M);
    const auto log = LocalHomomorphism::log_coordinate(p, M);
    const TateLatticePairing tate_p{p, {{Rational(p)}}, {}};
    CHECK(geometric_L_invariant(tate_p, log).scalar() == 0);
    CHECK(geometric_L_invariant(tate_p, ord).scalar() == 1);
    const TateLatticePairing tate_pp{p, {{Rational(p * (1 + p))}}, {}};
    CHECK(geometric_L_invariant(tate_pp, log).scalar() == 1);
    CHECK(geometric_L_invariant(tate_pp, log).precision == M);
    // A brute 1x1 solve: L * ord(q_T) = l(q_T), for q_T = p^2 * 7/5.
    const Rational qT = Rational(9 * 7, 5);
    const TateLatticePairing tate{p, {{qT}}, {}};
    const auto L = geometric_L_invariant(tate, log);
    // ord(q_T) = 2 is a unit at p = 3, so there is no precision loss.
    CHECK(L.precision == M);
    CHECK(mod(2 * L.scalar(), ipow(p, L.precision)) == mod(log(qT), ipow(p, L.precision)));
    CHECK(geometric_L_invariant(tate, ord).scalar() == 1);
    CHECK_THROWS_AS((void)geometric_L_invariant(TateLatticePairing{p, {{Rational(7)}}, {}}, log), PairingNotPerfect);
    // Linearity in l.
    for (auto [a, b] : {std::pair{2, 5}, std::pair{7, 11}}) {
        const auto l = a * ord + b * log;
        CHECK(geometric_L_invariant(tate, l).scalar() ==
              mod(a * geometric_L_invariant(tate, ord).scalar() + b * geometric_L_invariant(tate, log).scalar(),
                  ipow(p, M)));
    }
}

TEST_CASE("geometric L-invariant, rank two with real multiplication") {
    const std::int64_t p = 5;
    const int M = 10;
    // Multiplication by sqrt(2) on the basis {1, sqrt(2)}.
    const std::vector<std::vector<std::int64_t>> A{{0, 2}, {1, 0}};
    const Rational qa = Rational(5 * 7, 3), qb = Rational(25 * 2, 11);
    // j = qa^I qb^A keeps both ord o j and l o j in Z[A].
    std::vector<std::vector<Rational>> periods(2, std::vector<Rational>(2));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t k = 0; k < 2; ++k)
            periods[i][k] = rational_pow(qa, i == k ? 1 : 0) * rational_pow(qb, A[i][k]);
    const TateLatticePairing rm{p, periods, {A}};
    const auto ord = LocalHomomorphism::ord(p, M);
    const auto log = LocalHomomorphism::log_coordinate(p, M);
    const auto Lord = geometric_L_invariant(rm, ord);
    CHECK(Lord.entries == std::vector<std::vector<std::int64_t>>{{1, 0}, {0, 1}});
    const auto Llog = geometric_L_invariant(rm, log);
    CHECK(Llog.commutes_with_action);
    const auto Lsum = geometric_L_invariant(rm, 3 * ord + 4 * log);
    const std::int64_t m = ipow(p, Lsum.precision);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t k = 0; k < 2; ++k)
            CHECK(Lsum.entries[i][k] == mod(3 * Lord.entries[i][k] + 4 * Llog.entries[i][k], m));
    // A period matrix without the module structure fails the commutant check.
    const TateLatticePairing generic{p, {{Rational(5), Rational(7)}, {Rational(2), Rational(25 * 3)}}, {A}};
    CHECK_FALSE(geometric_L_invariant(generic, log).commutes_with_action);
}

TEST_CASE("derivative class") {
    const LInvariantVector linv{CoefficientValue(1), CoefficientValue(Rational(4))};
    CHECK(linv.normalized());
    const auto cls = derivative_class(CoefficientValue(3), linv);
    CHECK(cls.at(LocalHomomorphism::ord(3, 8)) == CoefficientValue(3));
    CHECK(cls.at(LocalHomomorphism::log_coordinate(3, 8)) == CoefficientValue(12));
    CHECK(derivative_class(CoefficientValue(0), linv).is_zero());

    const FiniteLevelGroup G(3, 2, 3);
    const auto mu = derivative_class_measure(cls, G);
    CHECK(degree(mu) == 0);
    CHECK(psi_class(mu, 8) == std::vector<std::int64_t>{3, 12});
    // Fed by the geometric invariant of a Tate curve.
    const auto L = geometric_L_invariant(TateLatticePairing{3, {{Rational(3 * 4 * 4)}}, {}}, LocalHomomorphism::log_coordinate(3, 8));
    const LInvariantVector geo{CoefficientValue(1), CoefficientValue(Rational(L.scalar()))};
    CHECK(L.scalar() == 2);
    CHECK(psi_class(derivative_class_measure(derivative_class(CoefficientValue(1), geo), G), 8) ==
          std::vector<std::int64_t>{1, 2});
}
