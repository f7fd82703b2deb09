#pragma once

#include "acl/iwasawa.hpp"
#include "acl/local_integrals.hpp"
#include "acl/steinberg.hpp"

#include <optional>
#include <vector>

namespace acl {

// C(pi_P, chi_P): L(1, ad)/L(1/2, pi, chi) for spherical data, 1/L(-1/2, pi, chi)
// for special data with chi unramified, q^{n_chi}/L(1/2, pi, chi) for special
// data with chi ramified. Exceptional configurations give an exact zero.
[[nodiscard]] CoefficientValue euler_factor_C(const LocalTorusCase& c, const SteinbergDatum& d,
                                              const TorusCharacter& chi, const SphericalLValues& spherical = {});

enum class RepresentationKind { spherical, special };

// Local data at an auxiliary place v. Values left empty are either required
// by the case (ConfigError when missing) or carried symbolically (vol_T).
struct PlaceData {
    std::int64_t q = 0;
    TorusKind torus = TorusKind::inert;
    RepresentationKind pi = RepresentationKind::spherical;
    CoefficientValue alpha{1};
    bool divides_quaternion_discriminant = false;
    bool squarefree_level_condition = true;  // gcd(level, disc(K/F)) square free
    std::optional<CoefficientValue> l_half_pi_chi;  // L(1/2, pi_v, chi_v), or L(1/2, pi_{K,v}, chi_v) when split
    std::optional<CoefficientValue> l_one_ad;       // L(1, pi_v, ad)
    std::optional<CoefficientValue> whittaker_norm; // <W_v, W_v>
    std::optional<CoefficientValue> norm_different; // N(D_{F_v})
    std::optional<CoefficientValue> vol_T;          // vol(T(F_v)); symbolic "vol_T" when absent
};

struct LocalConstant {
    SymbolicValue value;
    // The invariant functional is zero for this sign of alpha chi(p_K).
    bool hom_space_vanishes = false;
};

// C_v = beta(f_v, f_v)/<f_v, f_v> for chi_v unramified, with chi_v(p_K) given
// by chi_at_uniformizer (ignored for inert and split places).
[[nodiscard]] LocalConstant c_v_constant(const PlaceData& place, const CoefficientValue& chi_at_uniformizer);

enum class MeasureSetting { definite, indefinite };

// sqrt(N(d_K/F))/2^d (definite) or /2^{d+1} (indefinite), times
// K_ram * e * L_ratio / ||f||^2.
[[nodiscard]] double interpolation_value(MeasureSetting setting, int degree, double norm_disc, double k_ram,
                                         double e_factor, double l_ratio, double norm_f_sq);

// C(pi_P) = -L(1, pi_P, ad) zeta_P(1)^2 / L(1/2, pi_P, 1) for split tori and alpha = 1.
[[nodiscard]] CoefficientValue c_pi_steinberg(std::int64_t q, std::optional<CoefficientValue> ad_value = std::nullopt);
// L(s, pi_P, 1) = zeta_P(s + 1/2)^2 as rational functions (split, alpha = 1).
[[nodiscard]] bool steinberg_l_factor_is_zeta_squared(std::int64_t q);

// Tate periods j(x_i, y_k) in Q^x of a rank-d lattice pairing, with optional
// integer matrices describing the action of O_L on the lattice.
struct TateLatticePairing {
    std::int64_t p = 0;
    std::vector<std::vector<Rational>> periods;
    std::vector<std::vector<std::vector<std::int64_t>>> action;

    [[nodiscard]] std::size_t rank() const { return periods.size(); }
    [[nodiscard]] std::vector<std::vector<std::int64_t>> ord_matrix() const;
    [[nodiscard]] std::vector<std::vector<std::int64_t>> hom_matrix(const LocalHomomorphism& l) const;
};

struct LInvariantMatrix {
    std::vector<std::vector<std::int64_t>> entries;  // residues mod p^precision
    int precision = 0;                               // M - v_p(det J_ord)
    bool commutes_with_action = true;
    [[nodiscard]] std::int64_t scalar() const;
};

// J_l J_ord^{-1}; PairingNotPerfect when J_ord is singular, DomainError when
// the denominators of J_ord^{-1} exhaust the precision.
[[nodiscard]] LInvariantMatrix geometric_L_invariant(const TateLatticePairing& pairing, const LocalHomomorphism& l);

// L-invariants on the basis {ord, log coordinate} of Hom(F_P^x, Z_p).
struct LInvariantVector {
    CoefficientValue ord_value{1};
    CoefficientValue log_value{0};
    [[nodiscard]] CoefficientValue at(const LocalHomomorphism& l) const;
    [[nodiscard]] bool normalized() const { return ord_value == CoefficientValue(1); }
};

// The class in I/I^2 in the coordinates given by psi: l -> linv(l) base.
struct DerivativeClass {
    CoefficientValue base;
    LInvariantVector linv;
    [[nodiscard]] CoefficientValue at(const LocalHomomorphism& l) const { return linv.at(l) * base; }
    [[nodiscard]] bool is_zero() const;
};
[[nodiscard]] DerivativeClass derivative_class(const CoefficientValue& base_value, const LInvariantVector& linv);
// A finite-level measure in I with psi coordinates (class(ord), class(log))
// on G_N = (Z/p^N)^2; the coordinates must be exact p-integral rationals.
[[nodiscard]] GroupAlgebraElement derivative_class_measure(const DerivativeClass& cls, const FiniteLevelGroup& group);

}  // namespace acl
