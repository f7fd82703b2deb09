#include "acl/interpolation.hpp"

#include "acl/errors.hpp"
#include "acl/padic.hpp"

#include <cmath>
#include <string>

namespace acl {

CoefficientValue euler_factor_C(const LocalTorusCase& c, const SteinbergDatum& d, const TorusCharacter& chi,
                                const SphericalLValues& spherical) {
    // The same factor e_P appears in the alpha-pairing formula.
    return pairing_factors(c, d, chi, SymbolicConstants{}, spherical).e_P;
}

namespace {

CoefficientValue require(const std::optional<CoefficientValue>& v, const char* name) {
    if (!v) throw ConfigError(std::string("place data needs ") + name);
    return *v;
}

SymbolicValue times_volume(const PlaceData& place, CoefficientValue factor) {
    SymbolicValue out{std::move(factor), {}, false};
    if (place.vol_T) {
        out.value = out.value * *place.vol_T;
    } else {
        out.deps.insert("vol_T");
    }
    return out;
}

}  // namespace

LocalConstant c_v_constant(const PlaceData& place, const CoefficientValue& chi_at_uniformizer) {
    if (place.q < 2) throw ConfigError("place data needs q");
    LocalConstant out;
    switch (place.torus) {
    case TorusKind::inert:
        out.value = times_volume(place, 1);
        return out;
    case TorusKind::split: {
        const auto l_half = require(place.l_half_pi_chi, "L(1/2, pi_K, chi)");
        const auto n_d = require(place.norm_different, "N(D_F)");
        const auto w = require(place.whittaker_norm, "<W, W>");
        if (w.is_zero()) throw DomainError("Whittaker norm must be nonzero");
        out.value = SymbolicValue{l_half * n_d / w, {}, false};
        return out;
    }
    case TorusKind::ramified:
        break;
    }
    if (!place.squarefree_level_condition)
        throw DomainError("ramified places need gcd(level, disc) square free");
    const CoefficientValue sign = place.alpha * chi_at_uniformizer;
    if (place.divides_quaternion_discriminant) {
        // (1 + chi alpha) vol(O_K^x/O^x), and vol(T) = 2 vol(O_K^x/O^x).
        out.hom_space_vanishes = !(sign == CoefficientValue(1));
        out.value = times_volume(place, (CoefficientValue(1) + sign) / CoefficientValue(2));
        out.value.exceptional_zero = out.hom_space_vanishes;
        return out;
    }
    if (place.pi == RepresentationKind::special) {
        out.hom_space_vanishes = !(sign == CoefficientValue(-1));
        out.value = times_volume(place, (CoefficientValue(1) - sign) / CoefficientValue(2));
        out.value.exceptional_zero = out.hom_space_vanishes;
        return out;
    }
    const Rational xi_two = Rational(1) / (1 - Rational(1, place.q * place.q));
    const auto l_half = require(place.l_half_pi_chi, "L(1/2, pi, chi)");
    const auto ad = require(place.l_one_ad, "L(1, pi, ad)");
    if (ad.is_zero()) throw DomainError("L(1, pi, ad) must be nonzero");
    out.value = times_volume(place, l_half * CoefficientValue(xi_two) / ad);
    return out;
}

double interpolation_value(MeasureSetting setting, int degree, double norm_disc, double k_ram, double e_factor,
                           double l_ratio, double norm_f_sq) {
    if (degree < 1) throw DomainError("degree must be positive");
    if (norm_disc < 0) throw DomainError("discriminant norm must be nonnegative");
    if (norm_f_sq <= 0) throw DomainError("||f||^2 must be positive");
    const int power = setting == MeasureSetting::definite ? degree : degree + 1;
    return std::sqrt(norm_disc) / std::ldexp(1.0, power) * k_ram * e_factor * l_ratio / norm_f_sq;
}

CoefficientValue c_pi_steinberg(std::int64_t q, std::optional<CoefficientValue> ad_value) {
    const LocalTorusCase c(TorusKind::split, field_from_q(q), 0);
    const auto chi = TorusCharacter::trivial(c);
    const CoefficientValue l_half = l_factor_pi_chi(c, 1, chi).value_at(Rational(1, 2));
    const Rational zeta_one = Rational(1) / (1 - Rational(1, q));
    const CoefficientValue ad = ad_value.value_or(CoefficientValue(Rational(1) / (1 - Rational(1, q * q))));
    return -ad * CoefficientValue(zeta_one * zeta_one) / l_half;
}

bool steinberg_l_factor_is_zeta_squared(std::int64_t q) {
    const LocalTorusCase c(TorusKind::split, field_from_q(q), 0);
    // zeta_P(s + 1/2) = 1/(1 - Y) in Y = q^{-s-1/2}.
    const auto one = LocalRationalFunction::constant(q, GaussianRational(1));
    const auto zeta = one / (one - LocalRationalFunction::variable(q));
    return (l_factor_pi_chi(c, 1, TorusCharacter::trivial(c)).in_Y() - zeta * zeta).is_zero();
}

std::vector<std::vector<std::int64_t>> TateLatticePairing::ord_matrix() const {
    std::vector<std::vector<std::int64_t>> out;
    for (const auto& row : periods) {
        if (row.size() != periods.size()) throw DomainError("period matrix must be square");
        auto& r = out.emplace_back();
        for (const auto& x : row) r.push_back(valuation(x, p));
    }
    return out;
}

std::vector<std::vector<std::int64_t>> TateLatticePairing::hom_matrix(const LocalHomomorphism& l) const {
    if (l.p() != p) throw MismatchError("homomorphism and periods over different primes");
    std::vector<std::vector<std::int64_t>> out;
    for (const auto& row : periods) {
        if (row.size() != periods.size()) throw DomainError("period matrix must be square");
        auto& r = out.emplace_back();
        for (const auto& x : row) r.push_back(l(x));
    }
    return out;
}

std::int64_t LInvariantMatrix::scalar() const {
    if (entries.size() != 1) throw DomainError("L-invariant is a matrix, not a scalar");
    return entries[0][0];
}

namespace {

using RationalMatrix = std::vector<std::vector<Rational>>;

// Inverse and determinant by Gauss-Jordan elimination over Q.
std::pair<RationalMatrix, Rational> invert(RationalMatrix a) {
    const std::size_t n = a.size();
    RationalMatrix inv(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) ++pivot;
        if (pivot == n) return {{}, Rational(0)};
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            std::swap(inv[pivot], inv[col]);
            det = -det;
        }
        const Rational lead = a[col][col];
        det *= lead;
        for (std::size_t k = 0; k < n; ++k) {
            a[col][k] /= lead;
            inv[col][k] /= lead;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            const Rational f = a[r][col];
            for (std::size_t k = 0; k < n; ++k) {
                a[r][k] -= f * a[col][k];
                inv[r][k] -= f * inv[col][k];
            }
        }
    }
    return {inv, det};
}

}  // namespace

LInvariantMatrix geometric_L_invariant(const TateLatticePairing& pairing, const LocalHomomorphism& l) {
    const std::size_t d = pairing.rank();
    if (d == 0) throw DomainError("empty period matrix");
    const auto j_ord = pairing.ord_matrix();
    const auto j_l = pairing.hom_matrix(l);
    RationalMatrix ord(d, std::vector<Rational>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) ord[i][k] = j_ord[i][k];
    const auto [inv, det] = invert(ord);
    if (det == 0) throw PairingNotPerfect("ord o j is singular");

    LInvariantMatrix out;
    out.precision = l.precision() - valuation(det, pairing.p);
    if (out.precision <= 0) throw DomainError("det(ord o j) exhausts the working precision");
    const std::int64_t modulus = ipow(pairing.p, out.precision);
    out.entries.assign(d, std::vector<std::int64_t>(d, 0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) {
            Rational sum = 0;
            for (std::size_t m = 0; m < d; ++m) sum += Rational(j_l[i][m]) * inv[m][k];
            if (denominator(sum) % pairing.p == 0) throw DomainError("L-invariant is not p-integral");
            out.entries[i][k] = residue(sum, modulus);
        }

    for (const auto& a : pairing.action) {
        if (a.size() != d) throw DomainError("action matrix has the wrong size");
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t k = 0; k < d; ++k) {
                std::int64_t am = 0, ma = 0;
                for (std::size_t m = 0; m < d; ++m) {
                    am = mod(am + mulmod(mod(a[i][m], modulus), out.entries[m][k], modulus), modulus);
                    ma = mod(ma + mulmod(out.entries[i][m], mod(a[m][k], modulus), modulus), modulus);
                }
                if (am != ma) out.commutes_with_action = false;
            }
    }
    return out;
}

CoefficientValue LInvariantVector::at(const LocalHomomorphism& l) const {
    return CoefficientValue(Rational(l.a())) * ord_value + CoefficientValue(Rational(l.b())) * log_value;
}

bool DerivativeClass::is_zero() const {
    return (linv.ord_value * base).is_zero() && (linv.log_value * base).is_zero();
}

DerivativeClass derivative_class(const CoefficientValue& base_value, const LInvariantVector& linv) {
    return {base_value, linv};
}

GroupAlgebraElement derivative_class_measure(const DerivativeClass& cls, const FiniteLevelGroup& group) {
    if (group.rank() != 2) throw DomainError("the ord/log presentation needs a rank-2 group");
    const CoefficientValue coords[2] = {cls.linv.ord_value * cls.base, cls.linv.log_value * cls.base};
    GroupAlgebraElement mu(group);
    for (int i = 0; i < 2; ++i) {
        const auto& c = coords[i];
        if (!c.is_exact() || !c.exact().is_real()) throw DomainError("coordinates must be exact rationals");
        mu = mu + c.exact().re() * phi_map(group, group.basis(i));
    }
    return mu;
}

}  // namespace acl
