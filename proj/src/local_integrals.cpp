#include "acl/local_integrals.hpp"

#include "acl/errors.hpp"
#include "acl/principal_series.hpp"

#include <cmath>
#include <complex>
#include <sstream>

namespace acl {

namespace {

using LRF = LocalRationalFunction;
using Poly = LRF::Poly;

Rational qpow(std::int64_t q, long e) { return rational_pow(Rational(q), e); }

LRF constant(std::int64_t q, const GaussianRational& k) { return LRF::constant(q, k); }

// (qX)^e
LRF qx_power(std::int64_t q, long e) { return LRF::monomial(q, GaussianRational(qpow(q, e)), e); }

// 1 / (1 - c X^k)
LRF inverse_binomial(std::int64_t q, const GaussianRational& c, long k) {
    return constant(q, 1) / (constant(q, 1) - LRF::monomial(q, c, k));
}

const GaussianRational& require_exact(const CoefficientValue& v, const char* what) {
    if (!v.is_exact()) throw DomainError(std::string(what) + " must be exact for rational-function output");
    return v.exact();
}

void check_alpha(int alpha) {
    if (alpha != 1 && alpha != -1) throw DomainError("statement form only defined for alpha = +1 or -1");
}

// alpha * chi(uniformizer), required for the split and ramified cases.
GaussianRational alpha_chi(const LocalTorusCase& c, int alpha, const TorusCharacter& chi) {
    const auto& u = chi.uniformizer_value();
    if (!u) throw DomainError("character of a " + to_string(c.kind()) + " torus needs a uniformizer value");
    GaussianRational a = GaussianRational(alpha) * require_exact(*u, "uniformizer value");
    if (c.kind() == TorusKind::ramified && a * a != GaussianRational(1))
        throw DomainError("ramified torus requires (alpha chi(p_K))^2 = 1");
    if (a.is_zero()) throw DomainError("uniformizer value must be nonzero");
    return a;
}

}  // namespace

// ---------------------------------------------------------------------------

SteinbergDatum SteinbergDatum::special(int alpha) {
    if (alpha != 1 && alpha != -1) throw DomainError("special data requires alpha = +1 or -1");
    return {true, CoefficientValue(alpha), 0};
}

SteinbergDatum SteinbergDatum::spherical(CoefficientValue alpha, std::int64_t q) {
    const CoefficientValue norm = alpha * alpha.conj();
    if (!norm.approx_equal(CoefficientValue(static_cast<long long>(q)), 1e-9))
        throw DomainError("spherical data requires |alpha|^2 = q");
    return {false, std::move(alpha), q};
}

int SteinbergDatum::sign() const {
    if (!special_) throw DomainError("spherical data has no sign");
    return alpha_.exact().re() == 1 ? 1 : -1;
}

CoefficientValue SteinbergDatum::a_P() const {
    if (special_) return alpha_;
    return alpha_ + CoefficientValue(static_cast<long long>(q_)) * alpha_.inverse();
}

void SymbolicConstants::set(const std::string& name, CoefficientValue value) {
    if (!kNames.count(name)) throw ConfigError("unknown symbolic constant '" + name + "'");
    if (value.is_zero()) throw ConfigError("symbolic constant '" + name + "' must be nonzero");
    values_[name] = std::move(value);
}

CoefficientValue SymbolicConstants::get(const std::string& name) const {
    if (!kNames.count(name)) throw ConfigError("unknown symbolic constant '" + name + "'");
    auto it = values_.find(name);
    return it == values_.end() ? CoefficientValue(1) : it->second;
}

std::string deps_to_string(const std::set<std::string>& deps) {
    std::ostringstream os;
    bool first = true;
    for (const auto& d : deps) {
        os << (first ? "" : "*") << d;
        first = false;
    }
    return deps.empty() ? "1" : os.str();
}

// ---------------------------------------------------------------------------

LRF HalfShiftedFunction::at_half_minus_s() const {
    const std::int64_t q = in_Y_.q();
    return in_Y_.substitute_monomial(GaussianRational(qpow(q, -1)), -1);
}

LRF HalfShiftedFunction::at_s_plus_half() const {
    const std::int64_t q = in_Y_.q();
    return in_Y_.substitute_monomial(GaussianRational(qpow(q, -1)), 1);
}

CoefficientValue HalfShiftedFunction::value_at(const Rational& s) const {
    return evaluate_at_s(in_Y_, s + Rational(1, 2));
}

LRF l_factor_zeta(std::int64_t q) { return inverse_binomial(q, 1, 1); }

LRF zeta_shifted(std::int64_t q, int scale, int shift) {
    // zeta(scale*s + shift) = 1 / (1 - q^{-shift} X^{scale}).
    return inverse_binomial(q, GaussianRational(qpow(q, -shift)), scale);
}

HalfShiftedFunction l_factor_pi_chi(const LocalTorusCase& c, int alpha, const TorusCharacter& chi) {
    check_alpha(alpha);
    if (!chi.is_unramified()) throw DomainError("L(s, pi, chi) table requires an unramified character");
    const std::int64_t q = c.q();
    switch (c.kind()) {
        case TorusKind::split: {
            const GaussianRational a = alpha_chi(c, alpha, chi);
            return HalfShiftedFunction(inverse_binomial(q, a, 1) * inverse_binomial(q, a.inverse(), 1));
        }
        case TorusKind::inert: return HalfShiftedFunction(inverse_binomial(q, 1, 2));
        case TorusKind::ramified: return HalfShiftedFunction(inverse_binomial(q, alpha_chi(c, alpha, chi), 1));
    }
    throw DomainError("unknown torus kind");
}

CoefficientValue l_factor_value(LFactorKind kind, const LocalTorusCase& c, int alpha, const TorusCharacter& chi,
                                const Rational& s) {
    switch (kind) {
        case LFactorKind::zeta_P: return evaluate_at_s(l_factor_zeta(c.q()), s);
        case LFactorKind::eta: return evaluate_at_s(c.l_factor_eta(), s);
        case LFactorKind::pi_chi: return l_factor_pi_chi(c, alpha, chi).value_at(s);
    }
    throw DomainError("unknown L-factor kind");
}

// ---------------------------------------------------------------------------

LRF i_t_statement(const LocalTorusCase& c, int alpha, const TorusCharacter& chi) {
    check_alpha(alpha);
    const std::int64_t q = c.q();
    const int nT = c.n_T();
    const int nchi = chi.conductor();
    LRF pre = qx_power(q, 2L * nT) * constant(q, c.l_eta_at_one()) * zeta_shifted(q, 2, -1) /
              zeta_shifted(q, -2, 2);
    if (nchi > 0) {
        // q^{(1-2s) n_chi} = q^{n_chi} X^{2 n_chi}
        if (c.kind() != TorusKind::inert) (void)alpha_chi(c, alpha, chi);
        return pre * LRF::monomial(q, GaussianRational(qpow(q, nchi)), 2L * nchi);
    }
    const auto L = l_factor_pi_chi(c, alpha, chi);
    return pre * L.at_half_minus_s() / L.at_s_minus_half();
}

LRF unit_shell_sum(const LocalTorusCase& c, const TorusCharacter& chi, int from_level) {
    const std::int64_t q = c.q();
    const int nT = c.n_T();
    const int start = std::max({from_level, chi.conductor(), 1});
    LRF total = LRF::constant(q, 0);
    for (int n = from_level; n < start; ++n) {
        const CoefficientValue sd = shell_difference_integral(c, chi, n);
        if (sd.is_zero()) continue;
        total = total + qx_power(q, 2L * (nT + n)) * constant(q, require_exact(sd, "shell integral"));
    }
    // Beyond `start` the character is trivial on every shell and vol(H_{n+1}) = vol(H_n)/q.
    const Rational v0 = shell_volume(c, start);
    if (shell_volume(c, start + 1) * q != v0 || shell_volume(c, start + 2) * q != shell_volume(c, start + 1))
        throw DomainError("shell volumes are not geometric beyond the conductor");
    const Rational lead = v0 * (1 - Rational(1, q));
    total = total + qx_power(q, 2L * (nT + start)) * constant(q, lead) * inverse_binomial(q, GaussianRational(q), 2);
    return total;
}

LRF i_t_proofform(const LocalTorusCase& c, int alpha, const TorusCharacter& chi) {
    check_alpha(alpha);
    const std::int64_t q = c.q();
    const int nT = c.n_T();
    const LRF S = unit_shell_sum(c, chi, 0);
    const CoefficientValue J = shell_character_integral(c, chi, 0);
    switch (c.kind()) {
        case TorusKind::inert: return S;
        case TorusKind::split: {
            const GaussianRational a = alpha_chi(c, alpha, chi);
            LRF off_diagonal = LRF::constant(q, 0);
            for (const GaussianRational& b : {a, a.inverse()}) {
                // sum_{k >= 1} (b / (qX))^k
                const LRF r = LRF::monomial(q, b / GaussianRational(q), -1);
                off_diagonal = off_diagonal + r / (constant(q, 1) - r);
            }
            return qx_power(q, 2L * nT) * off_diagonal * constant(q, J.exact()) + S;
        }
        case TorusKind::ramified: {
            const GaussianRational a = alpha_chi(c, alpha, chi);
            return S + qx_power(q, 2L * nT - 1) * constant(q, a * J.exact());
        }
    }
    throw DomainError("unknown torus kind");
}

OracleValue i_t_oracle(const LocalTorusCase& c, int alpha, const TorusCharacter& chi, const Rational& s, int N) {
    check_alpha(alpha);
    if (s <= Rational(1, 2)) throw DivergenceError("the defining integral diverges for Re(s) <= 1/2");
    if (N < 1) throw DomainError("truncation must be positive");
    const std::int64_t q = c.q();
    const double qd = static_cast<double>(q);
    const double sd = to_double(s);
    const int nT = c.n_T();
    const int Nb = chi.conductor() + 1;

    // m = 0 component: theta depends only on the shell level.
    std::complex<double> total = 0;
    CoefficientValue prev = brute_shell_character_integral(c, chi, 0, Nb);
    const CoefficientValue J = prev;
    for (int n = 0; n <= N; ++n) {
        const CoefficientValue next = brute_shell_character_integral(c, chi, n + 1, Nb);
        const CoefficientValue diff = prev - next;
        prev = next;
        if (diff.is_zero()) continue;
        total += theta_at(c, alpha, {0, n}, s).to_complex() * diff.to_complex();
    }
    // Tail: |int_{H_n \ H_{n+1}} chi| <= vol(H_n) = vol(H_1) q^{1-n}, |theta| = q^{(2 n_T + 2n)(1-s)}.
    const double r0 = std::pow(qd, 1 - 2 * sd);
    double tail = std::pow(qd, 2 * nT * (1 - sd)) * to_double(shell_volume(c, 1)) * qd * std::pow(r0, N + 1) / (1 - r0);

    if (!J.is_zero() && c.kind() != TorusKind::inert) {
        const auto& u = chi.uniformizer_value();
        if (!u) throw DomainError("character needs a uniformizer value");
        if (c.kind() == TorusKind::ramified) {
            total += theta_at(c, alpha, {1, 0}, s).to_complex() * u->to_complex() * J.to_complex();
        } else {
            if (s >= 1) throw DivergenceError("split torus with unramified character: the sum over v(t) != 0 diverges for s >= 1");
            const std::complex<double> uc = u->to_complex();
            for (int m = 1; m <= N; ++m) {
                const std::complex<double> th = theta_at(c, alpha, {m, 0}, s).to_complex();
                total += th * (std::pow(uc, m) + std::pow(uc, -m)) * J.to_complex();
            }
            const double rho = std::pow(qd, sd - 1);
            tail += 2 * std::pow(qd, 2 * nT * (1 - sd)) * std::abs(J.to_complex()) * std::pow(rho, N + 1) / (1 - rho);
        }
    }
    return {CoefficientValue(total), tail};
}

bool is_exceptional(int alpha, const TorusCharacter& chi, const LocalTorusCase& c) {
    check_alpha(alpha);
    if (!chi.is_unramified()) return false;
    switch (c.kind()) {
        case TorusKind::inert: return true;
        case TorusKind::split:
        case TorusKind::ramified: {
            const auto& u = chi.uniformizer_value();
            return u && u->approx_equal(CoefficientValue(alpha));
        }
    }
    return false;
}

// ---------------------------------------------------------------------------

CoefficientValue default_l_ad_at_one(const SteinbergDatum& d) {
    if (d.is_special()) throw DomainError("adjoint default is only provided for spherical data");
    const Rational inv_q(1, d.q());
    const CoefficientValue r = d.alpha() * d.alpha() / CoefficientValue(static_cast<long long>(d.q()));
    const CoefficientValue one = 1;
    const CoefficientValue x = CoefficientValue(inv_q);
    return (one / ((one - x) * (one - r * x) * (one - r.conj() * x)));
}

CoefficientValue default_l_pi_chi_at_half(const SteinbergDatum& d, const LocalTorusCase& c, const TorusCharacter& chi) {
    if (d.is_special()) throw DomainError("use special_l_pi_chi_at_half for special data");
    if (!chi.is_unramified()) return 1;
    const CoefficientValue one = 1;
    const CoefficientValue inv_q = CoefficientValue(Rational(1, c.q()));
    CoefficientValue denom = 1;
    for (const CoefficientValue& beta : {d.alpha(), d.alpha().conj()}) {
        switch (c.kind()) {
            case TorusKind::split: {
                const CoefficientValue u = chi.uniformizer_value().value_or(CoefficientValue(1));
                denom = denom * (one - beta * u * inv_q) * (one - beta * u.inverse() * inv_q);
                break;
            }
            case TorusKind::inert: denom = denom * (one - beta * beta * inv_q * inv_q); break;
            case TorusKind::ramified: {
                const CoefficientValue u = chi.uniformizer_value().value_or(CoefficientValue(1));
                denom = denom * (one - beta * u * inv_q);
                break;
            }
        }
    }
    return one / denom;
}

CoefficientValue special_l_pi_chi_at_half(const LocalTorusCase& c, int alpha, const TorusCharacter& chi) {
    if (!chi.is_unramified()) return 1;
    return l_factor_pi_chi(c, alpha, chi).value_at(Rational(1, 2));
}

PairingFactors pairing_factors(const LocalTorusCase& c, const SteinbergDatum& d, const TorusCharacter& chi,
                               const SymbolicConstants& k, const SphericalLValues& spherical) {
    const std::int64_t q = c.q();
    const Rational xi2 = 1 / (1 - qpow(q, -2));
    const Rational l_eta = c.l_eta_at_one();
    PairingFactors out{};
    if (!d.is_special()) {
        out.K_T.value = k.get("c_T") * CoefficientValue(l_eta / xi2);
        out.K_T.deps = {"c_T"};
        const CoefficientValue ad = spherical.l_ad_at_one.value_or(default_l_ad_at_one(d));
        const CoefficientValue lhalf = spherical.l_pi_chi_at_half.value_or(default_l_pi_chi_at_half(d, c, chi));
        out.e_P = ad / lhalf;
    } else {
        const Rational xi_m1 = 1 / Rational(1 - q);
        out.K_T.value = k.get("c_T") * k.get("C_T_bar") *
                        CoefficientValue(l_eta * l_eta * xi_m1 * qpow(q, 2L * c.n_T()) / xi2);
        out.K_T.deps = {"c_T", "C_T_bar"};
        if (chi.is_unramified()) {
            // 1 / L(-1/2, pi, chi): evaluate the reciprocal so that a pole gives an exact zero.
            const auto L = l_factor_pi_chi(c, d.sign(), chi);
            const LRF recip = constant(q, 1) / L.in_Y();
            out.e_P = evaluate_at_X(recip, CoefficientValue(1));
        } else {
            out.e_P = CoefficientValue(qpow(q, chi.conductor())) / special_l_pi_chi_at_half(c, d.sign(), chi);
        }
    }
    if (k.overridden("K_T")) out.K_T = {k.get("K_T"), {"K_T"}, false};
    out.K_T.exceptional_zero = out.e_P.is_zero();
    return out;
}

SymbolicValue pairing_alpha(const LocalTorusCase& c, const SteinbergDatum& d, const TorusCharacter& chi,
                            const ShellFunction& f1, const ShellFunction& f2, const SymbolicConstants& k,
                            const SphericalLValues& spherical) {
    const PairingFactors pf = pairing_factors(c, d, chi, k, spherical);
    SymbolicValue out;
    out.deps = pf.K_T.deps;
    if (pf.e_P.is_zero()) {
        out.value = 0;
        out.exceptional_zero = true;
        return out;
    }
    const TorusCharacter inv = chi.inverse();
    out.value = pf.K_T.value * pf.e_P * f1.integrate(inv) * f2.integrate(inv).conj();
    return out;
}

// ---------------------------------------------------------------------------

SymbolicValue inner_product_fP(const LocalTorusCase& c, const SteinbergDatum& d, int n_s, const SymbolicConstants& k) {
    const std::int64_t q = c.q();
    const Rational iq(1, q);
    SymbolicValue out;
    if (!d.is_special()) {
        out.deps = {"c_T"};
        Rational v;
        switch (c.kind()) {
            case TorusKind::inert: v = 1; break;
            case TorusKind::split: v = qpow(q, n_s) * (1 + iq) / (1 - iq); break;
            case TorusKind::ramified: v = 1 + iq; break;
        }
        out.value = k.get("c_T") * CoefficientValue(v);
        return out;
    }
    out.deps = {"c_T", "C_T_bar"};
    const Rational base = -qpow(q, 2L * c.n_T() - 1);
    Rational v;
    switch (c.kind()) {
        case TorusKind::inert: v = base / ((1 + iq) * (1 + iq)); break;
        case TorusKind::split: v = base / ((1 - iq) * (1 - iq)); break;
        case TorusKind::ramified: v = base; break;
    }
    out.value = k.get("c_T") * k.get("C_T_bar") * CoefficientValue(v);
    return out;
}

namespace {

// Spherical split case: sum over n of |f(A diag(p^n, 1))|^2 = q^{v(b22/b11)}.
// The exponent is computed by Iwasawa decomposition on a window and the two
// tails are summed after checking that the exponent is linear there.
Rational spherical_split_norm(std::int64_t q, int n_s) {
    // A in GL2(Z_p) with v(c d) = n_s; both shapes (unit d, unit c) give the same answer.
    const Rational pn = qpow(q, n_s);
    Rational results[2];
    const GL2Element shapes[2] = {GL2Element(1, 0, pn, 1), GL2Element(0, 1, -1, pn)};
    for (int which = 0; which < 2; ++which) {
        const GL2Element& A = shapes[which];
        const int lo = -n_s - 8, hi = n_s + 8;
        std::vector<int> e;
        Rational sum = 0;
        for (int n = lo; n <= hi; ++n) {
            const GL2Element g = A * GL2Element::diag(qpow(q, n), 1);
            e.push_back(borel_exponent(g, q));
            sum += qpow(q, e.back());
        }
        const std::size_t W = e.size();
        for (int i = 0; i < 3; ++i) {
            if (e[static_cast<std::size_t>(i) + 1] - e[static_cast<std::size_t>(i)] != 1 ||
                e[W - 1 - static_cast<std::size_t>(i)] - e[W - 2 - static_cast<std::size_t>(i)] != -1)
                throw DomainError("Iwasawa exponent is not linear outside the window");
        }
        // Tails: sum_{k >= 1} q^{e_lo - k} and sum_{k >= 1} q^{e_hi - k}.
        sum += qpow(q, e.front()) / (q - 1) + qpow(q, e.back()) / (q - 1);
        results[which] = sum;
    }
    if (results[0] != results[1]) throw MismatchError("spherical norm depends on the choice of A");
    return results[0];
}

// Special split case. With f(t) = alpha^{v(t)} [v(t) > n_T], the inner
// integral Lambda(t) = int theta(y) f(y^{-1} t) dy at s = 0 is computed as a
// rational function for each valuation n of t, then summed over n with a
// verified geometric tail.
Rational special_split_norm(const LocalTorusCase& c, int alpha) {
    const std::int64_t q = c.q();
    const int nT = c.n_T();
    auto valuation_integral = [&](int m) {
        // int_{p^m O^x} theta(y) dy
        if (m != 0) return theta(c, alpha, {m, 0});
        return unit_shell_sum(c, TorusCharacter::trivial(c), 0);
    };
    auto lambda_at_zero = [&](int n) {
        // m ranges over m < n - n_T; the part m <= -1 is a geometric series in (qX)^{-1}.
        const int top = n - nT - 1;
        LRF acc = LRF::constant(q, 0);
        for (int m = std::min(top, 0); m <= top; ++m) {
            const int fv = n - m;
            const GaussianRational w = (fv % 2 != 0 && alpha == -1) ? -1 : 1;
            acc = acc + constant(q, w) * valuation_integral(m);
        }
        const int below = std::min(top, 0) - 1;  // terms m <= below
        // alpha^{n-m} alpha^{|m|} (qX)^{2n_T + m} for m < 0, i.e. alpha^n (qX)^{2 n_T} (qX)^m.
        const GaussianRational an = (n % 2 != 0 && alpha == -1) ? -1 : 1;
        const LRF r = LRF::monomial(q, GaussianRational(Rational(1, q)), -1);
        acc = acc + constant(q, an) * qx_power(q, 2L * nT + below) / (constant(q, 1) - r);
        return evaluate_at_X(acc, CoefficientValue(1)).exact().re();
    };
    Rational sum = 0;
    std::vector<Rational> terms;
    for (int n = nT + 1; n <= nT + 12; ++n) {
        const Rational an = (n % 2 != 0 && alpha == -1) ? -1 : 1;
        terms.push_back(an * lambda_at_zero(n));
        sum += terms.back();
    }
    const Rational ratio = terms[terms.size() - 1] / terms[terms.size() - 2];
    for (std::size_t i = 1; i < terms.size(); ++i)
        if (terms[i] / terms[i - 1] != ratio) throw DomainError("outer sum is not geometric");
    sum += terms.back() * ratio / (1 - ratio);
    return sum;
}

}  // namespace

SymbolicValue inner_product_fP_rederived(const LocalTorusCase& c, const SteinbergDatum& d, int n_s,
                                         const SymbolicConstants& k) {
    const std::int64_t q = c.q();
    SymbolicValue out;
    if (!d.is_special()) {
        // <f, f> = c_T int_T |f(t)|^2 dt with f the spherical vector restricted to the torus.
        out.deps = {"c_T"};
        Rational v;
        switch (c.kind()) {
            case TorusKind::inert: {
                // T is compact and f = 1 on it.
                ShellFunction f(c, 0);
                f.set(0, 0, 1);
                v = f.integrate().exact().re();
                break;
            }
            case TorusKind::ramified: {
                // f = 1 on the units and alpha^{-1} on the p_K coset, so |f|^2 = 1 and 1/q.
                ShellFunction f2(c, 0);
                f2.set(0, 0, 1);
                f2.set(1, 0, Rational(1, q));
                v = f2.integrate().exact().re();
                break;
            }
            case TorusKind::split: v = spherical_split_norm(q, n_s); break;
        }
        out.value = k.get("c_T") * CoefficientValue(v);
        return out;
    }
    out.deps = {"c_T", "C_T_bar"};
    const int alpha = d.sign();
    Rational v;
    switch (c.kind()) {
        case TorusKind::inert: {
            // f = 1_{H_1}; for t in H_1 the inner integral is int_{H_1} theta, continued to s = 0.
            const ShellFunction f = ShellFunction::indicator_H(c, 1, 1);
            const Rational lambda =
                evaluate_at_X(unit_shell_sum(c, TorusCharacter::trivial(c), 1), CoefficientValue(1)).exact().re();
            v = f.integrate().exact().re() * lambda;
            break;
        }
        case TorusKind::ramified: {
            // f = 1 on units, 0 on the p_K coset; for t a unit the inner integral is over the units.
            ShellFunction f(c, 0);
            f.set(0, 0, 1);
            const Rational lambda =
                evaluate_at_X(unit_shell_sum(c, TorusCharacter::trivial(c), 0), CoefficientValue(1)).exact().re();
            v = f.integrate().exact().re() * lambda;
            break;
        }
        case TorusKind::split: v = special_split_norm(c, alpha); break;
    }
    out.value = k.get("c_T") * k.get("C_T_bar") * CoefficientValue(v);
    return out;
}

// ---------------------------------------------------------------------------

Rational f0_of_t(std::int64_t q, int n_T, int ord_t) {
    const Rational Q = q;
    const Rational pre = qpow(q, 2L * n_T);
    if (ord_t > 0) return pre * qpow(q, -ord_t) / ((1 - 1 / Q) * (1 - 1 / Q));
    return pre * qpow(q, ord_t) / ((1 - Q) * (1 - Q));
}

LRF f0_inner_integral(std::int64_t q, int m_y) {
    if (m_y > 0) return LRF::constant(q, 1);
    // |1 - y|^{2s-2} = |y|^{2s-2} = q^{(2-2s) m_y} = (q X^2)^{m_y}... written as q^{2 m_y} X^{2 m_y}.
    if (m_y < 0) return LRF::monomial(q, GaussianRational(qpow(q, 2L * m_y)), 2L * m_y);
    // (q - 2 + q^{1-2s}) / ((q - 1)(1 - q^{1-2s})) with q^{1-2s} = q X^2.
    const LRF qx2 = LRF::monomial(q, GaussianRational(q), 2);
    return (constant(q, GaussianRational(q - 2)) + qx2) /
           (constant(q, GaussianRational(q - 1)) * (constant(q, 1) - qx2));
}

Rational f0_oracle(std::int64_t q, int n_T, int ord_t, int N) {
    if (N < 1) throw DomainError("truncation must be positive");
    // F(s)(t) = q^{(2-2s) n_T} sum_{m_x >= ord t} sum_{m_y >= m_x} q^{(s-1) m_y} J(m_y)
    //        = q^{(2-2s) n_T} sum_{m_y >= ord t} (m_y - ord t + 1) q^{(s-1) m_y} J(m_y).
    // q^{(s-1) m} = (qX)^{-m}; terms with m_y <= N are summed directly, the rest in closed form.
    const int k = ord_t;
    LRF total = LRF::constant(q, 0);
    const int top = std::max(N, k);
    for (int m = k; m <= top; ++m)
        total = total + constant(q, GaussianRational(m - k + 1)) * qx_power(q, -m) * f0_inner_integral(q, m);
    // Tail m > top with J = 1: sum_{m >= a} (m - k + 1) r^m = r^a ((a - k + 1)/(1 - r) + r/(1 - r)^2), r = (qX)^{-1}.
    const int a = top + 1;
    const LRF r = LRF::monomial(q, GaussianRational(Rational(1, q)), -1);
    const LRF one = LRF::constant(q, 1);
    const LRF tail = r.pow(a) * (constant(q, GaussianRational(a - k + 1)) / (one - r) + r / ((one - r) * (one - r)));
    total = (total + tail) * qx_power(q, 2L * n_T);
    return evaluate_at_X(total, CoefficientValue(1)).exact().re();
}

Rational f0_total(std::int64_t q, int n_T) {
    const Rational iq(1, q);
    return qpow(q, 2L * n_T) * iq * (1 + iq) / ((1 - iq) * (1 - iq) * (1 - iq));
}

SymbolicValue alpha_1U_pairing(std::int64_t q, int n_T, const SymbolicConstants& k,
                               std::optional<CoefficientValue> l_ad_at_one) {
    const LocalTorusCase c(TorusKind::split, PrimeLocalField(q), n_T);
    const Rational zeta2 = 1 / (1 - qpow(q, -2));
    const CoefficientValue ad = l_ad_at_one.value_or(CoefficientValue(zeta2));
    const CoefficientValue l_half = special_l_pi_chi_at_half(c, 1, TorusCharacter::trivial(c));
    SymbolicValue out;
    out.deps = {"c_T", "C_T_bar"};
    out.value = CoefficientValue(c.l_eta_at_one()) * ad / (CoefficientValue(zeta2) * l_half) * k.get("c_T") *
                k.get("C_T_bar") * CoefficientValue(f0_total(q, n_T));
    return out;
}

}  // namespace acl
