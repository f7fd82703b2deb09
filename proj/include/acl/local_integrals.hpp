#pragma once

#include "acl/numbers.hpp"
#include "acl/rational_function.hpp"
#include "acl/torus.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>

namespace acl {

// alpha together with its branch. Special (Steinberg) data has alpha = +1 or
// -1; spherical data has |alpha|^2 = q.
class SteinbergDatum {
public:
    static SteinbergDatum special(int alpha);
    // Exact check |alpha|^2 = q when alpha is exact, tolerance check otherwise.
    static SteinbergDatum spherical(CoefficientValue alpha, std::int64_t q);

    [[nodiscard]] bool is_special() const noexcept { return special_; }
    [[nodiscard]] const CoefficientValue& alpha() const noexcept { return alpha_; }
    // +1 or -1; DomainError for spherical data.
    [[nodiscard]] int sign() const;
    // a_P = alpha + q/alpha (spherical) or alpha (special).
    [[nodiscard]] CoefficientValue a_P() const;
    [[nodiscard]] std::int64_t q() const noexcept { return q_; }

private:
    SteinbergDatum(bool special, CoefficientValue alpha, std::int64_t q)
        : special_(special), alpha_(std::move(alpha)), q_(q) {}
    bool special_;
    CoefficientValue alpha_;
    std::int64_t q_;
};

// Unevaluated existence constants carried alongside numeric results.
class SymbolicConstants {
public:
    static inline const std::set<std::string> kNames{"c_T", "C_T_bar", "K_T", "C_K", "C_phi", "k_T"};

    void set(const std::string& name, CoefficientValue value);
    [[nodiscard]] CoefficientValue get(const std::string& name) const;
    [[nodiscard]] bool overridden(const std::string& name) const { return values_.count(name) != 0; }

private:
    std::map<std::string, CoefficientValue> values_;
};

// A value together with the symbolic constants it was multiplied by.
struct SymbolicValue {
    CoefficientValue value;
    std::set<std::string> deps;
    bool exceptional_zero = false;
};

[[nodiscard]] std::string deps_to_string(const std::set<std::string>& deps);

// A function of s stored in the variable Y = q^{-s-1/2}.
class HalfShiftedFunction {
public:
    explicit HalfShiftedFunction(LocalRationalFunction in_Y) : in_Y_(std::move(in_Y)) {}
    [[nodiscard]] const LocalRationalFunction& in_Y() const noexcept { return in_Y_; }
    // L(s - 1/2) as a function of X = q^{-s} (Y = X).
    [[nodiscard]] LocalRationalFunction at_s_minus_half() const { return in_Y_; }
    // L(1/2 - s) as a function of X (Y = 1/(qX)).
    [[nodiscard]] LocalRationalFunction at_half_minus_s() const;
    // L(s + 1/2) as a function of X (Y = X/q).
    [[nodiscard]] LocalRationalFunction at_s_plus_half() const;
    // Exact whenever s + 1/2 is an integer.
    [[nodiscard]] CoefficientValue value_at(const Rational& s) const;

private:
    LocalRationalFunction in_Y_;
};

[[nodiscard]] LocalRationalFunction l_factor_zeta(std::int64_t q);
// zeta_P(s + k) for integer k, as a function of X.
[[nodiscard]] LocalRationalFunction zeta_shifted(std::int64_t q, int scale, int shift);
// L(s, pi_P, chi_P) for special alpha and unramified chi.
[[nodiscard]] HalfShiftedFunction l_factor_pi_chi(const LocalTorusCase& c, int alpha, const TorusCharacter& chi);

enum class LFactorKind { zeta_P, eta, pi_chi };
// Uniform entry point: value of the chosen local factor at s (exact when possible).
[[nodiscard]] CoefficientValue l_factor_value(LFactorKind kind, const LocalTorusCase& c, int alpha,
                                              const TorusCharacter& chi, const Rational& s);

// I_T(chi, s) in the closed form of the statement and assembled the way the proof does.
[[nodiscard]] LocalRationalFunction i_t_statement(const LocalTorusCase& c, int alpha, const TorusCharacter& chi);
[[nodiscard]] LocalRationalFunction i_t_proofform(const LocalTorusCase& c, int alpha, const TorusCharacter& chi);
// Shell sum sum_{n >= 0} (qX)^{2(n_T + n)} int_{H_n \ H_{n+1}} chi with its geometric tail summed.
[[nodiscard]] LocalRationalFunction unit_shell_sum(const LocalTorusCase& c, const TorusCharacter& chi, int from_level = 0);

struct OracleValue {
    CoefficientValue value;
    double tail_bound = 0.0;
};
// Truncated direct summation of theta * chi over T(F_P) using explicit
// character sums; DivergenceError outside the region of absolute convergence.
[[nodiscard]] OracleValue i_t_oracle(const LocalTorusCase& c, int alpha, const TorusCharacter& chi, const Rational& s,
                                     int N);

// Vanishing of I_T(chi, 0) predicted from the character: chi = alpha^{v o det}.
[[nodiscard]] bool is_exceptional(int alpha, const TorusCharacter& chi, const LocalTorusCase& c);

// Local factors needed by the spherical branch; defaults come from the Satake parameters.
struct SphericalLValues {
    std::optional<CoefficientValue> l_ad_at_one;        // L(1, pi_P, ad)
    std::optional<CoefficientValue> l_pi_chi_at_half;   // L(1/2, pi_P, chi_P)
};
[[nodiscard]] CoefficientValue default_l_ad_at_one(const SteinbergDatum& d);
[[nodiscard]] CoefficientValue default_l_pi_chi_at_half(const SteinbergDatum& d, const LocalTorusCase& c,
                                                        const TorusCharacter& chi);
// L(1/2, pi_P, chi_P) for special alpha: the table value when chi is
// unramified, and 1 when chi is ramified.
[[nodiscard]] CoefficientValue special_l_pi_chi_at_half(const LocalTorusCase& c, int alpha, const TorusCharacter& chi);

// The pair (K_T, e_P) of the alpha-pairing formula.
struct PairingFactors {
    SymbolicValue K_T;
    CoefficientValue e_P;
};
[[nodiscard]] PairingFactors pairing_factors(const LocalTorusCase& c, const SteinbergDatum& d,
                                             const TorusCharacter& chi, const SymbolicConstants& k,
                                             const SphericalLValues& spherical = {});
[[nodiscard]] SymbolicValue pairing_alpha(const LocalTorusCase& c, const SteinbergDatum& d, const TorusCharacter& chi,
                                          const ShellFunction& f1, const ShellFunction& f2, const SymbolicConstants& k,
                                          const SphericalLValues& spherical = {});

// Closed-form <f_P, f_P> for the six printed cases; n_s is used by the spherical split case.
[[nodiscard]] SymbolicValue inner_product_fP(const LocalTorusCase& c, const SteinbergDatum& d, int n_s,
                                             const SymbolicConstants& k);
// The same six values recomputed from the defining integrals.
[[nodiscard]] SymbolicValue inner_product_fP_rederived(const LocalTorusCase& c, const SteinbergDatum& d, int n_s,
                                                       const SymbolicConstants& k);

// F(0)(t) of the Steinberg pairing computation (split tori only).
[[nodiscard]] Rational f0_of_t(std::int64_t q, int n_T, int ord_t);
[[nodiscard]] Rational f0_oracle(std::int64_t q, int n_T, int ord_t, int N);
// sum over t of F(0)(t), and the alpha pairing of delta_T(1_U) with itself.
[[nodiscard]] Rational f0_total(std::int64_t q, int n_T);
[[nodiscard]] SymbolicValue alpha_1U_pairing(std::int64_t q, int n_T, const SymbolicConstants& k,
                                             std::optional<CoefficientValue> l_ad_at_one = std::nullopt);
// int_{p^m O^x} |1 - y|^{2s-2} d^x y as a rational function of X.
[[nodiscard]] LocalRationalFunction f0_inner_integral(std::int64_t q, int m_y);

}  // namespace acl
