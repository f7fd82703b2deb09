#pragma once

#include "acl/numbers.hpp"
#include "acl/padic.hpp"
#include "acl/rational_function.hpp"

#include <climits>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace acl {

enum class TorusKind { split, inert, ramified };

[[nodiscard]] std::string to_string(TorusKind kind);
[[nodiscard]] TorusKind parse_torus_kind(const std::string& text);

// T(F_P) = K_P^x / F_P^x together with the embedding constant n_T.
class LocalTorusCase {
public:
    LocalTorusCase(TorusKind kind, PrimeLocalField field, int n_T);

    [[nodiscard]] TorusKind kind() const noexcept { return kind_; }
    [[nodiscard]] const PrimeLocalField& field() const noexcept { return field_; }
    [[nodiscard]] std::int64_t q() const noexcept { return field_.q(); }
    [[nodiscard]] int n_T() const noexcept { return n_T_; }

    // L(s, eta) of the quadratic character attached to K_P / F_P, in X = q^{-s}.
    [[nodiscard]] LocalRationalFunction l_factor_eta() const;
    // L(1, eta), exact.
    [[nodiscard]] Rational l_eta_at_one() const;

private:
    TorusKind kind_;
    PrimeLocalField field_;
    int n_T_;
};

// vol(H_n), normalized so that the unit part H_0 has volume one.
[[nodiscard]] Rational shell_volume(const LocalTorusCase& c, int n);
// vol(H_n \ H_{n+1}).
[[nodiscard]] Rational shell_difference_volume(const LocalTorusCase& c, int n);

// The finite group H_0 / H_n for residue degree one. O_K = Z_p[beta] with
// beta^2 = t*beta + d; units a + b*beta are normalized modulo Z_p^x to either
// (1, b) or (a, 1) with p | a. The shell level of (1, b) is min(v(b), n).
class TorusQuotient {
public:
    TorusQuotient(TorusKind kind, std::int64_t p, int level);

    [[nodiscard]] TorusKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::int64_t p() const noexcept { return p_; }
    [[nodiscard]] int level() const noexcept { return level_; }
    [[nodiscard]] std::int64_t modulus() const noexcept { return modulus_; }
    [[nodiscard]] std::size_t size() const noexcept { return elems_.size(); }
    [[nodiscard]] std::pair<std::int64_t, std::int64_t> element(std::size_t i) const { return elems_[i]; }
    [[nodiscard]] std::size_t identity() const { return index_of(1, 0); }
    // Normalizes (a, b) and returns its index; DomainError if a + b*beta is not a unit.
    [[nodiscard]] std::size_t index_of(std::int64_t a, std::int64_t b) const;
    [[nodiscard]] std::size_t multiply(std::size_t i, std::size_t j) const;
    [[nodiscard]] std::size_t inverse(std::size_t i) const;
    [[nodiscard]] int shell_level(std::size_t i) const;
    // Image of element i in H_0 / H_{lower}, lower <= level.
    [[nodiscard]] std::size_t reduce_index(std::size_t i, const TorusQuotient& lower) const;
    [[nodiscard]] std::int64_t beta_trace() const noexcept { return t_; }
    [[nodiscard]] std::int64_t beta_norm_term() const noexcept { return d_; }
    // Index of the split-torus unit 1 + b (coordinate x = 1 + b).
    [[nodiscard]] std::size_t split_index_of_unit(std::int64_t u) const;

    [[nodiscard]] static std::shared_ptr<const TorusQuotient> shared(TorusKind kind, std::int64_t p, int level);

private:
    std::optional<std::size_t> lookup(std::int64_t a, std::int64_t b) const;

    TorusKind kind_;
    std::int64_t p_;
    int level_;
    std::int64_t modulus_;
    std::int64_t t_ = 0;
    std::int64_t d_ = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> elems_;
    std::vector<std::int64_t> position_;  // encoded key -> index or -1
};

// A character of T(F_P). Values on the unit part are stored as exponents of
// a primitive |H_0/H_{n_chi}|-th root of unity on the finite quotient; the
// uniformizer value is chi(p) (split) or chi(p_K) (ramified) and is absent
// for inert tori.
class TorusCharacter {
public:
    // Builds a character of exact conductor n_chi. `choice` selects among the
    // admissible extensions deterministically; distinct choices give
    // (generally) distinct characters.
    static TorusCharacter construct(const LocalTorusCase& c, int n_chi,
                                    std::optional<CoefficientValue> uniformizer_value = std::nullopt,
                                    std::uint64_t choice = 0);
    // Takes an explicit exponent table on H_0/H_level (values zeta_order^e).
    static TorusCharacter from_table(const LocalTorusCase& c, int level, std::int64_t order,
                                     std::vector<std::int64_t> exponents,
                                     std::optional<CoefficientValue> uniformizer_value = std::nullopt);
    // A character known only through (n_chi, uniformizer value); usable by
    // closed forms for any residue degree but not by enumeration oracles.
    static TorusCharacter symbolic(const LocalTorusCase& c, int n_chi,
                                   std::optional<CoefficientValue> uniformizer_value = std::nullopt);
    static TorusCharacter trivial(const LocalTorusCase& c) { return symbolic(c, 0, default_uniformizer(c)); }

    [[nodiscard]] int conductor() const noexcept { return n_chi_; }
    [[nodiscard]] bool is_unramified() const noexcept { return n_chi_ == 0; }
    [[nodiscard]] const std::optional<CoefficientValue>& uniformizer_value() const noexcept { return uniformizer_; }
    [[nodiscard]] bool has_table() const noexcept { return quotient_ != nullptr; }
    [[nodiscard]] const TorusQuotient& quotient() const;
    [[nodiscard]] std::int64_t order() const noexcept { return order_; }
    [[nodiscard]] std::int64_t exponent(std::size_t index) const { return exponents_.at(index); }
    // chi on an element of a quotient of level >= conductor.
    [[nodiscard]] std::int64_t exponent_at(const TorusQuotient& q, std::size_t index) const;
    [[nodiscard]] CoefficientValue value_at(const TorusQuotient& q, std::size_t index) const;
    // The inverse character chi^{-1}.
    [[nodiscard]] TorusCharacter inverse() const;
    // Recomputes the conductor by scanning shell levels for the first level on which chi is trivial.
    [[nodiscard]] int detect_conductor() const;
    // Checks that the table is a homomorphism.
    [[nodiscard]] bool is_homomorphism() const;

    static std::optional<CoefficientValue> default_uniformizer(const LocalTorusCase& c);

private:
    TorusCharacter() = default;

    TorusKind kind_{};
    int n_chi_ = 0;
    std::optional<CoefficientValue> uniformizer_;
    std::shared_ptr<const TorusQuotient> quotient_;
    std::int64_t order_ = 1;
    std::vector<std::int64_t> exponents_;
};

// Closed-form shell integrals: int_{H_n} chi, and the shell-difference
// variant int_{H_n \ H_{n+1}} chi.
[[nodiscard]] CoefficientValue shell_character_integral(const LocalTorusCase& c, const TorusCharacter& chi, int n);
[[nodiscard]] CoefficientValue shell_difference_integral(const LocalTorusCase& c, const TorusCharacter& chi, int n);
// The same integral as an explicit finite character sum over H_n / H_L with
// L = max(N, n_chi, n), each coset weighted by vol(H_L).
[[nodiscard]] CoefficientValue brute_shell_character_integral(const LocalTorusCase& c, const TorusCharacter& chi, int n,
                                                              int N);

// A point of T(F_P) seen through the data theta depends on: the valuation
// index m (split: v(x); ramified: 0 or 1 for the p_K coset; inert: 0) and the
// shell level of the unit part. kIdentityShell marks a unit part equal to 1.
struct TorusShellPoint {
    static constexpr int kIdentityShell = INT_MAX;
    int m = 0;
    int shell = 0;
};

// theta_T(s)(t) = alpha^{v(det t)} |det t / c(t)^2|^{1-s} = alpha^{v(det t)} (qX)^e.
// Returns (sign, e).
[[nodiscard]] std::pair<int, int> theta_exponent(const LocalTorusCase& c, int alpha, const TorusShellPoint& t);
[[nodiscard]] LocalRationalFunction theta(const LocalTorusCase& c, int alpha, const TorusShellPoint& t);
[[nodiscard]] CoefficientValue theta_at(const LocalTorusCase& c, int alpha, const TorusShellPoint& t, const Rational& s);
// Split coordinates: t corresponds to x in F^x, x != 1.
[[nodiscard]] TorusShellPoint split_point(const Rational& x, std::int64_t p);

// An element of T(F_P) at finite level: valuation index and a unit class in H_0/H_level.
struct TorusElement {
    int m = 0;
    std::size_t unit = 0;
};

// Compactly supported function on T(F_P), constant on the cosets p^m * (unit class mod H_level).
class ShellFunction {
public:
    ShellFunction(LocalTorusCase c, int level);

    [[nodiscard]] const LocalTorusCase& torus() const noexcept { return case_; }
    [[nodiscard]] int level() const noexcept { return level_; }
    [[nodiscard]] const TorusQuotient& quotient() const { return *quotient_; }
    [[nodiscard]] CoefficientValue at(int m, std::size_t unit) const;
    [[nodiscard]] CoefficientValue at(const TorusElement& t) const { return at(t.m, t.unit); }
    void set(int m, std::size_t unit, CoefficientValue v);
    [[nodiscard]] const std::map<int, std::vector<CoefficientValue>>& entries() const noexcept { return entries_; }

    // Indicator of H_n (n <= level) inside the m = 0 component.
    static ShellFunction indicator_H(const LocalTorusCase& c, int level, int n);
    [[nodiscard]] ShellFunction refine(int new_level) const;
    // (t * f)(y) = f(t^{-1} y).
    [[nodiscard]] ShellFunction translate(const TorusElement& t) const;
    // int f(t) chi(t) d^x t, exact shell summation.
    [[nodiscard]] CoefficientValue integrate(const TorusCharacter& chi) const;
    [[nodiscard]] CoefficientValue integrate() const;
    // Split coordinate evaluation f(x) for x in F^x (rational representative).
    [[nodiscard]] CoefficientValue at_split_coordinate(const Rational& x) const;

private:
    LocalTorusCase case_;
    int level_;
    std::shared_ptr<const TorusQuotient> quotient_;
    std::map<int, std::vector<CoefficientValue>> entries_;
};

// Reduction of the valuation index: ramified tori identify m modulo 2 since p_K^2 = p is trivial in T.
[[nodiscard]] int normalize_valuation_index(TorusKind kind, int m);

}  // namespace acl
