#pragma once

#include "acl/numbers.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace acl {

// G_N = (Z/p^N)^r, elements indexed in mixed radix with the first coordinate least significant.
class FiniteLevelGroup {
public:
    using Element = std::vector<std::int64_t>;

    FiniteLevelGroup(std::int64_t p, int r, int N);

    [[nodiscard]] std::int64_t p() const noexcept { return p_; }
    [[nodiscard]] int rank() const noexcept { return r_; }
    [[nodiscard]] int level() const noexcept { return N_; }
    [[nodiscard]] std::int64_t exponent() const noexcept { return pN_; }
    [[nodiscard]] std::size_t order() const noexcept { return order_; }

    [[nodiscard]] Element element(std::size_t index) const;
    [[nodiscard]] std::size_t index(const Element& g) const;
    [[nodiscard]] std::size_t add(std::size_t i, std::size_t j) const;
    [[nodiscard]] std::size_t negate(std::size_t i) const;
    [[nodiscard]] std::size_t basis(int i) const;  // e_i
    // Reduction G_N -> G_{N-1}.
    [[nodiscard]] std::size_t reduce_index(std::size_t i, const FiniteLevelGroup& lower) const;

    friend bool operator==(const FiniteLevelGroup&, const FiniteLevelGroup&) = default;

private:
    std::int64_t p_;
    int r_, N_;
    std::int64_t pN_;
    std::size_t order_;
};

// An element of Q[G_N]; the integral flag is derived from the coefficients.
class GroupAlgebraElement {
public:
    explicit GroupAlgebraElement(FiniteLevelGroup group);
    static GroupAlgebraElement dirac(const FiniteLevelGroup& group, std::size_t g);

    [[nodiscard]] const FiniteLevelGroup& group() const noexcept { return group_; }
    [[nodiscard]] const Rational& operator[](std::size_t g) const { return coeffs_.at(g); }
    void set(std::size_t g, Rational value) { coeffs_.at(g) = std::move(value); }
    [[nodiscard]] const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }

    [[nodiscard]] bool is_zero() const;
    [[nodiscard]] bool is_integral() const;
    // Minimal p-adic valuation of the coefficients; nullopt for the zero element.
    [[nodiscard]] std::optional<int> min_valuation() const;
    // Pushforward along G_N -> G_{N-1}.
    [[nodiscard]] GroupAlgebraElement pushforward() const;

    friend GroupAlgebraElement operator+(const GroupAlgebraElement& x, const GroupAlgebraElement& y);
    friend GroupAlgebraElement operator-(const GroupAlgebraElement& x, const GroupAlgebraElement& y);
    friend GroupAlgebraElement operator*(const Rational& k, const GroupAlgebraElement& x);
    friend bool operator==(const GroupAlgebraElement& x, const GroupAlgebraElement& y) = default;

private:
    FiniteLevelGroup group_;
    std::vector<Rational> coeffs_;
};

[[nodiscard]] GroupAlgebraElement convolve(const GroupAlgebraElement& x, const GroupAlgebraElement& y);
[[nodiscard]] Rational degree(const GroupAlgebraElement& mu);
[[nodiscard]] Rational integrate(const GroupAlgebraElement& mu,
                                 const std::function<Rational(const FiniteLevelGroup::Element&)>& f);

// phi(g) = d_g - d_0.
[[nodiscard]] GroupAlgebraElement phi_map(const FiniteLevelGroup& group, std::size_t g);
// (int l_i dmu)_i mod p^{min(N, M)} for the coordinate maps l_i : G_N -> Z/p^N.
// NotInAugmentationIdeal when deg mu != 0, DomainError for non-integral coefficients.
[[nodiscard]] std::vector<std::int64_t> psi_class(const GroupAlgebraElement& mu, int M);

// Structure of I_N / I_N^2 computed as a quotient of lattices in the basis
// {d_g - d_0 : g != 0} of the integral augmentation ideal.
struct AugmentationQuotient {
    BigInt order;                 // |I/I^2|
    bool exponent_divides_pN;     // p^N kills I/I^2
    bool generated_by_phi_basis;  // the phi(e_i) generate I/I^2
    int lattice_rank;             // rank of the I^2 lattice; equals |G| - 1 when I/I^2 is finite
};
[[nodiscard]] AugmentationQuotient augmentation_quotient(const FiniteLevelGroup& group);
// I/I^2 is isomorphic to (Z/p^N)^r with the phi(e_i) as basis.
[[nodiscard]] bool phi_span_full_rank(const FiniteLevelGroup& group);

// Elements at levels 1..N_max with matching pushforwards.
class CompatibleFamily {
public:
    explicit CompatibleFamily(std::vector<GroupAlgebraElement> levels);
    [[nodiscard]] const std::vector<GroupAlgebraElement>& levels() const noexcept { return levels_; }
    [[nodiscard]] const GroupAlgebraElement& at_level(int k) const { return levels_.at(static_cast<std::size_t>(k - 1)); }

private:
    std::vector<GroupAlgebraElement> levels_;
};

struct BoundednessReport {
    bool bounded = false;
    std::optional<int> infimum_valuation;  // nullopt for the zero family
    std::vector<std::optional<int>> valuations;  // per level
};
// Minimal valuations are nonincreasing in the level; the family is reported
// bounded when they have stabilized over the top `window` levels.
[[nodiscard]] BoundednessReport is_bounded(const CompatibleFamily& family, int window = 2);

}  // namespace acl
