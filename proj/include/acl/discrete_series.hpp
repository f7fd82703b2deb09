#pragma once

#include "acl/numbers.hpp"

#include <vector>

namespace acl {

// The truncation of I = sum_k C f_{2k} to |k| <= K_max with the Maass
// operators R, L and an omega structure omega f_{2k} = lambda(k) f_{-2k}.
class TruncatedGOModule {
public:
    struct Term {
        Rational coefficient;
        int index;
        friend bool operator==(const Term&, const Term&) = default;
    };

    // lambda is indexed by k + K_max.
    TruncatedGOModule(int K_max, std::vector<Rational> lambda);
    static TruncatedGOModule constant(int K_max, int sign);

    [[nodiscard]] int K_max() const noexcept { return K_; }
    [[nodiscard]] const Rational& lambda(int k) const;

    // R f_{2k} = (1 + k) f_{2k+2} and L f_{2k} = (1 - k) f_{2k-2}; TruncationError unless |k| < K_max.
    [[nodiscard]] Term apply_R(int k) const;
    [[nodiscard]] Term apply_L(int k) const;
    [[nodiscard]] Term apply_omega(int k) const;

private:
    void require_interior(int k) const;
    int K_;
    std::vector<Rational> lambda_;
};

// f_{2k} -> integral of f_{2k}(kappa(theta)) over [0, pi], divided by pi.
[[nodiscard]] Rational projection_over_pi(int k);

struct OmegaReport {
    bool involution = false;   // lambda(k) lambda(-k) = 1
    bool intertwines = false;  // omega R = L omega on interior indices
    [[nodiscard]] bool valid() const { return involution && intertwines; }
};
[[nodiscard]] OmegaReport verify_omega_structure(const TruncatedGOModule& module);
[[nodiscard]] bool verify_omega_structure(int K_max, int lambda_sign);

// All omega structures with values in C^x, solved from the relations
// themselves: the equalities forced by omega R = L omega, then the
// involution constraints.
struct OmegaSolutionSet {
    int free_parameters = 0;
    std::vector<std::vector<Rational>> solutions;  // when free_parameters == 0
};
[[nodiscard]] OmegaSolutionSet solve_omega_structures(int K_max);

struct ExtensionReport {
    bool projection_kernel = false;       // pr(f_{2k}) = 0 exactly for k != 0
    bool projection_equivariant = false;  // pr R = pr L = 0, pr omega^{+-} = +-pr
    bool kernel_stable = false;           // span{f_{2k} : k != 0} is R, L and omega stable
    bool sign_twist_intertwines = false;  // f_{2k} -> sign(k) f_{2k} maps omega^+ to omega^- and commutes with R, L
    bool rotation_compatible = false;     // omega kappa(t) = kappa(-t) omega; R, L shift the weight by +-1
    [[nodiscard]] bool valid() const {
        return projection_kernel && projection_equivariant && kernel_stable && sign_twist_intertwines &&
               rotation_compatible;
    }
};
[[nodiscard]] ExtensionReport verify_extension_structure(int K_max);

}  // namespace acl
