#include "acl/discrete_series.hpp"

#include "acl/errors.hpp"

#include <numeric>
#include <string>

namespace acl {

TruncatedGOModule::TruncatedGOModule(int K_max, std::vector<Rational> lambda) : K_(K_max), lambda_(std::move(lambda)) {
    if (K_max < 1) throw DomainError("K_max must be at least 1");
    if (lambda_.size() != static_cast<std::size_t>(2 * K_max + 1)) throw DomainError("lambda needs 2 K_max + 1 values");
    for (const auto& l : lambda_)
        if (l == 0) throw DomainError("lambda must be nonzero");
}

TruncatedGOModule TruncatedGOModule::constant(int K_max, int sign) {
    if (sign != 1 && sign != -1) throw DomainError("constant lambda must be +1 or -1");
    return {K_max, std::vector<Rational>(static_cast<std::size_t>(2 * K_max + 1), Rational(sign))};
}

const Rational& TruncatedGOModule::lambda(int k) const {
    if (k < -K_ || k > K_) throw TruncationError("index " + std::to_string(k) + " outside the truncation");
    return lambda_[static_cast<std::size_t>(k + K_)];
}

void TruncatedGOModule::require_interior(int k) const {
    if (k <= -K_ || k >= K_) throw TruncationError("index " + std::to_string(k) + " is on the truncation boundary");
}

TruncatedGOModule::Term TruncatedGOModule::apply_R(int k) const {
    require_interior(k);
    return {Rational(1 + k), k + 1};
}

TruncatedGOModule::Term TruncatedGOModule::apply_L(int k) const {
    require_interior(k);
    return {Rational(1 - k), k - 1};
}

TruncatedGOModule::Term TruncatedGOModule::apply_omega(int k) const { return {lambda(k), -k}; }

Rational projection_over_pi(int k) {
    // int_0^pi e^{2ik theta} d theta = pi for k = 0 and (e^{2ik pi} - 1)/(2ik) = 0 otherwise.
    return k == 0 ? Rational(1) : Rational(0);
}

namespace {

using Term = TruncatedGOModule::Term;

// Zero terms compare equal whatever their index.
bool same(const Term& a, const Term& b) {
    if (a.coefficient == 0 && b.coefficient == 0) return true;
    return a == b;
}

Term then(const Term& first, const Term& second) { return {first.coefficient * second.coefficient, second.index}; }

}  // namespace

OmegaReport verify_omega_structure(const TruncatedGOModule& m) {
    const int K = m.K_max();
    OmegaReport out{true, true};
    for (int k = -K; k <= K; ++k) {
        const Term twice = then(m.apply_omega(k), m.apply_omega(-k));
        if (!(twice == Term{Rational(1), k})) out.involution = false;
    }
    // omega R f_{2k} = L omega f_{2k} wherever both sides stay inside the truncation.
    for (int k = -K + 1; k <= K - 1; ++k) {
        const Term lhs = then(m.apply_R(k), m.apply_omega(k + 1));
        const Term rhs = then(m.apply_omega(k), m.apply_L(-k));
        if (!same(lhs, rhs)) out.intertwines = false;
    }
    return out;
}

bool verify_omega_structure(int K_max, int lambda_sign) {
    return verify_omega_structure(TruncatedGOModule::constant(K_max, lambda_sign)).valid();
}

OmegaSolutionSet solve_omega_structures(int K_max) {
    if (K_max < 2) throw DomainError("K_max must be at least 2");
    const int n = 2 * K_max + 1;
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
        return x;
    };
    auto idx = [K_max](int k) { return k + K_max; };
    // omega R f_{2k} = (1+k) lambda(k+1) f_{-2k-2} and L omega f_{2k} = (1+k) lambda(k) f_{-2k-2}.
    const auto probe = TruncatedGOModule::constant(K_max, 1);
    for (int k = -K_max + 1; k <= K_max - 1; ++k)
        if (probe.apply_R(k).coefficient != 0) parent[static_cast<std::size_t>(find(idx(k)))] = find(idx(k + 1));

    // Involution constraints x_{c(k)} x_{c(-k)} = 1 between classes. On each
    // connected component the values are r and 1/r by parity; an odd cycle
    // (a self-loop included) forces r = 1/r, i.e. r = +1 or -1, and otherwise
    // r is a free parameter in C^x.
    std::vector<std::vector<int>> edges(static_cast<std::size_t>(n));
    for (int k = 0; k <= K_max; ++k) {
        const int a = find(idx(k)), b = find(idx(-k));
        edges[static_cast<std::size_t>(a)].push_back(b);
        edges[static_cast<std::size_t>(b)].push_back(a);
    }
    std::vector<int> parity(static_cast<std::size_t>(n), -1), component(static_cast<std::size_t>(n), -1);
    std::vector<bool> odd;
    for (int c = 0; c < n; ++c) {
        if (find(c) != c || parity[static_cast<std::size_t>(c)] != -1) continue;
        const int id = static_cast<int>(odd.size());
        odd.push_back(false);
        std::vector<int> stack{c};
        parity[static_cast<std::size_t>(c)] = 0;
        component[static_cast<std::size_t>(c)] = id;
        while (!stack.empty()) {
            const int x = stack.back();
            stack.pop_back();
            for (int y : edges[static_cast<std::size_t>(x)]) {
                const int want = 1 - parity[static_cast<std::size_t>(x)];
                if (parity[static_cast<std::size_t>(y)] == -1) {
                    parity[static_cast<std::size_t>(y)] = want;
                    component[static_cast<std::size_t>(y)] = id;
                    stack.push_back(y);
                } else if (parity[static_cast<std::size_t>(y)] != want) {
                    odd[static_cast<std::size_t>(id)] = true;
                }
            }
        }
    }
    OmegaSolutionSet out;
    for (bool o : odd)
        if (!o) ++out.free_parameters;
    if (out.free_parameters > 0) return out;
    // Each component takes r = +1 or -1, and then every class has value r.
    const std::size_t choices = std::size_t{1} << odd.size();
    for (std::size_t mask = 0; mask < choices; ++mask) {
        std::vector<Rational> lambda(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const int id = component[static_cast<std::size_t>(find(i))];
            lambda[static_cast<std::size_t>(i)] = (mask >> id) & 1 ? -1 : 1;
        }
        out.solutions.push_back(std::move(lambda));
    }
    return out;
}

ExtensionReport verify_extension_structure(int K_max) {
    if (K_max < 3) throw DomainError("K_max must be at least 3");
    const auto plus = TruncatedGOModule::constant(K_max, 1);
    const auto minus = TruncatedGOModule::constant(K_max, -1);
    ExtensionReport out{true, true, true, true, true};
    auto sign = [](int k) { return Rational(k > 0 ? 1 : (k < 0 ? -1 : 0)); };

    for (int k = -K_max; k <= K_max; ++k) {
        const Rational pr = projection_over_pi(k);
        if ((k == 0) == (pr == 0)) out.projection_kernel = false;
        // pr^{+-}(omega f) = +-pr(f)
        for (const auto* m : {&plus, &minus}) {
            const Term w = m->apply_omega(k);
            if (w.coefficient * projection_over_pi(w.index) != m->lambda(0) * pr) out.projection_equivariant = false;
        }
        // omega kappa(t) f_{2k} = e^{2kit} lambda f_{-2k} and kappa(-t) omega f_{2k} = lambda e^{-2(-k)it} f_{-2k}:
        // the weights k and -(-k) agree.
        if (plus.apply_omega(k).index != -k) out.rotation_compatible = false;
    }
    for (int k = -K_max + 1; k <= K_max - 1; ++k) {
        const Term r = plus.apply_R(k), l = plus.apply_L(k);
        if (r.coefficient * projection_over_pi(r.index) != 0 || l.coefficient * projection_over_pi(l.index) != 0)
            out.projection_equivariant = false;
        if (r.index != k + 1 || l.index != k - 1) out.rotation_compatible = false;
        if (k == 0) continue;
        // Kernel stability: the images of f_{2k}, k != 0, have no f_0 component.
        if ((r.index == 0 && r.coefficient != 0) || (l.index == 0 && l.coefficient != 0)) out.kernel_stable = false;
        // Sign twist S: S R = R S, S L = L S, S omega^+ = omega^- S.
        if (r.coefficient != 0 && sign(r.index) != sign(k)) out.sign_twist_intertwines = false;
        if (l.coefficient != 0 && sign(l.index) != sign(k)) out.sign_twist_intertwines = false;
    }
    for (int k = -K_max; k <= K_max; ++k) {
        if (k == 0) continue;
        if (plus.apply_omega(k).index == 0) out.kernel_stable = false;
        const Term lhs{sign(-k) * plus.lambda(k), -k};
        const Term rhs{sign(k) * minus.lambda(k), -k};
        if (!same(lhs, rhs)) out.sign_twist_intertwines = false;
    }
    return out;
}

}  // namespace acl
