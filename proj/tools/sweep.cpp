#include "sweep.hpp"

#include "acl/errors.hpp"

#include <cmath>
#include <set>

namespace acl::tools {

std::string SweepPoint::key() const {
    return "q=" + std::to_string(q) + ",kind=" + to_string(kind) + ",n_T=" + std::to_string(n_T) +
           ",alpha=" + std::to_string(alpha) + ",n_chi=" + std::to_string(n_chi) + ",u=" + std::to_string(uniformizer) +
           ",choice=" + std::to_string(choice);
}

namespace {

bool same_character(const TorusCharacter& a, const TorusCharacter& b) {
    if (a.conductor() != b.conductor()) return false;
    if (a.has_table() != b.has_table()) return false;
    if (!a.has_table()) return true;
    const auto& Q = a.quotient();
    if (Q.size() != b.quotient().size()) return false;
    for (std::size_t i = 0; i < Q.size(); ++i)
        if (!a.value_at(Q, i).approx_equal(b.value_at(Q, i))) return false;
    return true;
}

}  // namespace

std::vector<SweepCase> expand(const SweepGrid& grid) {
    std::set<SweepPoint> points;
    for (auto q : grid.qs)
        for (auto kind : grid.kinds)
            for (int nT : grid.n_T)
                for (int alpha : grid.alphas)
                    for (int nchi : grid.n_chi)
                        for (int u : grid.uniformizers)
                            for (auto choice : grid.choices)
                                points.insert({q, kind, nT, alpha, nchi, kind == TorusKind::inert ? 0 : u, choice});

    std::vector<SweepCase> out;
    for (const auto& pt : points) {
        if (pt.alpha != 1 && pt.alpha != -1) throw ConfigError("alpha must be +1 or -1");
        if (pt.n_T < 0 || pt.n_chi < 0) throw ConfigError("n_T and n_chi must be nonnegative");
        const LocalTorusCase c(pt.kind, field_from_q(pt.q), pt.n_T);
        std::optional<CoefficientValue> unif;
        if (pt.kind != TorusKind::inert) unif = CoefficientValue(pt.uniformizer);
        std::optional<TorusCharacter> chi;
        try {
            chi = TorusCharacter::construct(c, pt.n_chi, unif, pt.choice);
        } catch (const DomainError&) {
            continue;
        }
        // A later choice that reproduces the character of an earlier one adds nothing.
        bool duplicate = false;
        for (auto it = out.rbegin(); it != out.rend(); ++it) {
            const auto& prev = it->point;
            if (prev.q != pt.q || prev.kind != pt.kind || prev.n_T != pt.n_T || prev.alpha != pt.alpha ||
                prev.n_chi != pt.n_chi || prev.uniformizer != pt.uniformizer)
                break;
            if (same_character(it->chi, *chi)) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) out.push_back({pt, c, std::move(*chi)});
    }
    return out;
}

CoefficientValue spherical_alpha(std::int64_t q) {
    for (std::int64_t a = 0; a * a <= q; ++a)
        for (std::int64_t b = 1; a * a + b * b <= q; ++b)
            if (a * a + b * b == q) return CoefficientValue(GaussianRational(Rational(a), Rational(b)));
    return CoefficientValue(std::complex<double>(0, std::sqrt(static_cast<double>(q))));
}

}  // namespace acl::tools
