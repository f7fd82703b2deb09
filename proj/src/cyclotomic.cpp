#include "acl/cyclotomic.hpp"

#include "acl/errors.hpp"
#include "acl/padic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>

namespace acl {
namespace {

using IntPoly = std::vector<BigInt>;  // low to high

IntPoly exact_divide(IntPoly num, const IntPoly& den) {
    // den is monic.
    const std::size_t dn = den.size() - 1;
    IntPoly quo(num.size() - dn, 0);
    for (std::size_t i = num.size(); i-- > dn;) {
        BigInt c = num[i];
        quo[i - dn] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    }
    return quo;
}

const IntPoly& cyclotomic_polynomial(std::int64_t m) {
    static std::mutex mu;
    static std::map<std::int64_t, IntPoly> cache;
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(m); it != cache.end()) return it->second;
    }
    IntPoly poly(static_cast<std::size_t>(m) + 1, 0);
    poly[0] = -1;
    poly[static_cast<std::size_t>(m)] = 1;
    for (std::int64_t d = 1; d < m; ++d)
        if (m % d == 0) poly = exact_divide(poly, cyclotomic_polynomial(d));
    std::lock_guard lock(mu);
    return cache.emplace(m, std::move(poly)).first->second;
}

}  // namespace

CoefficientValue root_of_unity(std::int64_t e, std::int64_t m) {
    e = mod(e, m);
    if ((4 * e) % m == 0) {
        switch ((4 * e) / m) {
            case 0: return GaussianRational(1);
            case 1: return GaussianRational(0, 1);
            case 2: return GaussianRational(-1);
            default: return GaussianRational(0, -1);
        }
    }
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(m);
    return std::complex<double>(std::cos(angle), std::sin(angle));
}

CoefficientValue root_of_unity_sum(const std::vector<BigInt>& counts, std::int64_t m) {
    if (static_cast<std::int64_t>(counts.size()) != m) throw DomainError("root_of_unity_sum: size mismatch");
    // Shrink m to the order actually used by the nonzero exponents.
    std::int64_t g = m;
    for (std::int64_t e = 0; e < m; ++e)
        if (counts[static_cast<std::size_t>(e)] != 0) g = std::gcd(g, e);
    const std::int64_t order = m / g;
    IntPoly r(static_cast<std::size_t>(order), 0);
    for (std::int64_t e = 0; e < m; ++e)
        if (counts[static_cast<std::size_t>(e)] != 0) r[static_cast<std::size_t>(e / g)] += counts[static_cast<std::size_t>(e)];

    const IntPoly& phi = cyclotomic_polynomial(order);
    const std::size_t dphi = phi.size() - 1;
    std::vector<std::pair<std::size_t, BigInt>> terms;
    for (std::size_t j = 0; j < dphi; ++j)
        if (phi[j] != 0) terms.emplace_back(j, phi[j]);
    for (std::size_t i = r.size(); i-- > dphi;) {
        BigInt c = r[i];
        if (c == 0) continue;
        r[i] = 0;
        for (const auto& [j, a] : terms) r[i - dphi + j] -= c * a;
    }
    r.resize(dphi);
    std::size_t top = 0;
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i] != 0) top = i + 1;
    if (top <= 1) return GaussianRational(Rational(top == 0 ? BigInt(0) : r[0]));
    if (order == 4) return GaussianRational(Rational(r[0]), Rational(r[1]));
    std::complex<double> z{0.0, 0.0};
    for (std::size_t i = 0; i < top; ++i)
        if (r[i] != 0) z += r[i].convert_to<double>() * root_of_unity(static_cast<std::int64_t>(i), order).to_complex();
    return z;
}

}  // namespace acl
