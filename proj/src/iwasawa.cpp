#include "acl/iwasawa.hpp"

#include "acl/errors.hpp"
#include "acl/padic.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>

namespace acl {

FiniteLevelGroup::FiniteLevelGroup(std::int64_t p, int r, int N) : p_(p), r_(r), N_(N), pN_(0), order_(1) {
    if (!is_prime(p)) throw DomainError("p must be prime");
    if (r < 1) throw DomainError("rank must be at least 1");
    if (N < 1) throw DomainError("level must be at least 1");
    pN_ = ipow(p, N);
    for (int i = 0; i < r; ++i) {
        if (order_ > (std::size_t{1} << 26) / static_cast<std::size_t>(pN_))
            throw DomainError("group too large to tabulate");
        order_ *= static_cast<std::size_t>(pN_);
    }
}

FiniteLevelGroup::Element FiniteLevelGroup::element(std::size_t index) const {
    Element g(static_cast<std::size_t>(r_));
    for (auto& x : g) {
        x = static_cast<std::int64_t>(index % static_cast<std::size_t>(pN_));
        index /= static_cast<std::size_t>(pN_);
    }
    return g;
}

std::size_t FiniteLevelGroup::index(const Element& g) const {
    if (g.size() != static_cast<std::size_t>(r_)) throw DomainError("element has the wrong rank");
    std::size_t out = 0;
    for (std::size_t i = g.size(); i-- > 0;) out = out * static_cast<std::size_t>(pN_) + static_cast<std::size_t>(mod(g[i], pN_));
    return out;
}

std::size_t FiniteLevelGroup::add(std::size_t i, std::size_t j) const {
    Element a = element(i), b = element(j);
    for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
    return index(a);
}

std::size_t FiniteLevelGroup::negate(std::size_t i) const {
    Element a = element(i);
    for (auto& x : a) x = -x;
    return index(a);
}

std::size_t FiniteLevelGroup::basis(int i) const {
    if (i < 0 || i >= r_) throw DomainError("basis index out of range");
    Element e(static_cast<std::size_t>(r_), 0);
    e[static_cast<std::size_t>(i)] = 1;
    return index(e);
}

std::size_t FiniteLevelGroup::reduce_index(std::size_t i, const FiniteLevelGroup& lower) const {
    if (lower.p_ != p_ || lower.r_ != r_ || lower.N_ > N_) throw MismatchError("not a quotient of this group");
    return lower.index(element(i));
}

GroupAlgebraElement::GroupAlgebraElement(FiniteLevelGroup group)
    : group_(std::move(group)), coeffs_(group_.order(), Rational(0)) {}

GroupAlgebraElement GroupAlgebraElement::dirac(const FiniteLevelGroup& group, std::size_t g) {
    GroupAlgebraElement out(group);
    out.set(g, 1);
    return out;
}

bool GroupAlgebraElement::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

bool GroupAlgebraElement::is_integral() const {
    const BigInt p = group_.p();
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [&](const Rational& c) { return denominator(c) % p != 0; });
}

std::optional<int> GroupAlgebraElement::min_valuation() const {
    std::optional<int> best;
    for (const auto& c : coeffs_) {
        if (c == 0) continue;
        const int v = valuation(c, group_.p());
        if (!best || v < *best) best = v;
    }
    return best;
}

GroupAlgebraElement GroupAlgebraElement::pushforward() const {
    if (group_.level() < 2) throw DomainError("no lower level to push forward to");
    const FiniteLevelGroup lower(group_.p(), group_.rank(), group_.level() - 1);
    GroupAlgebraElement out(lower);
    for (std::size_t g = 0; g < coeffs_.size(); ++g) {
        if (coeffs_[g] == 0) continue;
        const std::size_t h = group_.reduce_index(g, lower);
        out.coeffs_[h] += coeffs_[g];
    }
    return out;
}

namespace {

void require_same_group(const GroupAlgebraElement& x, const GroupAlgebraElement& y) {
    if (!(x.group() == y.group())) throw MismatchError("group algebra elements at different levels");
}

}  // namespace

GroupAlgebraElement operator+(const GroupAlgebraElement& x, const GroupAlgebraElement& y) {
    require_same_group(x, y);
    GroupAlgebraElement out = x;
    for (std::size_t g = 0; g < out.coeffs_.size(); ++g) out.coeffs_[g] += y.coeffs_[g];
    return out;
}

GroupAlgebraElement operator-(const GroupAlgebraElement& x, const GroupAlgebraElement& y) {
    require_same_group(x, y);
    GroupAlgebraElement out = x;
    for (std::size_t g = 0; g < out.coeffs_.size(); ++g) out.coeffs_[g] -= y.coeffs_[g];
    return out;
}

GroupAlgebraElement operator*(const Rational& k, const GroupAlgebraElement& x) {
    GroupAlgebraElement out = x;
    for (auto& c : out.coeffs_) c *= k;
    return out;
}

GroupAlgebraElement convolve(const GroupAlgebraElement& x, const GroupAlgebraElement& y) {
    require_same_group(x, y);
    const auto& G = x.group();
    GroupAlgebraElement out(G);
    std::vector<Rational> acc(G.order(), Rational(0));
    for (std::size_t h = 0; h < G.order(); ++h) {
        if (x[h] == 0) continue;
        for (std::size_t k = 0; k < G.order(); ++k) {
            if (y[k] == 0) continue;
            acc[G.add(h, k)] += x[h] * y[k];
        }
    }
    for (std::size_t g = 0; g < G.order(); ++g) out.set(g, std::move(acc[g]));
    return out;
}

Rational degree(const GroupAlgebraElement& mu) {
    return std::accumulate(mu.coefficients().begin(), mu.coefficients().end(), Rational(0));
}

Rational integrate(const GroupAlgebraElement& mu, const std::function<Rational(const FiniteLevelGroup::Element&)>& f) {
    Rational sum = 0;
    for (std::size_t g = 0; g < mu.group().order(); ++g)
        if (mu[g] != 0) sum += mu[g] * f(mu.group().element(g));
    return sum;
}

GroupAlgebraElement phi_map(const FiniteLevelGroup& group, std::size_t g) {
    return GroupAlgebraElement::dirac(group, g) - GroupAlgebraElement::dirac(group, 0);
}

std::vector<std::int64_t> psi_class(const GroupAlgebraElement& mu, int M) {
    if (degree(mu) != 0) throw NotInAugmentationIdeal("measure has nonzero degree " + to_string(degree(mu)));
    if (!mu.is_integral()) throw DomainError("psi_class needs p-integral coefficients");
    const auto& G = mu.group();
    const std::int64_t modulus = ipow(G.p(), std::min(G.level(), M));
    std::vector<std::int64_t> out;
    for (int i = 0; i < G.rank(); ++i) {
        const Rational value =
            integrate(mu, [i](const FiniteLevelGroup::Element& g) { return Rational(g[static_cast<std::size_t>(i)]); });
        out.push_back(residue(value, modulus));
    }
    return out;
}

namespace {

// Row-style Hermite basis of a sublattice of Z^n, built by insertion. Once the
// lattice has full rank its determinant D satisfies D Z^n within the lattice,
// and entries are kept reduced mod D.
class HermiteLattice {
public:
    using Row = std::vector<BigInt>;

    explicit HermiteLattice(std::size_t n) : n_(n), rows_(n) {}

    void insert(const std::vector<std::int64_t>& input) {
        Row v(input.begin(), input.end());
        for (std::size_t j = 0; j < n_; ++j) {
            if (v[j] == 0) continue;
            auto& b = rows_[j];
            if (b.empty()) {
                if (v[j] < 0)
                    for (auto& x : v) x = -x;
                b = std::move(v);
                ++rank_;
                refresh();
                return;
            }
            // Extended gcd of the pivots: b <- x b + y v, v <- (v_j/g) b - (b_j/g) v.
            BigInt x0 = 1, y0 = 0, x1 = 0, y1 = 1, a = b[j], c = v[j];
            while (c != 0) {
                const BigInt q = a / c;
                std::tie(a, c) = std::pair{c, BigInt(a - q * c)};
                std::tie(x0, x1) = std::pair{x1, BigInt(x0 - q * x1)};
                std::tie(y0, y1) = std::pair{y1, BigInt(y0 - q * y1)};
            }
            if (a < 0) {
                a = -a;
                x0 = -x0;
                y0 = -y0;
            }
            const BigInt bj = b[j] / a, vj = v[j] / a;
            const bool pivot_changed = a != b[j];
            for (std::size_t k = j; k < n_; ++k) {
                BigInt nb = x0 * b[k] + y0 * v[k];
                v[k] = vj * b[k] - bj * v[k];
                b[k] = std::move(nb);
            }
            if (pivot_changed) refresh();
            reduce(b, j);
            reduce(v, j + 1);
        }
    }

    [[nodiscard]] bool contains(const std::vector<std::int64_t>& input) const {
        Row v(input.begin(), input.end());
        for (std::size_t j = 0; j < n_; ++j) {
            if (v[j] == 0) continue;
            const auto& b = rows_[j];
            if (b.empty() || v[j] % b[j] != 0) return false;
            const BigInt q = v[j] / b[j];
            for (std::size_t k = j; k < n_; ++k) v[k] -= q * b[k];
        }
        return true;
    }

    [[nodiscard]] int rank() const noexcept { return rank_; }
    [[nodiscard]] bool full_rank() const noexcept { return static_cast<std::size_t>(rank_) == n_; }
    [[nodiscard]] BigInt determinant() const {
        BigInt d = 1;
        for (std::size_t j = 0; j < n_; ++j) d *= rows_[j].empty() ? BigInt(0) : rows_[j][j];
        return d;
    }

private:
    void refresh() {
        if (!full_rank()) return;
        modulus_ = determinant();
        for (std::size_t j = 0; j < n_; ++j) reduce(rows_[j], j);
    }

    // Entries after the leading position may be changed by multiples of D.
    void reduce(Row& v, std::size_t lead) const {
        if (modulus_ == 0) return;
        for (std::size_t k = lead + 1; k < n_; ++k) {
            v[k] %= modulus_;
            if (v[k] < 0) v[k] += modulus_;
        }
    }

    std::size_t n_;
    std::vector<Row> rows_;
    int rank_ = 0;
    BigInt modulus_ = 0;
};

// Coordinates of sum c_g d_g (with sum c_g = 0) in the basis d_g - d_0, g != 0.
void add_coordinate(std::vector<std::int64_t>& v, std::size_t g, std::int64_t c) {
    if (g != 0) v[g - 1] += c;
}

}  // namespace

AugmentationQuotient augmentation_quotient(const FiniteLevelGroup& group) {
    const std::size_t n = group.order() - 1;
    HermiteLattice squares(n);
    auto insert_product = [&](std::size_t g, std::size_t h) {
        // (d_g - d_0)(d_h - d_0) = d_{g+h} - d_g - d_h + d_0
        std::vector<std::int64_t> v(n, 0);
        add_coordinate(v, group.add(g, h), 1);
        add_coordinate(v, g, -1);
        add_coordinate(v, h, -1);
        squares.insert(v);
    };
    // Products with the phi(e_i) first: they reach full rank with small
    // entries, after which everything is reduced modulo the determinant.
    for (int i = 0; i < group.rank(); ++i)
        for (std::size_t g = 1; g < group.order(); ++g) insert_product(g, group.basis(i));
    for (std::size_t g = 1; g < group.order(); ++g)
        for (std::size_t h = g; h < group.order(); ++h) insert_product(g, h);
    AugmentationQuotient out;
    out.lattice_rank = squares.rank();
    out.order = squares.full_rank() ? squares.determinant() : BigInt(0);
    out.exponent_divides_pN = true;
    for (std::size_t j = 0; j < n && out.exponent_divides_pN; ++j) {
        std::vector<std::int64_t> v(n, 0);
        v[j] = group.exponent();
        out.exponent_divides_pN = squares.contains(v);
    }
    HermiteLattice with_phi = squares;
    for (int i = 0; i < group.rank(); ++i) {
        std::vector<std::int64_t> v(n, 0);
        add_coordinate(v, group.basis(i), 1);
        with_phi.insert(v);
    }
    out.generated_by_phi_basis = with_phi.full_rank() && with_phi.determinant() == 1;
    return out;
}

bool phi_span_full_rank(const FiniteLevelGroup& group) {
    // Order p^{Nr}, exponent dividing p^N and r generators force (Z/p^N)^r with phi(e_i) a basis.
    const auto q = augmentation_quotient(group);
    BigInt expected = 1;
    for (int i = 0; i < group.rank(); ++i) expected *= group.exponent();
    return q.order == expected && q.exponent_divides_pN && q.generated_by_phi_basis;
}

CompatibleFamily::CompatibleFamily(std::vector<GroupAlgebraElement> levels) : levels_(std::move(levels)) {
    if (levels_.empty()) throw DomainError("empty family");
    for (std::size_t k = 0; k < levels_.size(); ++k) {
        const auto& G = levels_[k].group();
        if (G.level() != static_cast<int>(k) + 1) throw MismatchError("family levels must be 1, 2, ...");
        if (k > 0 && !(levels_[k].pushforward() == levels_[k - 1]))
            throw MismatchError("family is not compatible at level " + std::to_string(k + 1));
    }
}

BoundednessReport is_bounded(const CompatibleFamily& family, int window) {
    BoundednessReport out;
    for (const auto& mu : family.levels()) {
        out.valuations.push_back(mu.min_valuation());
        const auto v = out.valuations.back();
        if (v && (!out.infimum_valuation || *v < *out.infimum_valuation)) out.infimum_valuation = v;
    }
    const std::size_t n = out.valuations.size();
    const std::size_t w = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(window, 2)));
    out.bounded = true;
    for (std::size_t k = n - w + 1; k < n; ++k)
        if (out.valuations[k] != out.valuations[k - 1]) out.bounded = false;
    return out;
}

}  // namespace acl
