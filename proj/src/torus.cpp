#include "acl/torus.hpp"

#include "acl/cyclotomic.hpp"
#include "acl/errors.hpp"

#include <mutex>
#include <random>
#include <tuple>

namespace acl {

std::string to_string(TorusKind kind) {
    switch (kind) {
        case TorusKind::split: return "split";
        case TorusKind::inert: return "inert";
        case TorusKind::ramified: return "ramified";
    }
    return "?";
}

TorusKind parse_torus_kind(const std::string& text) {
    if (text == "split") return TorusKind::split;
    if (text == "inert") return TorusKind::inert;
    if (text == "ramified") return TorusKind::ramified;
    throw ConfigError("unknown torus kind '" + text + "'");
}

LocalTorusCase::LocalTorusCase(TorusKind kind, PrimeLocalField field, int n_T) : kind_(kind), field_(field), n_T_(n_T) {}

LocalRationalFunction LocalTorusCase::l_factor_eta() const {
    const auto q = field_.q();
    using P = LocalRationalFunction::Poly;
    switch (kind_) {
        case TorusKind::split: return {q, P::constant(1), P({GaussianRational(1), GaussianRational(-1)})};
        case TorusKind::inert: return {q, P::constant(1), P({GaussianRational(1), GaussianRational(1)})};
        case TorusKind::ramified: return LocalRationalFunction::constant(q, 1);
    }
    return {};
}

Rational LocalTorusCase::l_eta_at_one() const { return evaluate_at_s(l_factor_eta(), Rational(1)).exact().re(); }

Rational shell_volume(const LocalTorusCase& c, int n) {
    if (n < 0) throw DomainError("shell level must be nonnegative");
    if (n == 0) return 1;
    const Rational q = c.q();
    switch (c.kind()) {
        case TorusKind::split: return rational_pow(q, 1 - n) / (q - 1);
        case TorusKind::inert: return rational_pow(q, 1 - n) / (q + 1);
        case TorusKind::ramified: return rational_pow(q, -n);
    }
    return 0;
}

Rational shell_difference_volume(const LocalTorusCase& c, int n) { return shell_volume(c, n) - shell_volume(c, n + 1); }

// ---------------------------------------------------------------------------

TorusQuotient::TorusQuotient(TorusKind kind, std::int64_t p, int level)
    : kind_(kind), p_(p), level_(level), modulus_(ipow(p, level)) {
    if (level < 0) throw DomainError("negative quotient level");
    switch (kind) {
        case TorusKind::split:
            t_ = 1;
            d_ = 0;
            break;
        case TorusKind::inert:
            if (p == 2) {
                t_ = -1;
                d_ = -1;
            } else {
                t_ = 0;
                for (std::int64_t n = 2; n < p; ++n)
                    if (powmod(n, static_cast<std::uint64_t>((p - 1) / 2), p) == p - 1) {
                        d_ = n;
                        break;
                    }
            }
            break;
        case TorusKind::ramified:
            t_ = 0;
            d_ = p;
            break;
    }
    const std::int64_t M = modulus_;
    position_.assign(static_cast<std::size_t>(M + std::max<std::int64_t>(M / p, 1)), -1);
    auto unit_norm = [this](std::int64_t a, std::int64_t b) {
        std::int64_t n = mod(a * a + t_ * a * b - d_ * b * b, p_);
        return n != 0;
    };
    if (level == 0) {
        elems_.emplace_back(1, 0);
        position_[0] = 0;
        return;
    }
    for (std::int64_t b = 0; b < M; ++b) {
        if (!unit_norm(1, b)) continue;
        position_[static_cast<std::size_t>(b)] = static_cast<std::int64_t>(elems_.size());
        elems_.emplace_back(1, b);
    }
    for (std::int64_t a = 0; a < M; a += p) {
        if (!unit_norm(a, 1)) continue;
        position_[static_cast<std::size_t>(M + a / p)] = static_cast<std::int64_t>(elems_.size());
        elems_.emplace_back(a, 1);
    }
}

std::optional<std::size_t> TorusQuotient::lookup(std::int64_t a, std::int64_t b) const {
    if (level_ == 0) return 0;
    const std::int64_t M = modulus_;
    a = mod(a, M);
    b = mod(b, M);
    std::int64_t key = 0;
    if (a % p_ != 0) {
        key = mulmod(b, invmod(a, M), M);
    } else if (b % p_ != 0) {
        key = M + mulmod(a, invmod(b, M), M) / p_;
    } else {
        return std::nullopt;
    }
    auto pos = position_[static_cast<std::size_t>(key)];
    if (pos < 0) return std::nullopt;
    return static_cast<std::size_t>(pos);
}

std::size_t TorusQuotient::index_of(std::int64_t a, std::int64_t b) const {
    if (auto i = lookup(a, b)) return *i;
    throw DomainError("(" + std::to_string(a) + ", " + std::to_string(b) + ") is not a unit of O_K");
}

std::size_t TorusQuotient::multiply(std::size_t i, std::size_t j) const {
    if (level_ == 0) return 0;
    const std::int64_t M = modulus_;
    auto [a1, b1] = elems_[i];
    auto [a2, b2] = elems_[j];
    std::int64_t A = mod(mulmod(a1, a2, M) + mulmod(mod(d_, M), mulmod(b1, b2, M), M), M);
    std::int64_t B = mod(mulmod(a1, b2, M) + mulmod(a2, b1, M) + mulmod(mod(t_, M), mulmod(b1, b2, M), M), M);
    return index_of(A, B);
}

std::size_t TorusQuotient::inverse(std::size_t i) const {
    if (level_ == 0) return 0;
    auto [a, b] = elems_[i];
    return index_of(a + t_ * b, -b);
}

int TorusQuotient::shell_level(std::size_t i) const {
    auto [a, b] = elems_[i];
    if (a != 1) return 0;
    if (b == 0) return level_;
    return std::min(valuation_i64(b, p_), level_);
}

std::size_t TorusQuotient::reduce_index(std::size_t i, const TorusQuotient& lower) const {
    if (lower.level_ > level_ || lower.kind_ != kind_ || lower.p_ != p_)
        throw RefinementError("reduction target is not a coarser quotient of the same torus");
    auto [a, b] = elems_[i];
    return lower.index_of(a, b);
}

std::size_t TorusQuotient::split_index_of_unit(std::int64_t u) const {
    if (kind_ != TorusKind::split) throw DomainError("split coordinate on a nonsplit torus");
    return index_of(1, u - 1);
}

std::shared_ptr<const TorusQuotient> TorusQuotient::shared(TorusKind kind, std::int64_t p, int level) {
    static std::mutex mu;
    static std::map<std::tuple<int, std::int64_t, int>, std::shared_ptr<const TorusQuotient>> cache;
    std::lock_guard lock(mu);
    auto key = std::make_tuple(static_cast<int>(kind), p, level);
    auto& slot = cache[key];
    if (!slot) slot = std::make_shared<const TorusQuotient>(kind, p, level);
    return slot;
}

// ---------------------------------------------------------------------------

std::optional<CoefficientValue> TorusCharacter::default_uniformizer(const LocalTorusCase& c) {
    if (c.kind() == TorusKind::inert) return std::nullopt;
    return CoefficientValue(1);
}

namespace {

void check_uniformizer(const LocalTorusCase& c, const std::optional<CoefficientValue>& u) {
    if (c.kind() == TorusKind::inert && u) throw DomainError("inert tori carry no uniformizer value");
    if (c.kind() != TorusKind::inert && !u) throw DomainError("split and ramified characters need a uniformizer value");
    if (c.kind() == TorusKind::ramified && !(*u * *u).approx_equal(CoefficientValue(1)))
        throw DomainError("chi(p_K)^2 = chi(p) must be 1 on K^x/F^x");
    if (u && u->is_zero()) throw DomainError("character values are units");
}

}  // namespace

TorusCharacter TorusCharacter::symbolic(const LocalTorusCase& c, int n_chi, std::optional<CoefficientValue> u) {
    if (n_chi < 0) throw DomainError("conductor must be nonnegative");
    check_uniformizer(c, u);
    TorusCharacter chi;
    chi.kind_ = c.kind();
    chi.n_chi_ = n_chi;
    chi.uniformizer_ = std::move(u);
    return chi;
}

TorusCharacter TorusCharacter::construct(const LocalTorusCase& c, int n_chi, std::optional<CoefficientValue> u,
                                         std::uint64_t choice) {
    if (!u) u = default_uniformizer(c);
    TorusCharacter chi = symbolic(c, n_chi, u);
    if (n_chi == 0) return chi;
    c.field().require_prime_residue_field();
    auto Q = TorusQuotient::shared(c.kind(), c.field().p(), n_chi);
    const auto m = static_cast<std::int64_t>(Q->size());
    std::vector<std::int64_t> exps(Q->size(), -1);
    std::vector<std::size_t> members{Q->identity()};
    exps[Q->identity()] = 0;
    std::mt19937_64 rng(choice);
    bool made_nontrivial = false;

    auto adjoin = [&](std::size_t g, bool force_nontrivial) {
        if (exps[g] >= 0) return;
        std::int64_t r = 1;
        std::size_t h = g;
        while (exps[h] < 0) {
            h = Q->multiply(h, g);
            ++r;
        }
        const std::int64_t a = exps[h];
        if (a % r != 0) throw DomainError("character extension is inconsistent");
        const std::int64_t step = m / r;
        std::int64_t k = choice == 0 ? 0 : static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(r));
        if (force_nontrivial && r > 1 && mod(a / r + k * step, m) == 0) k = (k + 1) % r;
        const std::int64_t b = mod(a / r + k * step, m);
        if (force_nontrivial && b != 0) made_nontrivial = true;
        const std::size_t old = members.size();
        std::size_t power = g;
        for (std::int64_t j = 1; j < r; ++j) {
            for (std::size_t s = 0; s < old; ++s) {
                std::size_t e = Q->multiply(power, members[s]);
                exps[e] = mod(j * b + exps[members[s]], m);
                members.push_back(e);
            }
            power = Q->multiply(power, g);
        }
    };

    for (std::size_t i = 0; i < Q->size(); ++i)
        if (Q->shell_level(i) >= n_chi - 1) adjoin(i, !made_nontrivial);
    if (!made_nontrivial)
        throw DomainError("no character of conductor " + std::to_string(n_chi) + " exists on the " + to_string(c.kind()) +
                          " torus with q = " + std::to_string(c.q()));
    for (std::size_t i = 0; i < Q->size(); ++i) adjoin(i, false);

    chi.quotient_ = std::move(Q);
    chi.order_ = m;
    chi.exponents_ = std::move(exps);
    return chi;
}

TorusCharacter TorusCharacter::from_table(const LocalTorusCase& c, int level, std::int64_t order,
                                          std::vector<std::int64_t> exponents, std::optional<CoefficientValue> u) {
    c.field().require_prime_residue_field();
    if (!u) u = default_uniformizer(c);
    auto Q = TorusQuotient::shared(c.kind(), c.field().p(), level);
    if (exponents.size() != Q->size()) throw DomainError("character table has the wrong size");
    if (order < 1) throw DomainError("character order must be positive");
    for (auto& e : exponents) e = mod(e, order);
    TorusCharacter chi = symbolic(c, 0, u);
    chi.quotient_ = std::move(Q);
    chi.order_ = order;
    chi.exponents_ = std::move(exponents);
    if (!chi.is_homomorphism()) throw DomainError("character table is not a homomorphism");
    chi.n_chi_ = chi.detect_conductor();
    if (chi.n_chi_ < level) {
        // Store the table at its own conductor so reductions stay cheap.
        auto lower = TorusQuotient::shared(c.kind(), c.field().p(), chi.n_chi_);
        std::vector<std::int64_t> reduced(lower->size(), 0);
        for (std::size_t i = 0; i < chi.quotient_->size(); ++i)
            reduced[chi.quotient_->reduce_index(i, *lower)] = chi.exponents_[i];
        chi.quotient_ = std::move(lower);
        chi.exponents_ = std::move(reduced);
    }
    return chi;
}

const TorusQuotient& TorusCharacter::quotient() const {
    if (!quotient_) throw EnumerationError("character has no explicit table");
    return *quotient_;
}

std::int64_t TorusCharacter::exponent_at(const TorusQuotient& q, std::size_t index) const {
    if (n_chi_ == 0) return 0;
    if (q.level() < n_chi_) throw RefinementError("quotient level below the character conductor");
    const auto& own = quotient();
    if (q.level() == own.level()) return exponents_[index];
    return exponents_[q.reduce_index(index, own)];
}

CoefficientValue TorusCharacter::value_at(const TorusQuotient& q, std::size_t index) const {
    return root_of_unity(exponent_at(q, index), order_);
}

TorusCharacter TorusCharacter::inverse() const {
    TorusCharacter inv = *this;
    if (inv.uniformizer_) inv.uniformizer_ = inv.uniformizer_->inverse();
    for (auto& e : inv.exponents_) e = mod(-e, order_);
    return inv;
}

bool TorusCharacter::is_homomorphism() const {
    if (!quotient_) return true;
    const auto& Q = *quotient_;
    for (std::size_t i = 0; i < Q.size(); ++i)
        for (std::size_t j = i; j < Q.size(); ++j)
            if (mod(exponents_[i] + exponents_[j] - exponents_[Q.multiply(i, j)], order_) != 0) return false;
    return true;
}

int TorusCharacter::detect_conductor() const {
    if (!quotient_) return n_chi_;
    const auto& Q = *quotient_;
    // chi is trivial on H_n iff every element of shell level >= n maps to exponent 0.
    for (int n = 0; n <= Q.level(); ++n) {
        bool trivial = true;
        for (std::size_t i = 0; i < Q.size() && trivial; ++i)
            if (Q.shell_level(i) >= n && exponents_[i] != 0) trivial = false;
        if (trivial) return n;
    }
    return Q.level();
}

// ---------------------------------------------------------------------------

CoefficientValue shell_character_integral(const LocalTorusCase& c, const TorusCharacter& chi, int n) {
    if (n < 0) throw DomainError("shell level must be nonnegative");
    if (n < chi.conductor()) return 0;
    return shell_volume(c, n);
}

CoefficientValue shell_difference_integral(const LocalTorusCase& c, const TorusCharacter& chi, int n) {
    if (n < 0) throw DomainError("shell level must be nonnegative");
    const int nc = chi.conductor();
    if (n < nc - 1) return 0;
    if (n == nc - 1) return -shell_volume(c, nc);
    return shell_difference_volume(c, n);
}

CoefficientValue brute_shell_character_integral(const LocalTorusCase& c, const TorusCharacter& chi, int n, int N) {
    c.field().require_prime_residue_field();
    if (n < 0) throw DomainError("shell level must be nonnegative");
    const int nc = chi.conductor();
    if (N < nc) throw DomainError("truncation level below the conductor");
    const int L = std::max({N, nc, n});
    const std::int64_t p = c.field().p();
    const std::int64_t m = chi.is_unramified() ? 1 : chi.order();
    std::vector<BigInt> counts(static_cast<std::size_t>(m), 0);

    if (n == 0) {
        auto Q = TorusQuotient::shared(c.kind(), p, L);
        for (std::size_t i = 0; i < Q->size(); ++i) counts[static_cast<std::size_t>(chi.exponent_at(*Q, i))] += 1;
    } else if (n >= nc) {
        // Every coset of H_L inside H_n maps to the identity of H_0/H_{n_chi}.
        counts[0] = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(L - n));
    } else {
        // Cosets (1, p^n j) for j mod p^{L-n}; the image mod p^{n_chi} depends on j mod p^{n_chi - n}.
        const auto& own = chi.quotient();
        const std::int64_t period = ipow(p, nc - n);
        const BigInt multiplicity = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(L - nc));
        const std::int64_t pn = ipow(p, n);
        for (std::int64_t j = 0; j < period; ++j) {
            std::size_t idx = own.index_of(1, pn * j);
            counts[static_cast<std::size_t>(chi.exponent(idx))] += multiplicity;
        }
    }
    return root_of_unity_sum(counts, m) * CoefficientValue(shell_volume(c, L));
}

// ---------------------------------------------------------------------------

int normalize_valuation_index(TorusKind kind, int m) {
    switch (kind) {
        case TorusKind::split: return m;
        case TorusKind::inert: return 0;
        case TorusKind::ramified: return ((m % 2) + 2) % 2;
    }
    return m;
}

std::pair<int, int> theta_exponent(const LocalTorusCase& c, int alpha, const TorusShellPoint& t) {
    if (alpha != 1 && alpha != -1) throw DomainError("theta is defined for alpha = +1 or -1");
    const int nT = c.n_T();
    const int m = normalize_valuation_index(c.kind(), t.m);
    if (m == 0 && t.shell == TorusShellPoint::kIdentityShell)
        throw ExcludedPointError("theta_T is undefined at the identity of the torus");
    if (m == 0) return {1, 2 * nT + 2 * t.shell};
    const int am = m < 0 ? -m : m;
    const int sign = (alpha == -1 && am % 2 == 1) ? -1 : 1;
    return {sign, 2 * nT - am};
}

LocalRationalFunction theta(const LocalTorusCase& c, int alpha, const TorusShellPoint& t) {
    auto [sign, e] = theta_exponent(c, alpha, t);
    return LocalRationalFunction::monomial(c.q(), GaussianRational(sign * rational_pow(Rational(c.q()), e)), e);
}

CoefficientValue theta_at(const LocalTorusCase& c, int alpha, const TorusShellPoint& t, const Rational& s) {
    auto [sign, e] = theta_exponent(c, alpha, t);
    // (q X)^e with X = q^{-s}: q^{e(1-s)}.
    const Rational expo = Rational(e) * (1 - s);
    if (denominator(expo) == 1)
        return GaussianRational(sign * rational_pow(Rational(c.q()), numerator(expo).convert_to<long>()));
    return std::complex<double>(sign * std::pow(static_cast<double>(c.q()), to_double(expo)), 0.0);
}

TorusShellPoint split_point(const Rational& x, std::int64_t p) {
    const int m = valuation(x, p);
    if (m != 0) return {m, 0};
    if (x == 1) return {0, TorusShellPoint::kIdentityShell};
    return {0, valuation(x - 1, p)};
}

// ---------------------------------------------------------------------------

ShellFunction::ShellFunction(LocalTorusCase c, int level)
    : case_(std::move(c)), level_(level), quotient_(TorusQuotient::shared(case_.kind(), case_.field().p(), level)) {
    case_.field().require_prime_residue_field();
}

CoefficientValue ShellFunction::at(int m, std::size_t unit) const {
    auto it = entries_.find(normalize_valuation_index(case_.kind(), m));
    if (it == entries_.end()) return 0;
    return it->second.at(unit);
}

void ShellFunction::set(int m, std::size_t unit, CoefficientValue v) {
    auto& row = entries_[normalize_valuation_index(case_.kind(), m)];
    if (row.empty()) row.assign(quotient_->size(), CoefficientValue(0));
    row.at(unit) = std::move(v);
}

ShellFunction ShellFunction::indicator_H(const LocalTorusCase& c, int level, int n) {
    if (n > level) throw RefinementError("indicator of H_n needs level at least n");
    ShellFunction f(c, level);
    for (std::size_t i = 0; i < f.quotient().size(); ++i)
        if (f.quotient().shell_level(i) >= n) f.set(0, i, 1);
    return f;
}

ShellFunction ShellFunction::refine(int new_level) const {
    if (new_level < level_) throw RefinementError("refinement cannot lower the level");
    ShellFunction g(case_, new_level);
    for (const auto& [m, row] : entries_) {
        auto& out = g.entries_[m];
        out.assign(g.quotient_->size(), CoefficientValue(0));
        for (std::size_t j = 0; j < out.size(); ++j) out[j] = row[g.quotient_->reduce_index(j, *quotient_)];
    }
    return g;
}

ShellFunction ShellFunction::translate(const TorusElement& t) const {
    ShellFunction g(case_, level_);
    for (const auto& [m, row] : entries_) {
        const int target = normalize_valuation_index(case_.kind(), m + t.m);
        auto& out = g.entries_[target];
        out.assign(quotient_->size(), CoefficientValue(0));
        // g(p^target * y) = f(p^{target - t.m} * y * u_t^{-1}), so g(p^{m + t.m} (x u_t)) = f(p^m x).
        for (std::size_t j = 0; j < out.size(); ++j) out[quotient_->multiply(j, t.unit)] = row[j];
    }
    return g;
}

CoefficientValue ShellFunction::integrate(const TorusCharacter& chi) const {
    if (chi.conductor() > level_) return refine(chi.conductor()).integrate(chi);
    CoefficientValue total = 0;
    const CoefficientValue cell = shell_volume(case_, level_);
    for (const auto& [m, row] : entries_) {
        CoefficientValue sum = 0;
        for (std::size_t j = 0; j < row.size(); ++j)
            if (!row[j].is_zero()) sum = sum + row[j] * chi.value_at(*quotient_, j);
        if (sum.is_zero()) continue;
        CoefficientValue unif = 1;
        if (m != 0) {
            const auto& u = chi.uniformizer_value();
            if (!u) throw DomainError("character lacks a uniformizer value");
            unif = 1;
            const CoefficientValue base = m > 0 ? *u : u->inverse();
            for (int k = 0; k < (m > 0 ? m : -m); ++k) unif = unif * base;
        }
        total = total + unif * sum * cell;
    }
    return total;
}

CoefficientValue ShellFunction::integrate() const {
    return integrate(TorusCharacter::trivial(case_));
}

CoefficientValue ShellFunction::at_split_coordinate(const Rational& x) const {
    if (case_.kind() != TorusKind::split) throw DomainError("split coordinate on a nonsplit torus");
    const std::int64_t p = case_.field().p();
    const int m = valuation(x, p);
    if (level_ == 0) return at(m, 0);
    const Rational u = x / rational_pow(Rational(p), m);
    return at(m, quotient_->split_index_of_unit(residue(u, quotient_->modulus())));
}

}  // namespace acl
