#include "acl/principal_series.hpp"

#include "acl/errors.hpp"
#include "acl/local_integrals.hpp"

#include <algorithm>
#include <cmath>

namespace acl {

namespace {

CoefficientValue cpow(const CoefficientValue& base, long e) {
    CoefficientValue r = 1;
    const CoefficientValue b = e >= 0 ? base : base.inverse();
    for (long i = 0; i < (e >= 0 ? e : -e); ++i) r = r * b;
    return r;
}

// q^{s e}: exact when s e is an integer.
CoefficientValue q_power(std::int64_t q, const Rational& x) {
    if (denominator(x) == 1) return rational_pow(Rational(q), numerator(x).convert_to<long>());
    return std::complex<double>(std::pow(static_cast<double>(q), to_double(x)), 0.0);
}

bool integral(const Rational& x, std::int64_t p) { return x == 0 || valuation(x, p) >= 0; }

}  // namespace

GL2Element::GL2Element(Rational a, Rational b, Rational c, Rational d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    if (det() == 0) throw DomainError("GL2 element must be invertible");
}

GL2Element GL2Element::inverse() const {
    const Rational D = det();
    return {d_ / D, -b_ / D, -c_ / D, a_ / D};
}

bool GL2Element::is_integral_unit(std::int64_t p) const {
    return integral(a_, p) && integral(b_, p) && integral(c_, p) && integral(d_, p) && valuation(det(), p) == 0;
}

GL2Element operator*(const GL2Element& x, const GL2Element& y) {
    return {x.a_ * y.a_ + x.b_ * y.c_, x.a_ * y.b_ + x.b_ * y.d_, x.c_ * y.a_ + x.d_ * y.c_,
            x.c_ * y.b_ + x.d_ * y.d_};
}

IwasawaDecomposition iwasawa_decompose(const GL2Element& g, std::int64_t p) {
    if (g.is_integral_unit(p)) return {GL2Element::identity(), g};
    if (g.c() == 0) return {g, GL2Element::identity()};
    if (g.d() == 0 || valuation(g.c(), p) <= valuation(g.d(), p)) {
        const Rational r = g.d() / g.c();
        const GL2Element k(0, 1, 1, r);
        return {g * k.inverse(), k};
    }
    const GL2Element k(1, 0, g.c() / g.d(), 1);
    return {g * k.inverse(), k};
}

CoefficientValue mu_alpha(const GL2Element& b, const CoefficientValue& alpha, std::int64_t p) {
    if (!b.is_upper_triangular()) throw DomainError("mu_alpha needs an upper triangular matrix");
    return cpow(alpha, valuation(b.d() / b.a(), p));
}

int borel_exponent(const GL2Element& g, std::int64_t p) {
    const auto dec = iwasawa_decompose(g, p);
    return valuation(dec.b.d() / dec.b.a(), p);
}

// ---------------------------------------------------------------------------

P1Level::P1Level(std::int64_t p, int level) : p_(p), level_(level), modulus_(ipow(p, level)) {
    if (level < 1) throw DomainError("P^1 level must be at least 1");
}

P1Point P1Level::point(std::size_t i) const {
    const auto k = static_cast<std::int64_t>(i);
    if (k < modulus_) return {true, k};
    return {false, (k - modulus_) * p_};
}

std::size_t P1Level::index(const P1Point& pt) const {
    if (pt.finite) return static_cast<std::size_t>(mod(pt.coord, modulus_));
    const std::int64_t v = mod(pt.coord, modulus_);
    if (v % p_ != 0) throw DomainError("point at infinity must have coordinate divisible by p");
    return static_cast<std::size_t>(modulus_ + v / p_);
}

P1Point P1Level::reduce(const Rational& u, const Rational& v) const {
    if (u == 0 && v == 0) throw DomainError("(0 : 0) is not a point of P^1");
    if (v != 0 && (u == 0 || valuation(v, p_) <= valuation(u, p_))) return {true, residue(u / v, modulus_)};
    return {false, residue(v / u, modulus_)};
}

std::pair<Rational, Rational> P1Level::lift(const P1Point& pt) const {
    if (pt.finite) return {Rational(pt.coord), Rational(1)};
    return {Rational(1), Rational(pt.coord)};
}

std::pair<Rational, Rational> phi_of(const GL2Element& g) { return {-g.d(), g.c()}; }

// ---------------------------------------------------------------------------

namespace {

// An element of GL2(Z_p) with bottom row (c, d), c and d integral with one of them a unit.
GL2Element with_bottom_row(const Rational& c, const Rational& d, std::int64_t p) {
    if (d != 0 && valuation(d, p) == 0) return {1, 0, c, d};
    return {0, -1, c, d};
}

}  // namespace

PrincipalSeriesVector::PrincipalSeriesVector(std::int64_t p, int level, CoefficientValue alpha)
    : p1_(p, level), alpha_(std::move(alpha)), table_(p1_.size(), CoefficientValue(0)) {}

PrincipalSeriesVector PrincipalSeriesVector::spherical(std::int64_t p, int level, CoefficientValue alpha) {
    PrincipalSeriesVector v(p, level, std::move(alpha));
    for (auto& x : v.table_) x = 1;
    return v;
}

CoefficientValue PrincipalSeriesVector::at_row(const Rational& c, const Rational& d) const {
    return table_[p1_.index(p1_.reduce(c, d))];
}

CoefficientValue PrincipalSeriesVector::evaluate(const GL2Element& g) const {
    const auto dec = iwasawa_decompose(g, p1_.p());
    return mu_alpha(dec.b, alpha_, p1_.p()) * at_row(dec.k.c(), dec.k.d());
}

bool PrincipalSeriesVector::invariant_under_K0_1() const {
    return std::all_of(table_.begin(), table_.end(), [&](const CoefficientValue& x) { return x == table_.front(); });
}

PrincipalSeriesVector PrincipalSeriesVector::right_translate(const GL2Element& h) const {
    PrincipalSeriesVector out(p1_.p(), p1_.level(), alpha_);
    for (std::size_t i = 0; i < table_.size(); ++i) {
        const auto [c, d] = p1_.lift(p1_.point(i));
        out.table_[i] = evaluate(with_bottom_row(c, d, p1_.p()) * h);
    }
    return out;
}

PrincipalSeriesVector operator+(const PrincipalSeriesVector& x, const PrincipalSeriesVector& y) {
    if (x.p1_.p() != y.p1_.p() || x.p1_.level() != y.p1_.level() || !(x.alpha_ == y.alpha_))
        throw MismatchError("principal series vectors live in different models");
    PrincipalSeriesVector out = x;
    for (std::size_t i = 0; i < out.table_.size(); ++i) out.table_[i] = x.table_[i] + y.table_[i];
    return out;
}

PrincipalSeriesVector operator*(const CoefficientValue& k, const PrincipalSeriesVector& x) {
    PrincipalSeriesVector out = x;
    for (auto& v : out.table_) v = k * v;
    return out;
}

bool operator==(const PrincipalSeriesVector& x, const PrincipalSeriesVector& y) {
    return x.p1_.p() == y.p1_.p() && x.p1_.level() == y.p1_.level() && x.table_ == y.table_;
}

PrincipalSeriesVector hecke_TP(const PrincipalSeriesVector& v) {
    if (v.p1().level() < 2) throw RefinementError("Hecke operator needs level at least 2");
    if (!v.invariant_under_K0_1()) throw DomainError("Hecke operator input must be GL2(Z_p)-invariant");
    const std::int64_t p = v.p1().p();
    // K diag(p, 1) K = union of gamma K, gamma = (p b; 0 1) for b mod p and (1 0; 0 p).
    std::vector<GL2Element> reps;
    for (std::int64_t b = 0; b < p; ++b) reps.emplace_back(p, b, 0, 1);
    reps.emplace_back(1, 0, 0, p);
    PrincipalSeriesVector out(p, v.p1().level(), v.alpha());
    for (std::size_t i = 0; i < out.table().size(); ++i) {
        const auto [c, d] = v.p1().lift(v.p1().point(i));
        const GL2Element k = with_bottom_row(c, d, p);
        CoefficientValue sum = 0;
        for (const auto& g : reps) sum = sum + v.evaluate(k * g);
        out.set(i, sum);
    }
    return out;
}

// ---------------------------------------------------------------------------

SplitEmbedding::SplitEmbedding(std::int64_t p, int n_T) : p_(p), n_T_(n_T), C_(rational_pow(Rational(p), n_T)) {}

GL2Element SplitEmbedding::matrix(const Rational& x) const {
    if (x == 0) throw DomainError("torus coordinate must be nonzero");
    return {x, 0, C_ * (x - 1), 1};
}

std::optional<Rational> SplitEmbedding::torus_coordinate(const GL2Element& g) const {
    // g = b t(w) forces the bottom row of g to be proportional to (C(w - 1), 1).
    if (g.d() == 0) return std::nullopt;
    const Rational w = 1 + g.c() / (C_ * g.d());
    if (w == 0) return std::nullopt;
    return w;
}

CoefficientValue delta_T_at(const ShellFunction& f, const CoefficientValue& alpha, const SplitEmbedding& emb,
                            const GL2Element& g) {
    if (f.torus().kind() != TorusKind::split) throw DomainError("delta_T is wired for split tori only");
    const auto w = emb.torus_coordinate(g);
    if (!w) return 0;
    const GL2Element b = g * emb.matrix(*w).inverse();
    return mu_alpha(b, alpha, emb.p()) * f.at_split_coordinate(1 / *w);
}

PrincipalSeriesVector delta_T(const ShellFunction& f, const CoefficientValue& alpha, const SplitEmbedding& emb,
                              int level) {
    const std::int64_t p = emb.p();
    PrincipalSeriesVector out(p, level, alpha);
    const std::int64_t M = out.p1().modulus();
    for (std::size_t i = 0; i < out.table().size(); ++i) {
        const auto pt = out.p1().point(i);
        const auto [c, d] = out.p1().lift(pt);
        const CoefficientValue v = delta_T_at(f, alpha, emb, with_bottom_row(c, d, p));
        // The value must be constant on the neighbourhood of the point: compare with the p children.
        for (std::int64_t j = 1; j < p; ++j) {
            const Rational cc = pt.finite ? c + Rational(j * M) : c;
            const Rational dd = pt.finite ? d : d + Rational(j * M);
            if (!(delta_T_at(f, alpha, emb, with_bottom_row(cc, dd, p)) == v))
                throw RefinementError("level " + std::to_string(level) + " is too coarse for the support of f");
        }
        out.set(i, v);
    }
    return out;
}

// ---------------------------------------------------------------------------

LocalRationalFunction intertwine_closed_form(const ShellFunction& f, int alpha, const TorusElement& t) {
    const LocalTorusCase& c = f.torus();
    const std::int64_t q = c.q();
    const ShellFunction g = f.translate(t);
    const auto& Q = g.quotient();
    const Rational cell = shell_volume(c, g.level());
    const std::size_t id = Q.identity();
    LocalRationalFunction total = LocalRationalFunction::constant(q, 0);
    for (const auto& [m, row] : g.entries()) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (row[j].is_zero()) continue;
            if (!row[j].is_exact()) throw DomainError("closed form needs exact function values");
            const LocalRationalFunction value = LocalRationalFunction::constant(q, row[j].exact());
            if (m == 0 && j == id) {
                // theta varies on H_level: sum it shell by shell.
                total = total + value * unit_shell_sum(c, TorusCharacter::trivial(c), g.level());
            } else {
                const int shell = m == 0 ? Q.shell_level(j) : 0;
                total = total + value * theta(c, alpha, {m, shell}) *
                                    LocalRationalFunction::constant(q, GaussianRational(cell));
            }
        }
    }
    return total;
}

CoefficientValue intertwine_I(const ShellFunction& f, int alpha, const Rational& s, const TorusElement& t) {
    return evaluate_at_s(intertwine_closed_form(f, alpha, t), s);
}

CoefficientValue intertwine_I_oracle(const ShellFunction& f, int alpha, const Rational& s, const TorusElement& t,
                                     const SplitEmbedding& emb, int N) {
    const LocalTorusCase& c = f.torus();
    if (c.kind() != TorusKind::split) throw DomainError("the N_P-integral oracle is implemented for split tori");
    if (emb.n_T() != c.n_T()) throw MismatchError("embedding constant differs from the torus case");
    if (s <= Rational(1, 2)) throw DivergenceError("the intertwining integral diverges for Re(s) <= 1/2");
    const std::int64_t p = emb.p();
    const std::int64_t q = c.q();
    const int L = f.level();
    const int nT = c.n_T();
    if (f.entries().empty()) return 0;
    int min_supp = f.entries().begin()->first, max_supp = f.entries().rbegin()->first;

    // Rational representative of the torus element t.
    const auto [ua, ub] = f.quotient().element(t.unit);
    const Rational z = rational_pow(Rational(p), t.m) * (Rational(ua) + Rational(ub)) / Rational(ua);

    const CoefficientValue qs = q_power(q, s);
    const CoefficientValue a = alpha;
    auto integrand = [&](const Rational& x) -> CoefficientValue {
        // n(x) omega t lies in P t(w) with w = z (1 - 1/(C x)); the Borel exponent is 2 v(x) + v(w) - v(z).
        const Rational tx = 1 - 1 / (emb.C() * x);
        if (tx == 0) return 0;
        const Rational w = z * tx;
        const CoefficientValue fv = f.at_split_coordinate(1 / w);
        if (fv.is_zero()) return 0;
        const int e = 2 * valuation(x, p) + valuation(tx, p);
        return cpow(a * qs, e) * fv;
    };

    // Cells x in p^m (u + p^R Z_p). For v(Cx) <= -L the integrand is f(z^{-1}) alpha^{2m} q^{2sm}.
    const int m_low = -nT - L;  // cells with m <= m_low form the geometric tail
    const int kmax = std::max(0, -min_supp - t.m) + 1;
    const int m_high = std::max(-nT, max_supp + t.m - nT) + 1;
    if (m_high - m_low > N) throw TruncationError("truncation N is below the support width of f");
    CoefficientValue total = 0;
    for (int m = m_low + 1; m <= m_high; ++m) {
        const int A = nT + m;
        const int R = (A == 0) ? L + kmax + 1 : L + 1;
        const std::int64_t pr = ipow(p, R);
        const Rational pm = rational_pow(Rational(p), m);
        const CoefficientValue vol = rational_pow(Rational(q), -m - R);
        CoefficientValue sum = 0;
        for (std::int64_t u = 1; u < pr; ++u) {
            if (u % p == 0) continue;
            sum = sum + integrand(pm * Rational(u));
        }
        total = total + vol * sum;
    }
    // Tail: sum_{m <= m_low} (1 - 1/q) q^{-m} alpha^{2m} q^{2sm} f(z^{-1}) = f(z^{-1}) (1 - 1/q) rho^{-m_low} / (1 - rho).
    const CoefficientValue f_at = f.at_split_coordinate(1 / z);
    if (!f_at.is_zero()) {
        const CoefficientValue rho = CoefficientValue(Rational(q)) / (qs * qs);
        total = total + f_at * CoefficientValue(1 - Rational(1, q)) * cpow(rho, -m_low) / (CoefficientValue(1) - rho);
    }
    return total;
}

}  // namespace acl
