#include "acl/steinberg.hpp"

#include "acl/errors.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>

namespace acl {

namespace {

// Exponent e0 with 1 + p^{e0} Z_p the torsion-free principal units.
int principal_level(std::int64_t p) { return p == 2 ? 2 : 1; }

std::int64_t generator(std::int64_t p) { return p == 2 ? 5 : 1 + p; }

// Projection of a unit to 1 + p^{e0} Z_p killing roots of unity.
std::int64_t principal_part(std::int64_t u, std::int64_t p, std::int64_t pR) {
    if (p == 2) return u % 4 == 1 ? u : mod(-u, pR);
    return powmod(u, static_cast<std::uint64_t>(p - 1), pR);
}

// Digit-by-digit discrete log of c in the cyclic group generated by g
// modulo p^R, the group having order p^M.
std::int64_t discrete_log(std::int64_t c, std::int64_t p, int M, std::int64_t pR) {
    const int e0 = principal_level(p);
    const std::int64_t g = generator(p);
    std::int64_t j = 0;
    std::int64_t pk = 1;                       // p^k
    std::int64_t h = g;                        // g^{p^k}
    std::int64_t scale = ipow(p, e0);          // p^{k + e0}
    for (int k = 0; k < M; ++k) {
        const std::int64_t e = mod((c - 1) / scale, p);
        const std::int64_t f = mod((h - 1) / scale, p);
        const std::int64_t d = mulmod(e, invmod(f, p), p);
        if (d != 0) {
            j += d * pk;
            c = mulmod(c, powmod(invmod(h, pR), static_cast<std::uint64_t>(d), pR), pR);
        }
        h = powmod(h, static_cast<std::uint64_t>(p), pR);
        pk *= p;
        if (k + 1 < M) scale *= p;
    }
    return j;
}

std::int64_t log_coordinate_direct(std::int64_t u, std::int64_t p, int M) {
    const std::int64_t pR = ipow(p, unit_resolution(p, M));
    const std::int64_t pM = ipow(p, M);
    u = mod(u, pR);
    if (u % p == 0) throw DomainError("log coordinate needs a unit");
    const std::int64_t j = discrete_log(principal_part(u, p, pR), p, M, pR);
    if (p == 2) return mod(j, pM);
    return mulmod(mod(j, pM), invmod(p - 1, pM), pM);
}

constexpr std::int64_t kTableLimit = std::int64_t{1} << 21;

const std::vector<std::int64_t>* log_table(std::int64_t p, int M) {
    static std::mutex lock;
    static std::map<std::pair<std::int64_t, int>, std::vector<std::int64_t>> tables;
    const std::int64_t pR = ipow(p, unit_resolution(p, M));
    if (pR > kTableLimit) return nullptr;
    std::lock_guard guard(lock);
    auto [it, inserted] = tables.try_emplace({p, M});
    if (inserted) {
        it->second.assign(static_cast<std::size_t>(pR), 0);
        for (std::int64_t u = 1; u < pR; ++u)
            if (u % p != 0) it->second[static_cast<std::size_t>(u)] = log_coordinate_direct(u, p, M);
    }
    return &it->second;
}

}  // namespace

int unit_resolution(std::int64_t p, int M) {
    if (M < 1) throw DomainError("precision must be at least 1");
    return M + principal_level(p);
}

std::int64_t log_coordinate(std::int64_t unit_residue, std::int64_t p, int M) {
    if (const auto* table = log_table(p, M)) {
        const std::int64_t pR = static_cast<std::int64_t>(table->size());
        const std::int64_t u = mod(unit_residue, pR);
        if (u % p == 0) throw DomainError("log coordinate needs a unit");
        return (*table)[static_cast<std::size_t>(u)];
    }
    return log_coordinate_direct(unit_residue, p, M);
}

std::int64_t log_coordinate_series(const Rational& unit, std::int64_t p, int M) {
    if (valuation(unit, p) != 0) throw DomainError("log coordinate needs a unit");
    const int e0 = principal_level(p);
    Rational x;
    if (p == 2) {
        x = residue(unit, 4) == 1 ? unit : Rational(-unit);
    } else {
        x = rational_pow(unit, p - 1);
    }
    // log(1 + y) = sum (-1)^{n+1} y^n / n with v(y) >= e0; a term has
    // valuation at least n e0 - log_p(n), so stop once that clears M + e0.
    auto log_series = [&](const Rational& z) {
        const Rational y = z - 1;
        Rational sum = 0, power = 1;
        for (long n = 1;; ++n) {
            power *= y;
            sum += (n % 2 == 1 ? power : Rational(-power)) / n;
            int digits = 0;
            for (long m = n; m > 0; m /= p) ++digits;
            if (n * e0 - digits > M + e0 + 2) break;
        }
        return sum;
    };
    const Rational ratio = log_series(x) / log_series(Rational(generator(p)));
    const std::int64_t pM = ipow(p, M);
    const std::int64_t r = residue(ratio, pM);
    return p == 2 ? r : mulmod(r, invmod(p - 1, pM), pM);
}

LocalHomomorphism::LocalHomomorphism(std::int64_t p, std::int64_t a, std::int64_t b, int M)
    : p_(p), a_(0), b_(0), M_(M), mod_(0) {
    if (!is_prime(p)) throw DomainError("p must be prime");
    if (M < 1) throw DomainError("precision must be at least 1");
    mod_ = ipow(p, M);
    a_ = mod(a, mod_);
    b_ = mod(b, mod_);
}

std::int64_t LocalHomomorphism::on(int k, std::int64_t unit_residue) const {
    std::int64_t value = mulmod(a_, mod(k, mod_), mod_);
    if (b_ != 0) value = mod(value + mulmod(b_, acl::log_coordinate(unit_residue, p_, M_), mod_), mod_);
    return value;
}

std::int64_t LocalHomomorphism::operator()(const Rational& x) const {
    const int k = valuation(x, p_);
    const Rational u = x / rational_pow(Rational(p_), k);
    return on(k, residue(u, ipow(p_, unit_resolution(p_, M_))));
}

LocalHomomorphism operator+(const LocalHomomorphism& x, const LocalHomomorphism& y) {
    if (x.p_ != y.p_ || x.M_ != y.M_) throw MismatchError("homomorphisms over different fields");
    return {x.p_, x.a_ + y.a_, x.b_ + y.b_, x.M_};
}

LocalHomomorphism operator*(std::int64_t k, const LocalHomomorphism& x) {
    return {x.p_, mulmod(mod(k, x.mod_), x.a_, x.mod_), mulmod(mod(k, x.mod_), x.b_, x.mod_), x.M_};
}

TorusCoordinate TorusCoordinate::from_rational(const Rational& x, std::int64_t p, int R) {
    const int k = valuation(x, p);
    return {k, residue(x / rational_pow(Rational(p), k), ipow(p, R))};
}

TorusCoordinate multiply(const TorusCoordinate& x, const TorusCoordinate& y, std::int64_t p, int R) {
    const std::int64_t pR = ipow(p, R);
    return {x.k + y.k, mulmod(x.unit, y.unit, pR)};
}

SteinbergElement::SteinbergElement(std::int64_t p, int M, int R, int lo, int hi)
    : p_(p), M_(M), R_(R), mod_(ipow(p, M)), pR_(ipow(p, R)), lo_(lo), hi_(std::max(lo, hi)) {
    if (R < 1) throw DomainError("resolution must be at least 1");
    shells_.assign(static_cast<std::size_t>(hi_ - lo_), std::vector<std::int64_t>(static_cast<std::size_t>(pR_), 0));
}

SteinbergElement SteinbergElement::constant(std::int64_t p, int M, int R, std::int64_t c) {
    SteinbergElement out(p, M, R, 0, 0);
    out.set_inside(c);
    out.set_outside(c);
    return out;
}

SteinbergElement SteinbergElement::indicator_U(std::int64_t p, int M, int R) {
    SteinbergElement out(p, M, R, 0, 0);
    out.set_inside(1);
    return out;
}

std::int64_t SteinbergElement::at(int v, std::int64_t unit_residue) const {
    if (v < lo_) return outside_;
    if (v >= hi_) return inside_;
    return shells_[static_cast<std::size_t>(v - lo_)][static_cast<std::size_t>(mod(unit_residue, pR_))];
}

std::int64_t SteinbergElement::at_point(const std::optional<Rational>& w) const {
    if (!w) return outside_;
    if (*w == 0) return inside_;
    const int v = valuation(*w, p_);
    return at(v, residue(*w / rational_pow(Rational(p_), v), pR_));
}

void SteinbergElement::set(int v, std::int64_t unit_residue, std::int64_t value) {
    if (v < lo_ || v >= hi_) throw DomainError("shell outside the stored window");
    shells_[static_cast<std::size_t>(v - lo_)][static_cast<std::size_t>(mod(unit_residue, pR_))] = reduce(value);
}

SteinbergElement SteinbergElement::widened(int lo, int hi) const {
    lo = std::min(lo, lo_);
    hi = std::max(hi, hi_);
    SteinbergElement out(p_, M_, R_, lo, hi);
    out.inside_ = inside_;
    out.outside_ = outside_;
    for (int v = lo; v < hi; ++v)
        for (std::int64_t u = 1; u < pR_; ++u)
            if (u % p_ != 0) out.shells_[static_cast<std::size_t>(v - lo)][static_cast<std::size_t>(u)] = at(v, u);
    return out;
}

SteinbergElement SteinbergElement::translate(const TorusCoordinate& t) const {
    const std::int64_t inv = invmod(mod(t.unit, pR_), pR_);
    SteinbergElement out(p_, M_, R_, lo_ + t.k, hi_ + t.k);
    out.inside_ = inside_;
    out.outside_ = outside_;
    for (int v = out.lo_; v < out.hi_; ++v)
        for (std::int64_t u = 1; u < pR_; ++u)
            if (u % p_ != 0)
                out.shells_[static_cast<std::size_t>(v - out.lo_)][static_cast<std::size_t>(u)] =
                    at(v - t.k, mulmod(u, inv, pR_));
    return out;
}

bool SteinbergElement::is_constant() const {
    if (inside_ != outside_) return false;
    for (const auto& shell : shells_)
        for (std::int64_t u = 1; u < pR_; ++u)
            if (u % p_ != 0 && shell[static_cast<std::size_t>(u)] != inside_) return false;
    return true;
}

bool SteinbergElement::equal_mod_constants(const SteinbergElement& other) const {
    return (*this - other).is_constant();
}

namespace {

template <class Op>
SteinbergElement combine(const SteinbergElement& x, const SteinbergElement& y, Op op) {
    if (x.p() != y.p() || x.precision() != y.precision() || x.resolution() != y.resolution())
        throw MismatchError("Steinberg elements at different precisions");
    const int lo = std::min(x.lo(), y.lo());
    const int hi = std::max(x.hi(), y.hi());
    SteinbergElement out(x.p(), x.precision(), x.resolution(), lo, hi);
    out.set_inside(op(x.inside(), y.inside()));
    out.set_outside(op(x.outside(), y.outside()));
    const std::int64_t pR = ipow(x.p(), x.resolution());
    for (int v = lo; v < hi; ++v)
        for (std::int64_t u = 1; u < pR; ++u)
            if (u % x.p() != 0) out.set(v, u, op(x.at(v, u), y.at(v, u)));
    return out;
}

}  // namespace

SteinbergElement operator+(const SteinbergElement& x, const SteinbergElement& y) {
    return combine(x, y, [](std::int64_t a, std::int64_t b) { return a + b; });
}

SteinbergElement operator-(const SteinbergElement& x, const SteinbergElement& y) {
    return combine(x, y, [](std::int64_t a, std::int64_t b) { return a - b; });
}

SteinbergElement operator*(std::int64_t k, const SteinbergElement& x) {
    const std::int64_t m = x.mod_;
    const std::int64_t kk = mod(k, m);
    SteinbergElement out = x;
    out.inside_ = mulmod(kk, x.inside_, m);
    out.outside_ = mulmod(kk, x.outside_, m);
    for (auto& shell : out.shells_)
        for (auto& value : shell) value = mulmod(kk, value, m);
    return out;
}

bool operator==(const SteinbergElement& x, const SteinbergElement& y) {
    if (x.p_ != y.p_ || x.M_ != y.M_ || x.R_ != y.R_) return false;
    const int lo = std::min(x.lo_, y.lo_);
    const int hi = std::max(x.hi_, y.hi_);
    if (x.inside_ != y.inside_ || x.outside_ != y.outside_) return false;
    for (int v = lo; v < hi; ++v)
        for (std::int64_t u = 1; u < x.pR_; ++u)
            if (u % x.p_ != 0 && x.at(v, u) != y.at(v, u)) return false;
    return true;
}

SteinbergElement cocycle_z(const LocalHomomorphism& l, const TorusCoordinate& t, int N, RefinePolicy policy) {
    const std::int64_t p = l.p();
    const int M = l.precision();
    const int R = unit_resolution(p, M);
    if (N < R && policy == RefinePolicy::strict)
        throw RefinementError("level " + std::to_string(N) + " cannot resolve the log coordinate mod p^" +
                              std::to_string(M) + "; need level " + std::to_string(R));
    const std::int64_t pR = ipow(p, R);
    const std::int64_t t_inv = invmod(mod(t.unit, pR), pR);

    // l(w) 1_U(w) - l(t^{-1} w) 1_U(t^{-1} w) at w = p^v u.
    auto formula = [&](int v, std::int64_t u) {
        std::int64_t value = 0;
        if (v >= 0) value += l.on(v, u);
        if (v - t.k >= 0) value -= l.on(v - t.k, mulmod(u, t_inv, pR));
        return value;
    };

    const int lo = std::min(0, t.k);
    const int hi = std::max(0, t.k);
    SteinbergElement z(p, M, R, lo, hi);
    z.set_inside(formula(hi, 1));
    z.set_outside(formula(lo - 1, 1));
    for (int v = lo; v < hi; ++v)
        for (std::int64_t u = 1; u < pR; ++u)
            if (u % p != 0) z.set(v, u, formula(v, u));
    return z;
}

bool check_cocycle_identity(const LocalHomomorphism& l, const TorusCoordinate& t1, const TorusCoordinate& t2, int N) {
    const int R = unit_resolution(l.p(), l.precision());
    const auto lhs = cocycle_z(l, multiply(t1, t2, l.p(), R), N);
    const auto rhs = cocycle_z(l, t1, N) + cocycle_z(l, t2, N).translate(t1);
    return lhs.equal_mod_constants(rhs);
}

Rational Phi1Section::Lambda1(const GL2Element& g) const { return g.d() + g.c() / emb_.C(); }

Rational Phi1Section::Lambda2(const GL2Element& g) const { return g.d(); }

std::optional<Rational> Phi1Section::w_coordinate(const GL2Element& g) const {
    const Rational l2 = Lambda2(g);
    if (l2 == 0) return std::nullopt;
    return Lambda1(g) / l2;
}

std::int64_t Phi1Section::operator()(const GL2Element& g) const {
    // Each branch uses the Lambda that is nonzero there, so phi_1 is defined on all of GL2.
    const auto w = w_coordinate(g);
    const bool in_U = w && (*w == 0 || valuation(*w, l_.p()) >= 0);
    return in_U ? l_(Lambda2(g)) : l_(Lambda1(g));
}

}  // namespace acl
