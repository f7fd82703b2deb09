#pragma once

#include "acl/errors.hpp"
#include "acl/numbers.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace acl {

// Per-backend zero test and tolerance. The exact backend needs no tolerance,
// which is the whole point of keeping it: exceptional zeros are detected by
// exact cancellation.
template <class K>
struct CoeffTraits;

template <>
struct CoeffTraits<GaussianRational> {
    static constexpr bool exact = true;
    static bool is_zero(const GaussianRational& z) { return z.is_zero(); }
    static GaussianRational from_value(const CoefficientValue& c) { return c.exact(); }
    static CoefficientValue to_value(const GaussianRational& z) { return z; }
};

template <>
struct CoeffTraits<std::complex<double>> {
    static constexpr bool exact = false;
    static constexpr double tolerance = 1e-9;
    static bool is_zero(const std::complex<double>& z) { return std::abs(z) <= tolerance; }
    static std::complex<double> from_value(const CoefficientValue& c) { return c.to_complex(); }
    static CoefficientValue to_value(const std::complex<double>& z) { return z; }
};

// Dense univariate polynomial, coefficients stored from the constant term up.
template <class K>
class Polynomial {
public:
    using Traits = CoeffTraits<K>;

    Polynomial() = default;
    explicit Polynomial(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Polynomial constant(K k) { return Polynomial(std::vector<K>{std::move(k)}); }
    static Polynomial monomial(K k, std::size_t degree) {
        std::vector<K> c(degree + 1, K{});
        c[degree] = std::move(k);
        return Polynomial(std::move(c));
    }

    [[nodiscard]] bool is_zero() const { return c_.empty(); }
    // Degree of the zero polynomial is reported as -1.
    [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
    [[nodiscard]] const std::vector<K>& coeffs() const noexcept { return c_; }
    [[nodiscard]] const K& lead() const { return c_.back(); }
    [[nodiscard]] K coeff(std::size_t i) const { return i < c_.size() ? c_[i] : K{}; }

    [[nodiscard]] K operator()(const K& x) const {
        K acc{};
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), K{});
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), K{});
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<K> r(a.c_.size() + b.c_.size() - 1, K{});
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (Traits::is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return Polynomial(std::move(r));
    }
    friend Polynomial operator*(const K& k, const Polynomial& a) {
        std::vector<K> r = a.c_;
        for (auto& x : r) x = k * x;
        return Polynomial(std::move(r));
    }

    // Euclidean division over the coefficient field.
    [[nodiscard]] std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
        if (d.is_zero()) throw DomainError("polynomial division by zero");
        std::vector<K> rem = c_;
        if (degree() < d.degree()) return {Polynomial{}, *this};
        std::vector<K> quo(static_cast<std::size_t>(degree() - d.degree() + 1), K{});
        const K inv_lead = K(1) / d.lead();
        for (int i = degree(); i >= d.degree(); --i) {
            K factor = rem[static_cast<std::size_t>(i)] * inv_lead;
            quo[static_cast<std::size_t>(i - d.degree())] = factor;
            if (Traits::is_zero(factor)) continue;
            for (int j = 0; j <= d.degree(); ++j)
                rem[static_cast<std::size_t>(i - d.degree() + j)] -= factor * d.c_[static_cast<std::size_t>(j)];
            rem[static_cast<std::size_t>(i)] = K{};
        }
        return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
    }

    [[nodiscard]] Polynomial monic() const {
        if (is_zero()) return *this;
        return (K(1) / lead()) * *this;
    }

    // p(c * X); used to rescale the variable.
    [[nodiscard]] Polynomial scale_variable(const K& c) const {
        std::vector<K> r = c_;
        K power(1);
        for (auto& x : r) {
            x = x * power;
            power = power * c;
        }
        return Polynomial(std::move(r));
    }

    // X^deg * p(c / X): the numerator of p(c X^{-1}) after clearing X.
    [[nodiscard]] Polynomial reverse_scaled(const K& c, std::size_t deg) const {
        std::vector<K> r(deg + 1, K{});
        K power(1);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            r[deg - i] = c_[i] * power;
            power = power * c;
        }
        return Polynomial(std::move(r));
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!Traits::is_zero(a.c_[i] - b.c_[i])) return false;
        return true;
    }

private:
    void trim() {
        while (!c_.empty() && Traits::is_zero(c_.back())) c_.pop_back();
    }
    std::vector<K> c_;
};

template <class K>
Polynomial<K> polynomial_gcd(Polynomial<K> a, Polynomial<K> b) {
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// A rational function of X = q^{-s}. The exact backend keeps numerator and
// denominator coprime with a monic denominator, so two equal functions have
// identical representations. The float backend only rescales the denominator
// to be monic; it never cancels common factors.
template <class K>
class RationalFunction {
public:
    using Poly = Polynomial<K>;
    using Traits = CoeffTraits<K>;

    RationalFunction() = default;
    RationalFunction(std::int64_t q, Poly num, Poly den) : q_(q), num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DomainError("rational function with zero denominator");
        normalize();
    }
    static RationalFunction constant(std::int64_t q, K k) { return {q, Poly::constant(std::move(k)), Poly::constant(K(1))}; }
    // k * X^e for any integer e.
    static RationalFunction monomial(std::int64_t q, K k, long e) {
        if (e >= 0) return {q, Poly::monomial(std::move(k), static_cast<std::size_t>(e)), Poly::constant(K(1))};
        return {q, Poly::constant(std::move(k)), Poly::monomial(K(1), static_cast<std::size_t>(-e))};
    }
    static RationalFunction variable(std::int64_t q) { return monomial(q, K(1), 1); }

    [[nodiscard]] std::int64_t q() const noexcept { return q_; }
    [[nodiscard]] const Poly& numerator() const noexcept { return num_; }
    [[nodiscard]] const Poly& denominator() const noexcept { return den_; }
    [[nodiscard]] bool is_zero() const { return num_.is_zero(); }

    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        a.check_q(b);
        if (a.den_ == b.den_) return {a.q_, a.num_ + b.num_, a.den_};
        return {a.q_, a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        a.check_q(b);
        if (a.den_ == b.den_) return {a.q_, a.num_ - b.num_, a.den_};
        return {a.q_, a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        a.check_q(b);
        return {a.q_, a.num_ * b.num_, a.den_ * b.den_};
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        a.check_q(b);
        if (b.is_zero()) throw DomainError("division by the zero function");
        return {a.q_, a.num_ * b.den_, a.den_ * b.num_};
    }
    friend RationalFunction operator*(const K& k, const RationalFunction& a) { return {a.q_, k * a.num_, a.den_}; }
    friend RationalFunction operator-(const RationalFunction& a) { return {a.q_, K(-1) * a.num_, a.den_}; }

    [[nodiscard]] RationalFunction pow(long e) const {
        if (e < 0) return constant(q_, K(1)) / pow(-e);
        RationalFunction r = constant(q_, K(1));
        for (long i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    // r(c * X^k) for k = +1 or -1.
    [[nodiscard]] RationalFunction substitute_monomial(const K& c, int k) const {
        if (k == 1) return {q_, num_.scale_variable(c), den_.scale_variable(c)};
        if (k != -1) throw DomainError("substitute_monomial supports X -> cX and X -> c/X only");
        const auto d = static_cast<std::size_t>(std::max(num_.degree(), den_.degree()));
        return {q_, num_.reverse_scaled(c, d), den_.reverse_scaled(c, d)};
    }

private:
    void check_q(const RationalFunction& o) const {
        if (q_ != o.q_) throw MismatchError("rational functions bound to different q");
    }
    void normalize() {
        if constexpr (Traits::exact) {
            if (num_.is_zero()) {
                den_ = Poly::constant(K(1));
                return;
            }
            if (den_.degree() > 0 && num_.degree() > 0) {
                Poly g = polynomial_gcd(num_, den_);
                if (g.degree() > 0) {
                    num_ = num_.divmod(g).first;
                    den_ = den_.divmod(g).first;
                }
            }
        }
        if (num_.is_zero()) {
            den_ = Poly::constant(K(1));
            return;
        }
        K inv = K(1) / den_.lead();
        num_ = inv * num_;
        den_ = inv * den_;
    }

    std::int64_t q_ = 0;
    Poly num_;
    Poly den_ = Poly::constant(K(1));
};

using LocalRationalFunction = RationalFunction<GaussianRational>;
using FloatRationalFunction = RationalFunction<std::complex<double>>;

// Exact evaluation points s for which X = q^{-s} is rational need s to be an integer.
[[nodiscard]] CoefficientValue evaluate_at_X(const LocalRationalFunction& r, const CoefficientValue& x0);
[[nodiscard]] CoefficientValue evaluate_at_s(const LocalRationalFunction& r, const Rational& s);
// Principal branch: q^{-s} = exp(-s log q) with the real logarithm of q.
[[nodiscard]] CoefficientValue evaluate_at_s(const LocalRationalFunction& r, std::complex<double> s);
[[nodiscard]] CoefficientValue evaluate_at_s(const FloatRationalFunction& r, std::complex<double> s);

// Zero order (positive) or pole order (negative) at X = x0.
[[nodiscard]] int order_at_X(const LocalRationalFunction& r, const CoefficientValue& x0);
[[nodiscard]] int order_at_X(const FloatRationalFunction& r, const CoefficientValue& x0);

[[nodiscard]] bool equal(const LocalRationalFunction& a, const LocalRationalFunction& b);
[[nodiscard]] bool equal(const FloatRationalFunction& a, const FloatRationalFunction& b, double tol = 1e-9);

[[nodiscard]] FloatRationalFunction to_float(const LocalRationalFunction& r);
[[nodiscard]] std::string to_string(const LocalRationalFunction& r);

}  // namespace acl
