#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>

namespace acl {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

[[nodiscard]] Rational rational_pow(const Rational& base, long exponent);
[[nodiscard]] double to_double(const Rational& r);
[[nodiscard]] std::string to_string(const Rational& r);
[[nodiscard]] Rational parse_rational(const std::string& text);

// Elements of Q(i). This is the exact coefficient backend: every character
// value that occurs in the exact sweeps (plus or minus one, plus or minus i)
// lives here, and sums of such values stay here.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT(implicit)
    GaussianRational(long long re) : re_(re) {}            // NOLINT(implicit)
    GaussianRational(long re) : re_(re) {}                 // NOLINT(implicit)
    GaussianRational(int re) : re_(re) {}                  // NOLINT(implicit)
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    [[nodiscard]] const Rational& re() const noexcept { return re_; }
    [[nodiscard]] const Rational& im() const noexcept { return im_; }
    [[nodiscard]] bool is_zero() const { return re_ == 0 && im_ == 0; }
    [[nodiscard]] bool is_real() const { return im_ == 0; }
    [[nodiscard]] GaussianRational conj() const { return {re_, -im_}; }
    [[nodiscard]] Rational norm() const { return re_ * re_ + im_ * im_; }
    [[nodiscard]] GaussianRational inverse() const;
    [[nodiscard]] std::complex<double> to_complex() const { return {to_double(re_), to_double(im_)}; }

    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) = default;

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

private:
    Rational re_{0};
    Rational im_{0};
};

[[nodiscard]] GaussianRational pow(const GaussianRational& z, long exponent);
[[nodiscard]] std::string to_string(const GaussianRational& z);

// A coefficient at an API boundary: either exact (Q(i)) or a complex double.
// Mixed arithmetic degrades to the float backend.
class CoefficientValue {
public:
    static constexpr double default_tolerance = 1e-10;

    CoefficientValue() : v_(GaussianRational{}) {}
    CoefficientValue(GaussianRational z) : v_(std::move(z)) {}          // NOLINT(implicit)
    CoefficientValue(Rational r) : v_(GaussianRational(std::move(r))) {} // NOLINT(implicit)
    CoefficientValue(long long r) : v_(GaussianRational(r)) {}         // NOLINT(implicit)
    CoefficientValue(long r) : v_(GaussianRational(r)) {}              // NOLINT(implicit)
    CoefficientValue(int r) : v_(GaussianRational(r)) {}               // NOLINT(implicit)
    CoefficientValue(std::complex<double> z) : v_(z) {}                // NOLINT(implicit)

    [[nodiscard]] bool is_exact() const noexcept { return std::holds_alternative<GaussianRational>(v_); }
    // Throws DomainError when the value is a float.
    [[nodiscard]] const GaussianRational& exact() const;
    [[nodiscard]] std::complex<double> to_complex() const;
    [[nodiscard]] bool is_zero(double tol = default_tolerance) const;
    [[nodiscard]] bool approx_equal(const CoefficientValue& o, double tol = default_tolerance) const;
    [[nodiscard]] CoefficientValue conj() const;
    [[nodiscard]] CoefficientValue inverse() const;

    friend CoefficientValue operator+(const CoefficientValue& a, const CoefficientValue& b);
    friend CoefficientValue operator-(const CoefficientValue& a, const CoefficientValue& b);
    friend CoefficientValue operator*(const CoefficientValue& a, const CoefficientValue& b);
    friend CoefficientValue operator/(const CoefficientValue& a, const CoefficientValue& b);
    friend CoefficientValue operator-(const CoefficientValue& a);
    // Exact values compare exactly; anything involving a float compares with the default tolerance.
    friend bool operator==(const CoefficientValue& a, const CoefficientValue& b) { return a.approx_equal(b); }

    friend std::ostream& operator<<(std::ostream& os, const CoefficientValue& c);

private:
    std::variant<GaussianRational, std::complex<double>> v_;
};

[[nodiscard]] std::string to_string(const CoefficientValue& c);

}  // namespace acl
