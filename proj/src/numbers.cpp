#include "acl/numbers.hpp"

#include "acl/errors.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace acl {

Rational rational_pow(const Rational& base, long exponent) {
    if (exponent < 0) {
        if (base == 0) throw DomainError("zero raised to a negative power");
        return rational_pow(Rational(1) / base, -exponent);
    }
    Rational result = 1;
    Rational b = base;
    auto e = static_cast<unsigned long>(exponent);
    while (e != 0) {
        if (e & 1U) result *= b;
        e >>= 1U;
        if (e != 0) b *= b;
    }
    return result;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

Rational parse_rational(const std::string& text) {
    try {
        auto slash = text.find('/');
        if (slash == std::string::npos) return Rational(BigInt(text));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw ConfigError("zero denominator in '" + text + "'");
        return Rational(BigInt(text.substr(0, slash)), den);
    } catch (const std::runtime_error&) {
        throw ConfigError("cannot parse rational '" + text + "'");
    }
}

GaussianRational GaussianRational::inverse() const {
    Rational n = norm();
    if (n == 0) throw DomainError("inverse of zero");
    return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    if (im_ == 0 && o.im_ == 0) {
        re_ *= o.re_;
        return *this;
    }
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    if (o.im_ == 0) {
        if (o.re_ == 0) throw DomainError("division by zero");
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    return *this *= o.inverse();
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
    if (z.im() == 0) return os << z.re();
    if (z.re() == 0) return os << z.im() << "*i";
    return os << "(" << z.re() << (z.im() < 0 ? " - " : " + ") << abs(z.im()) << "*i)";
}

GaussianRational pow(const GaussianRational& z, long exponent) {
    if (exponent < 0) return pow(z.inverse(), -exponent);
    GaussianRational result(1);
    GaussianRational b = z;
    auto e = static_cast<unsigned long>(exponent);
    while (e != 0) {
        if (e & 1U) result *= b;
        e >>= 1U;
        if (e != 0) b *= b;
    }
    return result;
}

std::string to_string(const GaussianRational& z) {
    std::ostringstream os;
    os << z;
    return os.str();
}

const GaussianRational& CoefficientValue::exact() const {
    if (const auto* z = std::get_if<GaussianRational>(&v_)) return *z;
    throw DomainError("coefficient is not exact");
}

std::complex<double> CoefficientValue::to_complex() const {
    if (const auto* z = std::get_if<GaussianRational>(&v_)) return z->to_complex();
    return std::get<std::complex<double>>(v_);
}

bool CoefficientValue::is_zero(double tol) const {
    if (const auto* z = std::get_if<GaussianRational>(&v_)) return z->is_zero();
    return std::abs(std::get<std::complex<double>>(v_)) <= tol;
}

bool CoefficientValue::approx_equal(const CoefficientValue& o, double tol) const {
    if (is_exact() && o.is_exact()) return exact() == o.exact();
    auto a = to_complex();
    auto b = o.to_complex();
    return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

CoefficientValue CoefficientValue::conj() const {
    if (is_exact()) return exact().conj();
    return std::conj(to_complex());
}

CoefficientValue CoefficientValue::inverse() const {
    if (is_exact()) return exact().inverse();
    auto z = to_complex();
    if (z == 0.0) throw DomainError("inverse of zero");
    return 1.0 / z;
}

CoefficientValue operator+(const CoefficientValue& a, const CoefficientValue& b) {
    if (a.is_exact() && b.is_exact()) return a.exact() + b.exact();
    return a.to_complex() + b.to_complex();
}

CoefficientValue operator-(const CoefficientValue& a, const CoefficientValue& b) {
    if (a.is_exact() && b.is_exact()) return a.exact() - b.exact();
    return a.to_complex() - b.to_complex();
}

CoefficientValue operator*(const CoefficientValue& a, const CoefficientValue& b) {
    if (a.is_exact() && b.is_exact()) return a.exact() * b.exact();
    return a.to_complex() * b.to_complex();
}

CoefficientValue operator/(const CoefficientValue& a, const CoefficientValue& b) {
    if (a.is_exact() && b.is_exact()) return a.exact() / b.exact();
    return a.to_complex() * b.inverse().to_complex();
}

CoefficientValue operator-(const CoefficientValue& a) {
    if (a.is_exact()) return -a.exact();
    return -a.to_complex();
}

std::ostream& operator<<(std::ostream& os, const CoefficientValue& c) {
    if (c.is_exact()) return os << c.exact();
    auto z = c.to_complex();
    return os << "(" << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "*i)";
}

std::string to_string(const CoefficientValue& c) {
    std::ostringstream os;
    os.precision(15);
    os << c;
    return os.str();
}

}  // namespace acl
