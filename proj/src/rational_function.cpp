#include "acl/rational_function.hpp"

#include <cmath>
#include <sstream>

namespace acl {
namespace {

template <class K>
int multiplicity(Polynomial<K> p, const K& x0) {
    int m = 0;
    const Polynomial<K> lin(std::vector<K>{-x0, K(1)});
    while (!p.is_zero()) {
        auto [quo, rem] = p.divmod(lin);
        if (!rem.is_zero()) break;
        p = std::move(quo);
        ++m;
    }
    return m;
}

template <class K>
int order_generic(const RationalFunction<K>& r, const CoefficientValue& x0) {
    if (r.is_zero()) throw ZeroFunctionError("order of the zero function is undefined");
    K x = CoeffTraits<K>::from_value(x0);
    return multiplicity(r.numerator(), x) - multiplicity(r.denominator(), x);
}

template <class K>
CoefficientValue evaluate_generic(const RationalFunction<K>& r, const K& x, const std::string& where) {
    K den = r.denominator()(x);
    if (CoeffTraits<K>::is_zero(den)) {
        int order = order_generic(r, CoeffTraits<K>::to_value(x));
        if (order < 0) throw PoleError("pole at " + where + " of order " + std::to_string(-order), -order);
        // Float backend: a removable singularity; evaluate the cancelled form.
        Polynomial<K> lin(std::vector<K>{-x, K(1)});
        Polynomial<K> num = r.numerator();
        Polynomial<K> dd = r.denominator();
        while (CoeffTraits<K>::is_zero(dd(x))) {
            num = num.divmod(lin).first;
            dd = dd.divmod(lin).first;
        }
        return CoeffTraits<K>::to_value(num(x) / dd(x));
    }
    return CoeffTraits<K>::to_value(r.numerator()(x) / den);
}

}  // namespace

CoefficientValue evaluate_at_X(const LocalRationalFunction& r, const CoefficientValue& x0) {
    if (x0.is_exact()) return evaluate_generic(r, x0.exact(), "X = " + to_string(x0));
    return evaluate_generic(to_float(r), x0.to_complex(), "X = " + to_string(x0));
}

CoefficientValue evaluate_at_s(const LocalRationalFunction& r, const Rational& s) {
    if (denominator(s) == 1) {
        auto e = numerator(s).convert_to<long>();
        GaussianRational x(rational_pow(Rational(r.q()), -e));
        return evaluate_generic(r, x, "s = " + to_string(s));
    }
    return evaluate_at_s(r, std::complex<double>(to_double(s), 0.0));
}

CoefficientValue evaluate_at_s(const LocalRationalFunction& r, std::complex<double> s) {
    return evaluate_at_s(to_float(r), s);
}

CoefficientValue evaluate_at_s(const FloatRationalFunction& r, std::complex<double> s) {
    std::complex<double> x = std::exp(-s * std::log(static_cast<double>(r.q())));
    std::ostringstream os;
    os << "s = " << s;
    return evaluate_generic(r, x, os.str());
}

int order_at_X(const LocalRationalFunction& r, const CoefficientValue& x0) {
    if (!x0.is_exact()) return order_generic(to_float(r), x0);
    return order_generic(r, x0);
}

int order_at_X(const FloatRationalFunction& r, const CoefficientValue& x0) { return order_generic(r, x0); }

bool equal(const LocalRationalFunction& a, const LocalRationalFunction& b) {
    if (a.q() != b.q()) throw MismatchError("cannot compare rational functions bound to different q");
    return a.numerator() * b.denominator() == b.numerator() * a.denominator();
}

bool equal(const FloatRationalFunction& a, const FloatRationalFunction& b, double tol) {
    if (a.q() != b.q()) throw MismatchError("cannot compare rational functions bound to different q");
    auto close = [tol](const FloatRationalFunction::Poly& x, const FloatRationalFunction::Poly& y) {
        std::size_t n = std::max(x.coeffs().size(), y.coeffs().size());
        for (std::size_t i = 0; i < n; ++i)
            if (std::abs(x.coeff(i) - y.coeff(i)) > tol) return false;
        return true;
    };
    // Both are already normalized by the leading denominator coefficient, but
    // common factors are not cancelled, so compare cross products.
    return close(a.numerator() * b.denominator(), b.numerator() * a.denominator());
}

FloatRationalFunction to_float(const LocalRationalFunction& r) {
    auto conv = [](const LocalRationalFunction::Poly& p) {
        std::vector<std::complex<double>> c;
        c.reserve(p.coeffs().size());
        for (const auto& z : p.coeffs()) c.push_back(z.to_complex());
        return FloatRationalFunction::Poly(std::move(c));
    };
    return {r.q(), conv(r.numerator()), conv(r.denominator())};
}

std::string to_string(const LocalRationalFunction& r) {
    auto poly = [](const LocalRationalFunction::Poly& p) {
        if (p.is_zero()) return std::string("0");
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
            if (p.coeffs()[i].is_zero()) continue;
            if (!first) os << " + ";
            first = false;
            os << p.coeffs()[i];
            if (i > 0) os << "*X" << (i > 1 ? "^" + std::to_string(i) : "");
        }
        return os.str();
    };
    return "(" + poly(r.numerator()) + ")/(" + poly(r.denominator()) + ")";
}

}  // namespace acl
