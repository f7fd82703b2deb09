#include "acl/padic.hpp"

#include "acl/errors.hpp"

#include <numeric>
#include <string>

namespace acl {

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

PrimeLocalField::PrimeLocalField(std::int64_t p, int f) : p_(p), f_(f), q_(0) {
    if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
    if (f < 1) throw DomainError("residue degree must be at least 1");
    q_ = ipow(p, f);
}

PrimeLocalField field_from_q(std::int64_t q) {
    if (q < 2) throw DomainError("q = " + std::to_string(q) + " is not a prime power");
    std::int64_t p = 2;
    while (q % p != 0) ++p;
    int f = 0;
    std::int64_t m = q;
    while (m % p == 0) {
        m /= p;
        ++f;
    }
    if (m != 1) throw DomainError("q = " + std::to_string(q) + " is not a prime power");
    return PrimeLocalField(p, f);
}

void PrimeLocalField::require_prime_residue_field() const {
    if (f_ != 1) throw EnumerationError("enumeration requires prime residue field");
}

int valuation(const BigInt& n, std::int64_t p) {
    if (n == 0) throw ValuationError("valuation of zero undefined");
    int v = 0;
    BigInt m = n;
    BigInt bp = p;
    while (m % bp == 0) {
        m /= bp;
        ++v;
    }
    return v;
}

int valuation(const Rational& x, std::int64_t p) {
    if (x == 0) throw ValuationError("valuation of zero undefined");
    return valuation(numerator(x), p) - valuation(denominator(x), p);
}

int valuation(const PAdicRational& x) {
    int v = valuation(x.value(), x.field().p());
    return v;
}

Rational absolute_value(const PAdicRational& x) {
    return rational_pow(Rational(x.field().q()), -valuation(x));
}

std::vector<std::int64_t> unit_residues(const PrimeLocalField& field, int N) {
    field.require_prime_residue_field();
    if (N < 1) throw DomainError("level must be at least 1");
    const std::int64_t m = ipow(field.p(), N);
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(m - m / field.p()));
    for (std::int64_t a = 1; a < m; ++a)
        if (a % field.p() != 0) out.push_back(a);
    return out;
}

std::int64_t ipow(std::int64_t base, int exponent) {
    if (exponent < 0) throw DomainError("negative exponent in integer power");
    std::int64_t r = 1;
    for (int i = 0; i < exponent; ++i) {
        if (r > (std::int64_t{1} << 62) / (base < 0 ? -base : base)) throw DomainError("integer power overflow");
        r *= base;
    }
    return r;
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
    auto r = static_cast<__int128>(mod(a, m)) * static_cast<__int128>(mod(b, m)) % m;
    return static_cast<std::int64_t>(r);
}

std::int64_t powmod(std::int64_t a, std::uint64_t e, std::int64_t m) {
    std::int64_t r = 1 % m;
    std::int64_t b = mod(a, m);
    while (e != 0) {
        if (e & 1U) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1U;
    }
    return r;
}

std::int64_t invmod(std::int64_t a, std::int64_t m) {
    std::int64_t g = m, x = 0, x1 = 1, a1 = mod(a, m);
    while (a1 != 0) {
        std::int64_t qt = g / a1;
        std::int64_t t = g - qt * a1;
        g = a1;
        a1 = t;
        t = x - qt * x1;
        x = x1;
        x1 = t;
    }
    if (g != 1) throw DomainError("element not invertible modulo " + std::to_string(m));
    return mod(x, m);
}

std::int64_t residue(const Rational& x, std::int64_t m) {
    BigInt bm = m;
    BigInt n = numerator(x) % bm;
    BigInt d = denominator(x) % bm;
    auto ni = n.convert_to<std::int64_t>();
    auto di = d.convert_to<std::int64_t>();
    return mulmod(ni, invmod(di, m), m);
}

int valuation_i64(std::int64_t n, std::int64_t p) {
    if (n == 0) throw ValuationError("valuation of zero undefined");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

}  // namespace acl
