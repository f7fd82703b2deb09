#pragma once

#include "acl/numbers.hpp"

#include <cstdint>
#include <vector>

namespace acl {

// The base local field, remembered only through p, the residue degree and q = p^f.
class PrimeLocalField {
public:
    PrimeLocalField(std::int64_t p, int f = 1);

    [[nodiscard]] std::int64_t p() const noexcept { return p_; }
    [[nodiscard]] int f() const noexcept { return f_; }
    [[nodiscard]] std::int64_t q() const noexcept { return q_; }

    // Enumeration oracles need an explicit residue ring Z/p^N.
    void require_prime_residue_field() const;

    friend bool operator==(const PrimeLocalField&, const PrimeLocalField&) = default;

private:
    std::int64_t p_;
    int f_;
    std::int64_t q_;
};

[[nodiscard]] bool is_prime(std::int64_t n);
// The field with residue cardinality q = p^f; DomainError unless q is a prime power.
[[nodiscard]] PrimeLocalField field_from_q(std::int64_t q);

class PAdicRational {
public:
    PAdicRational(Rational value, PrimeLocalField field) : value_(std::move(value)), field_(field) {}

    [[nodiscard]] const Rational& value() const noexcept { return value_; }
    [[nodiscard]] const PrimeLocalField& field() const noexcept { return field_; }
    [[nodiscard]] bool is_zero() const { return value_ == 0; }

private:
    Rational value_;
    PrimeLocalField field_;
};

// ord_p of a nonzero integer or rational; ValuationError on zero.
[[nodiscard]] int valuation(const BigInt& n, std::int64_t p);
[[nodiscard]] int valuation(const Rational& x, std::int64_t p);
[[nodiscard]] int valuation(const PAdicRational& x);
// q^(-valuation(x)).
[[nodiscard]] Rational absolute_value(const PAdicRational& x);

// (Z/p^N)^x as the sorted representatives in [1, p^N - 1] prime to p.
[[nodiscard]] std::vector<std::int64_t> unit_residues(const PrimeLocalField& field, int N);

// Small modular helpers for moduli below 2^62.
[[nodiscard]] std::int64_t ipow(std::int64_t base, int exponent);
[[nodiscard]] std::int64_t mod(std::int64_t a, std::int64_t m);
[[nodiscard]] std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m);
[[nodiscard]] std::int64_t powmod(std::int64_t a, std::uint64_t e, std::int64_t m);
// Inverse of a modulo m; DomainError if gcd(a, m) != 1.
[[nodiscard]] std::int64_t invmod(std::int64_t a, std::int64_t m);
// The image of a p-integral rational in Z/m, m a power of p.
[[nodiscard]] std::int64_t residue(const Rational& x, std::int64_t m);
[[nodiscard]] int valuation_i64(std::int64_t n, std::int64_t p);

}  // namespace acl
