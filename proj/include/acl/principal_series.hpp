#pragma once

#include "acl/numbers.hpp"
#include "acl/padic.hpp"
#include "acl/torus.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace acl {

// An invertible 2x2 matrix over Q, read as an element of GL2(Q_p).
class GL2Element {
public:
    GL2Element(Rational a, Rational b, Rational c, Rational d);
    static GL2Element identity() { return {1, 0, 0, 1}; }
    static GL2Element omega() { return {0, -1, 1, 0}; }
    static GL2Element diag(Rational x, Rational y) { return {std::move(x), 0, 0, std::move(y)}; }
    // n(x) = (1 x; 0 1).
    static GL2Element unipotent(Rational x) { return {1, std::move(x), 0, 1}; }

    [[nodiscard]] const Rational& a() const noexcept { return a_; }
    [[nodiscard]] const Rational& b() const noexcept { return b_; }
    [[nodiscard]] const Rational& c() const noexcept { return c_; }
    [[nodiscard]] const Rational& d() const noexcept { return d_; }
    [[nodiscard]] Rational det() const { return a_ * d_ - b_ * c_; }
    [[nodiscard]] GL2Element inverse() const;
    [[nodiscard]] bool is_upper_triangular() const { return c_ == 0; }
    // All entries integral and unit determinant.
    [[nodiscard]] bool is_integral_unit(std::int64_t p) const;

    friend GL2Element operator*(const GL2Element& x, const GL2Element& y);
    friend bool operator==(const GL2Element& x, const GL2Element& y) = default;

private:
    Rational a_, b_, c_, d_;
};

struct IwasawaDecomposition {
    GL2Element b;  // upper triangular
    GL2Element k;  // in GL2(Z_p)
};

[[nodiscard]] IwasawaDecomposition iwasawa_decompose(const GL2Element& g, std::int64_t p);

// alpha^{v(t2/t1)} for b = (t1 x; 0 t2).
[[nodiscard]] CoefficientValue mu_alpha(const GL2Element& b, const CoefficientValue& alpha, std::int64_t p);
// v(t2/t1) of the Borel part of an Iwasawa decomposition of g.
[[nodiscard]] int borel_exponent(const GL2Element& g, std::int64_t p);

// A point of P^1(Z/p^N): (u : 1) with u mod p^N, or (1 : v) with p | v.
struct P1Point {
    bool finite = true;
    std::int64_t coord = 0;
    friend bool operator==(const P1Point&, const P1Point&) = default;
    friend auto operator<=>(const P1Point&, const P1Point&) = default;
};

// Level-N model of P^1: index <-> point, and reduction of a rational point.
class P1Level {
public:
    P1Level(std::int64_t p, int level);
    [[nodiscard]] std::int64_t p() const noexcept { return p_; }
    [[nodiscard]] int level() const noexcept { return level_; }
    [[nodiscard]] std::int64_t modulus() const noexcept { return modulus_; }
    [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(modulus_ + modulus_ / p_); }
    [[nodiscard]] P1Point point(std::size_t i) const;
    [[nodiscard]] std::size_t index(const P1Point& pt) const;
    // Reduction of (u : v) with u, v rational and not both zero.
    [[nodiscard]] P1Point reduce(const Rational& u, const Rational& v) const;
    // A rational representative (u : v) with u, v integers.
    [[nodiscard]] std::pair<Rational, Rational> lift(const P1Point& pt) const;

private:
    std::int64_t p_;
    int level_;
    std::int64_t modulus_;
};

// phi(g) = -d/c as a point of P^1 (the coordinate (−d : c)).
[[nodiscard]] std::pair<Rational, Rational> phi_of(const GL2Element& g);

// A vector of the induced representation, stored through its restriction to
// GL2(Z_p): it is a function of the bottom row (c : d) in P^1, valid because
// on GL2(Z_p) the Borel character is trivial up to units. Evaluation at any
// g uses the Iwasawa decomposition.
class PrincipalSeriesVector {
public:
    PrincipalSeriesVector(std::int64_t p, int level, CoefficientValue alpha);
    static PrincipalSeriesVector spherical(std::int64_t p, int level, CoefficientValue alpha);

    [[nodiscard]] const P1Level& p1() const noexcept { return p1_; }
    [[nodiscard]] const CoefficientValue& alpha() const noexcept { return alpha_; }
    [[nodiscard]] const std::vector<CoefficientValue>& table() const noexcept { return table_; }
    void set(std::size_t i, CoefficientValue v) { table_.at(i) = std::move(v); }
    [[nodiscard]] CoefficientValue evaluate(const GL2Element& g) const;
    // Value on a point of P^1 read as the bottom row of an element of GL2(Z_p).
    [[nodiscard]] CoefficientValue at_row(const Rational& c, const Rational& d) const;
    [[nodiscard]] bool invariant_under_K0_1() const;
    // (h . v)(g) = v(g h), re-tabulated at the same level.
    [[nodiscard]] PrincipalSeriesVector right_translate(const GL2Element& h) const;

    friend PrincipalSeriesVector operator+(const PrincipalSeriesVector& x, const PrincipalSeriesVector& y);
    friend PrincipalSeriesVector operator*(const CoefficientValue& k, const PrincipalSeriesVector& x);
    friend bool operator==(const PrincipalSeriesVector& x, const PrincipalSeriesVector& y);

private:
    P1Level p1_;
    CoefficientValue alpha_;
    std::vector<CoefficientValue> table_;
};

// The Hecke operator of the double coset K diag(p, 1) K on K-invariant vectors.
[[nodiscard]] PrincipalSeriesVector hecke_TP(const PrincipalSeriesVector& v);

// Split torus embedding t(x) = (x 0; C(x - 1) 1) with v(C) = n_T.
class SplitEmbedding {
public:
    SplitEmbedding(std::int64_t p, int n_T);
    [[nodiscard]] std::int64_t p() const noexcept { return p_; }
    [[nodiscard]] int n_T() const noexcept { return n_T_; }
    [[nodiscard]] const Rational& C() const noexcept { return C_; }
    [[nodiscard]] GL2Element matrix(const Rational& x) const;
    // x with phi(t(x)) = phi(g) up to the Borel, or nullopt at the two excluded points.
    [[nodiscard]] std::optional<Rational> torus_coordinate(const GL2Element& g) const;

private:
    std::int64_t p_;
    int n_T_;
    Rational C_;
};

// delta_T(f)(g) = mu_alpha(b) f(t^{-1}) for g = b t, and 0 off P T.
[[nodiscard]] CoefficientValue delta_T_at(const ShellFunction& f, const CoefficientValue& alpha,
                                          const SplitEmbedding& emb, const GL2Element& g);
[[nodiscard]] PrincipalSeriesVector delta_T(const ShellFunction& f, const CoefficientValue& alpha,
                                            const SplitEmbedding& emb, int level);

// int_T theta_T(s)(y) f(t^{-1} y) d^x y, as a rational function of X (split or any kind).
[[nodiscard]] LocalRationalFunction intertwine_closed_form(const ShellFunction& f, int alpha, const TorusElement& t);
[[nodiscard]] CoefficientValue intertwine_I(const ShellFunction& f, int alpha, const Rational& s, const TorusElement& t);
// int_{F_P} phi_s(n(x) omega t) dx with phi = delta_T(f), phi_s = phi * |t2/t1|^{s-1}-twist,
// truncated at |v(x)| <= N with a geometric tail; split tori only.
[[nodiscard]] CoefficientValue intertwine_I_oracle(const ShellFunction& f, int alpha, const Rational& s,
                                                   const TorusElement& t, const SplitEmbedding& emb, int N);

}  // namespace acl
