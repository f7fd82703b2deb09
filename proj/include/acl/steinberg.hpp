#pragma once

#include "acl/numbers.hpp"
#include "acl/principal_series.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace acl {

// Units of Z_p are resolved modulo p^R with R = M + 1 (p odd) or M + 2
// (p = 2); this is exactly the precision the log coordinate needs mod p^M.
[[nodiscard]] int unit_resolution(std::int64_t p, int M);

// The principal-unit coordinate L : Z_p^x -> Z_p / p^M, normalized by
// L(1 + p) = 1 (p odd) or L(5) = 1 (p = 2) and trivial on roots of unity.
// Computed as a discrete logarithm in the cyclic group 1 + pZ_p (1 + 4Z_2).
[[nodiscard]] std::int64_t log_coordinate(std::int64_t unit_residue, std::int64_t p, int M);
// The same coordinate from the truncated p-adic logarithm series, evaluated in exact rationals.
[[nodiscard]] std::int64_t log_coordinate_series(const Rational& unit, std::int64_t p, int M);

// l(x) = a ord(x) + b L(x / p^{ord x}) mod p^M.
class LocalHomomorphism {
public:
    LocalHomomorphism(std::int64_t p, std::int64_t a, std::int64_t b, int M);
    static LocalHomomorphism ord(std::int64_t p, int M) { return {p, 1, 0, M}; }
    static LocalHomomorphism log_coordinate(std::int64_t p, int M) { return {p, 0, 1, M}; }

    [[nodiscard]] std::int64_t p() const noexcept { return p_; }
    [[nodiscard]] int precision() const noexcept { return M_; }
    [[nodiscard]] std::int64_t modulus() const noexcept { return mod_; }
    [[nodiscard]] std::int64_t a() const noexcept { return a_; }
    [[nodiscard]] std::int64_t b() const noexcept { return b_; }

    [[nodiscard]] std::int64_t operator()(const Rational& x) const;
    // Value on p^k * u with u a unit residue mod p^R.
    [[nodiscard]] std::int64_t on(int k, std::int64_t unit_residue) const;

    friend LocalHomomorphism operator+(const LocalHomomorphism& x, const LocalHomomorphism& y);
    friend LocalHomomorphism operator*(std::int64_t k, const LocalHomomorphism& x);

private:
    std::int64_t p_, a_, b_;
    int M_;
    std::int64_t mod_;
};

// A point of T(F_P) through psi: psi(t) = p^k u.
struct TorusCoordinate {
    int k = 0;
    std::int64_t unit = 1;  // residue mod p^R
    static TorusCoordinate from_rational(const Rational& x, std::int64_t p, int R);
};

enum class RefinePolicy { automatic, strict };

// A locally constant function on P^1 written in the coordinate w in which T
// acts by multiplication (x_1 = 0, x_2 = infinity, U = Z_p). It is given by
// a window of valuation shells [lo, hi), each a table over units mod p^R, a
// value on {v(w) >= hi} (including x_1) and a value on {v(w) < lo} (including
// x_2). Values are in Z / p^M.
class SteinbergElement {
public:
    SteinbergElement(std::int64_t p, int M, int R, int lo, int hi);
    static SteinbergElement constant(std::int64_t p, int M, int R, std::int64_t c);
    // 1_U with U = Z_p in the w coordinate.
    static SteinbergElement indicator_U(std::int64_t p, int M, int R);

    [[nodiscard]] std::int64_t p() const noexcept { return p_; }
    [[nodiscard]] int precision() const noexcept { return M_; }
    [[nodiscard]] int resolution() const noexcept { return R_; }
    [[nodiscard]] int lo() const noexcept { return lo_; }
    [[nodiscard]] int hi() const noexcept { return hi_; }
    [[nodiscard]] std::int64_t inside() const noexcept { return inside_; }
    [[nodiscard]] std::int64_t outside() const noexcept { return outside_; }

    [[nodiscard]] std::int64_t at(int v, std::int64_t unit_residue) const;
    // Value at a point w of P^1 (nullopt encodes w = infinity); w = 0 is x_1.
    [[nodiscard]] std::int64_t at_point(const std::optional<Rational>& w) const;
    void set(int v, std::int64_t unit_residue, std::int64_t value);
    void set_inside(std::int64_t c) { inside_ = reduce(c); }
    void set_outside(std::int64_t c) { outside_ = reduce(c); }

    // (t . F)(w) = F(psi(t)^{-1} w).
    [[nodiscard]] SteinbergElement translate(const TorusCoordinate& t) const;
    [[nodiscard]] bool is_constant() const;
    // Equality in V = C(P^1) / constants.
    [[nodiscard]] bool equal_mod_constants(const SteinbergElement& other) const;
    // A representative vanishing near x_1 and x_2 exists (compact support in T).
    [[nodiscard]] bool has_compact_representative() const { return inside_ == outside_; }

    friend SteinbergElement operator+(const SteinbergElement& x, const SteinbergElement& y);
    friend SteinbergElement operator-(const SteinbergElement& x, const SteinbergElement& y);
    friend SteinbergElement operator*(std::int64_t k, const SteinbergElement& x);
    friend bool operator==(const SteinbergElement& x, const SteinbergElement& y);

private:
    [[nodiscard]] std::int64_t reduce(std::int64_t x) const { return mod(x, mod_); }
    [[nodiscard]] SteinbergElement widened(int lo, int hi) const;

    std::int64_t p_;
    int M_, R_;
    std::int64_t mod_, pR_;
    int lo_, hi_;
    std::int64_t inside_ = 0, outside_ = 0;
    std::vector<std::vector<std::int64_t>> shells_;
};

// z_l(t) = (1 - t) l 1_U, i.e. w -> l(w) 1_U(w) - l(t^{-1} w) 1_U(t^{-1} w).
// The requested level N is raised to the unit resolution when needed
// (RefinementError under the strict policy).
[[nodiscard]] SteinbergElement cocycle_z(const LocalHomomorphism& l, const TorusCoordinate& t, int N,
                                         RefinePolicy policy = RefinePolicy::automatic);
// z(t1 t2) = z(t1) + t1 . z(t2) in V.
[[nodiscard]] bool check_cocycle_identity(const LocalHomomorphism& l, const TorusCoordinate& t1,
                                          const TorusCoordinate& t2, int N);
[[nodiscard]] TorusCoordinate multiply(const TorusCoordinate& x, const TorusCoordinate& y, std::int64_t p, int R);

// The section phi_1 of the extension E(l) for the split embedding
// t(x) = (x 0; C(x-1) 1): x_1 = 1/C with lambda_1(t(x)) = x, x_2 = 0 with
// lambda_2 = 1, Lambda_1(g) = d + c/C, Lambda_2(g) = d, psi = lambda_1/lambda_2.
class Phi1Section {
public:
    Phi1Section(LocalHomomorphism l, SplitEmbedding emb) : l_(std::move(l)), emb_(std::move(emb)) {}
    [[nodiscard]] Rational Lambda1(const GL2Element& g) const;
    [[nodiscard]] Rational Lambda2(const GL2Element& g) const;
    // The w coordinate Lambda_1/Lambda_2 of phi(g); nullopt at x_2.
    [[nodiscard]] std::optional<Rational> w_coordinate(const GL2Element& g) const;
    [[nodiscard]] std::int64_t operator()(const GL2Element& g) const;
    [[nodiscard]] const SplitEmbedding& embedding() const noexcept { return emb_; }
    [[nodiscard]] const LocalHomomorphism& hom() const noexcept { return l_; }

private:
    LocalHomomorphism l_;
    SplitEmbedding emb_;
};

}  // namespace acl
