#include "verify.hpp"

#include "sweep.hpp"

#include "acl/discrete_series.hpp"
#include "acl/errors.hpp"
#include "acl/interpolation.hpp"
#include "acl/iwasawa.hpp"
#include "acl/local_integrals.hpp"
#include "acl/principal_series.hpp"
#include "acl/steinberg.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <random>
#include <tuple>

namespace acl::tools {

namespace {

struct Tally {
    std::size_t checks = 0;
    std::size_t failed = 0;
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (ok) return;
        ++failed;
        if (failures.size() < 8) failures.push_back(what);
    }
    void merge(const Tally& other) {
        checks += other.checks;
        failed += other.failed;
        for (const auto& f : other.failures)
            if (failures.size() < 8) failures.push_back(f);
    }
};

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

CriterionResult finish(int id, std::string name, const Tally& t, std::string detail) {
    CriterionResult r;
    r.id = id;
    r.name = std::move(name);
    r.passed = t.failed == 0 && t.checks > 0;
    r.checks = t.checks;
    r.detail = std::move(detail);
    r.failures = t.failures;
    return r;
}

const std::vector<SweepCase>& default_cases() {
    static const std::vector<SweepCase> cases = expand(SweepGrid{});
    return cases;
}

// One tally per sweep case, merged in sweep order.
template <class Body>
Tally over_sweep(const VerifyOptions& o, Body body) {
    const auto& cases = default_cases();
    std::vector<Tally> local(cases.size());
    parallel_for(cases.size(), o.jobs, [&](std::size_t i) { body(cases[i], local[i]); });
    Tally t;
    for (const auto& l : local) t.merge(l);
    return t;
}

// --- 1 ---------------------------------------------------------------------

CriterionResult statement_vs_proof(const VerifyOptions& o) {
    const Tally t = over_sweep(o, [](const SweepCase& sc, Tally& local) {
        const auto& pt = sc.point;
        local.expect(equal(i_t_statement(sc.torus, pt.alpha, sc.chi), i_t_proofform(sc.torus, pt.alpha, sc.chi)),
                     pt.key());
    });
    return finish(1, "I_T statement form equals proof form", t,
                  std::to_string(t.checks) + " configurations compared as exact rational functions");
}

// --- 2 ---------------------------------------------------------------------

CriterionResult oracle_agreement(const VerifyOptions& o) {
    constexpr double tol = 1e-8;
    const auto& cases = default_cases();
    struct Local {
        Tally tally;
        int agree = 0, divergent = 0, strip_ok = 0, strip_total = 0;
        double worst = 0.0;
    };
    std::vector<Local> local(cases.size());
    parallel_for(cases.size(), o.jobs, [&](std::size_t i) {
        const auto& sc = cases[i];
        auto& out = local[i];
        const auto st = i_t_statement(sc.torus, sc.point.alpha, sc.chi);
        bool diverged = false;
        for (const Rational s : {Rational(1), Rational(3, 2), Rational(2)}) {
            const std::string where = sc.point.key() + ",s=" + to_string(s);
            try {
                const auto oracle = i_t_oracle(sc.torus, sc.point.alpha, sc.chi, s, o.oracle_truncation);
                const double diff = std::abs(oracle.value.to_complex() - evaluate_at_s(st, s).to_complex());
                out.worst = std::max(out.worst, diff);
                out.tally.expect(diff < tol, where + " diff=" + num(diff));
                if (diff < tol) ++out.agree;
            } catch (const DivergenceError&) {
                ++out.divergent;
                diverged = true;
                out.tally.expect(false, where + " outside the region of convergence");
            }
        }
        // Where the series diverges at s >= 1 it is still checked inside its strip.
        if (diverged)
            for (const Rational s : {Rational(2, 3), Rational(3, 4)}) {
                ++out.strip_total;
                const auto oracle = i_t_oracle(sc.torus, sc.point.alpha, sc.chi, s, 200);
                const double diff = std::abs(oracle.value.to_complex() - evaluate_at_s(st, s).to_complex());
                if (diff < tol && oracle.tail_bound < tol) ++out.strip_ok;
            }
    });
    Tally t;
    int agree = 0, divergent = 0, strip_ok = 0, strip_total = 0;
    double worst = 0.0;
    for (const auto& l : local) {
        t.merge(l.tally);
        agree += l.agree;
        divergent += l.divergent;
        strip_ok += l.strip_ok;
        strip_total += l.strip_total;
        worst = std::max(worst, l.worst);
    }
    std::string detail = std::to_string(agree) + "/" + std::to_string(t.checks) + " (config, s) pairs agree, max |diff| " +
                         num(worst) + "; " + std::to_string(divergent) +
                         " pairs diverge (split torus, unramified chi, s >= 1); those configurations agree at s in "
                         "{2/3, 3/4}: " +
                         std::to_string(strip_ok) + "/" + std::to_string(strip_total);
    return finish(2, "I_T oracle agreement at s in {1, 3/2, 2}", t, detail);
}

// --- 3 ---------------------------------------------------------------------

CriterionResult exceptional_zero(const VerifyOptions& o) {
    Tally t = over_sweep(o, [](const SweepCase& sc, Tally& local) {
        const auto st = i_t_statement(sc.torus, sc.point.alpha, sc.chi);
        const bool predicted = is_exceptional(sc.point.alpha, sc.chi, sc.torus);
        const int order = order_at_X(st, CoefficientValue(1));
        local.expect(predicted == (order >= 1),
                     sc.point.key() + " exceptional=" + std::to_string(predicted) + " order=" + std::to_string(order));
    });
    for (std::int64_t q : SweepGrid{}.qs) {
        const auto zeta = l_factor_zeta(q);
        t.expect(!evaluate_at_s(zeta, Rational(-1)).is_zero(), "zeta(-1) vanishes at q=" + std::to_string(q));
        t.expect(!evaluate_at_s(zeta, Rational(2)).inverse().is_zero(), "1/zeta(2) vanishes at q=" + std::to_string(q));
    }
    return finish(3, "exceptional zero iff vanishing at s = 0", t,
                  std::to_string(t.checks) + " checks (sweep both directions, zeta(-1) and 1/zeta(2))");
}

// --- 4 ---------------------------------------------------------------------

CriterionResult euler_vanishing(const VerifyOptions& o) {
    const auto& cases = default_cases();
    std::vector<Tally> local(cases.size());
    std::vector<int> zeros(cases.size(), 0);
    parallel_for(cases.size(), o.jobs, [&](std::size_t i) {
        const auto& sc = cases[i];
        const bool exceptional = is_exceptional(sc.point.alpha, sc.chi, sc.torus);
        const auto e = euler_factor_C(sc.torus, SteinbergDatum::special(sc.point.alpha), sc.chi);
        zeros[i] = e.is_zero() ? 1 : 0;
        local[i].expect(e.is_zero() == exceptional, sc.point.key() + " special euler=" + to_string(e));
        if (sc.point.alpha == 1) {
            const auto d = SteinbergDatum::spherical(spherical_alpha(sc.point.q), sc.point.q);
            const auto sph = euler_factor_C(sc.torus, d, sc.chi);
            local[i].expect(!sph.is_zero(), sc.point.key() + " spherical euler vanishes");
        }
    });
    Tally t;
    for (const auto& l : local) t.merge(l);
    int z = 0;
    for (int v : zeros) z += v;
    return finish(4, "Euler factor C vanishes exactly on exceptional data", t,
                  std::to_string(t.checks) + " factors, " + std::to_string(z) + " exact zeros, all exceptional");
}

// --- 5 ---------------------------------------------------------------------

CriterionResult inner_products(const VerifyOptions&) {
    Tally t;
    const SymbolicConstants k;
    for (auto kind : SweepGrid{}.kinds)
        for (std::int64_t q : {2, 3, 5})
            for (int nT : {0, 1, 2}) {
                const LocalTorusCase c(kind, field_from_q(q), nT);
                const auto compare = [&](const SteinbergDatum& d, int ns, const std::string& label) {
                    const auto closed = inner_product_fP(c, d, ns, k);
                    const auto direct = inner_product_fP_rederived(c, d, ns, k);
                    const std::string where = "q=" + std::to_string(q) + "," + to_string(kind) +
                                              ",n_T=" + std::to_string(nT) + "," + label + ",n_s=" + std::to_string(ns);
                    t.expect(closed.value == direct.value && closed.deps == direct.deps,
                             where + " closed=" + to_string(closed.value) + " direct=" + to_string(direct.value));
                };
                for (int alpha : {1, -1}) compare(SteinbergDatum::special(alpha), 0, "special " + std::to_string(alpha));
                const auto sph = SteinbergDatum::spherical(spherical_alpha(q), q);
                for (int ns : {0, 1, 2}) compare(sph, ns, "spherical");
            }
    return finish(5, "inner-product branches match the re-derivation", t,
                  std::to_string(t.checks) + " (kind, q, n_T, branch, n_s) cases, six branches");
}

// --- 6 ---------------------------------------------------------------------

CriterionResult steinberg_f0(const VerifyOptions&) {
    Tally t;
    for (std::int64_t q : {2, 3, 5})
        for (int nT : {0, 1, 2}) {
            const std::string where = "q=" + std::to_string(q) + ",n_T=" + std::to_string(nT);
            for (int o = -3; o <= 3; ++o)
                t.expect(f0_oracle(q, nT, o, 8) == f0_of_t(q, nT, o), where + ",ord_t=" + std::to_string(o));
            // Beyond |ord t| = 5 the terms are geometric with ratio 1/q on both sides.
            for (int o = 5; o < 9; ++o) {
                t.expect(f0_of_t(q, nT, o + 1) * q == f0_of_t(q, nT, o), where + " right tail ratio");
                t.expect(f0_of_t(q, nT, -o - 1) * q == f0_of_t(q, nT, -o), where + " left tail ratio");
            }
            Rational sum = 0;
            for (int o = -5; o <= 5; ++o) sum += f0_of_t(q, nT, o);
            sum += (f0_of_t(q, nT, 5) + f0_of_t(q, nT, -5)) / (q - 1);
            const Rational iq(1, q);
            const Rational expected = rational_pow(Rational(q), 2 * nT) * iq * (1 + iq) / ((1 - iq) * (1 - iq) * (1 - iq));
            t.expect(sum == expected, where + " summed pairing " + to_string(sum));
            t.expect(f0_total(q, nT) == expected, where + " f0_total");
        }
    for (std::int64_t q : {2, 3, 5, 7}) {
        t.expect(steinberg_l_factor_is_zeta_squared(q), "L(s, pi, 1) != zeta(s + 1/2)^2 at q=" + std::to_string(q));
        const Rational zeta_two = 1 / (1 - Rational(1, q * q));
        t.expect(c_pi_steinberg(q) == CoefficientValue(-zeta_two), "C(pi) default at q=" + std::to_string(q));
        for (const Rational ad : {Rational(9, 8), Rational(2, 7), Rational(-5, 3)})
            t.expect(c_pi_steinberg(q, CoefficientValue(ad)) == CoefficientValue(-ad),
                     "C(pi) != -L(1, ad) at q=" + std::to_string(q));
    }
    return finish(6, "Steinberg pairing F(0), summed pairing and C(pi)", t, std::to_string(t.checks) + " exact identities");
}

// --- 7 ---------------------------------------------------------------------

CriterionResult hecke(const VerifyOptions&) {
    Tally t;
    for (std::int64_t q : {2, 3, 5})
        for (int a : {1, -1}) {
            const auto v = PrincipalSeriesVector::spherical(q, 3, a);
            // alpha^{-1} = alpha for alpha = +-1.
            t.expect(hecke_TP(v) == CoefficientValue(a + q * a) * v,
                     "q=" + std::to_string(q) + ",alpha=" + std::to_string(a));
        }
    return finish(7, "Hecke eigenvalue alpha + q/alpha at level 3", t, std::to_string(t.checks) + " eigenvector checks");
}

// --- 8 ---------------------------------------------------------------------

ShellFunction random_shell_function(std::mt19937_64& rng, const LocalTorusCase& c, int level) {
    ShellFunction f(c, level);
    const int terms = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < terms; ++i)
        f.set(static_cast<int>(rng() % 3) - 1, rng() % f.quotient().size(), static_cast<int>(rng() % 5) + 1);
    return f;
}

CriterionResult intertwining(const VerifyOptions& o) {
    Tally t;
    std::mt19937_64 rng(o.seed + 8);
    std::string ratios;
    for (std::int64_t q : {3, 5})
        for (int nT : {0, 1, 2}) {
            const LocalTorusCase c(TorusKind::split, PrimeLocalField(q), nT);
            const SplitEmbedding emb(q, nT);
            std::optional<std::complex<double>> ratio;
            int pairs = 0;
            for (int attempt = 0; attempt < 200 && pairs < 12; ++attempt) {
                const auto f = random_shell_function(rng, c, 1 + static_cast<int>(rng() % 2));
                const TorusElement te{static_cast<int>(rng() % 3) - 1, rng() % f.quotient().size()};
                const int alpha = attempt % 2 == 0 ? 1 : -1;
                const auto closed = intertwine_I(f, alpha, Rational(2), te).to_complex();
                const auto direct = intertwine_I_oracle(f, alpha, Rational(2), te, emb, 40).to_complex();
                if (std::abs(closed) < 1e-12) continue;
                const auto r = direct / closed;
                if (!ratio) ratio = r;
                t.expect(std::abs(r - *ratio) <= 1e-6 * std::abs(*ratio),
                         "q=" + std::to_string(q) + ",n_T=" + std::to_string(nT) + " ratio " + num(r.real()));
                ++pairs;
            }
            t.expect(pairs >= 10, "fewer than 10 usable pairs at q=" + std::to_string(q) + ",n_T=" + std::to_string(nT));
            if (ratio) ratios += (ratios.empty() ? "" : ", ") + num(ratio->real());
        }
    int exceptional = 0;
    for (const auto& sc : default_cases()) {
        if (!is_exceptional(sc.point.alpha, sc.chi, sc.torus)) continue;
        ++exceptional;
        const auto v = evaluate_at_s(i_t_statement(sc.torus, sc.point.alpha, sc.chi), Rational(0));
        t.expect(v.is_zero(), sc.point.key() + " I_T(0)=" + to_string(v));
    }
    return finish(8, "intertwining ratio constant, vanishing at s = 0", t,
                  "ratios per (q, n_T): " + ratios + "; " + std::to_string(exceptional) +
                      " exceptional configurations vanish at s = 0");
}

// --- 9 ---------------------------------------------------------------------

GroupAlgebraElement random_augmentation(std::mt19937_64& rng, const FiniteLevelGroup& G) {
    std::uniform_int_distribution<int> c(-5, 5);
    GroupAlgebraElement mu(G);
    for (std::size_t g = 0; g < G.order(); ++g)
        if (rng() % 3 == 0) mu.set(g, Rational(c(rng)));
    mu.set(0, mu[0] - degree(mu));
    return mu;
}

CriterionResult iwasawa(const VerifyOptions& o) {
    Tally t;
    std::mt19937_64 rng(o.seed + 9);
    for (auto [p, N, r] : {std::tuple{2, 2, 1}, std::tuple{3, 2, 2}, std::tuple{3, 3, 1}}) {
        const FiniteLevelGroup G(p, r, N);
        const std::string where = "(p,N,r)=(" + std::to_string(p) + "," + std::to_string(N) + "," + std::to_string(r) + ")";
        for (std::size_t g = 0; g < G.order(); ++g)
            t.expect(psi_class(phi_map(G, g), N) == G.element(g), where + " psi(phi(g)) at g=" + std::to_string(g));
        const std::vector<std::int64_t> zero(static_cast<std::size_t>(r), 0);
        for (int i = 0; i < 200; ++i) {
            const auto x = random_augmentation(rng, G), y = random_augmentation(rng, G);
            t.expect(psi_class(convolve(x, y), N) == zero, where + " psi(I^2) != 0");
        }
        t.expect(phi_span_full_rank(G), where + " phi span not full rank");
    }
    return finish(9, "psi o phi, psi(I^2) = 0 and the phi span", t, std::to_string(t.checks) + " exact checks");
}

// --- 10 --------------------------------------------------------------------

TorusCoordinate random_torus(std::mt19937_64& rng, std::int64_t p, int R) {
    const std::int64_t pR = ipow(p, R);
    std::uniform_int_distribution<int> kd(-3, 3);
    std::uniform_int_distribution<std::int64_t> ud(1, pR - 1);
    std::int64_t u;
    do u = ud(rng);
    while (u % p == 0);
    return {kd(rng), u};
}

LocalHomomorphism random_hom(std::mt19937_64& rng, std::int64_t p, int M) {
    std::uniform_int_distribution<std::int64_t> c(0, ipow(p, M) - 1);
    return {p, c(rng), c(rng), M};
}

Rational random_nonzero(std::mt19937_64& rng, std::int64_t p) {
    std::uniform_int_distribution<int> n(-60, 60), d(1, 20), e(-3, 3);
    for (;;) {
        Rational x(n(rng), d(rng));
        if (x != 0) return x * rational_pow(Rational(p), e(rng));
    }
}

CriterionResult cocycles(const VerifyOptions& o) {
    Tally t;
    const std::int64_t p = 3;
    const int M = o.cocycle_precision, N = 6, R = unit_resolution(p, M);
    const std::int64_t pM = ipow(p, M), pR = ipow(p, R);
    std::mt19937_64 rng(o.seed + 10);
    for (int i = 0; i < 100; ++i) {
        const auto l = random_hom(rng, p, M);
        const auto t1 = random_torus(rng, p, R), t2 = random_torus(rng, p, R);
        t.expect(check_cocycle_identity(l, t1, t2, N), "cocycle identity fails at sample " + std::to_string(i));
    }
    // With l(t) = 0, z(t) is +-l on the annulus between U and tU and vanishes elsewhere.
    std::uniform_int_distribution<std::int64_t> cd(0, pM - 1);
    for (int k : {-3, -2, -1, 1, 2, 3}) {
        const std::int64_t a = cd(rng);
        std::int64_t b = cd(rng);
        if (b % p == 0) ++b;
        const LocalHomomorphism l(p, a, b, M);
        const std::int64_t j = mod(-mulmod(mod(a * k, pM), invmod(b, pM), pM), pM);
        const TorusCoordinate tk{k, powmod(1 + p, static_cast<std::uint64_t>(j), pR)};
        t.expect(l.on(tk.k, tk.unit) == 0, "l(t) != 0 for k=" + std::to_string(k));
        const auto z = cocycle_z(l, tk, N);
        t.expect(z.has_compact_representative() && z.inside() == 0 && z.outside() == 0,
                 "no compact form for k=" + std::to_string(k));
        const int sign = k > 0 ? 1 : -1;
        for (int v = std::min(0, k) - 1; v <= std::max(0, k); ++v)
            for (std::int64_t u : {std::int64_t{1}, std::int64_t{2}, std::int64_t{5}, pR - 1}) {
                const bool in_annulus = k > 0 ? (v >= 0 && v < k) : (v >= k && v < 0);
                const std::int64_t expected = in_annulus ? mod(sign * l.on(v, u), pM) : 0;
                t.expect(z.at(v, u) == expected, "compact form mismatch at k=" + std::to_string(k));
            }
    }
    // phi_1(g t^{-1}) - phi_1(g) = z(t)(phi(g)) - l(t).
    for (int nT : {0, 1, 2}) {
        const SplitEmbedding emb(p, nT);
        const auto l = random_hom(rng, p, M);
        const Phi1Section phi(l, emb);
        for (int i = 0; i < 30; ++i) {
            Rational a = random_nonzero(rng, p), b = random_nonzero(rng, p), c = random_nonzero(rng, p),
                     d = random_nonzero(rng, p);
            if (i % 7 == 0) d = 0;
            if (i % 11 == 0) d = -c / emb.C();
            if (a * d - b * c == 0) continue;
            const GL2Element g(a, b, c, d);
            const Rational x = random_nonzero(rng, p);
            const GL2Element tm = emb.matrix(x);
            const auto z = cocycle_z(l, TorusCoordinate::from_rational(x, p, R), N);
            const std::int64_t lhs = mod(phi(g * tm.inverse()) - phi(g), pM);
            const std::int64_t rhs = mod(z.at_point(phi.w_coordinate(g)) - l(x), pM);
            t.expect(lhs == rhs, "coboundary mismatch at n_T=" + std::to_string(nT));
        }
    }
    return finish(10, "cocycle identity, compact form, phi_1 coboundary", t,
                  std::to_string(t.checks) + " checks mod 3^" + std::to_string(M));
}

// --- 11 --------------------------------------------------------------------

CriterionResult l_invariants(const VerifyOptions& o) {
    Tally t;
    const int M = o.linvariant_precision;
    {
        const std::int64_t p = 3, pM = ipow(p, M);
        const auto ord = LocalHomomorphism::ord(p, M);
        const auto log = LocalHomomorphism::log_coordinate(p, M);
        const TateLatticePairing tate_p{p, {{Rational(p)}}, {}};
        t.expect(geometric_L_invariant(tate_p, log).scalar() == 0, "q_T = p: log invariant is not 0");
        const TateLatticePairing tate_pp{p, {{Rational(p * (1 + p))}}, {}};
        const auto Lpp = geometric_L_invariant(tate_pp, log);
        t.expect(Lpp.precision == M && Lpp.scalar() == mod(log_coordinate_series(Rational(1 + p), p, M), pM),
                 "q_T = p(1+p): not the unit log coordinate");
        const TateLatticePairing tate_q{p, {{Rational(9 * 7, 5)}}, {}};
        for (const auto* pairing : {&tate_p, &tate_pp, &tate_q})
            t.expect(geometric_L_invariant(*pairing, ord).scalar() == 1, "ord invariant is not 1");
        for (auto [a, b] : {std::pair{2, 5}, std::pair{7, 11}, std::pair{-4, 13}})
            for (const auto* pairing : {&tate_pp, &tate_q}) {
                const auto lhs = geometric_L_invariant(*pairing, a * ord + b * log);
                const auto la = geometric_L_invariant(*pairing, ord), lb = geometric_L_invariant(*pairing, log);
                const std::int64_t m = ipow(p, lhs.precision);
                t.expect(lhs.scalar() == mod(a * la.scalar() + b * lb.scalar(), m), "rank one linearity");
            }
    }
    {
        const std::int64_t p = 5;
        const std::vector<std::vector<std::int64_t>> A{{0, 2}, {1, 0}};
        const Rational qa = Rational(5 * 7, 3), qb = Rational(25 * 2, 11);
        std::vector<std::vector<Rational>> periods(2, std::vector<Rational>(2));
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t k = 0; k < 2; ++k) periods[i][k] = rational_pow(qa, i == k ? 1 : 0) * rational_pow(qb, A[i][k]);
        const TateLatticePairing rm{p, periods, {A}};
        const auto ord = LocalHomomorphism::ord(p, M);
        const auto log = LocalHomomorphism::log_coordinate(p, M);
        const auto Lord = geometric_L_invariant(rm, ord);
        const auto Llog = geometric_L_invariant(rm, log);
        t.expect(Lord.entries == std::vector<std::vector<std::int64_t>>{{1, 0}, {0, 1}}, "rank two ord invariant");
        t.expect(Lord.commutes_with_action && Llog.commutes_with_action, "rank two commutant check");
        const auto Lsum = geometric_L_invariant(rm, 3 * ord + 4 * log);
        const std::int64_t m = ipow(p, Lsum.precision);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t k = 0; k < 2; ++k)
                t.expect(Lsum.entries[i][k] == mod(3 * Lord.entries[i][k] + 4 * Llog.entries[i][k], m), "rank two linearity");
        const TateLatticePairing generic{p, {{Rational(5), Rational(7)}, {Rational(2), Rational(25 * 3)}}, {A}};
        t.expect(!geometric_L_invariant(generic, log).commutes_with_action, "generic periods pass the commutant check");
    }
    return finish(11, "geometric L-invariant", t, std::to_string(t.checks) + " checks mod p^" + std::to_string(M));
}

// --- 12 --------------------------------------------------------------------

CriterionResult discrete_series(const VerifyOptions&) {
    Tally t;
    const int K = 20;
    const TruncatedGOModule plus = TruncatedGOModule::constant(K, 1);
    t.expect(plus.apply_R(1) == TruncatedGOModule::Term{2, 2}, "R f_2 != 2 f_4");
    t.expect(plus.apply_L(1).coefficient == 0, "L f_2 != 0");
    t.expect(plus.apply_R(-1).coefficient == 0, "R f_-2 != 0");
    t.expect(verify_omega_structure(K, 1), "lambda = +1 fails");
    t.expect(verify_omega_structure(K, -1), "lambda = -1 fails");
    std::vector<Rational> alternating;
    for (int k = -K; k <= K; ++k) alternating.emplace_back(k % 2 == 0 ? 1 : -1);
    t.expect(!verify_omega_structure(TruncatedGOModule(K, alternating)).valid(), "lambda = (-1)^k accepted");
    const auto ext = verify_extension_structure(K);
    t.expect(ext.projection_kernel, "projection kernel");
    t.expect(ext.projection_equivariant, "projection equivariance");
    t.expect(ext.kernel_stable, "kernel stability");
    t.expect(ext.sign_twist_intertwines, "sign twist");
    t.expect(ext.rotation_compatible, "rotation compatibility");
    const auto solved = solve_omega_structures(K);
    t.expect(solved.free_parameters == 0 && solved.solutions.size() == 2, "solution count");
    std::set<int> constants;
    for (const auto& lambda : solved.solutions) {
        const bool constant = std::all_of(lambda.begin(), lambda.end(), [&](const Rational& x) { return x == lambda.front(); });
        t.expect(constant, "non-constant solution");
        if (constant && (lambda.front() == 1 || lambda.front() == -1)) constants.insert(lambda.front() == 1 ? 1 : -1);
    }
    t.expect(constants == std::set<int>{-1, 1}, "solutions are not lambda = +1 and lambda = -1");
    return finish(12, "discrete series relations and omega structures", t,
                  std::to_string(solved.solutions.size()) + " omega structures at K_max = 20");
}

struct CriterionEntry {
    CriterionResult (*run)(const VerifyOptions&);
    double time_limit;  // seconds, 0 for none
};

const CriterionEntry kCriteria[] = {
    {statement_vs_proof, 10}, {oracle_agreement, 60}, {exceptional_zero, 0}, {euler_vanishing, 0},
    {inner_products, 0},      {steinberg_f0, 0},      {hecke, 0},            {intertwining, 0},
    {iwasawa, 10},            {cocycles, 0},          {l_invariants, 0},     {discrete_series, 0},
};

}  // namespace

CriterionResult run_criterion(int id, const VerifyOptions& options) {
    if (id < 1 || id > 12) throw ConfigError("criterion id must be in 1..12");
    const CriterionEntry& entry = kCriteria[id - 1];
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
        r = entry.run(options);
    } catch (const std::exception& e) {
        r.id = id;
        r.name = "criterion " + std::to_string(id);
        r.passed = false;
        r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (entry.time_limit > 0 && r.seconds > entry.time_limit) {
        r.passed = false;
        r.detail += "; over the " + num(entry.time_limit) + " s budget";
    }
    return r;
}

std::vector<CriterionResult> run_acceptance(const VerifyOptions& options) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= 12; ++id) out.push_back(run_criterion(id, options));
    return out;
}

const std::set<int>& documented_unattainable() {
    static const std::set<int> ids{2};
    return ids;
}

bool only_documented_failures(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.passed && documented_unattainable().count(r.id) == 0) return false;
    return true;
}

}  // namespace acl::tools
