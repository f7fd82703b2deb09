#include "app.hpp"

#include "acl/discrete_series.hpp"
#include "acl/errors.hpp"
#include "acl/iwasawa.hpp"
#include "acl/padic.hpp"
#include "acl/steinberg.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <random>
#include <sstream>

namespace acl::tools {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Config ingestion

namespace {

[[noreturn]] void bad(const std::string& key, const std::string& why) {
    throw ConfigError("config key '" + key + "': " + why);
}

template <class T>
T scalar(const YAML::Node& node, const std::string& key) {
    if (!node.IsScalar()) bad(key, "expected a scalar");
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        bad(key, "cannot read '" + node.Scalar() + "'");
    }
}

Rational rational(const YAML::Node& node, const std::string& key) {
    if (!node.IsScalar()) bad(key, "expected a rational such as 3/2");
    try {
        return parse_rational(node.Scalar());
    } catch (const ConfigError&) {
        bad(key, "cannot read '" + node.Scalar() + "' as a rational");
    }
}

// A rational scalar, or a pair [re, im] for a Gaussian rational.
CoefficientValue coefficient(const YAML::Node& node, const std::string& key) {
    if (node.IsSequence()) {
        if (node.size() != 2) bad(key, "complex values are written [re, im]");
        return CoefficientValue(GaussianRational(rational(node[0], key), rational(node[1], key)));
    }
    return CoefficientValue(rational(node, key));
}

// A scalar is read as a one-element list.
template <class T, class Read>
std::vector<T> list(const YAML::Node& node, const std::string& key, Read read) {
    std::vector<T> out;
    if (node.IsSequence()) {
        for (const auto& item : node) out.push_back(read(item, key));
    } else {
        out.push_back(read(node, key));
    }
    if (out.empty()) bad(key, "empty list");
    return out;
}

template <class T>
std::vector<T> scalar_list(const YAML::Node& node, const std::string& key) {
    return list<T>(node, key, [](const YAML::Node& n, const std::string& k) { return scalar<T>(n, k); });
}

bool is_prime_value(std::int64_t p) { return p >= 2 && is_prime(p); }

PlaceConfig parse_place(const YAML::Node& node, std::size_t index) {
    const std::string where = "places[" + std::to_string(index) + "]";
    if (!node.IsMap()) bad(where, "expected a map");
    PlaceConfig place;
    auto& d = place.data;
    bool have_q = false;
    for (const auto& kv : node) {
        const std::string k = kv.first.as<std::string>();
        const std::string key = where + "." + k;
        const YAML::Node& v = kv.second;
        if (k == "q") {
            d.q = scalar<std::int64_t>(v, key);
            have_q = true;
        } else if (k == "torus") {
            try {
                d.torus = parse_torus_kind(scalar<std::string>(v, key));
            } catch (const DomainError& e) {
                bad(key, e.what());
            }
        } else if (k == "pi") {
            const auto s = scalar<std::string>(v, key);
            if (s == "spherical") d.pi = RepresentationKind::spherical;
            else if (s == "special") d.pi = RepresentationKind::special;
            else bad(key, "expected spherical or special");
        } else if (k == "alpha") {
            d.alpha = coefficient(v, key);
        } else if (k == "divides_quaternion_discriminant") {
            d.divides_quaternion_discriminant = scalar<bool>(v, key);
        } else if (k == "squarefree_level_condition") {
            d.squarefree_level_condition = scalar<bool>(v, key);
        } else if (k == "l_half_pi_chi") {
            d.l_half_pi_chi = coefficient(v, key);
        } else if (k == "l_one_ad") {
            d.l_one_ad = coefficient(v, key);
        } else if (k == "whittaker_norm") {
            d.whittaker_norm = coefficient(v, key);
        } else if (k == "norm_different") {
            d.norm_different = coefficient(v, key);
        } else if (k == "vol_T") {
            d.vol_T = coefficient(v, key);
        } else if (k == "chi_at_uniformizer") {
            place.chi_at_uniformizer = coefficient(v, key);
        } else {
            bad(key, "unknown key");
        }
    }
    if (!have_q) bad(where, "q is required");
    try {
        (void)field_from_q(d.q);
    } catch (const DomainError& e) {
        bad(where + ".q", e.what());
    }
    return place;
}

}  // namespace

void validate(const RunConfig& c) {
    for (auto q : c.grid.qs) try {
            (void)field_from_q(q);
        } catch (const DomainError& e) {
            bad("q", e.what());
        }
    for (int n : c.grid.n_T)
        if (n < 0 || n > 12) bad("n_T", "must lie in 0..12");
    for (int n : c.grid.n_chi)
        if (n < 0 || n > 12) bad("n_chi", "must lie in 0..12");
    for (int a : c.grid.alphas)
        if (a != 1 && a != -1) bad("alpha", "must be 1 or -1");
    for (int u : c.grid.uniformizers)
        if (u != 1 && u != -1) bad("uniformizer", "must be 1 or -1");
    for (int n : c.n_s)
        if (n < 0) bad("n_s", "must be nonnegative");
    if (c.truncation < 1) bad("truncation", "must be positive");
    if (c.precision && (*c.precision < 1 || *c.precision > 30)) bad("precision", "must lie in 1..30");
    if (c.jobs < 1) bad("jobs", "must be positive");
    for (const auto& g : c.groups) {
        if (!is_prime_value(g[0])) bad("groups", "p must be prime");
        if (g[1] < 1 || g[2] < 1) bad("groups", "N and r must be positive");
        if (std::pow(static_cast<double>(g[0]), g[1] * g[2]) > 4096) bad("groups", "p^(N r) above 4096");
    }
    if (c.products < 0 || c.samples < 0) bad("products", "counts must be nonnegative");
    if (!is_prime_value(c.p)) bad("p", "must be prime");
    // The unit tables of the cocycle module live in Z / p^(M + 2).
    const int M = c.precision.value_or(10);
    if (std::pow(static_cast<double>(c.p), M + 2) > 9.0e15) bad("precision", "p^(M + 2) does not fit in 64 bits");
    if (c.cocycle_level < 1) bad("cocycle_level", "must be positive");
    if (c.derivative_level < 1 || std::pow(static_cast<double>(c.p), 2 * c.derivative_level) > 4096)
        bad("derivative_level", "needs 1 <= level and p^(2 level) <= 4096");
    if (c.K_max < 3) bad("K_max", "must be at least 3");
    if (c.periods.empty()) bad("periods", "empty period matrix");
    for (const auto& row : c.periods) {
        if (row.size() != c.periods.size()) bad("periods", "the period matrix must be square");
        for (const auto& x : row)
            if (x == 0) bad("periods", "periods must be nonzero");
    }
    for (const auto& m : c.action) {
        if (m.size() != c.periods.size()) bad("action", "matrices must match the rank");
        for (const auto& row : m)
            if (row.size() != c.periods.size()) bad("action", "matrices must be square");
    }
}

RunConfig parse_config(const std::string& yaml_text) {
    YAML::Node root;
    try {
        root = YAML::Load(yaml_text);
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("config is not valid YAML: ") + e.what());
    }
    RunConfig c;
    if (root.IsNull()) return c;
    if (!root.IsMap()) throw ConfigError("config must be a key-value document");

    std::optional<GlobalInputs> global;
    auto g = [&]() -> GlobalInputs& {
        if (!global) global.emplace();
        return *global;
    };
    bool have_norm_disc = false, have_l_ratio = false, have_norm_f = false;

    for (const auto& kv : root) {
        const std::string key = kv.first.as<std::string>();
        const YAML::Node& v = kv.second;
        if (key == "q") c.grid.qs = scalar_list<std::int64_t>(v, key);
        else if (key == "kind" || key == "kinds") {
            c.grid.kinds = list<TorusKind>(v, key, [](const YAML::Node& n, const std::string& k) {
                try {
                    return parse_torus_kind(scalar<std::string>(n, k));
                } catch (const DomainError& e) {
                    bad(k, e.what());
                }
            });
        } else if (key == "n_T") c.grid.n_T = scalar_list<int>(v, key);
        else if (key == "alpha") c.grid.alphas = scalar_list<int>(v, key);
        else if (key == "n_chi") c.grid.n_chi = scalar_list<int>(v, key);
        else if (key == "uniformizer") c.grid.uniformizers = scalar_list<int>(v, key);
        else if (key == "choice") c.grid.choices = scalar_list<std::uint64_t>(v, key);
        else if (key == "s") c.s_points = list<Rational>(v, key, rational);
        else if (key == "n_s") c.n_s = scalar_list<int>(v, key);
        else if (key == "truncation") c.truncation = scalar<int>(v, key);
        else if (key == "precision") c.precision = scalar<int>(v, key);
        else if (key == "seed") c.seed = scalar<std::uint64_t>(v, key);
        else if (key == "jobs") c.jobs = scalar<int>(v, key);
        else if (key == "format") {
            const auto f = scalar<std::string>(v, key);
            if (f == "json") c.format = OutputFormat::json;
            else if (f == "csv") c.format = OutputFormat::csv;
            else bad(key, "expected json or csv");
        } else if (SymbolicConstants::kNames.count(key)) c.constants.set(key, coefficient(v, key));
        else if (key == "groups") {
            if (!v.IsSequence()) bad(key, "expected a list of [p, N, r]");
            c.groups.clear();
            for (const auto& item : v) {
                const auto t = scalar_list<int>(item, key);
                if (t.size() != 3) bad(key, "each group is [p, N, r]");
                c.groups.push_back({t[0], t[1], t[2]});
            }
        } else if (key == "products") c.products = scalar<int>(v, key);
        else if (key == "p") c.p = scalar<std::int64_t>(v, key);
        else if (key == "cocycle_level") c.cocycle_level = scalar<int>(v, key);
        else if (key == "samples") c.samples = scalar<int>(v, key);
        else if (key == "periods") {
            if (!v.IsSequence()) bad(key, "expected a list of rows");
            c.periods.clear();
            for (const auto& row : v) c.periods.push_back(list<Rational>(row, key, rational));
        } else if (key == "action") {
            if (!v.IsSequence()) bad(key, "expected a list of matrices");
            c.action.clear();
            for (const auto& m : v) {
                if (!m.IsSequence()) bad(key, "expected a matrix");
                std::vector<std::vector<std::int64_t>> mat;
                for (const auto& row : m) mat.push_back(scalar_list<std::int64_t>(row, key));
                c.action.push_back(std::move(mat));
            }
        } else if (key == "base") c.base = coefficient(v, key);
        else if (key == "linv_ord") c.linv_ord = coefficient(v, key);
        else if (key == "linv_log") c.linv_log = coefficient(v, key);
        else if (key == "derivative_level") c.derivative_level = scalar<int>(v, key);
        else if (key == "places") {
            if (!v.IsSequence()) bad(key, "expected a list of maps");
            for (std::size_t i = 0; i < v.size(); ++i) c.places.push_back(parse_place(v[i], i));
        } else if (key == "setting") {
            const auto s = scalar<std::string>(v, key);
            if (s == "definite") g().setting = MeasureSetting::definite;
            else if (s == "indefinite") g().setting = MeasureSetting::indefinite;
            else bad(key, "expected definite or indefinite");
        } else if (key == "degree") g().degree = scalar<int>(v, key);
        else if (key == "norm_disc") {
            g().norm_disc = scalar<double>(v, key);
            have_norm_disc = true;
        } else if (key == "l_ratio") {
            g().l_ratio = scalar<double>(v, key);
            have_l_ratio = true;
        } else if (key == "norm_f_sq") {
            g().norm_f_sq = scalar<double>(v, key);
            have_norm_f = true;
        } else if (key == "e_factor") g().e_factor = scalar<double>(v, key);
        else if (key == "K_max") c.K_max = scalar<int>(v, key);
        else bad(key, "unknown key");
    }
    if (global && !(have_norm_disc && have_l_ratio && have_norm_f))
        throw ConfigError("the interpolation formula needs norm_disc, l_ratio and norm_f_sq together");
    c.global = global;
    validate(c);
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

// ---------------------------------------------------------------------------
// Rows

namespace {

// Twelve significant digits, no negative zero.
double rounded(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    const double r = std::strtod(buf, nullptr);
    return r == 0 ? 0.0 : r;
}

// Empty when the value does not involve any symbolic constant.
std::string deps_column(const std::set<std::string>& deps) { return deps.empty() ? "" : deps_to_string(deps); }

Json number(double x) { return std::isfinite(x) ? Json(rounded(x)) : Json(nullptr); }

void put_value(Json& row, const std::string& prefix, const std::optional<CoefficientValue>& v) {
    if (!v) {
        row[prefix + "_re"] = nullptr;
        row[prefix + "_im"] = nullptr;
        row[prefix + "_exact"] = nullptr;
        return;
    }
    const auto z = v->to_complex();
    row[prefix + "_re"] = number(z.real());
    row[prefix + "_im"] = number(z.imag());
    row[prefix + "_exact"] = v->is_exact() ? Json(to_string(v->exact())) : Json(nullptr);
}

const std::vector<std::string> kSweepColumns{"q",         "kind",        "n_T",      "n_chi",       "alpha",
                                             "uniformizer", "choice",    "s",        "value_re",    "value_im",
                                             "value_exact", "exceptional", "symbolic_deps"};

std::vector<std::string> sweep_columns(std::initializer_list<std::string> extra) {
    auto out = kSweepColumns;
    out.insert(out.end(), extra);
    return out;
}

Json sweep_row(const SweepPoint& pt, const std::optional<Rational>& s) {
    Json row;
    row["q"] = pt.q;
    row["kind"] = to_string(pt.kind);
    row["n_T"] = pt.n_T;
    row["n_chi"] = pt.n_chi;
    row["alpha"] = pt.alpha;
    row["uniformizer"] = pt.kind == TorusKind::inert ? Json(nullptr) : Json(pt.uniformizer);
    row["choice"] = pt.choice;
    row["s"] = s ? Json(to_string(*s)) : Json(nullptr);
    return row;
}

Json failure(const std::string& table, const std::string& key, const std::string& check, const std::string& detail) {
    Json f;
    f["schema"] = kSchema;
    f["table"] = table;
    f["key"] = key;
    f["check"] = check;
    f["detail"] = detail;
    return f;
}

// Per-case row and failure buffers, concatenated in case order.
struct Buffers {
    std::vector<std::vector<Json>> rows, failures;
    explicit Buffers(std::size_t n) : rows(n), failures(n) {}
    void into(Table& t) const {
        for (const auto& r : rows) t.rows.insert(t.rows.end(), r.begin(), r.end());
        for (const auto& f : failures) t.failures.insert(t.failures.end(), f.begin(), f.end());
    }
};

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

// --- local-integral --------------------------------------------------------

Table local_integral(const RunConfig& cfg) {
    Table t{"local-integral", sweep_columns({"statement_equals_proof", "oracle_re", "oracle_im", "oracle_tail", "note"}), {}, {}};
    const auto cases = expand(cfg.grid);
    Buffers buf(cases.size());
    parallel_for(cases.size(), cfg.jobs, [&](std::size_t i) {
        const auto& sc = cases[i];
        const auto& pt = sc.point;
        const auto st = i_t_statement(sc.torus, pt.alpha, sc.chi);
        const bool same = equal(st, i_t_proofform(sc.torus, pt.alpha, sc.chi));
        const bool exceptional = is_exceptional(pt.alpha, sc.chi, sc.torus);
        if (!same) buf.failures[i].push_back(failure(t.name, pt.key(), "statement_equals_proof", "forms differ"));
        for (const auto& s : cfg.s_points) {
            Json row = sweep_row(pt, s);
            std::string note;
            std::optional<CoefficientValue> value;
            try {
                value = evaluate_at_s(st, s);
            } catch (const PoleError& e) {
                note = "pole of order " + std::to_string(e.order());
            }
            put_value(row, "value", value);
            row["exceptional"] = exceptional;
            row["symbolic_deps"] = "";
            row["statement_equals_proof"] = same;
            row["oracle_re"] = nullptr;
            row["oracle_im"] = nullptr;
            row["oracle_tail"] = nullptr;
            if (s > Rational(1, 2)) {
                try {
                    const auto o = i_t_oracle(sc.torus, pt.alpha, sc.chi, s, cfg.truncation);
                    const auto z = o.value.to_complex();
                    row["oracle_re"] = number(z.real());
                    row["oracle_im"] = number(z.imag());
                    row["oracle_tail"] = number(o.tail_bound);
                    if (value) {
                        const double diff = std::abs(z - value->to_complex());
                        if (diff > 1e-8 + o.tail_bound)
                            buf.failures[i].push_back(failure(t.name, pt.key() + ",s=" + to_string(s), "oracle_agreement",
                                                              "|oracle - closed| = " + fmt(diff)));
                    }
                } catch (const DivergenceError&) {
                    note = "oracle diverges";
                } catch (const EnumerationError&) {
                    note = "oracle needs a prime residue field";
                }
            }
            if (s == 0 && exceptional && value && !value->is_zero())
                buf.failures[i].push_back(failure(t.name, pt.key(), "exceptional_zero", "I_T(0) = " + to_string(*value)));
            row["note"] = note;
            buf.rows[i].push_back(std::move(row));
        }
    });
    buf.into(t);
    return t;
}

// --- exceptional -----------------------------------------------------------

Table exceptional(const RunConfig& cfg) {
    Table t{"exceptional", sweep_columns({"order_at_s0"}), {}, {}};
    const auto cases = expand(cfg.grid);
    Buffers buf(cases.size());
    parallel_for(cases.size(), cfg.jobs, [&](std::size_t i) {
        const auto& sc = cases[i];
        const auto& pt = sc.point;
        const auto st = i_t_statement(sc.torus, pt.alpha, sc.chi);
        const bool predicted = is_exceptional(pt.alpha, sc.chi, sc.torus);
        const int order = order_at_X(st, CoefficientValue(1));
        Json row = sweep_row(pt, Rational(0));
        std::optional<CoefficientValue> value;
        if (order >= 0) value = evaluate_at_s(st, Rational(0));
        put_value(row, "value", value);
        row["exceptional"] = predicted;
        row["symbolic_deps"] = "";
        row["order_at_s0"] = order;
        if (predicted != (order >= 1))
            buf.failures[i].push_back(failure(t.name, pt.key(), "exceptional_iff_zero",
                                              "exceptional=" + std::to_string(predicted) + ", order " + std::to_string(order)));
        buf.rows[i].push_back(std::move(row));
    });
    buf.into(t);
    return t;
}

// --- euler -----------------------------------------------------------------

Table euler(const RunConfig& cfg) {
    Table t{"euler", sweep_columns({}), {}, {}};
    const auto cases = expand(cfg.grid);
    Buffers buf(cases.size());
    parallel_for(cases.size(), cfg.jobs, [&](std::size_t i) {
        const auto& sc = cases[i];
        const auto& pt = sc.point;
        const bool exc = is_exceptional(pt.alpha, sc.chi, sc.torus);
        const auto e = euler_factor_C(sc.torus, SteinbergDatum::special(pt.alpha), sc.chi);
        Json row = sweep_row(pt, std::nullopt);
        put_value(row, "value", e);
        row["exceptional"] = exc;
        row["symbolic_deps"] = "";
        if (e.is_zero() != exc)
            buf.failures[i].push_back(failure(t.name, pt.key(), "zero_iff_exceptional", "C = " + to_string(e)));
        buf.rows[i].push_back(std::move(row));
    });
    buf.into(t);
    return t;
}

// --- pairing ---------------------------------------------------------------

Table pairing(const RunConfig& cfg) {
    Table t{"pairing", sweep_columns({"branch", "n_s", "rederived_equal"}), {}, {}};
    for (auto q : cfg.grid.qs)
        for (auto kind : cfg.grid.kinds)
            for (int nT : cfg.grid.n_T) {
                const LocalTorusCase c(kind, field_from_q(q), nT);
                const auto emit = [&](const SteinbergDatum& d, int ns, const std::string& branch, Json alpha) {
                    const auto closed = inner_product_fP(c, d, ns, cfg.constants);
                    const auto direct = inner_product_fP_rederived(c, d, ns, cfg.constants);
                    const bool same = closed.value == direct.value && closed.deps == direct.deps;
                    SweepPoint pt{q, kind, nT, 1, 0, 0, 0};
                    Json row = sweep_row(pt, std::nullopt);
                    row["n_chi"] = nullptr;
                    row["alpha"] = std::move(alpha);
                    row["uniformizer"] = nullptr;
                    row["choice"] = nullptr;
                    put_value(row, "value", closed.value);
                    row["exceptional"] = closed.exceptional_zero;
                    row["symbolic_deps"] = deps_column(closed.deps);
                    row["branch"] = branch;
                    row["n_s"] = ns;
                    row["rederived_equal"] = same;
                    if (!same)
                        t.failures.push_back(failure(t.name, "q=" + std::to_string(q) + ",kind=" + to_string(kind) +
                                                                 ",n_T=" + std::to_string(nT) + ",branch=" + branch +
                                                                 ",n_s=" + std::to_string(ns),
                                                     "closed_equals_rederived",
                                                     to_string(closed.value) + " vs " + to_string(direct.value)));
                    t.rows.push_back(std::move(row));
                };
                for (int a : cfg.grid.alphas) emit(SteinbergDatum::special(a), 0, "special", a);
                const auto alpha = spherical_alpha(q);
                for (int ns : cfg.n_s) emit(SteinbergDatum::spherical(alpha, q), ns, "spherical", to_string(alpha));
            }
    return t;
}

// --- iwasawa ---------------------------------------------------------------

GroupAlgebraElement random_augmentation(std::mt19937_64& rng, const FiniteLevelGroup& G) {
    std::uniform_int_distribution<int> c(-5, 5);
    GroupAlgebraElement mu(G);
    for (std::size_t g = 0; g < G.order(); ++g)
        if (rng() % 3 == 0) mu.set(g, Rational(c(rng)));
    mu.set(0, mu[0] - degree(mu));
    return mu;
}

Table iwasawa(const RunConfig& cfg) {
    Table t{"iwasawa",
            {"p", "N", "r", "order", "psi_phi_identity", "products_checked", "psi_kills_I2", "quotient_order",
             "exponent_divides_pN", "generated_by_phi", "phi_span_full_rank"},
            {},
            {}};
    Buffers buf(cfg.groups.size());
    parallel_for(cfg.groups.size(), cfg.jobs, [&](std::size_t i) {
        const auto [p, N, r] = cfg.groups[i];
        const FiniteLevelGroup G(p, r, N);
        const std::string key = "p=" + std::to_string(p) + ",N=" + std::to_string(N) + ",r=" + std::to_string(r);
        bool identity = true;
        for (std::size_t g = 0; g < G.order(); ++g) identity = identity && psi_class(phi_map(G, g), N) == G.element(g);
        std::mt19937_64 rng(cfg.seed + i);
        const std::vector<std::int64_t> zero(static_cast<std::size_t>(r), 0);
        bool kills = true;
        for (int k = 0; k < cfg.products; ++k)
            kills = kills && psi_class(convolve(random_augmentation(rng, G), random_augmentation(rng, G)), N) == zero;
        const auto quotient = augmentation_quotient(G);
        const bool full = phi_span_full_rank(G);
        Json row;
        row["p"] = p;
        row["N"] = N;
        row["r"] = r;
        row["order"] = G.order();
        row["psi_phi_identity"] = identity;
        row["products_checked"] = cfg.products;
        row["psi_kills_I2"] = kills;
        row["quotient_order"] = quotient.order.str();
        row["exponent_divides_pN"] = quotient.exponent_divides_pN;
        row["generated_by_phi"] = quotient.generated_by_phi_basis;
        row["phi_span_full_rank"] = full;
        for (const auto& [ok, what] : {std::pair{identity, "psi_phi_identity"}, std::pair{kills, "psi_kills_I2"},
                                       std::pair{full, "phi_span_full_rank"}})
            if (!ok) buf.failures[i].push_back(failure(t.name, key, what, "check failed"));
        buf.rows[i].push_back(std::move(row));
    });
    buf.into(t);
    return t;
}

// --- cocycle ---------------------------------------------------------------

Table cocycle(const RunConfig& cfg) {
    Table t{"cocycle", {"sample", "p", "M", "N", "l_a", "l_b", "t1_k", "t1_unit", "t2_k", "t2_unit", "identity_holds"}, {}, {}};
    const std::int64_t p = cfg.p;
    const int M = cfg.precision.value_or(8), R = unit_resolution(p, M);
    const std::int64_t pM = ipow(p, M), pR = ipow(p, R);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<std::int64_t> coeff(0, pM - 1), unit(1, pR - 1);
    std::uniform_int_distribution<int> kd(-3, 3);
    struct Sample {
        LocalHomomorphism l;
        TorusCoordinate t1, t2;
    };
    const auto torus = [&] {
        std::int64_t u;
        do u = unit(rng);
        while (u % p == 0);
        return TorusCoordinate{kd(rng), u};
    };
    std::vector<Sample> samples;
    for (int i = 0; i < cfg.samples; ++i) {
        LocalHomomorphism l(p, coeff(rng), coeff(rng), M);
        const auto t1 = torus();
        samples.push_back({l, t1, torus()});
    }
    std::vector<char> ok(samples.size());
    parallel_for(samples.size(), cfg.jobs, [&](std::size_t i) {
        ok[i] = check_cocycle_identity(samples[i].l, samples[i].t1, samples[i].t2, cfg.cocycle_level);
    });
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        Json row;
        row["sample"] = i;
        row["p"] = p;
        row["M"] = M;
        row["N"] = std::max(cfg.cocycle_level, R);
        row["l_a"] = s.l.a();
        row["l_b"] = s.l.b();
        row["t1_k"] = s.t1.k;
        row["t1_unit"] = s.t1.unit;
        row["t2_k"] = s.t2.k;
        row["t2_unit"] = s.t2.unit;
        row["identity_holds"] = ok[i] != 0;
        if (!ok[i]) t.failures.push_back(failure(t.name, "sample=" + std::to_string(i), "cocycle_identity", "z(t1 t2) != z(t1) + t1 z(t2)"));
        t.rows.push_back(std::move(row));
    }
    return t;
}

// --- linvariant ------------------------------------------------------------

Table linvariant(const RunConfig& cfg) {
    Table t{"linvariant", {"hom", "p", "rank", "precision", "entries", "scalar", "commutes_with_action"}, {}, {}};
    const int M = cfg.precision.value_or(10);
    const TateLatticePairing pairing{cfg.p, cfg.periods, cfg.action};
    const std::vector<std::pair<std::string, LocalHomomorphism>> homs{
        {"ord", LocalHomomorphism::ord(cfg.p, M)}, {"log", LocalHomomorphism::log_coordinate(cfg.p, M)}};
    for (const auto& [name, l] : homs) {
        try {
            const auto L = geometric_L_invariant(pairing, l);
            Json row;
            row["hom"] = name;
            row["p"] = cfg.p;
            row["rank"] = pairing.rank();
            row["precision"] = L.precision;
            row["entries"] = L.entries;
            row["scalar"] = pairing.rank() == 1 ? Json(L.scalar()) : Json(nullptr);
            row["commutes_with_action"] = L.commutes_with_action;
            if (!L.commutes_with_action)
                t.failures.push_back(failure(t.name, name, "commutes_with_action", "L-invariant leaves the commutant"));
            if (name == "ord") {
                bool identity = true;
                for (std::size_t i = 0; i < L.entries.size(); ++i)
                    for (std::size_t k = 0; k < L.entries.size(); ++k) identity = identity && L.entries[i][k] == (i == k ? 1 : 0);
                if (!identity) t.failures.push_back(failure(t.name, name, "ord_normalization", "ord invariant is not the identity"));
            }
            t.rows.push_back(std::move(row));
        } catch (const PairingNotPerfect& e) {
            t.failures.push_back(failure(t.name, name, "pairing_perfect", e.what()));
        }
    }
    return t;
}

// --- interpolate -----------------------------------------------------------

std::vector<PlaceConfig> default_places() {
    std::vector<PlaceConfig> out(2);
    out[0].data.q = 5;
    out[0].data.torus = TorusKind::inert;
    out[0].data.pi = RepresentationKind::special;
    out[0].data.alpha = CoefficientValue(-1);
    out[1].data.q = 7;
    out[1].data.torus = TorusKind::ramified;
    out[1].data.pi = RepresentationKind::special;
    out[1].data.alpha = CoefficientValue(1);
    out[1].chi_at_uniformizer = CoefficientValue(-1);
    return out;
}

Table interpolate(const RunConfig& cfg) {
    Table t{"interpolate",
            {"place", "q", "torus", "pi", "alpha", "chi_at_uniformizer", "value_re", "value_im", "value_exact",
             "hom_space_vanishes", "symbolic_deps"},
            {},
            {}};
    const auto places = cfg.places.empty() ? default_places() : cfg.places;
    std::complex<double> product = 1;
    std::set<std::string> deps;
    for (std::size_t i = 0; i < places.size(); ++i) {
        const auto& pl = places[i];
        const auto c = c_v_constant(pl.data, pl.chi_at_uniformizer);
        Json row;
        row["place"] = std::to_string(i);
        row["q"] = pl.data.q;
        row["torus"] = to_string(pl.data.torus);
        row["pi"] = pl.data.pi == RepresentationKind::spherical ? "spherical" : "special";
        row["alpha"] = to_string(pl.data.alpha);
        row["chi_at_uniformizer"] = to_string(pl.chi_at_uniformizer);
        put_value(row, "value", c.value.value);
        row["hom_space_vanishes"] = c.hom_space_vanishes;
        row["symbolic_deps"] = deps_column(c.value.deps);
        product *= c.value.value.to_complex();
        deps.insert(c.value.deps.begin(), c.value.deps.end());
        t.rows.push_back(std::move(row));
    }
    if (cfg.global) {
        const auto& g = *cfg.global;
        double e = 0;
        if (g.e_factor) {
            e = *g.e_factor;
        } else {
            const auto cases = expand(cfg.grid);
            if (cases.empty()) throw ConfigError("no sweep point to take the Euler factor from");
            const auto& sc = cases.front();
            e = euler_factor_C(sc.torus, SteinbergDatum::special(sc.point.alpha), sc.chi).to_complex().real();
        }
        if (std::abs(product.imag()) > 1e-12) throw DomainError("the product of the local constants is not real");
        const double v = interpolation_value(g.setting, g.degree, g.norm_disc, product.real(), e, g.l_ratio, g.norm_f_sq);
        Json row;
        row["place"] = "formula";
        row["q"] = nullptr;
        row["torus"] = nullptr;
        row["pi"] = nullptr;
        row["alpha"] = nullptr;
        row["chi_at_uniformizer"] = nullptr;
        put_value(row, "value", CoefficientValue(std::complex<double>(v, 0)));
        row["hom_space_vanishes"] = nullptr;
        row["symbolic_deps"] = deps_column(deps);
        t.rows.push_back(std::move(row));
    }
    return t;
}

// --- derivative ------------------------------------------------------------

Table derivative(const RunConfig& cfg) {
    Table t{"derivative", {"quantity", "value_re", "value_im", "value_exact", "symbolic_deps", "consistent"}, {}, {}};
    const std::int64_t p = cfg.p;
    const int M = cfg.precision.value_or(8);
    const auto cls = derivative_class(cfg.base, LInvariantVector{cfg.linv_ord, cfg.linv_log});
    const auto ord = LocalHomomorphism::ord(p, M), log = LocalHomomorphism::log_coordinate(p, M);
    const auto add = [&](const std::string& q, const CoefficientValue& v, const std::string& deps, Json consistent) {
        Json row;
        row["quantity"] = q;
        put_value(row, "value", v);
        row["symbolic_deps"] = deps;
        row["consistent"] = std::move(consistent);
        t.rows.push_back(std::move(row));
    };
    add("class(ord)", cls.at(ord), "", nullptr);
    add("class(log)", cls.at(log), "", nullptr);
    // Round trip through a measure on (Z/p^N)^2 when the coordinates are p-integral.
    const FiniteLevelGroup G(p, 2, cfg.derivative_level);
    try {
        const auto mu = derivative_class_measure(cls, G);
        const auto psi = psi_class(mu, M);
        const std::int64_t m = ipow(p, std::min(M, cfg.derivative_level));
        const bool ok = psi.at(0) == residue(cls.at(ord).exact().re(), m) && psi.at(1) == residue(cls.at(log).exact().re(), m);
        add("psi(measure) ord coordinate", CoefficientValue(Rational(psi.at(0))), "", ok);
        add("psi(measure) log coordinate", CoefficientValue(Rational(psi.at(1))), "", ok);
        if (!ok) t.failures.push_back(failure(t.name, "measure", "psi_round_trip", "psi coordinates differ from the class"));
    } catch (const DomainError& e) {
        add("psi(measure)", CoefficientValue(0), "", nullptr);
        t.rows.back()["value_re"] = nullptr;
        t.rows.back()["value_im"] = nullptr;
        t.rows.back()["value_exact"] = nullptr;
        t.rows.back()["consistent"] = std::string("not p-integral: ") + e.what();
    }
    add("C(pi_P)", c_pi_steinberg(p), "", nullptr);
    const auto pair = alpha_1U_pairing(p, 0, cfg.constants);
    add("alpha pairing of delta_T(1_U)", pair.value, deps_column(pair.deps), nullptr);
    return t;
}

// --- discrete-series -------------------------------------------------------

Table discrete(const RunConfig& cfg) {
    Table t{"discrete-series", {"check", "K_max", "passed"}, {}, {}};
    const int K = cfg.K_max;
    const auto add = [&](const std::string& check, bool ok) {
        Json row;
        row["check"] = check;
        row["K_max"] = K;
        row["passed"] = ok;
        if (!ok) t.failures.push_back(failure(t.name, check, check, "check failed"));
        t.rows.push_back(std::move(row));
    };
    add("omega structure lambda = +1", verify_omega_structure(K, 1));
    add("omega structure lambda = -1", verify_omega_structure(K, -1));
    std::vector<Rational> alternating;
    for (int k = -K; k <= K; ++k) alternating.emplace_back(k % 2 == 0 ? 1 : -1);
    add("lambda = (-1)^k rejected", !verify_omega_structure(TruncatedGOModule(K, alternating)).valid());
    const auto ext = verify_extension_structure(K);
    add("projection kernel", ext.projection_kernel);
    add("projection equivariance", ext.projection_equivariant);
    add("kernel stability", ext.kernel_stable);
    add("sign twist intertwines", ext.sign_twist_intertwines);
    add("rotation compatibility", ext.rotation_compatible);
    const auto solved = solve_omega_structures(K);
    add("exactly two omega structures", solved.free_parameters == 0 && solved.solutions.size() == 2);
    return t;
}

// --- verify-all ------------------------------------------------------------

Table verify_all(const RunConfig& cfg) {
    Table t{"verify-all", {"criterion", "name", "passed", "documented_unattainable", "checks", "detail"}, {}, {}};
    VerifyOptions o;
    o.jobs = cfg.jobs;
    o.seed = cfg.seed;
    o.oracle_truncation = cfg.truncation;
    if (cfg.precision) o.cocycle_precision = o.linvariant_precision = *cfg.precision;
    for (const auto& r : run_acceptance(o)) {
        const bool documented = documented_unattainable().count(r.id) != 0;
        Json row;
        row["criterion"] = r.id;
        row["name"] = r.name;
        row["passed"] = r.passed;
        row["documented_unattainable"] = documented;
        row["checks"] = r.checks;
        row["detail"] = r.detail;
        if (!r.passed && !documented)
            t.failures.push_back(failure(t.name, "C" + std::to_string(r.id), r.name,
                                         r.failures.empty() ? r.detail : r.failures.front()));
        t.rows.push_back(std::move(row));
    }
    return t;
}

using Runner = Table (*)(const RunConfig&);

const std::vector<std::pair<std::string, Runner>>& runners() {
    static const std::vector<std::pair<std::string, Runner>> table{
        {"local-integral", local_integral}, {"exceptional", exceptional}, {"euler", euler},
        {"pairing", pairing},               {"iwasawa", iwasawa},         {"cocycle", cocycle},
        {"linvariant", linvariant},         {"interpolate", interpolate}, {"derivative", derivative},
        {"discrete-series", discrete},      {"verify-all", verify_all},
    };
    return table;
}

std::string csv_cell(const Json& v) {
    if (v.is_null()) return "";
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return quoted + "\"";
}

}  // namespace

const std::vector<std::string>& subcommand_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [n, r] : runners()) out.push_back(n);
        return out;
    }();
    return names;
}

Table run_subcommand(const std::string& name, const RunConfig& config) {
    for (const auto& [n, run] : runners())
        if (n == name) return run(config);
    throw ConfigError("unknown subcommand '" + name + "'");
}

void write_table(std::ostream& out, const Table& table, OutputFormat format) {
    if (format == OutputFormat::json) {
        for (const auto& row : table.rows) {
            Json obj;
            obj["schema"] = kSchema;
            obj["table"] = table.name;
            for (const auto& c : table.columns) obj[c] = row.contains(c) ? row[c] : Json(nullptr);
            out << obj.dump() << '\n';
        }
        return;
    }
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < table.columns.size(); ++i)
            out << (i ? "," : "") << (row.contains(table.columns[i]) ? csv_cell(row[table.columns[i]]) : "");
        out << '\n';
    }
}

void write_failures(std::ostream& out, const Table& table) {
    for (const auto& f : table.failures) out << f.dump() << '\n';
}

}  // namespace acl::tools
