#pragma once

#include "sweep.hpp"
#include "verify.hpp"

#include "acl/interpolation.hpp"
#include "acl/local_integrals.hpp"

#include "json.hpp"

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace acl::tools {

enum class OutputFormat { json, csv };

struct PlaceConfig {
    PlaceData data;
    CoefficientValue chi_at_uniformizer{1};
};

// Global inputs of the interpolation formula; the formula is only assembled
// when all of them are present in the config.
struct GlobalInputs {
    MeasureSetting setting = MeasureSetting::definite;
    int degree = 1;
    double norm_disc = 0;
    double l_ratio = 0;
    double norm_f_sq = 0;
    std::optional<double> e_factor;  // default: the Euler factor at the first sweep point
};

// Everything a subcommand may read. Defaults reproduce the acceptance setup;
// a config file overrides them key by key and command-line flags come last.
struct RunConfig {
    SweepGrid grid;
    std::vector<Rational> s_points{Rational(0), Rational(1), Rational(3, 2), Rational(2)};
    std::vector<int> n_s{0, 1, 2};
    int truncation = 60;
    std::optional<int> precision;  // p-adic precision M; per-subcommand default when unset
    std::uint64_t seed = 2024;
    int jobs = 1;
    OutputFormat format = OutputFormat::json;
    SymbolicConstants constants;

    std::vector<std::array<int, 3>> groups{{2, 2, 1}, {3, 2, 2}, {3, 3, 1}};  // (p, N, r)
    int products = 200;

    std::int64_t p = 3;
    int cocycle_level = 6;
    int samples = 100;

    std::vector<std::vector<Rational>> periods{{Rational(12)}};
    std::vector<std::vector<std::vector<std::int64_t>>> action;

    CoefficientValue base{1};
    CoefficientValue linv_ord{1};
    CoefficientValue linv_log{0};
    int derivative_level = 3;

    std::vector<PlaceConfig> places;
    std::optional<GlobalInputs> global;

    int K_max = 20;
};

// Flat YAML: scalars, lists of scalars, and the two structured keys
// `periods`/`action` (nested lists) and `places` (list of maps).
// ConfigError on unknown keys or invalid values.
[[nodiscard]] RunConfig parse_config(const std::string& yaml_text);
[[nodiscard]] RunConfig load_config(const std::string& path);
// Rechecks a config after command-line overrides.
void validate(const RunConfig& config);

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<nlohmann::ordered_json> rows;
    std::vector<nlohmann::ordered_json> failures;
};

inline constexpr const char* kSchema = "acl-table/1";

[[nodiscard]] const std::vector<std::string>& subcommand_names();
// ConfigError for an unknown subcommand or a config the subcommand cannot use.
[[nodiscard]] Table run_subcommand(const std::string& name, const RunConfig& config);

// JSON: one object per line carrying the schema tag. CSV: header row, then rows.
void write_table(std::ostream& out, const Table& table, OutputFormat format);
// One JSON object per failed invariant.
void write_failures(std::ostream& out, const Table& table);

}  // namespace acl::tools
