// Command-line front end. Exit codes: 0 when every invariant holds, 1 on an
// invariant failure (records on stderr, one JSON object per line), 2 on a
// configuration error.
#include "app.hpp"

#include "acl/errors.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

namespace {

const char* describe(const std::string& name) {
    if (name == "local-integral") return "statement form, proof form and oracle of I_T over the sweep";
    if (name == "exceptional") return "exceptional-zero truth table at s = 0";
    if (name == "euler") return "Euler factor C(pi_P, chi_P) over the sweep";
    if (name == "pairing") return "closed and re-derived inner products <f_P, f_P>";
    if (name == "iwasawa") return "psi o phi, psi(I^2) = 0 and I/I^2 at finite level";
    if (name == "cocycle") return "cocycle identity of z_l on random samples";
    if (name == "linvariant") return "geometric L-invariant of a Tate period matrix";
    if (name == "interpolate") return "local constants C_v and the interpolation formula";
    if (name == "derivative") return "derivative class and its measure";
    if (name == "discrete-series") return "omega structures and extensions of the discrete series";
    return "run all acceptance criteria";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Anticyclotomic local computations"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, out_path, format;
    int jobs = 0, precision = 0, truncation = 0;
    std::uint64_t seed = 0;
    app.add_option("--config", config_path, "YAML config file")->check(CLI::ExistingFile);
    app.add_option("--out", out_path, "output file (default: stdout)");
    app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    auto* jobs_opt = app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    auto* prec_opt = app.add_option("--precision", precision, "p-adic precision M")->check(CLI::Range(1, 30));
    auto* trunc_opt = app.add_option("--truncation", truncation, "oracle truncation N")->check(CLI::PositiveNumber);
    auto* seed_opt = app.add_option("--seed", seed, "seed for randomized checks");
    for (const auto& name : acl::tools::subcommand_names()) app.add_subcommand(name, describe(name));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    acl::tools::RunConfig config;
    try {
        if (!config_path.empty()) config = acl::tools::load_config(config_path);
        if (!format.empty()) config.format = format == "csv" ? acl::tools::OutputFormat::csv : acl::tools::OutputFormat::json;
        if (*jobs_opt) config.jobs = jobs;
        if (*prec_opt) config.precision = precision;
        if (*trunc_opt) config.truncation = truncation;
        if (*seed_opt) config.seed = seed;
        acl::tools::validate(config);
    } catch (const acl::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }

    acl::tools::Table table;
    try {
        table = acl::tools::run_subcommand(command, config);
    } catch (const acl::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        nlohmann::ordered_json record{{"schema", acl::tools::kSchema}, {"table", command}, {"check", "run"}, {"detail", e.what()}};
        std::cerr << record.dump() << '\n';
        return 1;
    }

    if (out_path.empty()) {
        acl::tools::write_table(std::cout, table, config.format);
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "config error: cannot write '" << out_path << "'\n";
            return 2;
        }
        acl::tools::write_table(out, table, config.format);
    }
    acl::tools::write_failures(std::cerr, table);
    return table.failures.empty() ? 0 : 1;
}
