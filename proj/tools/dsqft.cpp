// dsqft: batch runner for the check suites.
//
//   dsqft run --config cfg.json [--suite omega --suite fsl] [--out dir]
//   dsqft table omega --zeta 1 --r 1 --K 64
//
// Exit codes: 0 all checks pass, 1 some check failed, 2 bad config or usage, 3 numerical error.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dsqft/dsqft.hpp"

namespace {

constexpr int exit_failed = 1;
constexpr int exit_config = 2;
constexpr int exit_numerical = 3;

int run(const std::string& config_path, const std::vector<std::string>& only, const std::string& out)
{
    dsqft::SuiteConfig cfg = dsqft::load_config(config_path);
    if (!only.empty()) {
        cfg.suites = only;
    }
    if (!out.empty()) {
        cfg.output_dir = out;
    }
    if (const char* env = std::getenv("DSQFT_PRECISION")) {
        cfg.precision = dsqft::parse_precision(env, "DSQFT_PRECISION");
    }
    dsqft::validate(cfg);

    const auto reports = dsqft::run_suites(cfg);
    dsqft::emit_report(reports, cfg, cfg.output_dir);
    for (const auto& r : reports) {
        for (const auto& c : r.checks) {
            std::cout << (c.pass ? "pass " : "FAIL ") << r.suite << '.' << c.name << "  " << c.metric
                      << (c.upper ? " <= " : " >= ") << c.threshold << '\n';
        }
    }
    std::cout << "config " << dsqft::hash_hex(dsqft::config_hash(cfg)) << ", " << reports.size()
              << " suite(s), reports in " << cfg.output_dir << '\n';
    return dsqft::all_pass(reports) ? 0 : exit_failed;
}

int table_omega(double zeta, double radius, int K)
{
    if (K < 1) {
        throw dsqft::config_error("--K", "must be >= 1");
    }
    if (!(zeta > 0.0)) {
        throw dsqft::config_error("--zeta", "must be > 0");
    }
    if (!(radius > 0.0)) {
        throw dsqft::config_error("--r", "must be > 0");
    }
    const dsqft::SpectralWeights w(dsqft::make_params(zeta, radius), K);
    dsqft::write_omega_csv(std::cout, w);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"de Sitter free-field check suites"};
    app.set_version_flag("--version", dsqft::version);
    app.require_subcommand(1);

    std::string config_path, out;
    std::vector<std::string> only;
    auto* run_cmd = app.add_subcommand("run", "run the configured suites and write reports");
    run_cmd->add_option("--config", config_path, "JSON config file")->required();
    run_cmd->add_option("--suite", only, "restrict to these suites (repeatable)");
    run_cmd->add_option("--out", out, "output directory");

    double zeta = 1.0, radius = 1.0;
    int K = 64;
    std::string what;
    auto* table_cmd = app.add_subcommand("table", "print a table as CSV");
    table_cmd->add_option("what", what, "table name")->required()->check(CLI::IsMember({"omega"}));
    table_cmd->add_option("--zeta", zeta, "Casimir parameter");
    table_cmd->add_option("--r", radius, "de Sitter radius");
    table_cmd->add_option("--K", K, "mode cutoff");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_config;
    }

    try {
        if (*run_cmd) {
            return run(config_path, only, out);
        }
        return table_omega(zeta, radius, K);
    } catch (const dsqft::config_error& e) {
        std::cerr << "dsqft: " << e.what() << '\n';
        return exit_config;
    } catch (const dsqft::numerical_error& e) {
        std::cerr << "dsqft: numerical error: " << e.what() << '\n';
        return exit_numerical;
    } catch (const dsqft::domain_error& e) {
        std::cerr << "dsqft: " << e.what() << '\n';
        return exit_config;
    }
}
