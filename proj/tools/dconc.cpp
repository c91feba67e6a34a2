// dconc: experiment front end for the D-concurrence library.

#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "dconc/experiments.hpp"

namespace {

void add_campaign_options(CLI::App* cmd, dconc::ExperimentConfig& cfg) {
    cmd->add_option("--dA", cfg.dA, "Dimension of subsystem A")->check(CLI::Range(2, 64));
    cmd->add_option("--dB", cfg.dB, "Dimension of subsystem B")->check(CLI::Range(2, 64));
    cmd->add_option("--samples", cfg.samples, "Number of random states")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", cfg.seed, "Campaign seed");
    cmd->add_option("--out", cfg.output_path, "Output file (default: stdout)");
    cmd->add_option("--threads", cfg.threads, "Worker threads (overrides DCONC_THREADS)")->check(CLI::PositiveNumber);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"D-concurrence bounds, convex-roof estimates and experiment campaigns"};
    app.require_subcommand(1);

    double f = dconc::kExample1F;
    auto* example1 = app.add_subcommand("example1", "Werner-state bound comparison (N = 2)");
    example1->add_option("--f", f, "Werner parameter in [-1, 1]")->check(CLI::Range(-1.0, 1.0));

    dconc::ExperimentConfig scan_cfg;
    auto* scan = app.add_subcommand("bounds-scan", "Bounds and witnesses over random states");
    add_campaign_options(scan, scan_cfg);
    const std::map<std::string, dconc::OutputFormat> formats{{"csv", dconc::OutputFormat::Csv},
                                                            {"json", dconc::OutputFormat::Json}};
    scan->add_option("--format", scan_cfg.format, "csv or json")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));

    dconc::ExperimentConfig prop2_cfg;
    auto* prop2 = app.add_subcommand("prop2", "Randomized search for violations of the D^2 lower bound");
    add_campaign_options(prop2, prop2_cfg);

    std::string state_path;
    auto* eval = app.add_subcommand("eval", "Measures and bounds for a state file");
    eval->add_option("state", state_path, "State JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : dconc::exit_code::kInputError;
    }

    try {
        if (*example1) return dconc::cmd_example1(f, std::cout);
        if (*eval) return dconc::cmd_eval(state_path, std::cout, std::cerr);

        const bool is_scan = static_cast<bool>(*scan);
        dconc::ExperimentConfig& cfg = is_scan ? scan_cfg : prop2_cfg;
        const auto* sub = is_scan ? scan : prop2;
        if (sub->count("--threads") == 0) cfg.threads = dconc::threads_from_environment();
        // console summary goes to stderr when data is streamed to stdout
        std::ostream& console = cfg.output_path.empty() ? std::cerr : std::cout;
        return is_scan ? dconc::cmd_bounds_scan(cfg, std::cout, console) : dconc::cmd_prop2(cfg, std::cout, console);
    } catch (const dconc::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return dconc::exit_code::kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return dconc::exit_code::kInputError;
    }
}
