// arrowlab: deterministic experiments on two-time boundary conditions,
// coarse-grained entropy bounds and Bayesian retrodiction over finite
// phase spaces.

#include "arrowlab/commands.hpp"
#include "arrowlab/csv.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

struct SubcommandArgs {
    std::optional<std::string> config_path;
    arrowlab::CliOptions options;
};

void attach_common_flags(CLI::App* app, SubcommandArgs& args,
                         bool with_svg) {
    app->add_option("--config", args.config_path,
                    "experiment config (JSON)");
    app->add_option("--out", args.options.output_dir,
                    "output directory (overrides config)");
    app->add_option("--seed", args.options.seed,
                    "master seed (overrides config)");
    app->add_option("--format", args.options.format,
                    "output format: csv or json");
    if (with_svg) {
        app->add_flag("--svg", args.options.svg,
                      "also render entropy_scan.svg");
    }
}

int run(const std::string& command, const SubcommandArgs& args) {
    arrowlab::ExperimentConfig config;
    try {
        config = args.config_path
                     ? arrowlab::ExperimentConfig::load(*args.config_path)
                     : arrowlab::ExperimentConfig::default_for(command);
    } catch (const arrowlab::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return arrowlab::kExitIoError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return arrowlab::kExitInvalidInput;
    }
    if (config.command != command) {
        std::cerr << "error: config is for command \"" << config.command
                  << "\" but \"" << command << "\" was requested\n";
        return arrowlab::kExitInvalidInput;
    }
    return arrowlab::run_command(config, args.options);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "arrowlab: two-time boundary conditions, entropy bounds and "
        "Bayesian retrodiction on finite phase spaces"};
    app.require_subcommand(1);

    SubcommandArgs scan_args, two_time_args, retrodict_args, oracle_args;
    CLI::App* scan = app.add_subcommand(
        "entropy-scan", "tabulate the no-mixing entropy Z_b over a (p,s) grid");
    attach_common_flags(scan, scan_args, /*with_svg=*/true);
    CLI::App* two_time = app.add_subcommand(
        "two-time",
        "compare the exact two-time distribution with the mixing reduction");
    attach_common_flags(two_time, two_time_args, /*with_svg=*/false);
    CLI::App* retrodict = app.add_subcommand(
        "retrodict", "Bayesian inference of past macrostates");
    attach_common_flags(retrodict, retrodict_args, /*with_svg=*/false);
    CLI::App* oracle = app.add_subcommand(
        "oracle-check", "run the formula-vs-enumeration equivalence campaigns");
    attach_common_flags(oracle, oracle_args, /*with_svg=*/false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : arrowlab::kExitInvalidInput;
    }

    if (scan->parsed()) {
        return run("entropy-scan", scan_args);
    }
    if (two_time->parsed()) {
        return run("two-time", two_time_args);
    }
    if (retrodict->parsed()) {
        return run("retrodict", retrodict_args);
    }
    return run("oracle-check", oracle_args);
}
