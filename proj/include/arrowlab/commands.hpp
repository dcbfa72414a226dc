#pragma once

#include "arrowlab/config.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace arrowlab {

/// Command-line overrides applied on top of the config file.
struct CliOptions {
    std::optional<std::string> output_dir; // --out
    std::optional<std::uint64_t> seed;     // --seed
    bool svg = false;                      // --svg (entropy-scan)
    std::optional<std::string> format;     // --format csv|json
};

/// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitIoError = 3;

int cmd_entropy_scan(const ExperimentConfig& config, const CliOptions& options);
int cmd_two_time(const ExperimentConfig& config, const CliOptions& options);
int cmd_retrodict(const ExperimentConfig& config, const CliOptions& options);
int cmd_oracle_check(const ExperimentConfig& config, const CliOptions& options);

/// Dispatches on config.command and maps exceptions to exit codes;
/// messages go to stderr.
int run_command(const ExperimentConfig& config, const CliOptions& options);

} // namespace arrowlab
