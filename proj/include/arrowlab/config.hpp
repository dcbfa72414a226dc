#pragma once

#include "arrowlab/phase_space.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace arrowlab {

/// Config/schema violations; the CLI maps these to the invalid-input exit
/// code. Unknown fields are rejected with the offending key named.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr int kSchemaVersion = 1;

/// How a run names its dynamics: a cyclic shift, a seeded random
/// permutation, or an explicit map (validated as a bijection at parse
/// time).
struct DynamicsSpec {
    enum class Kind { CyclicShift, Random, Explicit };
    Kind kind = Kind::CyclicShift;
    std::int64_t offset = 1;       // CyclicShift
    std::uint64_t seed = 0;        // Random
    std::vector<Cell> map;         // Explicit

    PermutationDynamics build(PhaseSpace space) const;

    static DynamicsSpec from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

/// A macrostate in config form: either an explicit cell list or the whole
/// phase space ("full").
struct RegionSpec {
    bool full = false;
    std::vector<Cell> cells;

    RegionSet build(PhaseSpace space) const;

    static RegionSpec from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

struct SGridSpec {
    double start = 0.001;
    double stop = 0.999;
    std::uint64_t count = 997;

    std::vector<double> resolve() const;
};

struct EntropyScanSettings {
    std::optional<std::vector<double>> p_values; // default reproduction set
    std::optional<std::vector<double>> s_values; // explicit samples
    std::optional<SGridSpec> s_grid;             // or an even grid

    std::vector<double> resolve_p() const;
    std::vector<double> resolve_s() const;
};

struct TwoTimeSettings {
    std::uint32_t cell_count = 0;
    std::vector<std::vector<Cell>> partition_blocks;
    std::optional<std::vector<std::string>> labels;
    RegionSpec epsilon0;
    RegionSpec epsilonT;
    std::int64_t t = 0;
    std::int64_t T = 0;
    DynamicsSpec dynamics;
};

struct RetrodictSettings {
    enum class Mode { Abstract, Dynamical, FireAlarm };
    Mode mode = Mode::Abstract;

    // Abstract
    std::optional<std::vector<std::string>> hypotheses;
    std::vector<double> prior;
    std::vector<double> likelihoods;
    std::optional<std::string> observed_label;

    // Dynamical
    std::uint32_t cell_count = 0;
    std::vector<std::vector<Cell>> partition_blocks;
    std::optional<std::vector<std::string>> labels;
    DynamicsSpec dynamics;
    std::variant<std::size_t, std::string> observed = std::size_t{0};
    std::int64_t lag = 1;

    // FireAlarm
    double prior_fire = 0.0;
    double prior_drill = 0.0;

    // Abstract + Dynamical
    std::optional<std::vector<double>> deltas;
};

struct OracleCheckSettings {
    std::uint64_t two_time_fixtures = 200;
    std::uint32_t max_cell_count = 24;
    std::uint64_t retro_fixtures = 100;
    std::uint64_t mc_trials = 100000;
    double mc_s = 0.25;
    double mc_p = 0.5;
    std::uint64_t scenario_draws = 100000;
};

/// One experiment: a command plus its parameters, a master seed and an
/// output directory. Strict schema; round-trips losslessly through JSON.
struct ExperimentConfig {
    int schema_version = kSchemaVersion;
    std::string command;
    std::uint64_t master_seed = 0;
    std::string output_dir = ".";

    std::optional<EntropyScanSettings> entropy_scan;
    std::optional<TwoTimeSettings> two_time;
    std::optional<RetrodictSettings> retrodict;
    std::optional<OracleCheckSettings> oracle_check;

    static ExperimentConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    static ExperimentConfig load(const std::filesystem::path& path);

    /// Built-in defaults when no --config is given (entropy-scan and
    /// oracle-check only; the other commands have no meaningful default).
    static ExperimentConfig default_for(const std::string& command);
};

} // namespace arrowlab
