#include "arrowlab/config.hpp"

#include "arrowlab/csv.hpp"
#include "arrowlab/scenario.hpp"

#include <algorithm>
#include <fstream>

namespace arrowlab {

using nlohmann::json;

namespace {

void expect_object(const json& j, const std::string& context) {
    if (!j.is_object()) {
        throw ConfigError(context + " must be a JSON object");
    }
}

/// Strict-schema guard: every present key must be known.
void reject_unknown_keys(const json& obj, const std::string& context,
                         std::initializer_list<const char*> known) {
    for (const auto& item : obj.items()) {
        if (std::find_if(known.begin(), known.end(), [&](const char* k) {
                return item.key() == k;
            }) == known.end()) {
            throw ConfigError("unknown field \"" + item.key() + "\" in " +
                              context);
        }
    }
}

template <typename T>
T get_required(const json& obj, const char* key, const std::string& context) {
    if (!obj.contains(key)) {
        throw ConfigError("missing field \"" + std::string(key) + "\" in " +
                          context);
    }
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("field \"" + std::string(key) + "\" in " + context +
                          " has the wrong type");
    }
}

template <typename T>
std::optional<T> get_optional(const json& obj, const char* key,
                              const std::string& context) {
    if (!obj.contains(key)) {
        return std::nullopt;
    }
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("field \"" + std::string(key) + "\" in " + context +
                          " has the wrong type");
    }
}

std::vector<std::vector<Cell>> get_partition_blocks(
    const json& obj, const std::string& context) {
    auto blocks = get_required<std::vector<std::vector<Cell>>>(obj, "partition",
                                                               context);
    if (blocks.empty()) {
        throw ConfigError("\"partition\" in " + context +
                          " must contain at least one block");
    }
    return blocks;
}

} // namespace

PermutationDynamics DynamicsSpec::build(PhaseSpace space) const {
    switch (kind) {
        case Kind::CyclicShift:
            return PermutationDynamics::cyclic_shift(space, offset);
        case Kind::Random:
            return random_permutation(seed, space.cell_count());
        case Kind::Explicit:
            return {space, map};
    }
    throw ConfigError("unreachable dynamics kind");
}

DynamicsSpec DynamicsSpec::from_json(const json& j) {
    expect_object(j, "\"dynamics\"");
    const auto kind = get_required<std::string>(j, "kind", "\"dynamics\"");
    DynamicsSpec spec;
    if (kind == "cyclic_shift") {
        reject_unknown_keys(j, "\"dynamics\"", {"kind", "offset"});
        spec.kind = Kind::CyclicShift;
        spec.offset = get_required<std::int64_t>(j, "offset", "\"dynamics\"");
    } else if (kind == "random") {
        reject_unknown_keys(j, "\"dynamics\"", {"kind", "seed"});
        spec.kind = Kind::Random;
        spec.seed = get_required<std::uint64_t>(j, "seed", "\"dynamics\"");
    } else if (kind == "explicit") {
        reject_unknown_keys(j, "\"dynamics\"", {"kind", "map"});
        spec.kind = Kind::Explicit;
        spec.map = get_required<std::vector<Cell>>(j, "map", "\"dynamics\"");
        // Validate bijectivity now so bad maps fail at parse time.
        if (!spec.map.empty()) {
            PermutationDynamics probe(
                PhaseSpace(static_cast<std::uint32_t>(spec.map.size())),
                spec.map);
            (void)probe;
        } else {
            throw ConfigError("\"dynamics\" explicit map must be nonempty");
        }
    } else {
        throw ConfigError("unknown dynamics kind \"" + kind + "\"");
    }
    return spec;
}

json DynamicsSpec::to_json() const {
    switch (kind) {
        case Kind::CyclicShift:
            return {{"kind", "cyclic_shift"}, {"offset", offset}};
        case Kind::Random:
            return {{"kind", "random"}, {"seed", seed}};
        case Kind::Explicit:
            return {{"kind", "explicit"}, {"map", map}};
    }
    throw ConfigError("unreachable dynamics kind");
}

RegionSet RegionSpec::build(PhaseSpace space) const {
    if (full) {
        return RegionSet::full(space);
    }
    return {space, cells};
}

RegionSpec RegionSpec::from_json(const json& j) {
    RegionSpec spec;
    if (j.is_string()) {
        if (j.get<std::string>() != "full") {
            throw ConfigError("region must be a cell array or \"full\"");
        }
        spec.full = true;
        return spec;
    }
    if (!j.is_array()) {
        throw ConfigError("region must be a cell array or \"full\"");
    }
    try {
        spec.cells = j.get<std::vector<Cell>>();
    } catch (const json::exception&) {
        throw ConfigError("region cells must be nonnegative integers");
    }
    return spec;
}

json RegionSpec::to_json() const {
    if (full) {
        return "full";
    }
    return cells;
}

std::vector<double> SGridSpec::resolve() const {
    if (count < 2) {
        throw ConfigError("\"s_grid\" count must be >= 2");
    }
    std::vector<double> grid(count);
    const double step = (stop - start) / static_cast<double>(count - 1);
    for (std::uint64_t i = 0; i < count; ++i) {
        grid[i] = start + static_cast<double>(i) * step;
    }
    grid.back() = stop;
    return grid;
}

std::vector<double> EntropyScanSettings::resolve_p() const {
    return p_values ? *p_values : default_scan_p_values();
}

std::vector<double> EntropyScanSettings::resolve_s() const {
    if (s_values && s_grid) {
        throw ConfigError(
            "\"s_values\" and \"s_grid\" are mutually exclusive");
    }
    if (s_values) {
        return *s_values;
    }
    if (s_grid) {
        return s_grid->resolve();
    }
    return default_scan_s_grid();
}

namespace {

EntropyScanSettings entropy_scan_from_json(const json& j) {
    const std::string context = "entropy-scan config";
    reject_unknown_keys(j, context,
                        {"schema_version", "command", "master_seed",
                         "output_dir", "p_values", "s_values", "s_grid"});
    EntropyScanSettings settings;
    settings.p_values =
        get_optional<std::vector<double>>(j, "p_values", context);
    settings.s_values =
        get_optional<std::vector<double>>(j, "s_values", context);
    if (j.contains("s_grid")) {
        const json& g = j.at("s_grid");
        expect_object(g, "\"s_grid\"");
        reject_unknown_keys(g, "\"s_grid\"", {"start", "stop", "count"});
        SGridSpec grid;
        grid.start = get_required<double>(g, "start", "\"s_grid\"");
        grid.stop = get_required<double>(g, "stop", "\"s_grid\"");
        grid.count = get_required<std::uint64_t>(g, "count", "\"s_grid\"");
        settings.s_grid = grid;
    }
    return settings;
}

TwoTimeSettings two_time_from_json(const json& j) {
    const std::string context = "two-time config";
    reject_unknown_keys(j, context,
                        {"schema_version", "command", "master_seed",
                         "output_dir", "cell_count", "partition", "labels",
                         "epsilon0", "epsilonT", "t", "T", "dynamics"});
    TwoTimeSettings settings;
    settings.cell_count =
        get_required<std::uint32_t>(j, "cell_count", context);
    settings.partition_blocks = get_partition_blocks(j, context);
    settings.labels =
        get_optional<std::vector<std::string>>(j, "labels", context);
    if (!j.contains("epsilon0") || !j.contains("epsilonT")) {
        throw ConfigError("two-time config requires \"epsilon0\" and "
                          "\"epsilonT\"");
    }
    settings.epsilon0 = RegionSpec::from_json(j.at("epsilon0"));
    settings.epsilonT = RegionSpec::from_json(j.at("epsilonT"));
    settings.t = get_required<std::int64_t>(j, "t", context);
    settings.T = get_required<std::int64_t>(j, "T", context);
    if (!j.contains("dynamics")) {
        throw ConfigError("two-time config requires \"dynamics\"");
    }
    settings.dynamics = DynamicsSpec::from_json(j.at("dynamics"));
    return settings;
}

RetrodictSettings retrodict_from_json(const json& j) {
    const std::string context = "retrodict config";
    RetrodictSettings settings;
    if (j.contains("preset")) {
        reject_unknown_keys(j, context,
                            {"schema_version", "command", "master_seed",
                             "output_dir", "preset", "prior_fire",
                             "prior_drill"});
        const auto preset = get_required<std::string>(j, "preset", context);
        if (preset != "fire-alarm") {
            throw ConfigError("unknown retrodict preset \"" + preset + "\"");
        }
        settings.mode = RetrodictSettings::Mode::FireAlarm;
        settings.prior_fire = get_required<double>(j, "prior_fire", context);
        settings.prior_drill = get_required<double>(j, "prior_drill", context);
        return settings;
    }
    if (j.contains("dynamics")) {
        reject_unknown_keys(j, context,
                            {"schema_version", "command", "master_seed",
                             "output_dir", "cell_count", "partition",
                             "labels", "dynamics", "prior", "observed",
                             "lag", "deltas"});
        settings.mode = RetrodictSettings::Mode::Dynamical;
        settings.cell_count =
            get_required<std::uint32_t>(j, "cell_count", context);
        settings.partition_blocks = get_partition_blocks(j, context);
        settings.labels =
            get_optional<std::vector<std::string>>(j, "labels", context);
        settings.dynamics = DynamicsSpec::from_json(j.at("dynamics"));
        settings.prior =
            get_required<std::vector<double>>(j, "prior", context);
        if (!j.contains("observed")) {
            throw ConfigError("retrodict config requires \"observed\"");
        }
        const json& obs = j.at("observed");
        if (obs.is_string()) {
            settings.observed = obs.get<std::string>();
        } else if (obs.is_number_unsigned()) {
            settings.observed = obs.get<std::size_t>();
        } else {
            throw ConfigError(
                "\"observed\" must be a block label or block index");
        }
        settings.lag = get_required<std::int64_t>(j, "lag", context);
        settings.deltas =
            get_optional<std::vector<double>>(j, "deltas", context);
        return settings;
    }
    reject_unknown_keys(j, context,
                        {"schema_version", "command", "master_seed",
                         "output_dir", "hypotheses", "prior", "likelihoods",
                         "observed", "deltas"});
    settings.mode = RetrodictSettings::Mode::Abstract;
    settings.hypotheses =
        get_optional<std::vector<std::string>>(j, "hypotheses", context);
    settings.prior = get_required<std::vector<double>>(j, "prior", context);
    settings.likelihoods =
        get_required<std::vector<double>>(j, "likelihoods", context);
    settings.observed_label =
        get_optional<std::string>(j, "observed", context);
    settings.deltas = get_optional<std::vector<double>>(j, "deltas", context);
    return settings;
}

OracleCheckSettings oracle_check_from_json(const json& j) {
    const std::string context = "oracle-check config";
    reject_unknown_keys(j, context,
                        {"schema_version", "command", "master_seed",
                         "output_dir", "two_time_fixtures", "max_cell_count",
                         "retro_fixtures", "mc_trials", "mc_s", "mc_p",
                         "scenario_draws"});
    OracleCheckSettings settings;
    if (auto v = get_optional<std::uint64_t>(j, "two_time_fixtures", context)) {
        settings.two_time_fixtures = *v;
    }
    if (auto v = get_optional<std::uint32_t>(j, "max_cell_count", context)) {
        settings.max_cell_count = *v;
    }
    if (auto v = get_optional<std::uint64_t>(j, "retro_fixtures", context)) {
        settings.retro_fixtures = *v;
    }
    if (auto v = get_optional<std::uint64_t>(j, "mc_trials", context)) {
        settings.mc_trials = *v;
    }
    if (auto v = get_optional<double>(j, "mc_s", context)) {
        settings.mc_s = *v;
    }
    if (auto v = get_optional<double>(j, "mc_p", context)) {
        settings.mc_p = *v;
    }
    if (auto v = get_optional<std::uint64_t>(j, "scenario_draws", context)) {
        settings.scenario_draws = *v;
    }
    return settings;
}

} // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    expect_object(j, "config");
    const std::string context = "config";
    const auto version = get_required<int>(j, "schema_version", context);
    if (version != kSchemaVersion) {
        throw ConfigError("unsupported schema_version " +
                          std::to_string(version));
    }
    ExperimentConfig config;
    config.schema_version = version;
    config.command = get_required<std::string>(j, "command", context);
    if (auto seed = get_optional<std::uint64_t>(j, "master_seed", context)) {
        config.master_seed = *seed;
    }
    if (auto dir = get_optional<std::string>(j, "output_dir", context)) {
        config.output_dir = *dir;
    }
    if (config.command == "entropy-scan") {
        config.entropy_scan = entropy_scan_from_json(j);
    } else if (config.command == "two-time") {
        config.two_time = two_time_from_json(j);
    } else if (config.command == "retrodict") {
        config.retrodict = retrodict_from_json(j);
    } else if (config.command == "oracle-check") {
        config.oracle_check = oracle_check_from_json(j);
    } else {
        throw ConfigError("unknown command \"" + config.command + "\"");
    }
    return config;
}

json ExperimentConfig::to_json() const {
    json j;
    j["schema_version"] = schema_version;
    j["command"] = command;
    j["master_seed"] = master_seed;
    j["output_dir"] = output_dir;
    if (entropy_scan) {
        if (entropy_scan->p_values) {
            j["p_values"] = *entropy_scan->p_values;
        }
        if (entropy_scan->s_values) {
            j["s_values"] = *entropy_scan->s_values;
        }
        if (entropy_scan->s_grid) {
            j["s_grid"] = {{"start", entropy_scan->s_grid->start},
                           {"stop", entropy_scan->s_grid->stop},
                           {"count", entropy_scan->s_grid->count}};
        }
    }
    if (two_time) {
        j["cell_count"] = two_time->cell_count;
        j["partition"] = two_time->partition_blocks;
        if (two_time->labels) {
            j["labels"] = *two_time->labels;
        }
        j["epsilon0"] = two_time->epsilon0.to_json();
        j["epsilonT"] = two_time->epsilonT.to_json();
        j["t"] = two_time->t;
        j["T"] = two_time->T;
        j["dynamics"] = two_time->dynamics.to_json();
    }
    if (retrodict) {
        switch (retrodict->mode) {
            case RetrodictSettings::Mode::FireAlarm:
                j["preset"] = "fire-alarm";
                j["prior_fire"] = retrodict->prior_fire;
                j["prior_drill"] = retrodict->prior_drill;
                break;
            case RetrodictSettings::Mode::Dynamical:
                j["cell_count"] = retrodict->cell_count;
                j["partition"] = retrodict->partition_blocks;
                if (retrodict->labels) {
                    j["labels"] = *retrodict->labels;
                }
                j["dynamics"] = retrodict->dynamics.to_json();
                j["prior"] = retrodict->prior;
                if (std::holds_alternative<std::string>(retrodict->observed)) {
                    j["observed"] = std::get<std::string>(retrodict->observed);
                } else {
                    j["observed"] = std::get<std::size_t>(retrodict->observed);
                }
                j["lag"] = retrodict->lag;
                if (retrodict->deltas) {
                    j["deltas"] = *retrodict->deltas;
                }
                break;
            case RetrodictSettings::Mode::Abstract:
                if (retrodict->hypotheses) {
                    j["hypotheses"] = *retrodict->hypotheses;
                }
                j["prior"] = retrodict->prior;
                j["likelihoods"] = retrodict->likelihoods;
                if (retrodict->observed_label) {
                    j["observed"] = *retrodict->observed_label;
                }
                if (retrodict->deltas) {
                    j["deltas"] = *retrodict->deltas;
                }
                break;
        }
    }
    if (oracle_check) {
        j["two_time_fixtures"] = oracle_check->two_time_fixtures;
        j["max_cell_count"] = oracle_check->max_cell_count;
        j["retro_fixtures"] = oracle_check->retro_fixtures;
        j["mc_trials"] = oracle_check->mc_trials;
        j["mc_s"] = oracle_check->mc_s;
        j["mc_p"] = oracle_check->mc_p;
        j["scenario_draws"] = oracle_check->scenario_draws;
    }
    return j;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
    json parsed;
    try {
        parsed = json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        throw ConfigError("cannot parse " + path.string() + ": " + e.what());
    }
    return from_json(parsed);
}

ExperimentConfig ExperimentConfig::default_for(const std::string& command) {
    ExperimentConfig config;
    config.command = command;
    if (command == "entropy-scan") {
        config.entropy_scan = EntropyScanSettings{};
    } else if (command == "oracle-check") {
        config.oracle_check = OracleCheckSettings{};
        config.master_seed = 2026;
    } else {
        throw ConfigError("command \"" + command +
                          "\" requires a --config file");
    }
    return config;
}

} // namespace arrowlab
