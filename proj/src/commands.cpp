#include "arrowlab/commands.hpp"

#include "arrowlab/csv.hpp"
#include "arrowlab/fixtures.hpp"
#include "arrowlab/manifest.hpp"
#include "arrowlab/oracle.hpp"
#include "arrowlab/parallel.hpp"
#include "arrowlab/retrodiction.hpp"
#include "arrowlab/rng.hpp"
#include "arrowlab/scenario.hpp"
#include "arrowlab/svg.hpp"
#include "arrowlab/two_time.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

namespace arrowlab {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunContext {
    ExperimentConfig config;
    fs::path out_dir;
    RunManifest manifest;

    void add_output(const std::string& name) {
        manifest.outputs.emplace_back(name,
                                      sha256_file_hex(out_dir / name));
    }

    void finish() {
        manifest.finished_at = iso8601_utc_now();
        manifest.write(out_dir);
    }
};

RunContext begin_run(const ExperimentConfig& config,
                     const CliOptions& options) {
    RunContext ctx;
    ctx.config = config;
    if (options.seed) {
        ctx.config.master_seed = *options.seed;
    }
    if (options.output_dir) {
        ctx.config.output_dir = *options.output_dir;
    }
    ctx.out_dir = ctx.config.output_dir;
    std::error_code ec;
    fs::create_directories(ctx.out_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory " +
                      ctx.out_dir.string() + ": " + ec.message());
    }
    ctx.manifest.generator_algorithm = kGeneratorAlgorithm;
    ctx.manifest.config = ctx.config.to_json();
    ctx.manifest.started_at = iso8601_utc_now();
    return ctx;
}

std::string resolve_format(const CliOptions& options,
                           const std::string& fallback) {
    if (!options.format) {
        return fallback;
    }
    if (*options.format != "csv" && *options.format != "json") {
        throw ConfigError("--format must be csv or json");
    }
    return *options.format;
}

std::vector<std::string> default_labels(const char* stem, std::size_t count) {
    std::vector<std::string> labels;
    labels.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        labels.push_back(stem + std::to_string(i + 1));
    }
    return labels;
}

MacrostatePartition build_partition(
    PhaseSpace space, const std::vector<std::vector<Cell>>& blocks,
    const std::optional<std::vector<std::string>>& labels) {
    std::vector<RegionSet> regions;
    regions.reserve(blocks.size());
    for (const auto& cells : blocks) {
        regions.emplace_back(space, cells);
    }
    std::vector<std::string> names =
        labels ? *labels : default_labels("D", blocks.size());
    return {std::move(names), std::move(regions)};
}

json posterior_report_json(const PosteriorReport& report) {
    json exact;
    {
        json terms = json::array();
        json posterior = json::array();
        for (const Rational& t : report.terms) {
            terms.push_back(rational_to_string(t));
        }
        for (const Rational& p : report.posterior) {
            posterior.push_back(rational_to_string(p));
        }
        exact = {{"terms", terms},
                 {"posterior", posterior},
                 {"normalization", rational_to_string(report.normalization)}};
    }
    return {{"hypotheses", report.hypotheses},
            {"terms", report.terms_double()},
            {"normalization", report.normalization_double()},
            {"posterior", report.posterior_double()},
            {"exact", exact}};
}

std::string posterior_report_csv(const PosteriorReport& report) {
    std::ostringstream out;
    out << "hypothesis,term,posterior\n";
    const auto terms = report.terms_double();
    const auto posterior = report.posterior_double();
    for (std::size_t k = 0; k < report.hypotheses.size(); ++k) {
        out << report.hypotheses[k] << "," << format_double(terms[k]) << ","
            << format_double(posterior[k]) << "\n";
    }
    return out.str();
}

std::string perturbed_report_csv(const PosteriorReport& before,
                                 const PosteriorReport& after) {
    std::ostringstream out;
    out << "stage,hypothesis,term,posterior\n";
    for (const auto* stage : {&before, &after}) {
        const auto terms = stage->terms_double();
        const auto posterior = stage->posterior_double();
        for (std::size_t k = 0; k < stage->hypotheses.size(); ++k) {
            out << (stage == &before ? "before" : "after") << ","
                << stage->hypotheses[k] << "," << format_double(terms[k])
                << "," << format_double(posterior[k]) << "\n";
        }
    }
    return out.str();
}

} // namespace

int cmd_entropy_scan(const ExperimentConfig& config,
                     const CliOptions& options) {
    if (!config.entropy_scan) {
        throw ConfigError("entropy-scan settings missing");
    }
    if (resolve_format(options, "csv") != "csv") {
        throw ConfigError("entropy-scan emits csv (plus optional --svg)");
    }
    RunContext ctx = begin_run(config, options);
    const std::vector<double> p_values = config.entropy_scan->resolve_p();
    const std::vector<double> s_grid = config.entropy_scan->resolve_s();
    const std::vector<EntropyScanRow> rows = entropy_scan(p_values, s_grid);

    std::ostringstream csv;
    csv << "p,s,Z_b\n";
    for (const EntropyScanRow& row : rows) {
        csv << format_double(row.p) << "," << format_double(row.s) << ","
            << format_double(row.z_b) << "\n";
    }
    write_text_file(ctx.out_dir / "entropy_scan.csv", csv.str());
    ctx.add_output("entropy_scan.csv");
    if (options.svg) {
        write_text_file(ctx.out_dir / "entropy_scan.svg",
                        render_entropy_scan_svg(rows));
        ctx.add_output("entropy_scan.svg");
    }
    ctx.finish();
    return kExitOk;
}

int cmd_two_time(const ExperimentConfig& config, const CliOptions& options) {
    if (!config.two_time) {
        throw ConfigError("two-time settings missing");
    }
    const std::string format = resolve_format(options, "csv");
    RunContext ctx = begin_run(config, options);
    const TwoTimeSettings& settings = *config.two_time;
    const PhaseSpace space(settings.cell_count);
    const MacrostatePartition partition =
        build_partition(space, settings.partition_blocks, settings.labels);
    TwoTimeProblem problem{
        settings.epsilon0.build(space),
        settings.epsilonT.build(space),
        settings.t,
        settings.T,
        settings.dynamics.build(space),
    };

    const MacrostateDistribution exact = two_time_distribution(problem, partition);
    const MacrostateDistribution mixed = perfect_mixing_distribution(
        problem.epsilon0, partition, problem.t, problem.dynamics);
    const RegionSet evolved0 = problem.dynamics.evolve(problem.epsilon0, problem.t);

    const auto exact_d = exact.probabilities_double();
    const auto mixed_d = mixed.probabilities_double();
    std::vector<double> gaps(partition.size());
    std::vector<double> defects(partition.size());
    for (std::size_t a = 0; a < partition.size(); ++a) {
        const Rational gap = exact.probabilities[a] >= mixed.probabilities[a]
                                 ? exact.probabilities[a] - mixed.probabilities[a]
                                 : mixed.probabilities[a] - exact.probabilities[a];
        gaps[a] = rational_to_double(gap);
        defects[a] = mixing_defect(intersect(evolved0, partition.block(a)),
                                   problem.epsilonT, problem.T - problem.t,
                                   problem.dynamics);
    }

    if (format == "csv") {
        std::ostringstream csv;
        csv << "macrostate,two_time_exact,two_time,perfect_mixing_exact,"
               "perfect_mixing,abs_gap,mixing_defect\n";
        for (std::size_t a = 0; a < partition.size(); ++a) {
            csv << partition.labels()[a] << ","
                << rational_to_string(exact.probabilities[a]) << ","
                << format_double(exact_d[a]) << ","
                << rational_to_string(mixed.probabilities[a]) << ","
                << format_double(mixed_d[a]) << "," << format_double(gaps[a])
                << "," << format_double(defects[a]) << "\n";
        }
        write_text_file(ctx.out_dir / "two_time.csv", csv.str());
        ctx.add_output("two_time.csv");
    } else {
        json exact_strings = json::array();
        json mixed_strings = json::array();
        for (std::size_t a = 0; a < partition.size(); ++a) {
            exact_strings.push_back(rational_to_string(exact.probabilities[a]));
            mixed_strings.push_back(rational_to_string(mixed.probabilities[a]));
        }
        const json report = {{"macrostates", partition.labels()},
                             {"two_time", exact_d},
                             {"two_time_exact", exact_strings},
                             {"perfect_mixing", mixed_d},
                             {"perfect_mixing_exact", mixed_strings},
                             {"abs_gap", gaps},
                             {"mixing_defect", defects}};
        write_text_file(ctx.out_dir / "two_time.json",
                        report.dump(2) + "\n");
        ctx.add_output("two_time.json");
    }
    ctx.finish();
    return kExitOk;
}

int cmd_retrodict(const ExperimentConfig& config, const CliOptions& options) {
    if (!config.retrodict) {
        throw ConfigError("retrodict settings missing");
    }
    const std::string format = resolve_format(options, "json");
    RunContext ctx = begin_run(config, options);
    const RetrodictSettings& settings = *config.retrodict;

    json report;
    std::string csv_body;
    if (settings.mode == RetrodictSettings::Mode::FireAlarm) {
        const FireAlarmReport fire =
            fire_alarm_demo(settings.prior_fire, settings.prior_drill);
        report = {{"mode", "fire-alarm"},
                  {"prior_fire", fire.prior_fire},
                  {"prior_drill", fire.prior_drill},
                  {"p_fire_given_alarm", fire.p_fire_given_alarm},
                  {"p_fire_given_alarm_no_drill",
                   fire.p_fire_given_alarm_no_drill},
                  {"increase", fire.increase}};
        std::ostringstream csv;
        csv << "quantity,value\n";
        csv << "p_fire_given_alarm," << format_double(fire.p_fire_given_alarm)
            << "\n";
        csv << "p_fire_given_alarm_no_drill,"
            << format_double(fire.p_fire_given_alarm_no_drill) << "\n";
        csv << "increase," << format_double(fire.increase) << "\n";
        csv_body = csv.str();
    } else {
        PosteriorReport base;
        if (settings.mode == RetrodictSettings::Mode::Abstract) {
            RetrodictionProblem problem;
            problem.prior = settings.prior;
            problem.likelihoods = settings.likelihoods;
            problem.hypotheses =
                settings.hypotheses
                    ? *settings.hypotheses
                    : default_labels("H", settings.prior.size());
            problem.observed = settings.observed_label.value_or("observed");
            if (settings.deltas) {
                auto [before, after] = perturb_terms(problem, *settings.deltas);
                report = {{"mode", "abstract"},
                          {"observed", problem.observed},
                          {"deltas", *settings.deltas},
                          {"before", posterior_report_json(before)},
                          {"after", posterior_report_json(after)}};
                csv_body = perturbed_report_csv(before, after);
                base = std::move(after);
            } else {
                base = backward_posterior(problem);
                report = {{"mode", "abstract"},
                          {"observed", problem.observed},
                          {"report", posterior_report_json(base)}};
                csv_body = posterior_report_csv(base);
            }
        } else {
            const PhaseSpace space(settings.cell_count);
            const MacrostatePartition partition = build_partition(
                space, settings.partition_blocks, settings.labels);
            const PermutationDynamics dynamics = settings.dynamics.build(space);
            const std::size_t observed_index =
                std::holds_alternative<std::string>(settings.observed)
                    ? partition.index_of_label(
                          std::get<std::string>(settings.observed))
                    : std::get<std::size_t>(settings.observed);
            base = backward_posterior_dynamical(partition, dynamics,
                                                settings.prior, observed_index,
                                                settings.lag);
            if (settings.deltas) {
                if (settings.deltas->size() != base.terms.size()) {
                    throw ConfigError(
                        "\"deltas\" must match the number of blocks");
                }
                std::vector<Rational> perturbed = base.terms;
                for (std::size_t m = 0; m < perturbed.size(); ++m) {
                    if (!((*settings.deltas)[m] >= 0.0)) {
                        throw std::domain_error(
                            "perturb_terms: deltas must be >= 0");
                    }
                    perturbed[m] +=
                        rational_from_double((*settings.deltas)[m]);
                }
                PosteriorReport after = posterior_from_terms(
                    partition.labels(), std::move(perturbed));
                report = {{"mode", "dynamical"},
                          {"observed", partition.labels()[observed_index]},
                          {"lag", settings.lag},
                          {"deltas", *settings.deltas},
                          {"before", posterior_report_json(base)},
                          {"after", posterior_report_json(after)}};
                csv_body = perturbed_report_csv(base, after);
            } else {
                report = {{"mode", "dynamical"},
                          {"observed", partition.labels()[observed_index]},
                          {"lag", settings.lag},
                          {"report", posterior_report_json(base)}};
                csv_body = posterior_report_csv(base);
            }
        }
    }

    if (format == "json") {
        write_text_file(ctx.out_dir / "retrodict.json",
                        report.dump(2) + "\n");
        ctx.add_output("retrodict.json");
    } else {
        write_text_file(ctx.out_dir / "retrodict.csv", csv_body);
        ctx.add_output("retrodict.csv");
    }
    ctx.finish();
    return kExitOk;
}

namespace {

struct CheckOutcome {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Frequencies of draws from one scenario sampler vs the renormalized
/// weights, asserted at 3 sigma per component.
CheckOutcome scenario_frequency_check(const char* name,
                                      const ScenarioParams& params,
                                      std::uint64_t draws, std::uint64_t seed,
                                      bool renormalized,
                                      std::array<std::uint64_t, 3>& counts) {
    Rng rng(seed);
    counts = {};
    for (std::uint64_t i = 0; i < draws; ++i) {
        const Scenario scenario = renormalized
                                      ? sample_scenario_renormalized(params, rng)
                                      : sample_scenario(params, rng);
        ++counts[static_cast<std::size_t>(scenario)];
    }
    const double p = params.p;
    const std::array<double, 3> expected = {
        p / (2.0 - p), (1.0 - p) / (2.0 - p), (1.0 - p) / (2.0 - p)};
    const double n = static_cast<double>(draws);
    CheckOutcome outcome{name, true, ""};
    for (std::size_t k = 0; k < 3; ++k) {
        const double freq = static_cast<double>(counts[k]) / n;
        const double sigma =
            std::sqrt(std::max(expected[k] * (1.0 - expected[k]), 1e-12) / n);
        if (std::abs(freq - expected[k]) > 3.0 * sigma) {
            outcome.passed = false;
            outcome.detail = "component " + std::to_string(k) + " freq " +
                             format_double(freq) + " expected " +
                             format_double(expected[k]);
            return outcome;
        }
    }
    outcome.detail = "within 3 sigma of the renormalized weights";
    return outcome;
}

} // namespace

int cmd_oracle_check(const ExperimentConfig& config,
                     const CliOptions& options) {
    if (!config.oracle_check) {
        throw ConfigError("oracle-check settings missing");
    }
    RunContext ctx = begin_run(config, options);
    const OracleCheckSettings& settings = *config.oracle_check;
    const std::uint64_t master = ctx.config.master_seed;
    std::vector<CheckOutcome> outcomes;

    // Formula vs microstate enumeration on random two-time fixtures.
    {
        std::vector<std::uint8_t> ok(settings.two_time_fixtures, 0);
        std::vector<std::uint64_t> seeds(settings.two_time_fixtures, 0);
        parallel_for_index(settings.two_time_fixtures, [&](std::size_t i) {
            seeds[i] = derive_seed(master, i);
            const TwoTimeFixture fixture =
                make_two_time_fixture(seeds[i], settings.max_cell_count);
            const MacrostateDistribution formula =
                two_time_distribution(fixture.problem, fixture.partition);
            const MacrostateDistribution enumerated =
                enumerate_two_time(fixture.problem, fixture.partition);
            ok[i] = formula == enumerated ? 1 : 0;
        });
        CheckOutcome outcome{"two_time_equivalence", true, ""};
        for (std::size_t i = 0; i < ok.size(); ++i) {
            if (!ok[i]) {
                outcome.passed = false;
                outcome.detail = "fixture seed " + std::to_string(seeds[i]);
                break;
            }
        }
        if (outcome.passed) {
            outcome.detail =
                std::to_string(settings.two_time_fixtures) + " fixtures exact";
        }
        outcomes.push_back(outcome);
    }

    // Dynamical Bayes vs joint-outcome enumeration.
    {
        std::vector<std::uint8_t> ok(settings.retro_fixtures, 0);
        std::vector<std::uint64_t> seeds(settings.retro_fixtures, 0);
        parallel_for_index(settings.retro_fixtures, [&](std::size_t i) {
            seeds[i] = derive_seed(master, 1000000 + i);
            const RetrodictionFixture fixture =
                make_retrodiction_fixture(seeds[i], settings.max_cell_count);
            const PosteriorReport report = backward_posterior_dynamical(
                fixture.partition, fixture.dynamics, fixture.prior,
                fixture.observed_index, fixture.lag);
            const std::vector<Rational> reference =
                enumerate_backward_posterior(fixture.partition,
                                             fixture.dynamics, fixture.prior,
                                             fixture.observed_index,
                                             fixture.lag);
            ok[i] = report.posterior == reference ? 1 : 0;
        });
        CheckOutcome outcome{"retrodiction_equivalence", true, ""};
        for (std::size_t i = 0; i < ok.size(); ++i) {
            if (!ok[i]) {
                outcome.passed = false;
                outcome.detail = "fixture seed " + std::to_string(seeds[i]);
                break;
            }
        }
        if (outcome.passed) {
            outcome.detail =
                std::to_string(settings.retro_fixtures) + " fixtures exact";
        }
        outcomes.push_back(outcome);
    }

    // Monte Carlo scenario averaging vs the closed form.
    const ScenarioParams params{settings.mc_s, settings.mc_p};
    const MonteCarloResult mc = monte_carlo_bounded(
        params, settings.mc_trials, derive_seed(master, 2000000));
    {
        const auto [rho1, rho2] = bounded_distribution(params);
        const std::array<double, 2> target = {rho1, rho2};
        CheckOutcome outcome{"monte_carlo_bounded", true, ""};
        for (std::size_t c = 0; c < 2; ++c) {
            if (std::abs(mc.estimate[c] - target[c]) >
                3.0 * mc.standard_error[c]) {
                outcome.passed = false;
                outcome.detail = "component " + std::to_string(c + 1) +
                                 " estimate " + format_double(mc.estimate[c]) +
                                 " target " + format_double(target[c]) +
                                 " se " + format_double(mc.standard_error[c]);
                break;
            }
        }
        if (outcome.passed) {
            outcome.detail = "within 3 standard errors of the closed form";
        }
        outcomes.push_back(outcome);
    }

    // Scenario sampler frequencies, both sampling routes.
    std::array<std::uint64_t, 3> rejection_counts{};
    {
        std::array<std::uint64_t, 3> renormalized_counts{};
        outcomes.push_back(scenario_frequency_check(
            "scenario_frequencies_rejection", params, settings.scenario_draws,
            derive_seed(master, 3000000), false, rejection_counts));
        outcomes.push_back(scenario_frequency_check(
            "scenario_frequencies_renormalized", params,
            settings.scenario_draws, derive_seed(master, 3000001), true,
            renormalized_counts));
    }

    // Raw oracle outputs alongside the pass/fail summary.
    {
        std::ostringstream counts_csv;
        counts_csv << "scenario,count\n";
        counts_csv << "InIn," << rejection_counts[0] << "\n";
        counts_csv << "InOut," << rejection_counts[1] << "\n";
        counts_csv << "OutIn," << rejection_counts[2] << "\n";
        write_text_file(ctx.out_dir / "scenario_counts.csv", counts_csv.str());
        ctx.add_output("scenario_counts.csv");

        std::ostringstream mc_csv;
        mc_csv << "rho1,rho2,se1,se2,trials,seed\n";
        mc_csv << format_double(mc.estimate[0]) << ","
               << format_double(mc.estimate[1]) << ","
               << format_double(mc.standard_error[0]) << ","
               << format_double(mc.standard_error[1]) << "," << mc.trials
               << "," << mc.seed << "\n";
        write_text_file(ctx.out_dir / "monte_carlo.csv", mc_csv.str());
        ctx.add_output("monte_carlo.csv");
    }

    std::ostringstream csv;
    csv << "check,status,detail\n";
    bool all_passed = true;
    for (const CheckOutcome& outcome : outcomes) {
        csv << outcome.name << "," << (outcome.passed ? "pass" : "fail") << ","
            << outcome.detail << "\n";
        std::cout << (outcome.passed ? "[pass] " : "[FAIL] ") << outcome.name
                  << ": " << outcome.detail << "\n";
        all_passed = all_passed && outcome.passed;
    }
    write_text_file(ctx.out_dir / "oracle_check.csv", csv.str());
    ctx.add_output("oracle_check.csv");
    ctx.finish();
    return all_passed ? kExitOk : kExitCheckFailure;
}

int run_command(const ExperimentConfig& config, const CliOptions& options) {
    try {
        if (config.command == "entropy-scan") {
            return cmd_entropy_scan(config, options);
        }
        if (config.command == "two-time") {
            return cmd_two_time(config, options);
        }
        if (config.command == "retrodict") {
            return cmd_retrodict(config, options);
        }
        if (config.command == "oracle-check") {
            return cmd_oracle_check(config, options);
        }
        std::cerr << "error: unknown command \"" << config.command << "\"\n";
        return kExitInvalidInput;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIoError;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
}

} // namespace arrowlab
