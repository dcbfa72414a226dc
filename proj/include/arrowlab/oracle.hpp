#pragma once

#include "arrowlab/rng.hpp"
#include "arrowlab/scenario.hpp"
#include "arrowlab/two_time.hpp"

#include <array>
#include <cstdint>
#include <optional>

namespace arrowlab {

/// Largest phase space the per-microstate enumerators accept.
inline constexpr std::uint32_t kEnumerationGuard = 1u << 16;

/// Evaluates the two-time conditional distribution by tracing every
/// microstate of epsilon0 individually: count trajectories whose time-t
/// position lies in each block and whose time-T position lies in epsilonT,
/// then normalize. Independent of the region-formula path and must agree
/// with it exactly. Throws when the phase space exceeds kEnumerationGuard
/// (use two_time_distribution instead at that size).
MacrostateDistribution enumerate_two_time(const TwoTimeProblem& problem,
                                          const MacrostatePartition& partition);

/// Microstate-level Bayes: enumerate joint outcomes (hypothesis block k,
/// microstate x uniform in block k, did phi^lag(x) land in the observed
/// block), condition on the landing, and read off the posterior. Exact
/// rationals throughout; the reference for backward_posterior_dynamical.
std::vector<Rational> enumerate_backward_posterior(
    const MacrostatePartition& partition, const PermutationDynamics& dynamics,
    std::span<const double> prior, std::size_t observed_index,
    std::int64_t lag);

/// The admissible whole-capture scenarios; (Out,Out) violates the boundary
/// conditions and never occurs.
enum class Scenario { InIn, InOut, OutIn };

/// Draws a scenario by rejection: two independent captures with
/// probability p, redrawing (Out,Out). Falls back to the renormalized
/// draw (the identical distribution) when p is too small for rejection
/// to terminate in reasonable time.
Scenario sample_scenario(const ScenarioParams& params, Rng& rng);
Scenario sample_scenario(const ScenarioParams& params, std::uint64_t seed);

/// Draws directly from the renormalized weights
/// (p/(2-p), (1-p)/(2-p), (1-p)/(2-p)); same distribution as rejection.
Scenario sample_scenario_renormalized(const ScenarioParams& params, Rng& rng);

/// Scenario-averaging estimate of the bounded distribution.
struct MonteCarloResult {
    std::array<double, 2> estimate;       // averages to the bounded rho
    std::array<double, 2> standard_error; // sample sd / sqrt(trials)
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

/// Per trial: sample a scenario and emit its conditional distribution —
/// InIn -> (s, 1-s), InOut -> (1, 0), OutIn -> (0, 1) — then average.
/// Trials are split over a fixed number of lanes with seeds derived from
/// (seed, lane), so results are bit-identical for any thread count.
MonteCarloResult monte_carlo_bounded(const ScenarioParams& params,
                                     std::uint64_t trials, std::uint64_t seed);

/// Whole-evolution dichotomy probe: did phi^lag(small_region) land wholly
/// inside epsilonT (captured = 1), wholly outside (captured = 0), or
/// straddle the boundary (captured empty, whole = false)? The inside
/// fraction quantifies how well the no-partial-evolution idealization
/// holds for these dynamics.
struct CaptureReport {
    std::optional<int> captured;
    bool whole = false;
    Rational fraction_inside;
};

CaptureReport estimate_capture_probability(const PermutationDynamics& dynamics,
                                           const RegionSet& small_region,
                                           const RegionSet& epsilonT,
                                           std::int64_t lag);

} // namespace arrowlab
