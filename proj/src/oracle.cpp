#include "arrowlab/oracle.hpp"

#include "arrowlab/parallel.hpp"

#include <cmath>
#include <stdexcept>

namespace arrowlab {

MacrostateDistribution enumerate_two_time(
    const TwoTimeProblem& problem, const MacrostatePartition& partition) {
    problem.validate();
    if (!(partition.space() == problem.dynamics.space())) {
        throw std::invalid_argument("incompatible spaces");
    }
    if (problem.dynamics.space().cell_count() > kEnumerationGuard) {
        throw std::invalid_argument(
            "enumerate_two_time: phase space exceeds the enumeration guard; "
            "use the two_time_distribution formula path");
    }
    std::vector<std::uint64_t> counts(partition.size(), 0);
    std::uint64_t total = 0;
    for (Cell x : problem.epsilon0.cells()) {
        const Cell at_t = problem.dynamics.apply(x, problem.t);
        const Cell at_T = problem.dynamics.apply(at_t, problem.T - problem.t);
        if (problem.epsilonT.contains(at_T)) {
            ++counts[partition.block_of_cell(at_t)];
            ++total;
        }
    }
    if (total == 0) {
        throw std::domain_error("inconsistent boundary conditions");
    }
    MacrostateDistribution dist;
    dist.labels = partition.labels();
    dist.probabilities.reserve(counts.size());
    for (std::uint64_t count : counts) {
        dist.probabilities.emplace_back(count, total);
    }
    return dist;
}

std::vector<Rational> enumerate_backward_posterior(
    const MacrostatePartition& partition, const PermutationDynamics& dynamics,
    std::span<const double> prior, std::size_t observed_index,
    std::int64_t lag) {
    if (prior.size() != partition.size()) {
        throw std::invalid_argument(
            "enumerate_backward_posterior: one prior entry per block required");
    }
    if (partition.space().cell_count() > kEnumerationGuard) {
        throw std::invalid_argument(
            "enumerate_backward_posterior: phase space exceeds the "
            "enumeration guard");
    }
    const RegionSet& observed = partition.block(observed_index);
    // Joint weight of (hypothesis k, microstate x in block k, landing in
    // the observed block) is q_k / mu(block k) per landing microstate.
    std::vector<Rational> joint(partition.size(), Rational(0));
    Rational total(0);
    for (std::size_t k = 0; k < partition.size(); ++k) {
        const RegionSet& block = partition.block(k);
        const Rational per_microstate =
            rational_from_double(prior[k]) / Rational(measure(block));
        for (Cell x : block.cells()) {
            if (observed.contains(dynamics.apply(x, lag))) {
                joint[k] += per_microstate;
            }
        }
        total += joint[k];
    }
    if (total == 0) {
        throw std::domain_error("observation impossible under hypotheses");
    }
    for (Rational& w : joint) {
        w /= total;
    }
    return joint;
}

namespace {

// Rejection terminates in 1/(p(2-p)) expected draws; below this the
// renormalized draw (same distribution) takes over.
constexpr double kRejectionCutoff = 1e-6;

Scenario scenario_from_flags(bool in1, bool in2) {
    if (in1 && in2) {
        return Scenario::InIn;
    }
    return in1 ? Scenario::InOut : Scenario::OutIn;
}

} // namespace

Scenario sample_scenario(const ScenarioParams& params, Rng& rng) {
    params.validate();
    if (params.p < kRejectionCutoff) {
        return sample_scenario_renormalized(params, rng);
    }
    for (;;) {
        const bool in1 = rng.bernoulli(params.p);
        const bool in2 = rng.bernoulli(params.p);
        if (in1 || in2) {
            return scenario_from_flags(in1, in2);
        }
        // (Out,Out) conflicts with the boundary conditions: redraw.
    }
}

Scenario sample_scenario(const ScenarioParams& params, std::uint64_t seed) {
    Rng rng(seed);
    return sample_scenario(params, rng);
}

Scenario sample_scenario_renormalized(const ScenarioParams& params, Rng& rng) {
    params.validate();
    const double p = params.p;
    const double in_in = p / (2.0 - p);
    const double one_sided = (1.0 - p) / (2.0 - p);
    const double u = rng.unit();
    if (u < in_in) {
        return Scenario::InIn;
    }
    if (u < in_in + one_sided) {
        return Scenario::InOut;
    }
    return Scenario::OutIn;
}

namespace {

constexpr std::size_t kMonteCarloLanes = 16;

struct ScenarioCounts {
    std::uint64_t in_in = 0;
    std::uint64_t in_out = 0;
    std::uint64_t out_in = 0;
};

} // namespace

MonteCarloResult monte_carlo_bounded(const ScenarioParams& params,
                                     std::uint64_t trials,
                                     std::uint64_t seed) {
    params.validate();
    if (trials == 0) {
        throw std::invalid_argument("monte_carlo_bounded: trials must be >= 1");
    }
    // Fixed lane layout: lane seeds and per-lane trial counts depend only
    // on (trials, seed), never on the thread count.
    std::array<ScenarioCounts, kMonteCarloLanes> lanes{};
    parallel_for_index(kMonteCarloLanes, [&](std::size_t lane) {
        const std::uint64_t base = trials / kMonteCarloLanes;
        const std::uint64_t lane_trials =
            base + (lane < trials % kMonteCarloLanes ? 1 : 0);
        Rng rng(derive_seed(seed, lane));
        ScenarioCounts counts;
        for (std::uint64_t i = 0; i < lane_trials; ++i) {
            switch (sample_scenario(params, rng)) {
                case Scenario::InIn: ++counts.in_in; break;
                case Scenario::InOut: ++counts.in_out; break;
                case Scenario::OutIn: ++counts.out_in; break;
            }
        }
        lanes[lane] = counts;
    });
    ScenarioCounts total;
    for (const ScenarioCounts& c : lanes) {
        total.in_in += c.in_in;
        total.in_out += c.in_out;
        total.out_in += c.out_in;
    }

    const double n = static_cast<double>(trials);
    const double f_in_in = static_cast<double>(total.in_in) / n;
    const double f_in_out = static_cast<double>(total.in_out) / n;
    const double f_out_in = static_cast<double>(total.out_in) / n;
    const double s = params.s;

    MonteCarloResult result;
    result.trials = trials;
    result.seed = seed;
    // Per-trial contributions take one of three values, so moments reduce
    // to counts: rho1 contributions are s, 1, 0 and rho2 are 1-s, 0, 1.
    result.estimate = {s * f_in_in + f_in_out, (1.0 - s) * f_in_in + f_out_in};
    const std::array<double, 2> second_moment = {
        s * s * f_in_in + f_in_out,
        (1.0 - s) * (1.0 - s) * f_in_in + f_out_in};
    for (std::size_t c = 0; c < 2; ++c) {
        if (trials == 1) {
            result.standard_error[c] = 0.0;
            continue;
        }
        const double mean = result.estimate[c];
        const double population_variance =
            std::max(0.0, second_moment[c] - mean * mean);
        const double sample_variance =
            population_variance * n / (n - 1.0);
        result.standard_error[c] = std::sqrt(sample_variance / n);
    }
    return result;
}

CaptureReport estimate_capture_probability(const PermutationDynamics& dynamics,
                                           const RegionSet& small_region,
                                           const RegionSet& epsilonT,
                                           std::int64_t lag) {
    if (measure(small_region) == 0) {
        throw std::invalid_argument(
            "estimate_capture_probability: small_region must be nonempty");
    }
    const RegionSet image = dynamics.evolve(small_region, lag);
    const std::uint64_t inside = measure(intersect(image, epsilonT));
    CaptureReport report;
    report.fraction_inside = Rational(inside, measure(image));
    if (inside == measure(image)) {
        report.captured = 1;
        report.whole = true;
    } else if (inside == 0) {
        report.captured = 0;
        report.whole = true;
    } else {
        report.whole = false; // partial evolution: the idealization breaks
    }
    return report;
}

} // namespace arrowlab
