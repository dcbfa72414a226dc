#include "arrowlab/fixtures.hpp"

#include "arrowlab/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace arrowlab {

namespace {

RegionSet random_nonempty_region(Rng& rng, PhaseSpace space) {
    std::vector<Cell> cells;
    for (Cell c = 0; c < space.cell_count(); ++c) {
        if (rng.bernoulli(0.5)) {
            cells.push_back(c);
        }
    }
    if (cells.empty()) {
        cells.push_back(static_cast<Cell>(rng.below(space.cell_count())));
    }
    return {space, std::move(cells)};
}

MacrostatePartition random_partition(Rng& rng, PhaseSpace space,
                                     std::size_t block_count) {
    std::vector<std::vector<Cell>> blocks(block_count);
    // Pin one cell per block so none is empty, then scatter the rest.
    for (std::size_t b = 0; b < block_count; ++b) {
        blocks[b].push_back(static_cast<Cell>(b));
    }
    for (Cell c = static_cast<Cell>(block_count); c < space.cell_count(); ++c) {
        blocks[rng.below(block_count)].push_back(c);
    }
    std::vector<std::string> labels;
    std::vector<RegionSet> regions;
    for (std::size_t b = 0; b < block_count; ++b) {
        labels.push_back("D" + std::to_string(b + 1));
        regions.emplace_back(space, std::move(blocks[b]));
    }
    return {std::move(labels), std::move(regions)};
}

} // namespace

TwoTimeFixture make_two_time_fixture(std::uint64_t seed,
                                     std::uint32_t max_cells) {
    if (max_cells < 2) {
        throw std::invalid_argument(
            "make_two_time_fixture: max_cells must be >= 2");
    }
    for (std::uint64_t attempt = 0;; ++attempt) {
        Rng rng(derive_seed(seed, attempt));
        const auto n = static_cast<std::uint32_t>(2 + rng.below(max_cells - 1));
        const PhaseSpace space(n);
        const std::size_t block_count =
            2 + rng.below(std::min<std::uint64_t>(n, 4) - 1);
        MacrostatePartition partition = random_partition(rng, space, block_count);
        const std::int64_t t = static_cast<std::int64_t>(1 + rng.below(4));
        const std::int64_t T = t + static_cast<std::int64_t>(1 + rng.below(6));
        TwoTimeProblem problem{
            random_nonempty_region(rng, space),
            random_nonempty_region(rng, space),
            t,
            T,
            random_permutation(rng.next_u64(), n),
        };
        // Keep only boundary-consistent draws.
        const RegionSet support =
            intersect(problem.dynamics.evolve(problem.epsilon0, t),
                      problem.dynamics.evolve(problem.epsilonT, t - T));
        if (measure(support) > 0) {
            return {std::move(partition), std::move(problem), seed};
        }
    }
}

RetrodictionFixture make_retrodiction_fixture(std::uint64_t seed,
                                              std::uint32_t max_cells) {
    if (max_cells < 2) {
        throw std::invalid_argument(
            "make_retrodiction_fixture: max_cells must be >= 2");
    }
    Rng rng(derive_seed(seed, 0));
    const auto n = static_cast<std::uint32_t>(2 + rng.below(max_cells - 1));
    const PhaseSpace space(n);
    const std::size_t block_count =
        2 + rng.below(std::min<std::uint64_t>(n, 4) - 1);
    MacrostatePartition partition = random_partition(rng, space, block_count);
    PermutationDynamics dynamics = random_permutation(rng.next_u64(), n);
    const std::int64_t lag = static_cast<std::int64_t>(1 + rng.below(5));

    std::vector<double> prior(block_count);
    double prior_sum = 0.0;
    for (double& q : prior) {
        q = 0.05 + rng.unit();
        prior_sum += q;
    }
    for (double& q : prior) {
        q /= prior_sum;
    }

    // Observing the image of a random microstate guarantees at least one
    // hypothesis with positive likelihood (and every prior is positive).
    const Cell witness = static_cast<Cell>(rng.below(n));
    const std::size_t observed_index =
        partition.block_of_cell(dynamics.apply(witness, lag));
    return {std::move(partition), std::move(dynamics), std::move(prior),
            observed_index, lag, seed};
}

PerturbationFixture make_perturbation_fixture(std::uint64_t seed) {
    Rng rng(derive_seed(seed, 0));
    const std::size_t count = 2 + rng.below(4);
    RetrodictionProblem problem;
    double prior_sum = 0.0;
    std::vector<double> raw(count);
    for (std::size_t k = 0; k < count; ++k) {
        problem.hypotheses.push_back("H" + std::to_string(k + 1));
        raw[k] = 0.05 + rng.unit();
        prior_sum += raw[k];
        // Strictly positive likelihoods keep every posterior inside (0,1).
        problem.likelihoods.push_back(0.01 + 0.99 * rng.unit());
    }
    for (double q : raw) {
        problem.prior.push_back(q / prior_sum);
    }
    problem.observed = "present";
    const std::size_t perturbed_index = rng.below(count);
    const double delta = 0.01 + rng.unit();
    return {std::move(problem), perturbed_index, delta, seed};
}

} // namespace arrowlab
