#pragma once

#include "arrowlab/retrodiction.hpp"
#include "arrowlab/two_time.hpp"

#include <cstdint>

namespace arrowlab {

/// A randomly generated, boundary-consistent two-time problem for the
/// formula-vs-enumeration equivalence campaigns. Deterministic in seed.
struct TwoTimeFixture {
    MacrostatePartition partition;
    TwoTimeProblem problem;
    std::uint64_t seed = 0;
};

TwoTimeFixture make_two_time_fixture(std::uint64_t seed,
                                     std::uint32_t max_cells);

/// A randomly generated dynamical retrodiction instance whose observed
/// block is reachable (normalization is guaranteed positive).
struct RetrodictionFixture {
    MacrostatePartition partition;
    PermutationDynamics dynamics;
    std::vector<double> prior;
    std::size_t observed_index = 0;
    std::int64_t lag = 1;
    std::uint64_t seed = 0;
};

RetrodictionFixture make_retrodiction_fixture(std::uint64_t seed,
                                              std::uint32_t max_cells);

/// A random abstract problem with strictly interior posteriors, plus a
/// strictly positive perturbation target, for the explaining-away
/// monotonicity campaigns.
struct PerturbationFixture {
    RetrodictionProblem problem;
    std::size_t perturbed_index = 0;
    double delta = 0.0;
    std::uint64_t seed = 0;
};

PerturbationFixture make_perturbation_fixture(std::uint64_t seed);

} // namespace arrowlab
