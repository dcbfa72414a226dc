#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arrowlab/fixtures.hpp"
#include "arrowlab/two_time.hpp"

#include <cmath>
#include <numeric>

using namespace arrowlab;

namespace {

// The worked N=6 cyclic-shift fixture: blocks {0,1}/{2,3}/{4,5},
// epsilon0 = D1, epsilonT = D2, t = 1, T = 2.
struct CyclicFixture {
    PhaseSpace space{6};
    MacrostatePartition partition = MacrostatePartition::equal_blocks(space, 3);
    TwoTimeProblem problem{
        RegionSet(space, {0, 1}),
        RegionSet(space, {2, 3}),
        1,
        2,
        PermutationDynamics::cyclic_shift(space, 1),
    };
};

Rational sum(const std::vector<Rational>& values) {
    Rational total(0);
    for (const Rational& v : values) {
        total += v;
    }
    return total;
}

} // namespace

TEST_CASE("two_time_distribution on the worked cyclic fixture") {
    CyclicFixture fx;
    const auto dist = two_time_distribution(fx.problem, fx.partition);
    // phi^1(e0) = {1,2}, phi^-1(eT) = {1,2}; numerators 1,1,0 over 2.
    CHECK(dist.probabilities == std::vector<Rational>{Rational(1, 2),
                                                      Rational(1, 2),
                                                      Rational(0)});
    CHECK(dist.labels == fx.partition.labels());
}

TEST_CASE("vacuous final condition reduces to perfect mixing exactly") {
    CyclicFixture fx;
    fx.problem.epsilonT = RegionSet::full(fx.space);
    const auto two_time = two_time_distribution(fx.problem, fx.partition);
    const auto mixing = perfect_mixing_distribution(
        fx.problem.epsilon0, fx.partition, fx.problem.t, fx.problem.dynamics);
    CHECK(two_time == mixing);

    // And across random fixtures with the final condition forced vacuous.
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        TwoTimeFixture fixture = make_two_time_fixture(seed, 24);
        fixture.problem.epsilonT =
            RegionSet::full(fixture.problem.epsilonT.space());
        CHECK(two_time_distribution(fixture.problem, fixture.partition) ==
              perfect_mixing_distribution(fixture.problem.epsilon0,
                                          fixture.partition,
                                          fixture.problem.t,
                                          fixture.problem.dynamics));
    }
}

TEST_CASE("deterministic single-cell trajectory") {
    const PhaseSpace space(6);
    const auto partition = MacrostatePartition::equal_blocks(space, 3);
    const TwoTimeProblem problem{
        RegionSet(space, {0}),
        RegionSet(space, {0}),
        1,
        2,
        PermutationDynamics::identity(space),
    };
    const auto dist = two_time_distribution(problem, partition);
    CHECK(dist.probabilities == std::vector<Rational>{Rational(1), Rational(0),
                                                      Rational(0)});
}

TEST_CASE("inconsistent boundaries raise") {
    const PhaseSpace space(6);
    const auto partition = MacrostatePartition::equal_blocks(space, 3);
    // Identity dynamics cannot connect disjoint regions.
    const TwoTimeProblem problem{
        RegionSet(space, {0}),
        RegionSet(space, {5}),
        1,
        2,
        PermutationDynamics::identity(space),
    };
    CHECK_THROWS_WITH_AS(two_time_distribution(problem, partition),
                         "inconsistent boundary conditions",
                         std::domain_error);
}

TEST_CASE("problem validation") {
    const PhaseSpace space(6);
    TwoTimeProblem problem{
        RegionSet(space, {0}),
        RegionSet(space, {0}),
        2,
        2, // t == T violates 0 < t < T
        PermutationDynamics::identity(space),
    };
    CHECK_THROWS_AS(problem.validate(), std::invalid_argument);
    problem.t = 0;
    problem.T = 3;
    CHECK_THROWS_AS(problem.validate(), std::invalid_argument);
}

TEST_CASE("perfect mixing distribution") {
    const PhaseSpace space(6);
    const auto partition = MacrostatePartition::equal_blocks(space, 3);

    SUBCASE("identity dynamics keeps epsilon0 in its own block") {
        const auto dist = perfect_mixing_distribution(
            RegionSet(space, {0, 1}), partition, 5,
            PermutationDynamics::identity(space));
        CHECK(dist.probabilities == std::vector<Rational>{Rational(1),
                                                          Rational(0),
                                                          Rational(0)});
    }
    SUBCASE("shift splits across two blocks") {
        const auto dist = perfect_mixing_distribution(
            RegionSet(space, {0, 1}), partition, 1,
            PermutationDynamics::cyclic_shift(space, 1));
        CHECK(dist.probabilities == std::vector<Rational>{Rational(1, 2),
                                                          Rational(1, 2),
                                                          Rational(0)});
    }
    SUBCASE("full-space start is uniform over block measures") {
        const auto dist = perfect_mixing_distribution(
            RegionSet::full(space), partition, 3,
            PermutationDynamics::cyclic_shift(space, 2));
        for (const Rational& p : dist.probabilities) {
            CHECK(p == Rational(2, 6));
        }
    }
}

TEST_CASE("distributions sum to exactly 1 on random fixtures") {
    for (std::uint64_t seed = 100; seed < 160; ++seed) {
        const TwoTimeFixture fixture = make_two_time_fixture(seed, 24);
        const auto dist = two_time_distribution(fixture.problem,
                                                fixture.partition);
        CHECK(sum(dist.probabilities) == Rational(1));
        const auto mixing = perfect_mixing_distribution(
            fixture.problem.epsilon0, fixture.partition, fixture.problem.t,
            fixture.problem.dynamics);
        CHECK(sum(mixing.probabilities) == Rational(1));
        for (const Rational& p : dist.probabilities) {
            CHECK(p >= 0);
            CHECK(p <= 1);
        }
    }
}

TEST_CASE("mixing defect") {
    SUBCASE("identity dynamics on half the space is maximally non-mixing") {
        const PhaseSpace space(8);
        const RegionSet half(space, {0, 1, 2, 3});
        const double defect = mixing_defect(
            half, half, 3, PermutationDynamics::identity(space));
        CHECK(defect == 0.25); // exact: computed rationally, then converted
    }
    SUBCASE("the full space mixes with anything") {
        Rng rng(99);
        for (int round = 0; round < 20; ++round) {
            const auto n = static_cast<std::uint32_t>(2 + rng.below(40));
            const PhaseSpace space(n);
            std::vector<Cell> cells;
            for (Cell c = 0; c < n; ++c) {
                if (rng.bernoulli(0.4)) {
                    cells.push_back(c);
                }
            }
            const RegionSet a(space, cells);
            const auto lag = static_cast<std::int64_t>(rng.below(7)) - 3;
            const double defect =
                mixing_defect(a, RegionSet::full(space), lag,
                              random_permutation(rng.next_u64(), n));
            CHECK(defect == 0.0);
        }
    }
    SUBCASE("random permutations mix half-spaces well") {
        // Hypergeometric concentration at N = 10^4; the full 100-seed
        // campaign runs in the acceptance suite.
        const std::uint32_t n = 10000;
        const PhaseSpace space(n);
        std::vector<Cell> low(n / 2);
        std::iota(low.begin(), low.end(), Cell{0});
        const RegionSet a(space, low);
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto dynamics = random_permutation(derive_seed(555, seed), n);
            CHECK(mixing_defect(a, a, 1, dynamics) < 0.02);
        }
    }
}
