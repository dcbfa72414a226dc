#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arrowlab/fixtures.hpp"
#include "arrowlab/oracle.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

using namespace arrowlab;

TEST_CASE("enumerate_two_time on the worked fixtures") {
    const PhaseSpace space(6);
    const auto partition = MacrostatePartition::equal_blocks(space, 3);
    SUBCASE("cyclic shift fixture") {
        const TwoTimeProblem problem{
            RegionSet(space, {0, 1}),
            RegionSet(space, {2, 3}),
            1,
            2,
            PermutationDynamics::cyclic_shift(space, 1),
        };
        const auto dist = enumerate_two_time(problem, partition);
        CHECK(dist.probabilities == std::vector<Rational>{Rational(1, 2),
                                                          Rational(1, 2),
                                                          Rational(0)});
        CHECK(dist == two_time_distribution(problem, partition));
    }
    SUBCASE("identity dynamics, matching boundaries") {
        const TwoTimeProblem problem{
            RegionSet(space, {0, 1}),
            RegionSet(space, {0, 1}),
            1,
            2,
            PermutationDynamics::identity(space),
        };
        CHECK(enumerate_two_time(problem, partition).probabilities ==
              std::vector<Rational>{Rational(1), Rational(0), Rational(0)});
    }
}

TEST_CASE("enumeration guard") {
    const std::uint32_t n = kEnumerationGuard + 1;
    const PhaseSpace space(n);
    std::vector<Cell> rest(n - 1);
    std::iota(rest.begin(), rest.end(), Cell{1});
    const MacrostatePartition partition(
        {"tiny", "rest"},
        {RegionSet(space, {0}), RegionSet(space, std::move(rest))});
    const TwoTimeProblem problem{
        RegionSet(space, {0}),
        RegionSet(space, {0}),
        1,
        2,
        PermutationDynamics::identity(space),
    };
    CHECK_THROWS_WITH_AS(enumerate_two_time(problem, partition),
                         doctest::Contains("two_time_distribution"),
                         std::invalid_argument);
    // The formula path has no such restriction.
    CHECK(two_time_distribution(problem, partition).probabilities[0] ==
          Rational(1));
}

TEST_CASE("oracle equivalence on random fixtures") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const TwoTimeFixture fixture = make_two_time_fixture(seed, 24);
        CHECK(enumerate_two_time(fixture.problem, fixture.partition) ==
              two_time_distribution(fixture.problem, fixture.partition));
    }
}

TEST_CASE("sample_scenario") {
    SUBCASE("p = 1 always captures both") {
        Rng rng(1);
        for (int i = 0; i < 200; ++i) {
            CHECK(sample_scenario({0.5, 1.0}, rng) == Scenario::InIn);
        }
    }
    SUBCASE("p = 0 splits evenly between the one-sided scenarios") {
        Rng rng(2);
        const int draws = 100000;
        int in_in = 0;
        int in_out = 0;
        for (int i = 0; i < draws; ++i) {
            const Scenario s = sample_scenario({0.5, 0.0}, rng);
            in_in += s == Scenario::InIn;
            in_out += s == Scenario::InOut;
        }
        CHECK(in_in == 0);
        const double freq = static_cast<double>(in_out) / draws;
        const double sigma = std::sqrt(0.25 / draws);
        CHECK(std::abs(freq - 0.5) < 3 * sigma);
    }
    SUBCASE("p = 0.5 matches the renormalized thirds") {
        Rng rng(3);
        const int draws = 100000;
        std::array<int, 3> counts{};
        for (int i = 0; i < draws; ++i) {
            ++counts[static_cast<std::size_t>(sample_scenario({0.25, 0.5}, rng))];
        }
        const double sigma = std::sqrt((1.0 / 3) * (2.0 / 3) / draws);
        for (int count : counts) {
            CHECK(std::abs(static_cast<double>(count) / draws - 1.0 / 3) <
                  3 * sigma);
        }
    }
    SUBCASE("rejection and renormalized routes agree in distribution") {
        const ScenarioParams params{0.4, 0.3};
        const int draws = 100000;
        Rng rng_a(4);
        Rng rng_b(5);
        std::array<int, 3> rejection{};
        std::array<int, 3> renormalized{};
        for (int i = 0; i < draws; ++i) {
            ++rejection[static_cast<std::size_t>(sample_scenario(params, rng_a))];
            ++renormalized[static_cast<std::size_t>(
                sample_scenario_renormalized(params, rng_b))];
        }
        const double p = params.p;
        const std::array<double, 3> expected = {
            p / (2 - p), (1 - p) / (2 - p), (1 - p) / (2 - p)};
        for (std::size_t k = 0; k < 3; ++k) {
            const double sigma =
                std::sqrt(expected[k] * (1 - expected[k]) / draws);
            CHECK(std::abs(static_cast<double>(rejection[k]) / draws -
                           expected[k]) < 3 * sigma);
            CHECK(std::abs(static_cast<double>(renormalized[k]) / draws -
                           expected[k]) < 3 * sigma);
        }
    }
    SUBCASE("single-draw overload is deterministic in the seed") {
        CHECK(sample_scenario({0.25, 0.5}, std::uint64_t{42}) ==
              sample_scenario({0.25, 0.5}, std::uint64_t{42}));
    }
}

TEST_CASE("monte_carlo_bounded") {
    SUBCASE("p = 1 is exact with zero variance") {
        const MonteCarloResult mc = monte_carlo_bounded({0.3, 1.0}, 10000, 9);
        CHECK(mc.estimate[0] == 0.3);
        CHECK(mc.estimate[1] == 1.0 - 0.3);
        CHECK(mc.standard_error[0] == 0.0);
        CHECK(mc.standard_error[1] == 0.0);
    }
    SUBCASE("a single trial emits a pure scenario row") {
        const MonteCarloResult mc = monte_carlo_bounded({0.25, 0.5}, 1, 7);
        const bool pure = (mc.estimate[0] == 0.25 && mc.estimate[1] == 0.75) ||
                          (mc.estimate[0] == 1.0 && mc.estimate[1] == 0.0) ||
                          (mc.estimate[0] == 0.0 && mc.estimate[1] == 1.0);
        CHECK(pure);
    }
    SUBCASE("estimates straddle the closed form within 3 standard errors") {
        const ScenarioParams params{0.25, 0.5};
        const auto closed = bounded_distribution(params);
        const std::array<double, 2> target = {closed.first, closed.second};
        double previous_se = 1.0;
        for (std::uint64_t trials : {1000ull, 10000ull, 100000ull}) {
            const MonteCarloResult mc =
                monte_carlo_bounded(params, trials, 271828);
            for (std::size_t c = 0; c < 2; ++c) {
                CHECK(std::abs(mc.estimate[c] - target[c]) <=
                      3.0 * mc.standard_error[c]);
            }
            CHECK(mc.estimate[0] + mc.estimate[1] ==
                  doctest::Approx(1.0).epsilon(1e-12));
            // The error band shrinks roughly like 1/sqrt(trials).
            CHECK(mc.standard_error[0] < previous_se);
            previous_se = mc.standard_error[0];
        }
    }
    SUBCASE("bit-for-bit reproducible, independent of thread count") {
        const MonteCarloResult a = monte_carlo_bounded({0.25, 0.5}, 20000, 11);
        const MonteCarloResult b = monte_carlo_bounded({0.25, 0.5}, 20000, 11);
        CHECK(a.estimate == b.estimate);
        CHECK(a.standard_error == b.standard_error);

        setenv("ARROWLAB_THREADS", "1", 1);
        const MonteCarloResult serial =
            monte_carlo_bounded({0.25, 0.5}, 20000, 11);
        setenv("ARROWLAB_THREADS", "7", 1);
        const MonteCarloResult parallel =
            monte_carlo_bounded({0.25, 0.5}, 20000, 11);
        unsetenv("ARROWLAB_THREADS");
        CHECK(serial.estimate == parallel.estimate);
        CHECK(serial.standard_error == parallel.standard_error);
        CHECK(serial.estimate == a.estimate);
    }
}

TEST_CASE("estimate_capture_probability") {
    const PhaseSpace space(6);
    const auto shift = PermutationDynamics::cyclic_shift(space, 1);
    const RegionSet small(space, {1, 2});

    SUBCASE("full space captures everything") {
        const auto report = estimate_capture_probability(
            shift, small, RegionSet::full(space), 1);
        CHECK(report.captured == 1);
        CHECK(report.whole);
        CHECK(report.fraction_inside == Rational(1));
    }
    SUBCASE("complement of the image captures nothing") {
        const RegionSet image = shift.evolve(small, 1);
        const auto report = estimate_capture_probability(
            shift, small, complement(image), 1);
        CHECK(report.captured == 0);
        CHECK(report.whole);
        CHECK(report.fraction_inside == Rational(0));
    }
    SUBCASE("straddling is reported, not forced") {
        // Image of {1,2} under one shift is {2,3}; epsilonT = {3,4} cuts it.
        const auto report = estimate_capture_probability(
            shift, small, RegionSet(space, {3, 4}), 1);
        CHECK(!report.captured.has_value());
        CHECK(!report.whole);
        CHECK(report.fraction_inside == Rational(1, 2));
    }
}
