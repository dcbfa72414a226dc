#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arrowlab/fixtures.hpp"
#include "arrowlab/oracle.hpp"
#include "arrowlab/retrodiction.hpp"

using namespace arrowlab;

namespace {

RetrodictionProblem two_hypothesis_problem(double q1, double q2, double l1,
                                           double l2) {
    return {{"H1", "H2"}, {q1, q2}, {l1, l2}, "present"};
}

} // namespace

TEST_CASE("backward_posterior hand Bayes example") {
    const auto report =
        backward_posterior(two_hypothesis_problem(0.5, 0.5, 0.8, 0.4));
    // 0.8 and 0.4 share a mantissa as doubles, so the ratio is exactly 2:1.
    CHECK(report.posterior == std::vector<Rational>{Rational(2, 3),
                                                    Rational(1, 3)});
    CHECK(report.posterior_double()[0] ==
          doctest::Approx(2.0 / 3).epsilon(1e-15));
    CHECK(report.normalization_double() == doctest::Approx(0.6).epsilon(1e-12));
    // The report is internally exact: terms / N == posterior, sum(terms) == N.
    Rational term_sum(0);
    for (std::size_t k = 0; k < report.terms.size(); ++k) {
        CHECK(report.terms[k] / report.normalization == report.posterior[k]);
        term_sum += report.terms[k];
    }
    CHECK(term_sum == report.normalization);
}

TEST_CASE("backward_posterior degenerate and symmetric cases") {
    const auto degenerate =
        backward_posterior(two_hypothesis_problem(1.0, 0.0, 0.3, 0.9));
    CHECK(degenerate.posterior == std::vector<Rational>{Rational(1),
                                                        Rational(0)});

    const RetrodictionProblem uniform{
        {"A", "B", "C", "D"},
        {0.25, 0.25, 0.25, 0.25},
        {0.7, 0.7, 0.7, 0.7},
        "now"};
    for (const Rational& p : backward_posterior(uniform).posterior) {
        CHECK(p == Rational(1, 4));
    }
}

TEST_CASE("backward_posterior error paths") {
    CHECK_THROWS_WITH_AS(
        backward_posterior(two_hypothesis_problem(0.5, 0.5, 0.0, 0.0)),
        "observation impossible under hypotheses", std::domain_error);
    CHECK_THROWS_AS(
        backward_posterior(two_hypothesis_problem(0.7, 0.7, 0.5, 0.5)),
        std::invalid_argument); // prior does not sum to 1
    CHECK_THROWS_AS(
        backward_posterior(two_hypothesis_problem(0.5, 0.5, 1.5, 0.5)),
        std::invalid_argument); // likelihood outside [0, 1]
}

TEST_CASE("forward_probability") {
    const PhaseSpace space(6);
    SUBCASE("identity keeps the region inside itself") {
        const RegionSet a(space, {0, 1});
        CHECK(forward_probability(a, a, 4,
                                  PermutationDynamics::identity(space)) ==
              Rational(1));
    }
    SUBCASE("shift by two lands exactly on the target") {
        const auto shift2 = PermutationDynamics::cyclic_shift(space, 2);
        CHECK(forward_probability(RegionSet(space, {0, 1}),
                                  RegionSet(space, {2, 3}), 1, shift2) ==
              Rational(1));
        CHECK(forward_probability(RegionSet(space, {0, 1}),
                                  RegionSet(space, {4, 5}), 1, shift2) ==
              Rational(0));
    }
    SUBCASE("empty source has no density") {
        CHECK_THROWS_WITH_AS(
            forward_probability(RegionSet::empty(space),
                                RegionSet::full(space), 1,
                                PermutationDynamics::identity(space)),
            "undefined density", std::domain_error);
    }
    SUBCASE("summed over a partition it is a distribution") {
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            const RetrodictionFixture fixture =
                make_retrodiction_fixture(seed, 24);
            for (std::size_t k = 0; k < fixture.partition.size(); ++k) {
                Rational total(0);
                for (std::size_t j = 0; j < fixture.partition.size(); ++j) {
                    total += forward_probability(fixture.partition.block(k),
                                                 fixture.partition.block(j),
                                                 fixture.lag, fixture.dynamics);
                }
                CHECK(total == Rational(1));
            }
        }
    }
}

TEST_CASE("backward_posterior_dynamical") {
    const PhaseSpace space(6);
    const auto partition = MacrostatePartition::equal_blocks(space, 3);

    SUBCASE("identity dynamics concentrates on the observed block") {
        const std::vector<double> prior = {0.2, 0.5, 0.3};
        const auto report = backward_posterior_dynamical(
            partition, PermutationDynamics::identity(space), prior, 0, 3);
        CHECK(report.posterior ==
              std::vector<Rational>{Rational(1), Rational(0), Rational(0)});
    }
    SUBCASE("cyclic shift splits the posterior over feeders") {
        const std::vector<double> prior = {1.0 / 3, 1.0 / 3, 1.0 / 3};
        const auto report = backward_posterior_dynamical(
            partition, PermutationDynamics::cyclic_shift(space, 1), prior, 1,
            1);
        // Likelihoods are (1/2, 1/2, 0); the uniform prior preserves ratios.
        CHECK(report.posterior ==
              std::vector<Rational>{Rational(1, 2), Rational(1, 2),
                                    Rational(0)});
    }
    SUBCASE("agrees exactly with microstate-level enumeration") {
        for (std::uint64_t seed = 300; seed < 360; ++seed) {
            const RetrodictionFixture fixture =
                make_retrodiction_fixture(seed, 24);
            const auto report = backward_posterior_dynamical(
                fixture.partition, fixture.dynamics, fixture.prior,
                fixture.observed_index, fixture.lag);
            CHECK(report.posterior ==
                  enumerate_backward_posterior(
                      fixture.partition, fixture.dynamics, fixture.prior,
                      fixture.observed_index, fixture.lag));
        }
    }
}

TEST_CASE("perturb_terms worked examples") {
    // Terms (0.4, 0.1) via prior (0.5, 0.5) and likelihoods (0.8, 0.2).
    const auto problem = two_hypothesis_problem(0.5, 0.5, 0.8, 0.2);

    SUBCASE("raising the competing term lowers the posterior") {
        const auto [before, after] = perturb_terms(problem, {{0.0, 0.3}});
        CHECK(before.posterior[0] == Rational(4, 5));
        CHECK(after.posterior_double()[0] == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(after.posterior[0] < before.posterior[0]);
    }
    SUBCASE("raising one's own term raises one's posterior") {
        const auto [before, after] = perturb_terms(problem, {{0.1, 0.0}});
        CHECK(before.posterior_double()[0] == doctest::Approx(0.8).epsilon(1e-12));
        CHECK(after.posterior_double()[0] ==
              doctest::Approx(5.0 / 6).epsilon(1e-12));
        CHECK(after.posterior[0] > before.posterior[0]);
    }
    SUBCASE("zero deltas change nothing") {
        const auto [before, after] = perturb_terms(problem, {{0.0, 0.0}});
        CHECK(before.posterior == after.posterior);
        CHECK(before.terms == after.terms);
    }
    SUBCASE("negative deltas are rejected") {
        CHECK_THROWS_AS(perturb_terms(problem, {{-0.1, 0.0}}),
                        std::domain_error);
    }
}

TEST_CASE("explaining-away monotonicity on random problems") {
    // Exact rational comparisons; the large campaign runs in acceptance.
    for (std::uint64_t seed = 0; seed < 2000; ++seed) {
        const PerturbationFixture fixture = make_perturbation_fixture(seed);
        std::vector<double> deltas(fixture.problem.hypotheses.size(), 0.0);
        deltas[fixture.perturbed_index] = fixture.delta;
        const auto [before, after] = perturb_terms(fixture.problem, deltas);
        for (std::size_t j = 0; j < before.posterior.size(); ++j) {
            if (j == fixture.perturbed_index) {
                CHECK(after.posterior[j] >= before.posterior[j]);
                continue;
            }
            CHECK(after.posterior[j] <= before.posterior[j]);
            if (before.posterior[j] > 0 && before.posterior[j] < 1) {
                CHECK(after.posterior[j] < before.posterior[j]);
            }
        }
    }
}

TEST_CASE("forward/backward consistency via sampling semantics") {
    // Sampling a block from the prior, a microstate uniformly inside it,
    // then conditioning on landing in the observed block, is exactly the
    // joint-outcome enumeration; spot-check that both equal the Bayes path.
    const RetrodictionFixture fixture = make_retrodiction_fixture(77, 20);
    const auto report = backward_posterior_dynamical(
        fixture.partition, fixture.dynamics, fixture.prior,
        fixture.observed_index, fixture.lag);
    const auto enumerated = enumerate_backward_posterior(
        fixture.partition, fixture.dynamics, fixture.prior,
        fixture.observed_index, fixture.lag);
    CHECK(report.posterior == enumerated);
    Rational total(0);
    for (const Rational& p : report.posterior) {
        total += p;
    }
    CHECK(total == Rational(1));
}

TEST_CASE("fire_alarm_demo") {
    SUBCASE("worked example") {
        const auto report = fire_alarm_demo(0.01, 0.1);
        CHECK(report.p_fire_given_alarm ==
              doctest::Approx(0.09174311926605505).epsilon(1e-12));
        CHECK(report.p_fire_given_alarm_no_drill == 1.0);
        CHECK(report.increase > 0.0);
    }
    SUBCASE("four-outcome enumeration agrees") {
        const double pf = 0.01;
        const double pd = 0.1;
        // Outcomes over {fire} x {drill}; alarm sounds iff fire or drill.
        const Rational qf = rational_from_double(pf);
        const Rational qd = rational_from_double(pd);
        const Rational one(1);
        Rational alarm_weight(0);
        Rational fire_and_alarm(0);
        for (int fire = 0; fire <= 1; ++fire) {
            for (int drill = 0; drill <= 1; ++drill) {
                if (fire == 0 && drill == 0) {
                    continue; // no alarm
                }
                const Rational w = (fire ? qf : one - qf) *
                                   (drill ? qd : one - qd);
                alarm_weight += w;
                if (fire) {
                    fire_and_alarm += w;
                }
            }
        }
        const double enumerated =
            rational_to_double(fire_and_alarm / alarm_weight);
        const auto report = fire_alarm_demo(pf, pd);
        CHECK(report.p_fire_given_alarm ==
              doctest::Approx(enumerated).epsilon(1e-9));
        // Conditioning on no drill: only the (fire, no drill) branch sounds.
        CHECK(report.p_fire_given_alarm_no_drill == 1.0);
    }
    SUBCASE("vanishing drill prior leaves fire as the only cause") {
        CHECK(fire_alarm_demo(0.3, 1e-12).p_fire_given_alarm ==
              doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("equal half priors") {
        CHECK(fire_alarm_demo(0.5, 0.5).p_fire_given_alarm ==
              doctest::Approx(2.0 / 3).epsilon(1e-12));
    }
    SUBCASE("ruling out the drill never lowers the fire posterior") {
        Rng rng(11);
        for (int i = 0; i < 300; ++i) {
            const double pf = 0.001 + 0.998 * rng.unit();
            const double pd = 0.001 + 0.998 * rng.unit();
            const auto report = fire_alarm_demo(pf, pd);
            CHECK(report.p_fire_given_alarm_no_drill >=
                  report.p_fire_given_alarm);
        }
    }
    SUBCASE("domain errors") {
        CHECK_THROWS_AS(fire_alarm_demo(0.0, 0.5), std::domain_error);
        CHECK_THROWS_AS(fire_alarm_demo(0.5, 1.0), std::domain_error);
    }
}
