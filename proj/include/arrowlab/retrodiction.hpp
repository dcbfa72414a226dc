#pragma once

#include "arrowlab/phase_space.hpp"
#include "arrowlab/rational.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace arrowlab {

/// A Bayesian retrodiction problem over a finite hypothesis set of past
/// macrostates A^k: a prior q^k, the likelihoods P(observed | A^k) of the
/// present state under each hypothesis, and the observed label.
struct RetrodictionProblem {
    std::vector<std::string> hypotheses;
    std::vector<double> prior;       // nonnegative, sums to 1 within 1e-12
    std::vector<double> likelihoods; // each in [0, 1]
    std::string observed;

    void validate() const;
};

/// Posterior over past hypotheses. Everything is exact: terms[k] is the
/// unnormalized product likelihood * prior (inputs converted exactly to
/// rationals), normalization is their sum, and posterior[k] = terms[k] /
/// normalization holds as an identity, not within a tolerance.
struct PosteriorReport {
    std::vector<std::string> hypotheses;
    std::vector<Rational> terms;
    Rational normalization;
    std::vector<Rational> posterior;

    std::vector<double> posterior_double() const;
    std::vector<double> terms_double() const;
    double normalization_double() const;
};

/// Shared normalization path for both the abstract and the dynamical
/// route. Throws std::domain_error("observation impossible under
/// hypotheses") when every term vanishes.
PosteriorReport posterior_from_terms(std::vector<std::string> hypotheses,
                                     std::vector<Rational> terms);

/// Forward conditional probability under the equal a priori density on
/// a_i: mu(a_j ∩ phi^lag(a_i)) / mu(a_i), as an exact rational. Throws
/// std::domain_error("undefined density") when a_i is empty.
Rational forward_probability(const RegionSet& a_i, const RegionSet& a_j,
                             std::int64_t lag,
                             const PermutationDynamics& dynamics);

/// Bayes over the supplied likelihood column: posterior[j] proportional to
/// likelihoods[j] * prior[j].
PosteriorReport backward_posterior(const RetrodictionProblem& problem);

/// Bayes with the likelihood column derived from the dynamics: hypothesis
/// k is partition block k at lag steps in the past, likelihoods come from
/// forward_probability, and the posterior path is shared with
/// backward_posterior.
PosteriorReport backward_posterior_dynamical(
    const MacrostatePartition& partition, const PermutationDynamics& dynamics,
    std::span<const double> prior, std::size_t observed_index,
    std::int64_t lag);

/// Adds delta_m >= 0 to each unnormalized term and reports the posterior
/// before and after. Raising a competing hypothesis' term lowers every
/// other posterior; this is the explaining-away arithmetic in isolation.
std::pair<PosteriorReport, PosteriorReport> perturb_terms(
    const RetrodictionProblem& problem, std::span<const double> deltas);

/// Alarm model: fire and drill are independent causes; the alarm sounds
/// iff at least one occurred. Conditioning runs on the alarm as a
/// boundary condition.
struct FireAlarmReport {
    double prior_fire;
    double prior_drill;
    double p_fire_given_alarm;
    double p_fire_given_alarm_no_drill; // always 1 under the OR-gate model
    double increase;                    // explaining-away gain
};

/// Throws std::domain_error unless both priors lie strictly in (0, 1).
FireAlarmReport fire_alarm_demo(double prior_fire, double prior_drill);

} // namespace arrowlab
