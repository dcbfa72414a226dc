#include "arrowlab/retrodiction.hpp"

#include <cmath>
#include <stdexcept>

namespace arrowlab {

void RetrodictionProblem::validate() const {
    if (hypotheses.empty() || hypotheses.size() != prior.size() ||
        hypotheses.size() != likelihoods.size()) {
        throw std::invalid_argument(
            "RetrodictionProblem: hypotheses, prior and likelihoods must have "
            "equal nonzero length");
    }
    double prior_sum = 0.0;
    for (double q : prior) {
        if (!(q >= 0.0)) {
            throw std::invalid_argument(
                "RetrodictionProblem: prior entries must be nonnegative");
        }
        prior_sum += q;
    }
    if (std::abs(prior_sum - 1.0) > 1e-12) {
        throw std::invalid_argument(
            "RetrodictionProblem: prior must sum to 1");
    }
    for (double l : likelihoods) {
        if (!(l >= 0.0 && l <= 1.0)) {
            throw std::invalid_argument(
                "RetrodictionProblem: likelihoods must lie in [0, 1]");
        }
    }
}

std::vector<double> PosteriorReport::posterior_double() const {
    std::vector<double> out;
    out.reserve(posterior.size());
    for (const Rational& p : posterior) {
        out.push_back(rational_to_double(p));
    }
    return out;
}

std::vector<double> PosteriorReport::terms_double() const {
    std::vector<double> out;
    out.reserve(terms.size());
    for (const Rational& t : terms) {
        out.push_back(rational_to_double(t));
    }
    return out;
}

double PosteriorReport::normalization_double() const {
    return rational_to_double(normalization);
}

PosteriorReport posterior_from_terms(std::vector<std::string> hypotheses,
                                     std::vector<Rational> terms) {
    Rational normalization(0);
    for (const Rational& term : terms) {
        if (term < 0) {
            throw std::domain_error(
                "posterior_from_terms: negative unnormalized term");
        }
        normalization += term;
    }
    if (normalization == 0) {
        throw std::domain_error("observation impossible under hypotheses");
    }
    PosteriorReport report;
    report.hypotheses = std::move(hypotheses);
    report.posterior.reserve(terms.size());
    for (const Rational& term : terms) {
        report.posterior.push_back(term / normalization);
    }
    report.terms = std::move(terms);
    report.normalization = std::move(normalization);
    return report;
}

Rational forward_probability(const RegionSet& a_i, const RegionSet& a_j,
                             std::int64_t lag,
                             const PermutationDynamics& dynamics) {
    if (measure(a_i) == 0) {
        throw std::domain_error("undefined density");
    }
    const RegionSet image = dynamics.evolve(a_i, lag);
    return {measure(intersect(a_j, image)), measure(a_i)};
}

PosteriorReport backward_posterior(const RetrodictionProblem& problem) {
    problem.validate();
    std::vector<Rational> terms;
    terms.reserve(problem.hypotheses.size());
    for (std::size_t k = 0; k < problem.hypotheses.size(); ++k) {
        terms.push_back(rational_from_double(problem.likelihoods[k]) *
                        rational_from_double(problem.prior[k]));
    }
    return posterior_from_terms(problem.hypotheses, std::move(terms));
}

PosteriorReport backward_posterior_dynamical(
    const MacrostatePartition& partition, const PermutationDynamics& dynamics,
    std::span<const double> prior, std::size_t observed_index,
    std::int64_t lag) {
    if (prior.size() != partition.size()) {
        throw std::invalid_argument(
            "backward_posterior_dynamical: one prior entry per block required");
    }
    if (observed_index >= partition.size()) {
        throw std::invalid_argument(
            "backward_posterior_dynamical: observed block index out of range");
    }
    if (lag <= 0) {
        throw std::invalid_argument(
            "backward_posterior_dynamical: lag must be positive");
    }
    const RegionSet& observed = partition.block(observed_index);
    std::vector<Rational> terms;
    terms.reserve(partition.size());
    for (std::size_t k = 0; k < partition.size(); ++k) {
        const Rational likelihood =
            forward_probability(partition.block(k), observed, lag, dynamics);
        terms.push_back(likelihood * rational_from_double(prior[k]));
    }
    return posterior_from_terms(partition.labels(), std::move(terms));
}

std::pair<PosteriorReport, PosteriorReport> perturb_terms(
    const RetrodictionProblem& problem, std::span<const double> deltas) {
    if (deltas.size() != problem.hypotheses.size()) {
        throw std::invalid_argument(
            "perturb_terms: one delta per hypothesis required");
    }
    for (double d : deltas) {
        if (!(d >= 0.0)) {
            throw std::domain_error("perturb_terms: deltas must be >= 0");
        }
    }
    PosteriorReport before = backward_posterior(problem);
    std::vector<Rational> perturbed = before.terms;
    for (std::size_t m = 0; m < perturbed.size(); ++m) {
        perturbed[m] += rational_from_double(deltas[m]);
    }
    PosteriorReport after =
        posterior_from_terms(problem.hypotheses, std::move(perturbed));
    return {std::move(before), std::move(after)};
}

FireAlarmReport fire_alarm_demo(double prior_fire, double prior_drill) {
    if (!(prior_fire > 0.0 && prior_fire < 1.0) ||
        !(prior_drill > 0.0 && prior_drill < 1.0)) {
        throw std::domain_error(
            "fire_alarm_demo: priors must lie strictly in (0, 1)");
    }
    const double p_alarm = 1.0 - (1.0 - prior_fire) * (1.0 - prior_drill);
    FireAlarmReport report;
    report.prior_fire = prior_fire;
    report.prior_drill = prior_drill;
    report.p_fire_given_alarm = prior_fire / p_alarm;
    report.p_fire_given_alarm_no_drill = 1.0;
    report.increase =
        report.p_fire_given_alarm_no_drill - report.p_fire_given_alarm;
    return report;
}

} // namespace arrowlab
