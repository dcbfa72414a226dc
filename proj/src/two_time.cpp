#include "arrowlab/two_time.hpp"

#include <stdexcept>

namespace arrowlab {

void TwoTimeProblem::validate() const {
    if (!(epsilon0.space() == dynamics.space()) ||
        !(epsilonT.space() == dynamics.space())) {
        throw std::invalid_argument("incompatible spaces");
    }
    if (measure(epsilon0) == 0 || measure(epsilonT) == 0) {
        throw std::invalid_argument(
            "TwoTimeProblem: boundary macrostates must be nonempty");
    }
    if (!(0 < t && t < T)) {
        throw std::invalid_argument("TwoTimeProblem: require 0 < t < T");
    }
}

std::vector<double> MacrostateDistribution::probabilities_double() const {
    std::vector<double> out;
    out.reserve(probabilities.size());
    for (const Rational& p : probabilities) {
        out.push_back(rational_to_double(p));
    }
    return out;
}

MacrostateDistribution two_time_distribution(
    const TwoTimeProblem& problem, const MacrostatePartition& partition) {
    problem.validate();
    if (!(partition.space() == problem.dynamics.space())) {
        throw std::invalid_argument("incompatible spaces");
    }
    const RegionSet evolved0 = problem.dynamics.evolve(problem.epsilon0, problem.t);
    const RegionSet evolvedT =
        problem.dynamics.evolve(problem.epsilonT, problem.t - problem.T);
    const RegionSet support = intersect(evolved0, evolvedT);
    const std::uint64_t denominator = measure(support);
    if (denominator == 0) {
        throw std::domain_error("inconsistent boundary conditions");
    }
    MacrostateDistribution dist;
    dist.labels = partition.labels();
    dist.probabilities.reserve(partition.size());
    for (const RegionSet& block : partition.blocks()) {
        dist.probabilities.emplace_back(measure(intersect(support, block)),
                                        denominator);
    }
    return dist;
}

MacrostateDistribution perfect_mixing_distribution(
    const RegionSet& epsilon0, const MacrostatePartition& partition,
    std::int64_t t, const PermutationDynamics& dynamics) {
    if (!(epsilon0.space() == dynamics.space()) ||
        !(partition.space() == dynamics.space())) {
        throw std::invalid_argument("incompatible spaces");
    }
    const std::uint64_t denominator = measure(epsilon0);
    if (denominator == 0) {
        throw std::invalid_argument(
            "perfect_mixing_distribution: epsilon0 must be nonempty");
    }
    const RegionSet evolved = dynamics.evolve(epsilon0, t);
    MacrostateDistribution dist;
    dist.labels = partition.labels();
    dist.probabilities.reserve(partition.size());
    for (const RegionSet& block : partition.blocks()) {
        dist.probabilities.emplace_back(measure(intersect(evolved, block)),
                                        denominator);
    }
    return dist;
}

double mixing_defect(const RegionSet& a, const RegionSet& b, std::int64_t lag,
                     const PermutationDynamics& dynamics) {
    if (!(a.space() == b.space()) || !(a.space() == dynamics.space())) {
        throw std::invalid_argument("incompatible spaces");
    }
    const std::uint64_t n = a.space().cell_count();
    const RegionSet pulled_back = dynamics.evolve(b, -lag);
    const Rational joint(measure(intersect(a, pulled_back)), n);
    const Rational product = Rational(measure(a), n) * Rational(measure(b), n);
    const Rational defect = joint >= product ? joint - product : product - joint;
    return rational_to_double(defect);
}

} // namespace arrowlab
