#pragma once

#include "arrowlab/phase_space.hpp"
#include "arrowlab/rational.hpp"

#include <vector>

namespace arrowlab {

/// Boundary data for a two-time conditioning problem: the system is in
/// macrostate epsilon0 at time 0 and in epsilonT at time T; probabilities
/// are asked for at an intermediate time t, 0 < t < T.
struct TwoTimeProblem {
    RegionSet epsilon0;
    RegionSet epsilonT;
    std::int64_t t = 0;
    std::int64_t T = 0;
    PermutationDynamics dynamics;

    /// Throws std::invalid_argument on broken invariants (empty boundary
    /// macrostates, ordering, space mismatches).
    void validate() const;
};

/// A probability distribution over the blocks of a macrostate partition.
/// Probabilities are exact rationals summing to exactly 1; doubles are a
/// presentation-layer conversion.
struct MacrostateDistribution {
    std::vector<std::string> labels;
    std::vector<Rational> probabilities;

    std::vector<double> probabilities_double() const;

    friend bool operator==(const MacrostateDistribution&,
                           const MacrostateDistribution&) = default;
};

/// Conditional macrostate distribution under both boundary conditions:
///   rho_a = mu(phi^t(e0) ∩ D_a ∩ phi^(t-T)(eT)) / mu(phi^t(e0) ∩ phi^(t-T)(eT))
/// computed in exact rational arithmetic. Throws
/// std::domain_error("inconsistent boundary conditions") when no microstate
/// satisfies both boundaries.
MacrostateDistribution two_time_distribution(const TwoTimeProblem& problem,
                                             const MacrostatePartition& partition);

/// The perfect-mixing reduction: rho_a = mu(phi^t(e0) ∩ D_a) / mu(e0).
/// The final boundary drops out entirely.
MacrostateDistribution perfect_mixing_distribution(
    const RegionSet& epsilon0, const MacrostatePartition& partition,
    std::int64_t t, const PermutationDynamics& dynamics);

/// Deviation from the product rule mu(A ∩ phi^(-lag)(B)) = mu(A) mu(B) / N,
/// measured in fractions of total measure:
///   | mu(A ∩ phi^(-lag)(B))/N − (mu(A)/N)(mu(B)/N) |.
/// Zero means the pair mixes perfectly at this lag.
double mixing_defect(const RegionSet& a, const RegionSet& b, std::int64_t lag,
                     const PermutationDynamics& dynamics);

} // namespace arrowlab
