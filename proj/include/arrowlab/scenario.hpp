#pragma once

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace arrowlab {

/// Parameters of the no-mixing two-macrostate analysis.
///   s: overlap fraction mu(phi^t(e0) ∩ D1) / mu(e0), strictly inside (0,1)
///      (the analysis is undefined at the endpoints; take limits instead).
///   p: probability that a small evolved set is captured whole by epsilonT.
struct ScenarioParams {
    double s = 0.5;
    double p = 1.0;

    /// Throws std::domain_error unless 0 < s < 1 and 0 <= p <= 1.
    void validate() const;
};

/// Perfect-mixing two-macrostate distribution: (rho1, rho2) = (s, 1-s).
std::pair<double, double> two_state_distribution(double s);

/// Shannon entropy -sum rho ln rho (natural log, 0 ln 0 = 0). Throws
/// std::domain_error unless entries are >= 0 and sum to 1 within 1e-12.
double shannon_entropy(std::span<const double> dist);
double shannon_entropy(std::initializer_list<double> dist);

/// One whole-capture scenario: which of D1/D2 ends up inside epsilonT,
/// its conditional weight, and its per-macrostate bookkeeping. Measures
/// are expressed in units of mu(e0), so mu(phi^t(e0) ∩ D1) reads as s.
struct ScenarioRow {
    std::string scenario;      // "InIn", "InOut" or "OutIn"
    double probability;        // weight after dismissing (Out,Out)
    double numerator_delta1;   // numerator of the two-time formula for D1
    double numerator_delta2;   // numerator for D2
    double denominator;        // shared denominator
    double contribution_rho1;  // probability * per-scenario rho1
    double contribution_rho2;  // probability * per-scenario rho2
};

/// The three admissible scenarios; (Out,Out) conflicts with the boundary
/// conditions and is dismissed, which renormalizes the remaining weights
/// to p/(2-p), (1-p)/(2-p), (1-p)/(2-p).
struct ScenarioTable {
    std::array<ScenarioRow, 3> rows;
};

ScenarioTable scenario_table(const ScenarioParams& params);

/// The scenario-averaged ("bounded"/"blurred") distribution:
///   rho1_b = (1 - p(1-s)) / (2-p),   rho2_b = 1 - rho1_b
/// (the second component uses the exact sum identity; algebraically it
/// equals (1 - p s)/(2-p)). Neither component can reach 0 or 1 for p < 1.
std::pair<double, double> bounded_distribution(const ScenarioParams& params);

/// Entropy of the bounded distribution:
///   Z_b = ln(2-p) - [(1-p(1-s))/(2-p)] ln(1-p(1-s))
///                 - [(1-ps)/(2-p)]     ln(1-ps).
double bounded_entropy(const ScenarioParams& params);

/// Limit of bounded_entropy as s -> 0 or 1; a floor on the uncertainty
/// that survives no mixing: ln(2-p) - [(1-p)/(2-p)] ln(1-p), with the
/// convention (1-p) ln(1-p) = 0 at p = 1. Throws outside 0 <= p <= 1.
double entropy_lower_bound(double p);

struct EntropyScanRow {
    double p;
    double s;
    double z_b;
};

/// Dense (p, s, Z_b) table, p outer / s inner, s ascending within each p.
/// Grid points are evaluated independently (parallel-safe) with
/// deterministic row order. Domain errors identify the offending pair.
std::vector<EntropyScanRow> entropy_scan(std::span<const double> p_values,
                                         std::span<const double> s_grid);

/// The default reproduction grid: p in {0.25, 0.5, 0.75, 1.0}.
std::vector<double> default_scan_p_values();

/// 997 evenly spaced s samples spanning [0.001, 0.999].
std::vector<double> default_scan_s_grid();

} // namespace arrowlab
