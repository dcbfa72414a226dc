#include "arrowlab/scenario.hpp"

#include "arrowlab/parallel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace arrowlab {

namespace {

void check_s(double s) {
    if (!(s > 0.0 && s < 1.0)) {
        throw std::domain_error("overlap fraction s must satisfy 0 < s < 1");
    }
}

void check_p(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error("capture probability p must satisfy 0 <= p <= 1");
    }
}

} // namespace

void ScenarioParams::validate() const {
    check_s(s);
    check_p(p);
}

std::pair<double, double> two_state_distribution(double s) {
    check_s(s);
    return {s, 1.0 - s};
}

double shannon_entropy(std::span<const double> dist) {
    double sum = 0.0;
    for (double rho : dist) {
        if (!(rho >= 0.0)) {
            throw std::domain_error("shannon_entropy: negative probability");
        }
        sum += rho;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw std::domain_error("shannon_entropy: probabilities must sum to 1");
    }
    double entropy = 0.0;
    for (double rho : dist) {
        if (rho > 0.0) {
            entropy -= rho * std::log(rho);
        }
    }
    return entropy;
}

double shannon_entropy(std::initializer_list<double> dist) {
    return shannon_entropy(std::span<const double>(dist.begin(), dist.size()));
}

ScenarioTable scenario_table(const ScenarioParams& params) {
    params.validate();
    const double s = params.s;
    const double p = params.p;
    const double in_in = p / (2.0 - p);
    const double one_sided = (1.0 - p) / (2.0 - p);
    ScenarioTable table;
    table.rows[0] = {"InIn", in_in, s, 1.0 - s, 1.0, in_in * s,
                     in_in * (1.0 - s)};
    table.rows[1] = {"InOut", one_sided, s, 0.0, s, one_sided, 0.0};
    table.rows[2] = {"OutIn", one_sided, 0.0, 1.0 - s, 1.0 - s, 0.0,
                     one_sided};
    return table;
}

std::pair<double, double> bounded_distribution(const ScenarioParams& params) {
    params.validate();
    const double rho1 = (1.0 - params.p * (1.0 - params.s)) / (2.0 - params.p);
    return {rho1, 1.0 - rho1};
}

double bounded_entropy(const ScenarioParams& params) {
    params.validate();
    const double s = params.s;
    const double p = params.p;
    const double u = 1.0 - p * (1.0 - s); // numerator weight of rho1_b
    const double v = 1.0 - p * s;         // numerator weight of rho2_b
    return std::log(2.0 - p) - u / (2.0 - p) * std::log(u) -
           v / (2.0 - p) * std::log(v);
}

double entropy_lower_bound(double p) {
    check_p(p);
    double result = std::log(2.0 - p);
    if (p < 1.0) {
        result -= (1.0 - p) / (2.0 - p) * std::log(1.0 - p);
    }
    return result;
}

std::vector<EntropyScanRow> entropy_scan(std::span<const double> p_values,
                                         std::span<const double> s_grid) {
    for (double p : p_values) {
        for (double s : s_grid) {
            try {
                ScenarioParams{s, p}.validate();
            } catch (const std::domain_error& e) {
                throw std::domain_error("entropy_scan: invalid pair p=" +
                                        std::to_string(p) + ", s=" +
                                        std::to_string(s) + ": " + e.what());
            }
        }
    }
    std::vector<EntropyScanRow> rows(p_values.size() * s_grid.size());
    parallel_for_index(rows.size(), [&](std::size_t i) {
        const double p = p_values[i / s_grid.size()];
        const double s = s_grid[i % s_grid.size()];
        rows[i] = {p, s, bounded_entropy({s, p})};
    });
    return rows;
}

std::vector<double> default_scan_p_values() { return {0.25, 0.5, 0.75, 1.0}; }

std::vector<double> default_scan_s_grid() {
    constexpr std::size_t count = 997;
    constexpr double start = 0.001;
    constexpr double stop = 0.999;
    std::vector<double> grid(count);
    const double step = (stop - start) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        grid[i] = start + static_cast<double>(i) * step;
    }
    grid.back() = stop;
    return grid;
}

} // namespace arrowlab
