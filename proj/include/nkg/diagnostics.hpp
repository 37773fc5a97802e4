#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nkg/basis.hpp"
#include "nkg/problems.hpp"
#include "nkg/state.hpp"

namespace nkg {

/// Composite Simpson over equally spaced samples. An odd interval count is
/// handled with Simpson on the leading even part plus one trapezoid panel.
double composite_simpson(std::span<const double> values, double h);

/// Discrete maximum error at the grid nodes against the exact solution.
/// Throws std::logic_error when the problem has no exact solution.
double linf_error(const CoefficientState& state, const ProblemSpec& spec, const BasisConfig& cfg);

/// Energy functional (1/2) int V^2 + U_x^2 - eps1 U^2 - (eps2/2) U^4 dx,
/// truncated to the problem interval.
double energy(const CoefficientState& state, const ProblemSpec& spec, const BasisConfig& cfg);

/// Momentum functional int U_x V dx over the problem interval.
double momentum(const CoefficientState& state, const ProblemSpec& spec, const BasisConfig& cfg);

/// Grid-level forms, usable with exact samples as well as reconstructions.
double energy_from_grid(std::span<const double> u, std::span<const double> ux,
                        std::span<const double> v, double h, double eps1, double eps2);
double momentum_from_grid(std::span<const double> ux, std::span<const double> v, double h);

/// |current - initial| / |initial|; falls back to the absolute change with
/// a flag when initial is zero.
struct RelativeChange {
    double value = 0.0;
    bool absolute_fallback = false;
};
RelativeChange relative_change(double current, double initial);

/// Strict form; throws std::domain_error when initial is zero.
double relative_change_strict(double current, double initial);

struct RunMetadata {
    std::string problem;
    double h = 0.0;
    double dt = 0.0;
    double lambda = 0.0;
    double t_end = 0.0;
    double epsilon1 = 0.0;
    double epsilon2 = 0.0;
    double domain_start = 0.0;
    double domain_end = 0.0;
    long n_steps = 0;
};

/// Collected observer output of one run. Histories are strictly increasing
/// in time; energy/momentum always include t = 0, the error history holds
/// exactly the requested sample times.
struct DiagnosticsReport {
    std::vector<std::pair<double, double>> linf_history;
    std::vector<std::pair<double, double>> energy_history;
    std::vector<std::pair<double, double>> momentum_history;
    RelativeChange energy_change;
    RelativeChange momentum_change;
    RunMetadata meta;

    double initial_energy() const { return energy_history.front().second; }
    double initial_momentum() const { return momentum_history.front().second; }
    std::optional<double> linf_at(double time, double tol = 1e-9) const;

    /// One row per recorded time: t, L_inf, E, P, C(E), C(P). Leading
    /// comment lines carry the parameter manifest.
    std::string to_csv() const;
    std::string to_json() const;
};

/// Scientific notation with 6 significant digits, the numeric format of all
/// CSV artifacts.
std::string format_sci(double v);

} // namespace nkg
