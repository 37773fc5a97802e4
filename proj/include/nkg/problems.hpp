#pragma once

#include <functional>
#include <string>
#include <vector>

namespace nkg {

using SpaceTimeFn = std::function<double(double x, double t)>;
using SpaceFn = std::function<double(double x)>;

/// One initial-boundary-value problem for u_tt - u_xx - eps1*u - eps2*u^3 = 0
/// with homogeneous Neumann conditions at both ends.
///
/// initial_u / initial_v are always callable. exact_u / exact_ut may be
/// empty for user-defined problems; error norms are then unavailable.
struct ProblemSpec {
    std::string name;
    double epsilon1 = 0.0;
    double epsilon2 = 0.0;
    double domain_start = 0.0;
    double domain_end = 1.0;
    double t_end = 1.0;
    SpaceTimeFn exact_u;
    SpaceTimeFn exact_ut;
    SpaceFn initial_u;
    SpaceFn initial_v;

    bool has_exact() const { return static_cast<bool>(exact_u); }
    void validate() const;
};

/// tanh front travelling at velocity nu (|nu| < 1), eps1 = 1, eps2 = -1,
/// domain [-30, 30]. Throws std::invalid_argument for |nu| >= 1.
ProblemSpec traveling_wave(double nu);

/// Amplitude-2 sech pulse, eps1 = 2, eps2 = -1, domain [-10, 15].
ProblemSpec solitary_wave();

/// Pointwise residual u_tt - u_xx - eps1*u - eps2*u^3 of an arbitrary
/// space-time function, via central differences with step 1e-4.
double residual(const ProblemSpec& spec, const SpaceTimeFn& u_fn, double x, double t);

/// Problem without exact solution, built from tabulated initial data
/// (sorted x with u and u_t samples, linearly interpolated).
ProblemSpec custom_problem(std::string name, double epsilon1, double epsilon2,
                           double domain_start, double domain_end, double t_end,
                           std::vector<double> xs, std::vector<double> u0,
                           std::vector<double> v0);

/// Look up a built-in problem by name ("traveling_wave" takes the default
/// velocity 0.5). Throws std::invalid_argument for unknown names.
ProblemSpec find_problem(const std::string& name);
std::vector<std::string> problem_names();

} // namespace nkg
