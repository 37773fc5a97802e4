#pragma once

#include <functional>
#include <vector>

#include "nkg/basis.hpp"
#include "nkg/diagnostics.hpp"
#include "nkg/linalg.hpp"
#include "nkg/problems.hpp"
#include "nkg/state.hpp"

namespace nkg {

/// Solve the spline interpolation system for the initial coefficients:
/// U(x_m, 0) = initial_u(x_m) at every node plus U_x = 0 at both ends,
/// and the same for V with initial_v. Exact nodal interpolation at t = 0.
CoefficientState initialize(const ProblemSpec& spec, const BasisConfig& cfg);

/// One linearized Crank-Nicolson step: assemble, solve, re-expand ghosts.
/// Exactly one linear solve per step. A singular system is reported with
/// the time level attached.
CoefficientState step(const CoefficientState& state, double dt, const ProblemSpec& spec,
                      const BasisConfig& cfg, Pivoting pivoting = Pivoting::Partial);

struct RunObservers {
    /// Times at which to record diagnostics; each must sit on the step grid.
    std::vector<double> sample_times;
    /// Invoked after recording at every sample time (snapshots etc).
    std::function<void(const CoefficientState&)> on_sample;
    Pivoting pivoting = Pivoting::Partial;
};

/// Advance from the interpolated initial state to t_end and collect the
/// diagnostics report. t_end must be an integer multiple of dt within 1e-9
/// relative. Energy/momentum are recorded at t = 0 and every sample time;
/// the error norm (when an exact solution exists) at sample times only.
DiagnosticsReport run(const ProblemSpec& spec, const BasisConfig& cfg, double dt, double t_end,
                      const RunObservers& observers = {});

/// Per-node table emitted at sample times: position, both reconstructed
/// fields, and the exact solution with pointwise error when available.
struct SnapshotRow {
    double x;
    double u;
    double v;
    std::optional<double> exact;
    std::optional<double> error;
};
std::vector<SnapshotRow> make_snapshot(const CoefficientState& state, const ProblemSpec& spec,
                                       const BasisConfig& cfg);

} // namespace nkg
