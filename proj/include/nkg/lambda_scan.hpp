#pragma once

#include <string>
#include <vector>

#include "nkg/basis.hpp"
#include "nkg/problems.hpp"

namespace nkg {

/// Two-phase search settings. The coarse grid covers [lambda_min,
/// lambda_max]; the fine grid covers refine_radius around the coarse
/// minimizer at refine_step. Zero is always part of both grids so the
/// classical-spline baseline is on every curve. `exhaustive` replaces the
/// two phases with a single sweep at refine_step.
struct ScanConfig {
    double lambda_min = -1.0;
    double lambda_max = 1.0;
    double coarse_step = 0.001;
    double refine_step = 0.0001;
    double refine_radius = 0.01;
    bool exhaustive = false;
    int workers = 0; ///< 0 = NKG_WORKERS env or hardware concurrency

    void validate() const;
    bool operator==(const ScanConfig&) const = default;
};

struct ScanPoint {
    double lambda = 0.0;
    double linf = 0.0;
    bool ok = false;
    std::string error;
};

struct ScanResult {
    double best_lambda = 0.0;
    double best_linf = 0.0;
    std::vector<ScanPoint> curve; ///< sorted by lambda, both phases merged

    const ScanPoint* point_at(double lambda, double tol = 1e-12) const;
    /// lambda,linf,status rows (linf empty on failed points).
    std::string to_csv() const;
};

/// Minimize the final-time error norm over the extension parameter. Each
/// evaluation is one full solve on cfg_template regridded to that lambda;
/// failed evaluations are recorded and skipped. Ties prefer the lambda of
/// smallest magnitude. Throws ScanError when no evaluation succeeds and
/// std::logic_error when the problem has no exact solution.
ScanResult scan(const ProblemSpec& spec, const BasisConfig& cfg_template, double dt, double t_end,
                const ScanConfig& scan_cfg = {});

} // namespace nkg
