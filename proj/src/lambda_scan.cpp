#include "nkg/lambda_scan.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nkg/diagnostics.hpp"
#include "nkg/errors.hpp"
#include "nkg/parallel.hpp"
#include "nkg/timestepper.hpp"

namespace nkg {

void ScanConfig::validate() const {
    if (!(lambda_min < lambda_max))
        throw std::invalid_argument("ScanConfig: lambda_min must be < lambda_max");
    if (!(refine_step > 0.0) || !(coarse_step > 0.0) || refine_step > coarse_step)
        throw std::invalid_argument("ScanConfig: need 0 < refine_step <= coarse_step");
    if (!(refine_radius > 0.0))
        throw std::invalid_argument("ScanConfig: refine_radius must be positive");
}

namespace {

// Multiples of `step` inside [lo, hi]; generated as k*step so that repeated
// scans and both phases land on bit-identical lambdas, and zero is exact.
std::vector<double> step_grid(double lo, double hi, double step) {
    std::vector<double> grid;
    const long k_lo = static_cast<long>(std::ceil(lo / step - 1e-9));
    const long k_hi = static_cast<long>(std::floor(hi / step + 1e-9));
    grid.reserve(static_cast<size_t>(std::max(0L, k_hi - k_lo + 1)));
    for (long k = k_lo; k <= k_hi; ++k) grid.push_back(k * step);
    return grid;
}

void append_unique(std::vector<double>& grid, double value) {
    for (double g : grid)
        if (g == value) return;
    grid.push_back(value);
}

bool better(const ScanPoint& a, const ScanPoint& b) {
    if (a.linf != b.linf) return a.linf < b.linf;
    return std::abs(a.lambda) < std::abs(b.lambda);
}

} // namespace

const ScanPoint* ScanResult::point_at(double lambda, double tol) const {
    for (const auto& p : curve)
        if (std::abs(p.lambda - lambda) <= tol) return &p;
    return nullptr;
}

std::string ScanResult::to_csv() const {
    std::ostringstream out;
    out << "lambda,linf,status\n";
    for (const auto& p : curve) {
        out << format_sci(p.lambda) << ",";
        if (p.ok) out << format_sci(p.linf);
        out << "," << (p.ok ? "ok" : "failed") << "\n";
    }
    return out.str();
}

ScanResult scan(const ProblemSpec& spec, const BasisConfig& cfg_template, double dt, double t_end,
                const ScanConfig& scan_cfg) {
    scan_cfg.validate();
    if (!spec.has_exact())
        throw std::logic_error("scan: objective needs a problem with an exact solution");

    const int workers = resolve_workers(scan_cfg.workers);

    auto evaluate = [&](std::vector<double> lambdas) {
        std::vector<ScanPoint> points(lambdas.size());
        parallel_for(static_cast<int>(lambdas.size()), workers, [&](int idx) {
            ScanPoint& p = points[static_cast<size_t>(idx)];
            p.lambda = lambdas[static_cast<size_t>(idx)];
            try {
                const BasisConfig cfg = cfg_template.with_lambda(p.lambda);
                RunObservers obs;
                obs.sample_times = {t_end};
                const DiagnosticsReport report = run(spec, cfg, dt, t_end, obs);
                p.linf = report.linf_history.back().second;
                p.ok = true;
            } catch (const std::exception& e) {
                p.ok = false;
                p.error = e.what();
            }
        });
        return points;
    };

    auto best_of = [](const std::vector<ScanPoint>& points) -> const ScanPoint* {
        const ScanPoint* best = nullptr;
        for (const auto& p : points)
            if (p.ok && (!best || better(p, *best))) best = &p;
        return best;
    };

    const double phase1_step = scan_cfg.exhaustive ? scan_cfg.refine_step : scan_cfg.coarse_step;
    std::vector<double> coarse_grid =
        step_grid(scan_cfg.lambda_min, scan_cfg.lambda_max, phase1_step);
    if (scan_cfg.lambda_min <= 0.0 && 0.0 <= scan_cfg.lambda_max) append_unique(coarse_grid, 0.0);
    std::sort(coarse_grid.begin(), coarse_grid.end());

    std::vector<ScanPoint> points = evaluate(coarse_grid);
    const ScanPoint* coarse_best = best_of(points);
    if (!coarse_best) throw ScanError("scan: every lambda evaluation failed");

    if (!scan_cfg.exhaustive) {
        const double lo = std::max(scan_cfg.lambda_min, coarse_best->lambda - scan_cfg.refine_radius);
        const double hi = std::min(scan_cfg.lambda_max, coarse_best->lambda + scan_cfg.refine_radius);
        std::vector<double> fine_grid = step_grid(lo, hi, scan_cfg.refine_step);
        append_unique(fine_grid, coarse_best->lambda);
        if (lo <= 0.0 && 0.0 <= hi) append_unique(fine_grid, 0.0);

        // drop lambdas already evaluated in phase one
        std::vector<double> fresh;
        fresh.reserve(fine_grid.size());
        for (double lam : fine_grid) {
            bool seen = false;
            for (const auto& p : points)
                if (p.lambda == lam) {
                    seen = true;
                    break;
                }
            if (!seen) fresh.push_back(lam);
        }
        std::vector<ScanPoint> fine_points = evaluate(fresh);
        points.insert(points.end(), fine_points.begin(), fine_points.end());
    }

    std::sort(points.begin(), points.end(),
              [](const ScanPoint& a, const ScanPoint& b) { return a.lambda < b.lambda; });

    const ScanPoint* best = best_of(points);
    ScanResult result;
    result.best_lambda = best->lambda;
    result.best_linf = best->linf;
    result.curve = std::move(points);
    return result;
}

} // namespace nkg
