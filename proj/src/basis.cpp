#include "nkg/basis.hpp"

#include <cmath>
#include <string>

namespace nkg {

BasisConfig::BasisConfig(double a, double b, int n, double lambda, LambdaBounds bounds)
    : a_(a), b_(b), n_(n), h_((b - a) / n), lambda_(lambda), bounds_(bounds) {}

BasisConfig BasisConfig::uniform(double a, double b, int n_intervals, double lambda,
                                 LambdaBounds bounds) {
    if (!(a < b))
        throw std::invalid_argument("BasisConfig: domain_start must be < domain_end");
    if (n_intervals < 4)
        throw std::invalid_argument("BasisConfig: need at least 5 nodes (4 intervals)");
    if (!(bounds.min < bounds.max))
        throw std::invalid_argument("BasisConfig: empty lambda bounds");
    if (!(lambda >= bounds.min && lambda <= bounds.max))
        throw std::invalid_argument("BasisConfig: lambda " + std::to_string(lambda) +
                                    " outside bounds [" + std::to_string(bounds.min) + ", " +
                                    std::to_string(bounds.max) + "]");
    return BasisConfig(a, b, n_intervals, lambda, bounds);
}

BasisConfig BasisConfig::from_spacing(double a, double b, double h, double lambda,
                                      LambdaBounds bounds) {
    if (!(h > 0.0))
        throw std::invalid_argument("BasisConfig: h must be positive");
    const double length = b - a;
    const int n = static_cast<int>(std::llround(length / h));
    if (n < 1 || std::abs(n * h - length) > 1e-9 * std::abs(length))
        throw std::invalid_argument(
            "BasisConfig: h does not divide the domain into an integer number of intervals");
    return uniform(a, b, n, lambda, bounds);
}

BasisConfig BasisConfig::with_lambda(double lambda) const {
    return uniform(a_, b_, n_, lambda, bounds_);
}

NodalConstants nodal_constants(const BasisConfig& cfg) noexcept {
    const double lam = cfg.lambda();
    const double h = cfg.h();
    return NodalConstants{
        (4.0 - lam) / 24.0,
        (8.0 + lam) / 12.0,
        (2.0 + lam) / (2.0 * h * h),
        -(4.0 + 2.0 * lam) / (2.0 * h * h),
        1.0 / (2.0 * h),
    };
}

double eval(const BasisConfig& cfg, int i, double x, int order) {
    if (order < 0 || order > 2)
        throw std::invalid_argument("basis eval: order must be 0, 1 or 2");
    if (i < -1 || i > cfg.n_intervals() + 1)
        throw std::invalid_argument("basis eval: spline index outside -1..N+1");

    const double h = cfg.h();
    const double lam = cfg.lambda();

    // Pieces are indexed 0..3 left to right over [x_{i-2}, x_{i+2}];
    // knots use the left-closed convention.
    const int piece = static_cast<int>(std::floor((x - cfg.node(i - 2)) / h));
    if (piece < 0 || piece > 3) return 0.0;

    double r;       // local coordinate, measured from the piece's anchor knot
    double p0, p1, p2;
    switch (piece) {
        case 0:
            r = (x - cfg.node(i - 2)) / h;
            p0 = 4.0 * (1.0 - lam) * r * r * r + 3.0 * lam * r * r * r * r;
            p1 = 12.0 * (1.0 - lam) * r * r + 12.0 * lam * r * r * r;
            p2 = 24.0 * (1.0 - lam) * r + 36.0 * lam * r * r;
            break;
        case 1:
            r = (x - cfg.node(i - 1)) / h;
            p0 = (4.0 - lam) + 12.0 * r + 6.0 * (2.0 + lam) * r * r - 12.0 * r * r * r -
                 3.0 * lam * r * r * r * r;
            p1 = 12.0 + 12.0 * (2.0 + lam) * r - 36.0 * r * r - 12.0 * lam * r * r * r;
            p2 = 12.0 * (2.0 + lam) - 72.0 * r - 36.0 * lam * r * r;
            break;
        case 2:
            r = (x - cfg.node(i + 1)) / h;
            p0 = (4.0 - lam) - 12.0 * r + 6.0 * (2.0 + lam) * r * r + 12.0 * r * r * r -
                 3.0 * lam * r * r * r * r;
            p1 = -12.0 + 12.0 * (2.0 + lam) * r + 36.0 * r * r - 12.0 * lam * r * r * r;
            p2 = 12.0 * (2.0 + lam) + 72.0 * r - 36.0 * lam * r * r;
            break;
        default:
            r = (x - cfg.node(i + 2)) / h;
            p0 = 4.0 * (lam - 1.0) * r * r * r + 3.0 * lam * r * r * r * r;
            p1 = 12.0 * (lam - 1.0) * r * r + 12.0 * lam * r * r * r;
            p2 = 24.0 * (lam - 1.0) * r + 36.0 * lam * r * r;
            break;
    }

    switch (order) {
        case 0: return p0 / 24.0;
        case 1: return p1 / (24.0 * h);
        default: return p2 / (24.0 * h * h);
    }
}

} // namespace nkg
