#pragma once

#include <stdexcept>

namespace nkg {

/// Admissible range for the extension parameter. The default matches the
/// range swept by the optimizer; it is a configurable guard, not a
/// mathematical constraint.
struct LambdaBounds {
    double min = -1.0;
    double max = 1.0;
};

/// Uniform partition of [a, b] plus the extension parameter lambda.
///
/// Nodes are x_m = a + m*h for m = 0..N with h = (b - a)/N. The spline
/// family attached to this grid is indexed -1..N+1 (N + 3 members); node()
/// accepts indices outside 0..N so spline supports can be addressed.
class BasisConfig {
public:
    /// Build from an interval count. Throws std::invalid_argument when the
    /// partition is degenerate (fewer than 4 intervals, a >= b) or lambda
    /// falls outside `bounds`.
    static BasisConfig uniform(double a, double b, int n_intervals, double lambda,
                               LambdaBounds bounds = {});

    /// Build from a target spacing. h must divide b - a into an integer
    /// number of intervals within 1e-9 relative.
    static BasisConfig from_spacing(double a, double b, double h, double lambda,
                                    LambdaBounds bounds = {});

    /// Copy with a different extension parameter (revalidated).
    BasisConfig with_lambda(double lambda) const;

    double lambda() const noexcept { return lambda_; }
    double h() const noexcept { return h_; }
    int n_intervals() const noexcept { return n_; }
    int n_nodes() const noexcept { return n_ + 1; }
    double domain_start() const noexcept { return a_; }
    double domain_end() const noexcept { return b_; }
    LambdaBounds lambda_bounds() const noexcept { return bounds_; }

    double node(int m) const noexcept { return a_ + m * h_; }

private:
    BasisConfig(double a, double b, int n, double lambda, LambdaBounds bounds);

    double a_;
    double b_;
    int n_;
    double h_;
    double lambda_;
    LambdaBounds bounds_;
};

/// Values of one spline and its derivatives at the grid nodes, which is all
/// the collocation equations ever need:
///
///   value row:   alpha1 at x_{i-1} and x_{i+1}, alpha2 at x_i
///   2nd-der row: gamma1 at x_{i-1} and x_{i+1}, gamma2 at x_i
///   1st-der row: -deriv_weight at x_{i-1}, +deriv_weight at x_{i+1}
///                (the sign follows the spline rising toward its center)
struct NodalConstants {
    double alpha1;       ///< (4 - lambda)/24
    double alpha2;       ///< (8 + lambda)/12
    double gamma1;       ///< (2 + lambda)/(2 h^2)
    double gamma2;       ///< -(4 + 2 lambda)/(2 h^2)
    double deriv_weight; ///< 1/(2 h)
};

NodalConstants nodal_constants(const BasisConfig& cfg) noexcept;

/// Evaluate spline i (or its first/second derivative) at x. Zero outside the
/// support [x_{i-2}, x_{i+2}]. Throws std::invalid_argument for an order
/// outside {0,1,2} or an index outside -1..N+1.
double eval(const BasisConfig& cfg, int i, double x, int order);

} // namespace nkg
