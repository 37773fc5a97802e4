#pragma once

#include <vector>

#include "nkg/basis.hpp"

namespace nkg {

/// Time-dependent spline weights for the coupled fields: delta carries U,
/// phi carries V = U_t. Indices run -1..N+1; the two outermost entries on
/// each side are ghosts tied to the interior by the Neumann relations
/// delta(-1) = delta(1) and delta(N+1) = delta(N-1) (same for phi).
class CoefficientState {
public:
    explicit CoefficientState(int n_intervals, double time = 0.0)
        : n_(n_intervals), time_(time),
          delta_(static_cast<size_t>(n_intervals) + 3, 0.0),
          phi_(static_cast<size_t>(n_intervals) + 3, 0.0) {}

    int n_intervals() const noexcept { return n_; }
    double time() const noexcept { return time_; }
    void set_time(double t) noexcept { time_ = t; }

    double delta(int i) const noexcept { return delta_[static_cast<size_t>(i + 1)]; }
    double& delta(int i) noexcept { return delta_[static_cast<size_t>(i + 1)]; }
    double phi(int i) const noexcept { return phi_[static_cast<size_t>(i + 1)]; }
    double& phi(int i) noexcept { return phi_[static_cast<size_t>(i + 1)]; }

    /// Rewrite the four ghost entries from their interior partners.
    void enforce_boundary_relations() noexcept {
        delta(-1) = delta(1);
        phi(-1) = phi(1);
        delta(n_ + 1) = delta(n_ - 1);
        phi(n_ + 1) = phi(n_ - 1);
    }

    bool boundary_relations_hold() const noexcept {
        return delta(-1) == delta(1) && phi(-1) == phi(1) &&
               delta(n_ + 1) == delta(n_ - 1) && phi(n_ + 1) == phi(n_ - 1);
    }

private:
    int n_;
    double time_;
    std::vector<double> delta_;
    std::vector<double> phi_;
};

/// Nodal reconstructions. U and V use the value stencil, U_x the
/// first-derivative stencil (delta(m+1) - delta(m-1)) / (2h).
inline double reconstruct_u(const CoefficientState& s, const NodalConstants& c, int m) noexcept {
    return c.alpha1 * s.delta(m - 1) + c.alpha2 * s.delta(m) + c.alpha1 * s.delta(m + 1);
}
inline double reconstruct_v(const CoefficientState& s, const NodalConstants& c, int m) noexcept {
    return c.alpha1 * s.phi(m - 1) + c.alpha2 * s.phi(m) + c.alpha1 * s.phi(m + 1);
}
inline double reconstruct_ux(const CoefficientState& s, const NodalConstants& c, int m) noexcept {
    return c.deriv_weight * (s.delta(m + 1) - s.delta(m - 1));
}

std::vector<double> nodal_u(const CoefficientState& s, const NodalConstants& c);
std::vector<double> nodal_v(const CoefficientState& s, const NodalConstants& c);
std::vector<double> nodal_ux(const CoefficientState& s, const NodalConstants& c);

} // namespace nkg
