#pragma once

#include <array>
#include <vector>

#include "nkg/basis.hpp"
#include "nkg/linalg.hpp"
#include "nkg/state.hpp"

namespace nkg {

/// The eight row coefficients of one collocation node, plus the collocated
/// previous-level value K the linearization is built around.
///
/// w1 = (-3 eps2 K^2 - eps1) alpha1 - gamma1     (new level, off-center U)
/// w3 = (-3 eps2 K^2 - eps1) alpha2 - gamma2     (new level, center U)
/// w5 = ( eps1 - eps2 K^2 ) alpha1 + gamma1      (old level, off-center U)
/// w6 = ( eps1 - eps2 K^2 ) alpha2 + gamma2      (old level, center U)
/// w2 = (2/dt) alpha1,  w4 = (2/dt) alpha2       (V coupling, both levels)
/// w7 = -alpha1,        w8 = -alpha2             (V in the transport rows)
struct StepCoefficients {
    double w1, w2, w3, w4, w5, w6, w7, w8;
    double K;
};

StepCoefficients compute_row_coefficients(const NodalConstants& consts,
                                          const std::array<double, 3>& delta_prev, double dt,
                                          double eps1, double eps2);

struct AssembledSystem {
    BandedMatrix A;
    std::vector<double> rhs;
};

/// Build the 2(N+1) banded system A x^{n+1} = rhs for one time step, with
/// the ghost columns folded onto their interior partners. Unknowns are
/// interleaved (delta_0, phi_0, delta_1, phi_1, ...), bandwidths 3/3.
/// rhs is the old-level combination (the B matrix applied to x^n).
AssembledSystem assemble_system(const NodalConstants& consts, const CoefficientState& state_prev,
                                double dt, double eps1, double eps2);

/// Buffer-reusing form for the stepping loop; A/rhs are resized as needed.
void assemble_system(const NodalConstants& consts, const CoefficientState& state_prev, double dt,
                     double eps1, double eps2, BandedMatrix& A, std::vector<double>& rhs);

} // namespace nkg
