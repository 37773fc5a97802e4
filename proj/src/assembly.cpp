#include "nkg/assembly.hpp"

#include <stdexcept>

namespace nkg {

StepCoefficients compute_row_coefficients(const NodalConstants& consts,
                                          const std::array<double, 3>& delta_prev, double dt,
                                          double eps1, double eps2) {
    if (!(dt > 0.0)) throw std::invalid_argument("compute_row_coefficients: dt must be positive");
    const double K =
        consts.alpha1 * delta_prev[0] + consts.alpha2 * delta_prev[1] + consts.alpha1 * delta_prev[2];
    const double K2 = K * K;
    StepCoefficients w{};
    w.K = K;
    w.w1 = (-3.0 * eps2 * K2 - eps1) * consts.alpha1 - consts.gamma1;
    w.w3 = (-3.0 * eps2 * K2 - eps1) * consts.alpha2 - consts.gamma2;
    w.w5 = (eps1 - eps2 * K2) * consts.alpha1 + consts.gamma1;
    w.w6 = (eps1 - eps2 * K2) * consts.alpha2 + consts.gamma2;
    w.w2 = (2.0 / dt) * consts.alpha1;
    w.w4 = (2.0 / dt) * consts.alpha2;
    w.w7 = -consts.alpha1;
    w.w8 = -consts.alpha2;
    return w;
}

void assemble_system(const NodalConstants& consts, const CoefficientState& state_prev, double dt,
                     double eps1, double eps2, BandedMatrix& A, std::vector<double>& rhs) {
    const int n = state_prev.n_intervals();
    if (n < 2) throw std::invalid_argument("assemble_system: state dimension too small");
    const int dim = 2 * (n + 1);
    if (A.dim() != dim || A.lower_bandwidth() != 3 || A.upper_bandwidth() != 3)
        A = BandedMatrix(dim, 3, 3);
    else
        A.set_zero();
    rhs.assign(static_cast<size_t>(dim), 0.0);

    for (int m = 0; m <= n; ++m) {
        const StepCoefficients w = compute_row_coefficients(
            consts, {state_prev.delta(m - 1), state_prev.delta(m), state_prev.delta(m + 1)}, dt,
            eps1, eps2);

        // Ghost columns fold onto the mirror interior column.
        const int col_left = (m == 0) ? 2 : 2 * (m - 1);
        const int col_right = (m == n) ? 2 * (n - 1) : 2 * (m + 1);

        const int row_u = 2 * m; // wave-equation row
        A.at(row_u, col_left) += w.w1;
        A.at(row_u, col_left + 1) += w.w2;
        A.at(row_u, 2 * m) += w.w3;
        A.at(row_u, 2 * m + 1) += w.w4;
        A.at(row_u, col_right) += w.w1;
        A.at(row_u, col_right + 1) += w.w2;
        rhs[static_cast<size_t>(row_u)] =
            w.w5 * state_prev.delta(m - 1) + w.w2 * state_prev.phi(m - 1) +
            w.w6 * state_prev.delta(m) + w.w4 * state_prev.phi(m) +
            w.w5 * state_prev.delta(m + 1) + w.w2 * state_prev.phi(m + 1);

        const int row_v = 2 * m + 1; // u_t = v transport row
        A.at(row_v, col_left) += w.w2;
        A.at(row_v, col_left + 1) += w.w7;
        A.at(row_v, 2 * m) += w.w4;
        A.at(row_v, 2 * m + 1) += w.w8;
        A.at(row_v, col_right) += w.w2;
        A.at(row_v, col_right + 1) += w.w7;
        rhs[static_cast<size_t>(row_v)] =
            w.w2 * state_prev.delta(m - 1) - w.w7 * state_prev.phi(m - 1) +
            w.w4 * state_prev.delta(m) - w.w8 * state_prev.phi(m) +
            w.w2 * state_prev.delta(m + 1) - w.w7 * state_prev.phi(m + 1);
    }
}

AssembledSystem assemble_system(const NodalConstants& consts, const CoefficientState& state_prev,
                                double dt, double eps1, double eps2) {
    AssembledSystem sys{BandedMatrix(2 * (state_prev.n_intervals() + 1), 3, 3), {}};
    assemble_system(consts, state_prev, dt, eps1, eps2, sys.A, sys.rhs);
    return sys;
}

} // namespace nkg
