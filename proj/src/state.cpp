#include "nkg/state.hpp"

namespace nkg {

std::vector<double> nodal_u(const CoefficientState& s, const NodalConstants& c) {
    std::vector<double> out(static_cast<size_t>(s.n_intervals()) + 1);
    for (int m = 0; m <= s.n_intervals(); ++m)
        out[static_cast<size_t>(m)] = reconstruct_u(s, c, m);
    return out;
}

std::vector<double> nodal_v(const CoefficientState& s, const NodalConstants& c) {
    std::vector<double> out(static_cast<size_t>(s.n_intervals()) + 1);
    for (int m = 0; m <= s.n_intervals(); ++m)
        out[static_cast<size_t>(m)] = reconstruct_v(s, c, m);
    return out;
}

std::vector<double> nodal_ux(const CoefficientState& s, const NodalConstants& c) {
    std::vector<double> out(static_cast<size_t>(s.n_intervals()) + 1);
    for (int m = 0; m <= s.n_intervals(); ++m)
        out[static_cast<size_t>(m)] = reconstruct_ux(s, c, m);
    return out;
}

} // namespace nkg
