#include "nkg/timestepper.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nkg/assembly.hpp"

namespace nkg {

namespace {

// Tridiagonal interpolation system shared by U and V: value stencil at all
// nodes, ghosts already folded through the homogeneous Neumann relations.
std::vector<double> interpolate_weights(const std::vector<double>& nodal_values,
                                        const NodalConstants& c, int n) {
    BandedMatrix m(n + 1, 1, 1);
    for (int row = 0; row <= n; ++row) {
        m.at(row, row) = c.alpha2;
        if (row > 0) m.at(row, row - 1) += c.alpha1;
        if (row < n) m.at(row, row + 1) += c.alpha1;
    }
    m.at(0, 1) += c.alpha1;     // ghost -1 folded onto node 1
    m.at(n, n - 1) += c.alpha1; // ghost N+1 folded onto node N-1
    const BandedFactorization f = factorize(m);
    return f.solve(nodal_values);
}

} // namespace

CoefficientState initialize(const ProblemSpec& spec, const BasisConfig& cfg) {
    spec.validate();
    const int n = cfg.n_intervals();
    const NodalConstants c = nodal_constants(cfg);

    std::vector<double> u0(static_cast<size_t>(n) + 1), v0(static_cast<size_t>(n) + 1);
    for (int m = 0; m <= n; ++m) {
        u0[static_cast<size_t>(m)] = spec.initial_u(cfg.node(m));
        v0[static_cast<size_t>(m)] = spec.initial_v(cfg.node(m));
    }

    CoefficientState state(n, 0.0);
    try {
        const std::vector<double> d = interpolate_weights(u0, c, n);
        const std::vector<double> p = interpolate_weights(v0, c, n);
        for (int i = 0; i <= n; ++i) {
            state.delta(i) = d[static_cast<size_t>(i)];
            state.phi(i) = p[static_cast<size_t>(i)];
        }
    } catch (const SingularMatrixError& e) {
        throw std::runtime_error("initialize: interpolation system is singular (" +
                                 std::string(e.what()) + ")");
    }
    state.enforce_boundary_relations();
    return state;
}

CoefficientState step(const CoefficientState& state, double dt, const ProblemSpec& spec,
                      const BasisConfig& cfg, Pivoting pivoting) {
    if (state.n_intervals() != cfg.n_intervals())
        throw std::invalid_argument("step: state and grid dimensions disagree");
    assert(state.boundary_relations_hold());

    const NodalConstants c = nodal_constants(cfg);
    AssembledSystem sys = assemble_system(c, state, dt, spec.epsilon1, spec.epsilon2);

    std::vector<double> x;
    try {
        const BandedFactorization f = factorize(sys.A, pivoting);
        x = f.solve(sys.rhs);
    } catch (const SingularMatrixError& e) {
        throw SingularMatrixError(e.pivot_row(),
                                  std::string(e.what()) + " while stepping from t=" +
                                      std::to_string(state.time()));
    }

    const int n = state.n_intervals();
    CoefficientState next(n, state.time() + dt);
    for (int m = 0; m <= n; ++m) {
        next.delta(m) = x[static_cast<size_t>(2 * m)];
        next.phi(m) = x[static_cast<size_t>(2 * m + 1)];
    }
    next.enforce_boundary_relations();
    return next;
}

namespace {

long commensurate_steps(double t_end, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("run: dt must be positive");
    if (!(t_end > 0.0)) throw std::invalid_argument("run: t_end must be positive");
    const long n = std::lround(t_end / dt);
    if (n < 1 || std::abs(n * dt - t_end) > 1e-9 * std::abs(t_end))
        throw std::invalid_argument("run: t_end is not an integer multiple of dt");
    return n;
}

} // namespace

DiagnosticsReport run(const ProblemSpec& spec, const BasisConfig& cfg, double dt, double t_end,
                      const RunObservers& observers) {
    const long n_steps = commensurate_steps(t_end, dt);

    // Map sample times onto step indices up front so misaligned requests
    // fail before any work happens.
    std::vector<long> sample_steps;
    sample_steps.reserve(observers.sample_times.size());
    for (double t : observers.sample_times) {
        const long k = std::lround(t / dt);
        if (k < 0 || k > n_steps || std::abs(k * dt - t) > 1e-9 * std::max(1.0, std::abs(t)))
            throw std::invalid_argument("run: sample time " + std::to_string(t) +
                                        " does not lie on the step grid");
        sample_steps.push_back(k);
    }

    DiagnosticsReport report;
    report.meta.problem = spec.name;
    report.meta.h = cfg.h();
    report.meta.dt = dt;
    report.meta.lambda = cfg.lambda();
    report.meta.t_end = t_end;
    report.meta.epsilon1 = spec.epsilon1;
    report.meta.epsilon2 = spec.epsilon2;
    report.meta.domain_start = cfg.domain_start();
    report.meta.domain_end = cfg.domain_end();
    report.meta.n_steps = n_steps;

    CoefficientState state = initialize(spec, cfg);

    auto record = [&](const CoefficientState& s, bool is_sample) {
        report.energy_history.emplace_back(s.time(), energy(s, spec, cfg));
        report.momentum_history.emplace_back(s.time(), momentum(s, spec, cfg));
        if (is_sample && spec.has_exact())
            report.linf_history.emplace_back(s.time(), linf_error(s, spec, cfg));
        if (is_sample && observers.on_sample) observers.on_sample(s);
    };

    auto sampled = [&](long step_index) {
        for (long s : sample_steps)
            if (s == step_index) return true;
        return false;
    };

    record(state, sampled(0));

    // Hot loop: same operation sequence as step(), with the matrix,
    // factorization and rhs buffers reused across steps. For a linear
    // problem (eps2 = 0) the matrix is constant and factorized once.
    const NodalConstants consts = nodal_constants(cfg);
    const bool constant_matrix = spec.epsilon2 == 0.0;
    const int n = cfg.n_intervals();
    BandedMatrix A(2 * (n + 1), 3, 3);
    std::vector<double> rhs;
    BandedFactorization factor;

    for (long k = 1; k <= n_steps; ++k) {
        assemble_system(consts, state, dt, spec.epsilon1, spec.epsilon2, A, rhs);
        try {
            if (!constant_matrix || k == 1) factor.compute(A, observers.pivoting);
            factor.solve_in_place(rhs);
        } catch (const SingularMatrixError& e) {
            throw SingularMatrixError(e.pivot_row(),
                                      std::string(e.what()) + " while stepping from t=" +
                                          std::to_string(state.time()));
        }
        for (int m = 0; m <= n; ++m) {
            state.delta(m) = rhs[static_cast<size_t>(2 * m)];
            state.phi(m) = rhs[static_cast<size_t>(2 * m + 1)];
        }
        state.enforce_boundary_relations();
        state.set_time(k * dt); // keep sample times exact in the report
        if (sampled(k) || k == n_steps) record(state, sampled(k));
    }

    const double e0 = report.initial_energy();
    const double p0 = report.initial_momentum();
    report.energy_change = relative_change(report.energy_history.back().second, e0);
    report.momentum_change = relative_change(report.momentum_history.back().second, p0);
    return report;
}

std::vector<SnapshotRow> make_snapshot(const CoefficientState& state, const ProblemSpec& spec,
                                       const BasisConfig& cfg) {
    const NodalConstants c = nodal_constants(cfg);
    std::vector<SnapshotRow> rows;
    rows.reserve(static_cast<size_t>(cfg.n_nodes()));
    for (int m = 0; m <= cfg.n_intervals(); ++m) {
        SnapshotRow row;
        row.x = cfg.node(m);
        row.u = reconstruct_u(state, c, m);
        row.v = reconstruct_v(state, c, m);
        if (spec.has_exact()) {
            row.exact = spec.exact_u(row.x, state.time());
            row.error = std::abs(*row.exact - row.u);
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace nkg
