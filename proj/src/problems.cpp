#include "nkg/problems.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace nkg {

void ProblemSpec::validate() const {
    if (!(domain_start < domain_end))
        throw std::invalid_argument("ProblemSpec: domain_start must be < domain_end");
    if (!(t_end > 0.0))
        throw std::invalid_argument("ProblemSpec: t_end must be positive");
    if (!initial_u || !initial_v)
        throw std::invalid_argument("ProblemSpec: initial data missing");
    if (static_cast<bool>(exact_u) != static_cast<bool>(exact_ut))
        throw std::invalid_argument("ProblemSpec: exact_u and exact_ut must come together");
}

ProblemSpec traveling_wave(double nu) {
    if (!(std::abs(nu) < 1.0))
        throw std::invalid_argument("traveling_wave: wave speed requires |nu| < 1");
    const double c = std::sqrt(2.0 * (1.0 - nu * nu));
    ProblemSpec spec;
    spec.name = "traveling_wave";
    spec.epsilon1 = 1.0;
    spec.epsilon2 = -1.0;
    spec.domain_start = -30.0;
    spec.domain_end = 30.0;
    spec.t_end = 10.0;
    spec.exact_u = [nu, c](double x, double t) { return std::tanh((x - nu * t) / c); };
    spec.exact_ut = [nu, c](double x, double t) {
        const double s = 1.0 / std::cosh((x - nu * t) / c);
        return -(nu / c) * s * s;
    };
    spec.initial_u = [u = spec.exact_u](double x) { return u(x, 0.0); };
    spec.initial_v = [ut = spec.exact_ut](double x) { return ut(x, 0.0); };
    return spec;
}

ProblemSpec solitary_wave() {
    const double k = std::sqrt(2.0) * std::sinh(1.0);
    const double w = std::sqrt(2.0) * std::cosh(1.0);
    ProblemSpec spec;
    spec.name = "solitary_wave";
    spec.epsilon1 = 2.0;
    spec.epsilon2 = -1.0;
    spec.domain_start = -10.0;
    spec.domain_end = 15.0;
    spec.t_end = 3.0;
    spec.exact_u = [k, w](double x, double t) { return 2.0 / std::cosh(k * x - w * t); };
    spec.exact_ut = [k, w](double x, double t) {
        const double th = k * x - w * t;
        return 2.0 * w * std::tanh(th) / std::cosh(th);
    };
    spec.initial_u = [u = spec.exact_u](double x) { return u(x, 0.0); };
    spec.initial_v = [ut = spec.exact_ut](double x) { return ut(x, 0.0); };
    return spec;
}

double residual(const ProblemSpec& spec, const SpaceTimeFn& u_fn, double x, double t) {
    constexpr double d = 1e-4;
    const double u = u_fn(x, t);
    const double u_tt = (u_fn(x, t + d) - 2.0 * u + u_fn(x, t - d)) / (d * d);
    const double u_xx = (u_fn(x + d, t) - 2.0 * u + u_fn(x - d, t)) / (d * d);
    return u_tt - u_xx - spec.epsilon1 * u - spec.epsilon2 * u * u * u;
}

namespace {

// Piecewise-linear table lookup, clamped at the ends.
class LinearTable {
public:
    LinearTable(std::vector<double> xs, std::vector<double> ys)
        : xs_(std::move(xs)), ys_(std::move(ys)) {
        if (xs_.size() != ys_.size() || xs_.size() < 2)
            throw std::invalid_argument("tabulated data: need at least two (x, y) samples");
        if (!std::is_sorted(xs_.begin(), xs_.end()))
            throw std::invalid_argument("tabulated data: x samples must be sorted");
    }

    double operator()(double x) const {
        if (x <= xs_.front()) return ys_.front();
        if (x >= xs_.back()) return ys_.back();
        const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
        const size_t hi = static_cast<size_t>(it - xs_.begin());
        const size_t lo = hi - 1;
        const double w = (x - xs_[lo]) / (xs_[hi] - xs_[lo]);
        return (1.0 - w) * ys_[lo] + w * ys_[hi];
    }

private:
    std::vector<double> xs_;
    std::vector<double> ys_;
};

} // namespace

ProblemSpec custom_problem(std::string name, double epsilon1, double epsilon2,
                           double domain_start, double domain_end, double t_end,
                           std::vector<double> xs, std::vector<double> u0,
                           std::vector<double> v0) {
    ProblemSpec spec;
    spec.name = std::move(name);
    spec.epsilon1 = epsilon1;
    spec.epsilon2 = epsilon2;
    spec.domain_start = domain_start;
    spec.domain_end = domain_end;
    spec.t_end = t_end;
    auto u_table = std::make_shared<LinearTable>(xs, std::move(u0));
    auto v_table = std::make_shared<LinearTable>(std::move(xs), std::move(v0));
    spec.initial_u = [u_table](double x) { return (*u_table)(x); };
    spec.initial_v = [v_table](double x) { return (*v_table)(x); };
    spec.validate();
    return spec;
}

ProblemSpec find_problem(const std::string& name) {
    if (name == "traveling_wave") return traveling_wave(0.5);
    if (name == "solitary_wave") return solitary_wave();
    throw std::invalid_argument("unknown problem '" + name + "'");
}

std::vector<std::string> problem_names() {
    return {"traveling_wave", "solitary_wave"};
}

} // namespace nkg
