#include "nkg/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace nkg {

double composite_simpson(std::span<const double> values, double h) {
    const size_t n_points = values.size();
    if (n_points < 2) throw std::invalid_argument("composite_simpson: need at least two samples");
    size_t n_intervals = n_points - 1;
    double tail = 0.0;
    if (n_intervals % 2 != 0) {
        // trapezoid on the last panel, Simpson on the rest
        tail = 0.5 * h * (values[n_points - 2] + values[n_points - 1]);
        n_intervals -= 1;
        if (n_intervals == 0) return tail;
    }
    double odd = 0.0, even = 0.0;
    for (size_t i = 1; i < n_intervals; i += 2) odd += values[i];
    for (size_t i = 2; i < n_intervals; i += 2) even += values[i];
    return h / 3.0 * (values[0] + values[n_intervals] + 4.0 * odd + 2.0 * even) + tail;
}

double linf_error(const CoefficientState& state, const ProblemSpec& spec, const BasisConfig& cfg) {
    if (!spec.has_exact())
        throw std::logic_error("linf_error: problem '" + spec.name + "' has no exact solution");
    const NodalConstants c = nodal_constants(cfg);
    double worst = 0.0;
    for (int m = 0; m <= cfg.n_intervals(); ++m) {
        const double err =
            std::abs(spec.exact_u(cfg.node(m), state.time()) - reconstruct_u(state, c, m));
        worst = std::max(worst, err);
    }
    return worst;
}

double energy_from_grid(std::span<const double> u, std::span<const double> ux,
                        std::span<const double> v, double h, double eps1, double eps2) {
    std::vector<double> integrand(u.size());
    for (size_t m = 0; m < u.size(); ++m) {
        const double u2 = u[m] * u[m];
        integrand[m] = 0.5 * (v[m] * v[m] + ux[m] * ux[m] - eps1 * u2 - 0.5 * eps2 * u2 * u2);
    }
    return composite_simpson(integrand, h);
}

double momentum_from_grid(std::span<const double> ux, std::span<const double> v, double h) {
    std::vector<double> integrand(ux.size());
    for (size_t m = 0; m < ux.size(); ++m) integrand[m] = ux[m] * v[m];
    return composite_simpson(integrand, h);
}

double energy(const CoefficientState& state, const ProblemSpec& spec, const BasisConfig& cfg) {
    const NodalConstants c = nodal_constants(cfg);
    return energy_from_grid(nodal_u(state, c), nodal_ux(state, c), nodal_v(state, c), cfg.h(),
                            spec.epsilon1, spec.epsilon2);
}

double momentum(const CoefficientState& state, const ProblemSpec& spec, const BasisConfig& cfg) {
    (void)spec;
    const NodalConstants c = nodal_constants(cfg);
    return momentum_from_grid(nodal_ux(state, c), nodal_v(state, c), cfg.h());
}

RelativeChange relative_change(double current, double initial) {
    if (initial == 0.0) return {std::abs(current), true};
    return {std::abs((current - initial) / initial), false};
}

double relative_change_strict(double current, double initial) {
    if (initial == 0.0)
        throw std::domain_error("relative_change: initial value is zero");
    return std::abs((current - initial) / initial);
}

std::string format_sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.5e", v);
    return buf;
}

std::optional<double> DiagnosticsReport::linf_at(double time, double tol) const {
    for (const auto& [t, e] : linf_history)
        if (std::abs(t - time) <= tol) return e;
    return std::nullopt;
}

namespace {

std::vector<std::string> manifest_lines(const RunMetadata& meta) {
    std::vector<std::string> lines;
    lines.push_back("problem=" + meta.problem);
    lines.push_back("h=" + format_sci(meta.h));
    lines.push_back("dt=" + format_sci(meta.dt));
    lines.push_back("lambda=" + format_sci(meta.lambda));
    lines.push_back("t_end=" + format_sci(meta.t_end));
    lines.push_back("epsilon1=" + format_sci(meta.epsilon1));
    lines.push_back("epsilon2=" + format_sci(meta.epsilon2));
    lines.push_back("domain_start=" + format_sci(meta.domain_start));
    lines.push_back("domain_end=" + format_sci(meta.domain_end));
    lines.push_back("n_steps=" + std::to_string(meta.n_steps));
    return lines;
}

} // namespace

std::string DiagnosticsReport::to_csv() const {
    std::ostringstream out;
    for (const auto& line : manifest_lines(meta)) out << "# " << line << "\n";
    out << "time,linf,energy,momentum,c_energy,c_momentum\n";

    const double e0 = energy_history.empty() ? 0.0 : energy_history.front().second;
    const double p0 = momentum_history.empty() ? 0.0 : momentum_history.front().second;
    for (size_t k = 0; k < energy_history.size(); ++k) {
        const auto [t, e] = energy_history[k];
        const double p = momentum_history[k].second;
        out << format_sci(t) << ",";
        size_t li = 0;
        bool have_linf = false;
        for (; li < linf_history.size(); ++li)
            if (std::abs(linf_history[li].first - t) <= 1e-12 * std::max(1.0, std::abs(t))) {
                have_linf = true;
                break;
            }
        if (have_linf) out << format_sci(linf_history[li].second);
        out << "," << format_sci(e) << "," << format_sci(p) << ","
            << format_sci(relative_change(e, e0).value) << ","
            << format_sci(relative_change(p, p0).value) << "\n";
    }
    return out.str();
}

std::string DiagnosticsReport::to_json() const {
    nlohmann::json j;
    j["problem"] = meta.problem;
    j["h"] = meta.h;
    j["dt"] = meta.dt;
    j["lambda"] = meta.lambda;
    j["t_end"] = meta.t_end;
    j["epsilon1"] = meta.epsilon1;
    j["epsilon2"] = meta.epsilon2;
    j["domain"] = {meta.domain_start, meta.domain_end};
    j["n_steps"] = meta.n_steps;
    auto history = [](const std::vector<std::pair<double, double>>& rows) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [t, v] : rows) arr.push_back({{"t", t}, {"value", v}});
        return arr;
    };
    j["linf_history"] = history(linf_history);
    j["energy_history"] = history(energy_history);
    j["momentum_history"] = history(momentum_history);
    j["energy_change"] = {{"value", energy_change.value},
                          {"absolute_fallback", energy_change.absolute_fallback}};
    j["momentum_change"] = {{"value", momentum_change.value},
                            {"absolute_fallback", momentum_change.absolute_fallback}};
    return j.dump(2);
}

} // namespace nkg
