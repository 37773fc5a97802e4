// Acceptance suite: one line of verdict per criterion, nonzero exit when
// any criterion fails. Pass criterion numbers as arguments to run a subset.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "nkg/basis.hpp"
#include "nkg/diagnostics.hpp"
#include "nkg/lambda_scan.hpp"
#include "nkg/parallel.hpp"
#include "nkg/timestepper.hpp"

using namespace nkg;
using clock_type = std::chrono::steady_clock;

namespace {

struct Verdict {
    int id;
    std::string name;
    bool pass = true;
    std::vector<std::string> details;

    void check(bool ok, const std::string& what) {
        pass = pass && ok;
        details.push_back(std::string(ok ? "  ok   " : "  FAIL ") + what);
    }
};

std::string sci(double v) { return format_sci(v); }

bool within(double value, double target, double rel) {
    return std::abs(value - target) <= rel * std::abs(target);
}

double timed(const std::function<void()>& fn) {
    const auto t0 = clock_type::now();
    fn();
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

DiagnosticsReport run_case(const ProblemSpec& spec, double h, double dt, double t_end,
                           double lambda, std::vector<double> samples) {
    const auto cfg = BasisConfig::from_spacing(spec.domain_start, spec.domain_end, h, lambda);
    RunObservers obs;
    obs.sample_times = std::move(samples);
    return run(spec, cfg, dt, t_end, obs);
}

// ---- criterion 1 + 3: traveling-wave error table and conservation ----

struct TravelingResults {
    std::vector<double> linf;   // one per resolution row
    double coarse_seconds = 0;  // three coarser rows
    double finest_seconds = 0;
    DiagnosticsReport mid;      // the (0.1, 0.02) run, reused by criterion 3
};

TravelingResults traveling_table() {
    const auto spec = traveling_wave(0.5);
    TravelingResults out;
    const double rows[4][2] = {{0.2, 0.05}, {0.1, 0.02}, {0.05, 0.01}, {0.02, 0.005}};
    for (int r = 0; r < 4; ++r) {
        DiagnosticsReport report;
        const double secs = timed([&] {
            report = run_case(spec, rows[r][0], rows[r][1], 10.0, 0.0, {10.0});
        });
        out.linf.push_back(report.linf_history.back().second);
        if (r < 3) out.coarse_seconds += secs;
        else out.finest_seconds = secs;
        if (r == 1) out.mid = report;
    }
    return out;
}

Verdict criterion1(const TravelingResults& tr) {
    Verdict v{1, "traveling-wave error table (Table 2, lambda = 0)"};
    const double expected[4] = {1.0709e-2, 2.7968e-3, 7.0161e-4, 1.0984e-4};
    const char* label[4] = {"h=0.2  dt=0.05 ", "h=0.1  dt=0.02 ", "h=0.05 dt=0.01 ",
                            "h=0.02 dt=0.005"};
    for (int r = 0; r < 4; ++r)
        v.check(within(tr.linf[r], expected[r], 0.20),
                std::string(label[r]) + " L_inf(10) = " + sci(tr.linf[r]) + "  (expected " +
                    sci(expected[r]) + " +-20%)");
    const double ratios[3] = {3.8292, 3.9863, 6.3876};
    for (int r = 0; r < 3; ++r) {
        const double ratio = tr.linf[r] / tr.linf[r + 1];
        v.check(within(ratio, ratios[r], 0.30), "error ratio row" + std::to_string(r + 1) +
                                                    "/row" + std::to_string(r + 2) + " = " +
                                                    sci(ratio) + "  (expected " + sci(ratios[r]) +
                                                    " +-30%)");
    }
    v.check(tr.coarse_seconds < 30.0,
            "three coarser rows took " + sci(tr.coarse_seconds) + " s (< 30 s)");
    v.check(tr.finest_seconds < 300.0,
            "finest row took " + sci(tr.finest_seconds) + " s (< 5 min)");
    return v;
}

Verdict criterion3(const TravelingResults& tr) {
    Verdict v{3, "traveling-wave conservation (Table 3, h=0.1, dt=0.02)"};
    const auto& report = tr.mid;
    v.check(std::abs(report.initial_energy() - (-13.9113)) <= 1e-3,
            "E0 = " + sci(report.initial_energy()) + "  (expected -13.9113 +-0.001)");
    v.check(std::abs(report.initial_momentum() - (-0.544331)) <= 1e-5,
            "P0 = " + sci(report.initial_momentum()) + "  (expected -0.544331 +-1e-5)");
    v.check(report.energy_change.value <= 1e-6,
            "C(E_10) = " + sci(report.energy_change.value) + "  (<= 1e-6)");
    v.check(report.momentum_change.value <= 1e-5,
            "C(P_10) = " + sci(report.momentum_change.value) + "  (<= 1e-5)");
    return v;
}

// ---- criterion 2: traveling-wave lambda optimum ----

Verdict criterion2() {
    Verdict v{2, "traveling-wave lambda optimum (Table 2, scanned)"};
    const auto spec = traveling_wave(0.5);
    ScanConfig sc; // defaults: [-1, 1], 0.001 / 0.0001, radius 0.01

    const auto coarse_grid = BasisConfig::from_spacing(-30.0, 30.0, 0.2, 0.0);
    const auto s1 = scan(spec, coarse_grid, 0.05, 10.0, sc);
    v.check(s1.best_lambda >= -0.015 && s1.best_lambda <= -0.005,
            "h=0.2: best lambda = " + sci(s1.best_lambda) + "  (expected in [-0.015, -0.005])");
    v.check(s1.best_linf <= 1.5e-3,
            "h=0.2: best L_inf(10) = " + sci(s1.best_linf) + "  (<= 1.5e-3)");
    const ScanPoint* zero1 = s1.point_at(0.0, 0.0);
    v.check(zero1 && zero1->ok && s1.best_linf < zero1->linf,
            "h=0.2: optimum strictly better than lambda = 0 (" + sci(s1.best_linf) + " < " +
                (zero1 ? sci(zero1->linf) : "?") + ")");

    const auto mid_grid = BasisConfig::from_spacing(-30.0, 30.0, 0.1, 0.0);
    const auto s2 = scan(spec, mid_grid, 0.02, 10.0, sc);
    v.check(s2.best_lambda >= -0.006 && s2.best_lambda <= -0.0005,
            "h=0.1: best lambda = " + sci(s2.best_lambda) + "  (expected in [-0.006, -0.0005])");
    v.check(s2.best_linf <= 4e-4,
            "h=0.1: best L_inf(10) = " + sci(s2.best_linf) + "  (<= 4e-4)");
    const ScanPoint* zero2 = s2.point_at(0.0, 0.0);
    v.check(zero2 && zero2->ok && s2.best_linf < zero2->linf,
            "h=0.1: optimum strictly better than lambda = 0 (" + sci(s2.best_linf) + " < " +
                (zero2 ? sci(zero2->linf) : "?") + ")");
    return v;
}

// ---- criterion 4 + 5: solitary-wave table and conservation ----

struct SolitaryResults {
    DiagnosticsReport fine;   // h=0.005, dt=0.001
    DiagnosticsReport coarse; // h=0.05,  dt=0.01
    double fine_seconds = 0;
    double coarse_seconds = 0;
};

SolitaryResults solitary_table() {
    const auto spec = solitary_wave();
    SolitaryResults out;
    out.fine_seconds = timed([&] {
        out.fine = run_case(spec, 0.005, 0.001, 3.0, 0.0, {1.0, 2.0, 3.0});
    });
    out.coarse_seconds = timed([&] {
        out.coarse = run_case(spec, 0.05, 0.01, 3.0, 0.0, {1.0, 2.0, 3.0});
    });
    return out;
}

Verdict criterion4(const SolitaryResults& sr) {
    Verdict v{4, "solitary-wave error table (Table 4, lambda = 0)"};
    const double expected_fine[3] = {8.5593e-6, 1.9112e-5, 6.0943e-5};
    for (int i = 0; i < 3; ++i) {
        const double got = sr.fine.linf_history[size_t(i)].second;
        v.check(within(got, expected_fine[i], 0.25),
                "h=0.005 dt=0.001: L_inf(" + std::to_string(i + 1) + ") = " + sci(got) +
                    "  (expected " + sci(expected_fine[i]) + " +-25%)");
    }
    const double coarse3 = sr.coarse.linf_history.back().second;
    v.check(within(coarse3, 6.0948e-3, 0.25),
            "h=0.05 dt=0.01: L_inf(3) = " + sci(coarse3) + "  (expected 6.0948e-3 +-25%)");
    v.check(sr.fine_seconds < 600.0,
            "fine row took " + sci(sr.fine_seconds) + " s (< 10 min)");
    v.check(sr.coarse_seconds < 10.0,
            "coarse row took " + sci(sr.coarse_seconds) + " s (< 10 s)");
    return v;
}

Verdict criterion5(const SolitaryResults& sr) {
    Verdict v{5, "solitary-wave conservation (Table 5, h=0.005, dt=0.001)"};
    const auto& report = sr.fine;
    v.check(std::abs(report.initial_energy() - 4.43196) <= 1e-4,
            "E0 = " + sci(report.initial_energy()) + "  (expected 4.43196 +-1e-4)");
    v.check(std::abs(report.initial_momentum() - (-5.81932)) <= 1e-4,
            "P0 = " + sci(report.initial_momentum()) + "  (expected -5.81932 +-1e-4)");
    v.check(report.energy_change.value <= 5e-8,
            "C(E_3) = " + sci(report.energy_change.value) + "  (<= 5e-8)");
    v.check(report.momentum_change.value <= 5e-8,
            "C(P_3) = " + sci(report.momentum_change.value) + "  (<= 5e-8)");
    return v;
}

// ---- criterion 6: solitary-wave lambda result ----

Verdict criterion6() {
    Verdict v{6, "solitary-wave lambda optimum (h=0.05, dt=0.01)"};
    const auto spec = solitary_wave();
    ScanConfig sc;
    const auto grid = BasisConfig::from_spacing(-10.0, 15.0, 0.05, 0.0);
    const auto result = scan(spec, grid, 0.01, 3.0, sc);
    v.check(std::abs(result.best_lambda) <= sc.refine_step,
            "best lambda = " + sci(result.best_lambda) + ", L_inf(3) = " + sci(result.best_linf) +
                "  (expected |lambda| <= " + sci(sc.refine_step) + ")");
    return v;
}

// ---- criterion 7: property suite ----

Verdict criterion7() {
    Verdict v{7, "property suite"};
    const auto suite_start = clock_type::now();

    { // (a) partition of unity and derivative sums
        std::mt19937 rng(1);
        bool unity = true, deriv = true;
        for (double lam : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
            const auto cfg = BasisConfig::uniform(-6.0, 6.0, 60, lam);
            std::uniform_real_distribution<double> xs(cfg.domain_start() + 2 * cfg.h(),
                                                      cfg.domain_end() - 2 * cfg.h());
            for (int k = 0; k < 1000; ++k) {
                const double x = xs(rng);
                double s0 = 0, s1 = 0, s2 = 0;
                for (int i = -1; i <= cfg.n_intervals() + 1; ++i) {
                    s0 += eval(cfg, i, x, 0);
                    s1 += eval(cfg, i, x, 1);
                    s2 += eval(cfg, i, x, 2);
                }
                unity = unity && std::abs(s0 - 1.0) <= 1e-12;
                deriv = deriv && std::abs(s1) <= 1e-10 && std::abs(s2) <= 1e-10;
            }
        }
        v.check(unity, "(a) partition of unity within 1e-12 for lambda in {-1,-0.5,0,0.5,1}");
        v.check(deriv, "(a) derivative sums within 1e-10");
    }

    { // (b) banded vs dense solver agreement
        std::mt19937 rng(2);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        std::uniform_int_distribution<int> dims(4, 64);
        bool agree = true;
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const int n = dims(rng);
            const int kl = std::min(n - 1, 3), ku = std::min(n - 1, 3);
            BandedMatrix banded(n, kl, ku);
            std::vector<std::vector<double>> dense(size_t(n), std::vector<double>(size_t(n), 0.0));
            for (int i = 0; i < n; ++i)
                for (int j = std::max(0, i - kl); j <= std::min(n - 1, i + ku); ++j) {
                    double val = dist(rng);
                    if (i == j) val += (val < 0 ? -1.5 : 1.5);
                    banded.at(i, j) = val;
                    dense[size_t(i)][size_t(j)] = val;
                }
            std::vector<double> rhs(static_cast<size_t>(n));
            for (auto& x : rhs) x = dist(rng);
            const auto x_band = factorize(banded).solve(rhs);
            // dense elimination, independently coded
            auto a = dense;
            auto b = rhs;
            for (int j = 0; j < n; ++j) {
                int p = j;
                for (int i = j + 1; i < n; ++i)
                    if (std::abs(a[size_t(i)][size_t(j)]) > std::abs(a[size_t(p)][size_t(j)])) p = i;
                std::swap(a[size_t(j)], a[size_t(p)]);
                std::swap(b[size_t(j)], b[size_t(p)]);
                for (int i = j + 1; i < n; ++i) {
                    const double l = a[size_t(i)][size_t(j)] / a[size_t(j)][size_t(j)];
                    for (int k = j; k < n; ++k) a[size_t(i)][size_t(k)] -= l * a[size_t(j)][size_t(k)];
                    b[size_t(i)] -= l * b[size_t(j)];
                }
            }
            std::vector<double> x_dense(static_cast<size_t>(n));
            for (int i = n - 1; i >= 0; --i) {
                double s = b[size_t(i)];
                for (int k = i + 1; k < n; ++k) s -= a[size_t(i)][size_t(k)] * x_dense[size_t(k)];
                x_dense[size_t(i)] = s / a[size_t(i)][size_t(i)];
            }
            double scale = 0.0, diff = 0.0;
            for (int i = 0; i < n; ++i) {
                scale = std::max(scale, std::abs(x_dense[size_t(i)]));
                diff = std::max(diff, std::abs(x_dense[size_t(i)] - x_band[size_t(i)]));
            }
            worst = std::max(worst, diff / std::max(1.0, scale));
            agree = agree && diff <= 1e-10 * std::max(1.0, scale);
        }
        v.check(agree, "(b) banded vs dense on 100 random systems, worst rel diff " + sci(worst));
    }

    { // (c) classical nodal constants at lambda = 0
        const auto c = nodal_constants(BasisConfig::uniform(0.0, 1.0, 8, 0.0));
        const bool ok = std::abs(c.alpha1 - 1.0 / 6.0) <= 1e-15 &&
                        std::abs(c.alpha2 - 2.0 / 3.0) <= 1e-15;
        v.check(ok, "(c) lambda = 0 nodal constants are (1/6, 2/3, 1/6)");
    }

    { // (d) second-order accuracy in time on a linear problem
        ProblemSpec spec;
        spec.name = "standing_wave";
        spec.epsilon1 = -1.0;
        spec.epsilon2 = 0.0;
        spec.domain_start = 0.0;
        spec.domain_end = std::numbers::pi;
        spec.t_end = 1.0;
        const double w = std::sqrt(5.0);
        spec.exact_u = [w](double x, double t) { return std::cos(2 * x) * std::cos(w * t); };
        spec.exact_ut = [w](double x, double t) { return -w * std::cos(2 * x) * std::sin(w * t); };
        spec.initial_u = [](double x) { return std::cos(2 * x); };
        spec.initial_v = [](double) { return 0.0; };
        const auto cfg = BasisConfig::uniform(0.0, std::numbers::pi, 1000, 0.0);
        std::vector<double> errors;
        for (double dt : {0.1, 0.05, 0.025, 0.0125}) {
            RunObservers obs;
            obs.sample_times = {1.0};
            errors.push_back(run(spec, cfg, dt, 1.0, obs).linf_history.back().second);
        }
        const double order = std::log2(errors.front() / errors.back()) / 3.0;
        v.check(std::abs(order - 2.0) <= 0.3,
                "(d) linear-problem temporal order = " + sci(order) + "  (expected 2.0 +-0.3)");
    }

    { // (e) zero data is a fixed point
        ProblemSpec spec;
        spec.name = "rest";
        spec.epsilon1 = 1.0;
        spec.epsilon2 = -1.0;
        spec.domain_start = 0.0;
        spec.domain_end = 1.0;
        spec.t_end = 1.0;
        spec.initial_u = [](double) { return 0.0; };
        spec.initial_v = [](double) { return 0.0; };
        const auto cfg = BasisConfig::uniform(0.0, 1.0, 32, 0.0);
        auto state = initialize(spec, cfg);
        double worst = 0.0;
        for (int k = 0; k < 100; ++k) {
            state = step(state, 0.01, spec, cfg);
            for (int i = -1; i <= 33; ++i)
                worst = std::max(worst, std::max(std::abs(state.delta(i)), std::abs(state.phi(i))));
        }
        v.check(worst == 0.0, "(e) zero state stays exactly zero over 100 steps");
    }

    { // (f) exact solutions satisfy the field equation
        std::mt19937 rng(3);
        double worst = 0.0;
        const auto tw = traveling_wave(0.5);
        const auto sol = solitary_wave();
        std::uniform_real_distribution<double> xs(-6.0, 6.0), ts(0.1, 3.0);
        for (int k = 0; k < 50; ++k) {
            const double x = xs(rng), t = ts(rng);
            worst = std::max(worst, std::abs(residual(tw, tw.exact_u, x, t)));
            worst = std::max(worst, std::abs(residual(sol, sol.exact_u, x, t)));
        }
        v.check(worst < 1e-6, "(f) PDE residuals of both exact solutions, worst " + sci(worst));
    }

    const double secs = std::chrono::duration<double>(clock_type::now() - suite_start).count();
    v.check(secs < 60.0, "suite completed in " + sci(secs) + " s (< 60 s)");
    return v;
}

} // namespace

int main(int argc, char** argv) {
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
    auto selected = [&](int id) { return wanted.empty() || wanted.count(id) > 0; };

    std::vector<Verdict> verdicts;

    if (selected(1) || selected(3)) {
        const auto tr = traveling_table();
        if (selected(1)) verdicts.push_back(criterion1(tr));
        if (selected(3)) verdicts.push_back(criterion3(tr));
    }
    if (selected(2)) verdicts.push_back(criterion2());
    if (selected(4) || selected(5)) {
        const auto sr = solitary_table();
        if (selected(4)) verdicts.push_back(criterion4(sr));
        if (selected(5)) verdicts.push_back(criterion5(sr));
    }
    if (selected(6)) verdicts.push_back(criterion6());
    if (selected(7)) verdicts.push_back(criterion7());

    std::sort(verdicts.begin(), verdicts.end(),
              [](const Verdict& a, const Verdict& b) { return a.id < b.id; });

    int failures = 0;
    for (const auto& v : verdicts) {
        for (const auto& d : v.details) std::printf("%s\n", d.c_str());
        std::printf("[%s] criterion %d: %s\n", v.pass ? "PASS" : "FAIL", v.id, v.name.c_str());
        failures += v.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", int(verdicts.size()) - failures, verdicts.size());
    return failures == 0 ? 0 : 1;
}
