// Command-line front end: run single experiments, scan the extension
// parameter, and reproduce the batch result tables.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "nkg/diagnostics.hpp"
#include "nkg/errors.hpp"
#include "nkg/lambda_scan.hpp"
#include "nkg/parallel.hpp"
#include "nkg/run_config.hpp"
#include "nkg/timestepper.hpp"
#include "nkg/version.hpp"

namespace fs = std::filesystem;
using namespace nkg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

std::string trim_number(double v) {
    std::ostringstream out;
    out << v;
    return out.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
}

std::string snapshot_csv(const RunConfig& cfg, const std::vector<SnapshotRow>& rows, double t) {
    std::ostringstream out;
    std::istringstream manifest(cfg.serialize(true));
    std::string line;
    while (std::getline(manifest, line)) out << "# " << line << "\n";
    out << "# snapshot_time=" << format_sci(t) << "\n";
    out << "x,u,v,exact,error\n";
    for (const auto& r : rows) {
        out << format_sci(r.x) << "," << format_sci(r.u) << "," << format_sci(r.v) << ",";
        if (r.exact) out << format_sci(*r.exact);
        out << ",";
        if (r.error) out << format_sci(*r.error);
        out << "\n";
    }
    return out.str();
}

std::string prepend_manifest(const RunConfig& cfg, const std::string& body) {
    std::ostringstream out;
    std::istringstream manifest(cfg.serialize(true));
    std::string line;
    while (std::getline(manifest, line)) out << "# " << line << "\n";
    out << body;
    return out.str();
}

void write_manifest(const RunConfig& cfg, const fs::path& dir, double wall_seconds,
                    long n_steps) {
    std::ostringstream out;
    out << cfg.serialize();
    out << "version = " << kVersion << "\n";
    out << "n_steps = " << n_steps << "\n";
    out << "wall_seconds = " << trim_number(wall_seconds) << "\n";
    write_file(dir / "run_manifest.txt", out.str());
}

int run_single(const RunConfig& cfg) {
    const ProblemSpec spec = cfg.make_problem();
    cfg.validate(spec);
    const BasisConfig grid = cfg.make_grid(spec);
    const double t_end = cfg.resolved_t_end(spec);

    const fs::path dir(cfg.out_dir);
    fs::create_directories(dir);

    RunObservers obs;
    obs.sample_times = cfg.sample_times;
    obs.pivoting = cfg.pivot_free ? Pivoting::None : Pivoting::Partial;
    obs.on_sample = [&](const CoefficientState& state) {
        const auto rows = make_snapshot(state, spec, grid);
        write_file(dir / ("snapshot_t" + trim_number(state.time()) + ".csv"),
                   snapshot_csv(cfg, rows, state.time()));
    };

    const auto start = std::chrono::steady_clock::now();
    const DiagnosticsReport report = run(spec, grid, cfg.dt, t_end, obs);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (cfg.format_csv) write_file(dir / "report.csv", report.to_csv());
    if (cfg.format_json) write_file(dir / "report.json", report.to_json());
    write_manifest(cfg, dir, wall, report.meta.n_steps);

    std::cout << "problem " << spec.name << "  h=" << grid.h() << "  dt=" << cfg.dt
              << "  lambda=" << grid.lambda() << "  t_end=" << t_end << "\n";
    if (!report.linf_history.empty()) {
        for (const auto& [t, e] : report.linf_history)
            std::cout << "  L_inf(" << trim_number(t) << ") = " << format_sci(e) << "\n";
    }
    std::cout << "  E0 = " << format_sci(report.initial_energy())
              << "  P0 = " << format_sci(report.initial_momentum()) << "\n";
    std::cout << "  C(E) = " << format_sci(report.energy_change.value)
              << "  C(P) = " << format_sci(report.momentum_change.value) << "\n";
    return kExitOk;
}

int run_scan(const RunConfig& cfg) {
    const ProblemSpec spec = cfg.make_problem();
    cfg.validate(spec);
    const double t_end = cfg.resolved_t_end(spec);
    LambdaBounds bounds{cfg.scan_cfg.lambda_min, cfg.scan_cfg.lambda_max};
    const BasisConfig grid =
        BasisConfig::from_spacing(spec.domain_start, spec.domain_end, cfg.h, 0.0, bounds);

    const fs::path dir(cfg.out_dir);
    fs::create_directories(dir);

    const auto start = std::chrono::steady_clock::now();
    const ScanResult result = scan(spec, grid, cfg.dt, t_end, cfg.scan_cfg);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    write_file(dir / "scan.csv", prepend_manifest(cfg, result.to_csv()));
    write_manifest(cfg, dir, wall, 0);

    const ScanPoint* baseline = result.point_at(0.0);
    std::cout << "best lambda = " << result.best_lambda
              << "  L_inf(" << trim_number(t_end) << ") = " << format_sci(result.best_linf) << "\n";
    if (baseline && baseline->ok)
        std::cout << "lambda = 0 baseline: " << format_sci(baseline->linf) << "\n";
    return kExitOk;
}

int run_table(const std::string& config_path, const std::string& out_dir_flag, bool desk_scale) {
    TableSpec table = TableSpec::parse_file(config_path);
    if (!out_dir_flag.empty()) table.base.out_dir = out_dir_flag;
    const fs::path dir(table.base.out_dir);
    fs::create_directories(dir);

    std::vector<TableRow> rows;
    for (const auto& row : table.rows)
        if (desk_scale ? row.at_desk_scale() : row.at_full_scale()) rows.push_back(row);

    const std::vector<double>& samples = table.base.sample_times;

    std::ostringstream header;
    header << "h,dt";
    if (samples.empty()) header << ",linf_final";
    for (double s : samples) header << ",linf_t" << trim_number(s);
    header << ",cE,cP,lambda_opt,linf_opt,cE_opt,cP_opt,status";

    struct RowResult {
        std::string cells;
        bool ok = false;
    };
    std::vector<RowResult> results(rows.size());

    const ProblemSpec spec = table.base.make_problem();
    const int workers = resolve_workers(0);

    parallel_for(static_cast<int>(rows.size()), workers, [&](int idx) {
        const TableRow& row = rows[static_cast<size_t>(idx)];
        RowResult& res = results[static_cast<size_t>(idx)];
        std::ostringstream out;
        out << trim_number(row.h) << "," << trim_number(row.dt);
        try {
            RunConfig cfg = table.base;
            cfg.h = row.h;
            cfg.dt = row.dt;
            cfg.lambda = row.scan ? 0.0 : row.lambda;
            cfg.scan = row.scan;
            cfg.validate(spec);
            const double t_end = cfg.resolved_t_end(spec);

            // fixed-lambda diagnostics (lambda = 0 when the row also scans)
            const BasisConfig grid = cfg.make_grid(spec);
            RunObservers obs;
            obs.sample_times = samples.empty() ? std::vector<double>{t_end} : samples;
            obs.pivoting = cfg.pivot_free ? Pivoting::None : Pivoting::Partial;
            const DiagnosticsReport report = run(spec, grid, cfg.dt, t_end, obs);
            if (samples.empty()) {
                out << ",";
                if (!report.linf_history.empty())
                    out << format_sci(report.linf_history.back().second);
            } else {
                for (double s : samples) {
                    const auto e = report.linf_at(s, 1e-9 * std::max(1.0, std::abs(s)));
                    out << ",";
                    if (e) out << format_sci(*e);
                }
            }
            out << "," << format_sci(report.energy_change.value) << ","
                << format_sci(report.momentum_change.value);

            if (row.scan) {
                ScanConfig sc = cfg.scan_cfg;
                sc.workers = 1; // rows already run in parallel
                const ScanResult scan_result = scan(spec, grid, cfg.dt, t_end, sc);
                RunObservers opt_obs;
                opt_obs.sample_times = samples;
                const DiagnosticsReport opt = run(
                    spec, grid.with_lambda(scan_result.best_lambda), cfg.dt, t_end, opt_obs);
                out << "," << trim_number(scan_result.best_lambda) << ","
                    << format_sci(scan_result.best_linf) << ","
                    << format_sci(opt.energy_change.value) << ","
                    << format_sci(opt.momentum_change.value);
            } else {
                out << ",,,,";
            }
            out << ",ok";
            res.ok = true;
        } catch (const std::exception& e) {
            // pad the value columns so the status lands in its column
            const size_t value_cols = (samples.empty() ? 1 : samples.size()) + 2 + 4;
            std::string msg = e.what();
            for (char& ch : msg)
                if (ch == ',' || ch == '\n') ch = ';';
            for (size_t i = 0; i <= value_cols; ++i) out << ",";
            out << "error: " << msg;
        }
        res.cells = out.str();
    });

    std::ostringstream csv;
    csv << header.str() << "\n";
    for (const auto& r : results) csv << r.cells << "\n";
    write_file(dir / "table.csv", prepend_manifest(table.base, csv.str()));
    std::cout << "wrote " << (dir / "table.csv").string() << " (" << rows.size() << " rows)\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Extended cubic B-spline collocation solver for the nonlinear "
                 "Klein-Gordon equation"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    app.set_help_flag("--help", "print help"); // keep -h free for the mesh spacing

    RunConfig cli_cfg;
    std::string config_path;
    std::string samples_csv;

    auto add_common = [&](CLI::App* sub, bool with_lambda) {
        sub->set_help_flag("--help", "print help");
        sub->add_option("--config", config_path, "key=value config file; flags override it");
        sub->add_option("--problem", cli_cfg.problem,
                        "traveling_wave | solitary_wave | custom");
        sub->add_option("--nu", cli_cfg.nu, "traveling-wave velocity (|nu| < 1)");
        sub->add_option("--h", cli_cfg.h, "mesh spacing");
        sub->add_option("--dt", cli_cfg.dt, "time step");
        sub->add_option("--t-end", cli_cfg.t_end, "final time (default: problem's own)");
        if (with_lambda) sub->add_option("--lambda", cli_cfg.lambda, "extension parameter");
        sub->add_option("--sample", samples_csv, "comma-separated sample times");
        sub->add_option("--out", cli_cfg.out_dir, "output directory");
        sub->add_flag("--pivot-free", cli_cfg.pivot_free,
                      "banded solver without row interchanges");
        sub->add_option("--epsilon1", [&](const std::vector<std::string>& v) {
            cli_cfg.epsilon1 = std::stod(v[0]); return true; }, "custom: linear coefficient");
        sub->add_option("--epsilon2", [&](const std::vector<std::string>& v) {
            cli_cfg.epsilon2 = std::stod(v[0]); return true; }, "custom: cubic coefficient");
        sub->add_option("--domain-start", [&](const std::vector<std::string>& v) {
            cli_cfg.domain_start = std::stod(v[0]); return true; }, "custom: left end");
        sub->add_option("--domain-end", [&](const std::vector<std::string>& v) {
            cli_cfg.domain_end = std::stod(v[0]); return true; }, "custom: right end");
        sub->add_option("--initial-data", cli_cfg.initial_data, "custom: x,u0,v0 CSV file");
    };

    CLI::App* cmd_run = app.add_subcommand("run", "single solve with diagnostics");
    add_common(cmd_run, true);
    std::string fmt = "csv,json";
    cmd_run->add_option("--format", fmt, "artifact formats: csv, json or csv,json");

    CLI::App* cmd_scan = app.add_subcommand("scan", "optimize the extension parameter");
    add_common(cmd_scan, false);
    cmd_scan->add_option("--lambda-min", cli_cfg.scan_cfg.lambda_min, "scan lower bound");
    cmd_scan->add_option("--lambda-max", cli_cfg.scan_cfg.lambda_max, "scan upper bound");
    cmd_scan->add_option("--coarse-step", cli_cfg.scan_cfg.coarse_step, "phase-1 increment");
    cmd_scan->add_option("--refine-step", cli_cfg.scan_cfg.refine_step, "phase-2 increment");
    cmd_scan->add_option("--refine-radius", cli_cfg.scan_cfg.refine_radius,
                         "phase-2 half-width around the coarse minimizer");
    cmd_scan->add_flag("--exhaustive", cli_cfg.scan_cfg.exhaustive,
                       "single sweep at refine-step over the whole range");
    cmd_scan->add_option("--workers", cli_cfg.scan_cfg.workers,
                         "parallel evaluations (default: NKG_WORKERS or hardware)");

    CLI::App* cmd_table = app.add_subcommand("table", "batch rows from a config set");
    std::string table_config;
    std::string table_out;
    bool desk_scale = false;
    cmd_table->add_option("--config", table_config, "config set with row: lines")->required();
    cmd_table->add_option("--out", table_out, "output directory");
    cmd_table->add_flag("--desk-scale", desk_scale, "only rows tagged desk=1");

    CLI::App* cmd_list = app.add_subcommand("list-problems", "print built-in problem names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (cmd_list->parsed()) {
            for (const auto& name : problem_names()) std::cout << name << "\n";
            return kExitOk;
        }

        // merge config file and explicit flags (flags win)
        auto merge = [&](CLI::App* sub) {
            if (config_path.empty()) return;
            RunConfig from_file = RunConfig::parse_file(config_path);
            RunConfig flags = cli_cfg;
            cli_cfg = from_file;
            auto taken = [&](const std::string& name) { return sub->count(name) > 0; };
            if (taken("--problem")) cli_cfg.problem = flags.problem;
            if (taken("--nu")) cli_cfg.nu = flags.nu;
            if (taken("--h")) cli_cfg.h = flags.h;
            if (taken("--dt")) cli_cfg.dt = flags.dt;
            if (sub->get_option_no_throw("--lambda") && taken("--lambda"))
                cli_cfg.lambda = flags.lambda;
            if (taken("--t-end")) cli_cfg.t_end = flags.t_end;
            if (taken("--out")) cli_cfg.out_dir = flags.out_dir;
            if (taken("--pivot-free")) cli_cfg.pivot_free = flags.pivot_free;
            if (taken("--epsilon1")) cli_cfg.epsilon1 = flags.epsilon1;
            if (taken("--epsilon2")) cli_cfg.epsilon2 = flags.epsilon2;
            if (taken("--domain-start")) cli_cfg.domain_start = flags.domain_start;
            if (taken("--domain-end")) cli_cfg.domain_end = flags.domain_end;
            if (taken("--initial-data")) cli_cfg.initial_data = flags.initial_data;
            if (sub == cmd_scan) {
                if (taken("--lambda-min")) cli_cfg.scan_cfg.lambda_min = flags.scan_cfg.lambda_min;
                if (taken("--lambda-max")) cli_cfg.scan_cfg.lambda_max = flags.scan_cfg.lambda_max;
                if (taken("--coarse-step")) cli_cfg.scan_cfg.coarse_step = flags.scan_cfg.coarse_step;
                if (taken("--refine-step")) cli_cfg.scan_cfg.refine_step = flags.scan_cfg.refine_step;
                if (taken("--refine-radius"))
                    cli_cfg.scan_cfg.refine_radius = flags.scan_cfg.refine_radius;
                if (taken("--exhaustive")) cli_cfg.scan_cfg.exhaustive = flags.scan_cfg.exhaustive;
                if (taken("--workers")) cli_cfg.scan_cfg.workers = flags.scan_cfg.workers;
            }
        };

        if (cmd_run->parsed()) {
            merge(cmd_run);
            if (cmd_run->count("--sample")) cli_cfg.sample_times = parse_time_list(samples_csv);
            if (cmd_run->count("--format")) {
                cli_cfg.format_csv = fmt.find("csv") != std::string::npos;
                cli_cfg.format_json = fmt.find("json") != std::string::npos;
            }
            return run_single(cli_cfg);
        }
        if (cmd_scan->parsed()) {
            merge(cmd_scan);
            if (cmd_scan->count("--sample")) cli_cfg.sample_times = parse_time_list(samples_csv);
            return run_scan(cli_cfg);
        }
        if (cmd_table->parsed()) return run_table(table_config, table_out, desk_scale);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
