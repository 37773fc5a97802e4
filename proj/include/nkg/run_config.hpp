#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nkg/basis.hpp"
#include "nkg/lambda_scan.hpp"
#include "nkg/problems.hpp"

namespace nkg {

/// Everything a single run or scan needs, serializable as flat key=value
/// text (one key per line, '#' comments). Round-trips exactly.
struct RunConfig {
    std::string problem = "traveling_wave";
    double nu = 0.5; ///< traveling-wave velocity
    double h = 0.0;
    double dt = 0.0;
    double t_end = -1.0; ///< < 0 means the problem's own final time
    double lambda = 0.0;
    bool scan = false;
    ScanConfig scan_cfg;
    std::vector<double> sample_times;
    std::string out_dir = ".";
    bool format_csv = true;
    bool format_json = true;
    bool pivot_free = false;
    // custom problem only
    std::optional<double> epsilon1;
    std::optional<double> epsilon2;
    std::optional<double> domain_start;
    std::optional<double> domain_end;
    std::string initial_data; ///< path to x,u0,v0 CSV for custom problems

    static RunConfig parse(std::istream& in);
    static RunConfig parse_file(const std::string& path);
    /// `params_only` drops the output-location keys, leaving the numerical
    /// description that artifact manifests embed.
    std::string serialize(bool params_only = false) const;

    /// Resolve the problem this config describes (built-in or custom).
    ProblemSpec make_problem() const;
    /// Final time after applying the problem default.
    double resolved_t_end(const ProblemSpec& spec) const;
    /// Grid for this config; throws std::invalid_argument when h does not
    /// divide the domain or sample times are off the step grid.
    BasisConfig make_grid(const ProblemSpec& spec) const;
    void validate(const ProblemSpec& spec) const;

    bool operator==(const RunConfig&) const = default;
};

/// One row of a table config set: a (h, dt) resolution, run either at a
/// fixed lambda or through the scan. `scale` picks the variant the row
/// belongs to: "both" (default), "full" (verbatim reproduction only) or
/// "desk" (the cheaper substitute used under --desk-scale).
struct TableRow {
    double h = 0.0;
    double dt = 0.0;
    bool scan = false;
    double lambda = 0.0;
    std::string scale = "both";

    bool at_desk_scale() const { return scale != "full"; }
    bool at_full_scale() const { return scale != "desk"; }
};

/// A batch file: shared run settings plus one `row:` line per table row.
struct TableSpec {
    RunConfig base;
    std::vector<TableRow> rows;

    static TableSpec parse(std::istream& in);
    static TableSpec parse_file(const std::string& path);
};

std::vector<double> parse_time_list(const std::string& csv);

} // namespace nkg
