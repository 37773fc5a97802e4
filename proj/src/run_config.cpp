#include "nkg/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nkg {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

bool parse_bool(const std::string& v) {
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    throw std::invalid_argument("config: bad boolean value '" + v + "'");
}

double parse_num(const std::string& v) {
    size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument("config: bad number '" + v + "'");
    return x;
}

// shortest decimal that round-trips
std::string num_to_string(double v) {
    for (int prec = 1; prec <= 17; ++prec) {
        std::ostringstream out;
        out.precision(prec);
        out << v;
        if (std::stod(out.str()) == v) return out.str();
    }
    return std::to_string(v);
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "problem") cfg.problem = value;
    else if (key == "nu") cfg.nu = parse_num(value);
    else if (key == "h") cfg.h = parse_num(value);
    else if (key == "dt") cfg.dt = parse_num(value);
    else if (key == "t_end") cfg.t_end = parse_num(value);
    else if (key == "lambda") cfg.lambda = parse_num(value);
    else if (key == "scan") cfg.scan = parse_bool(value);
    else if (key == "lambda_min") cfg.scan_cfg.lambda_min = parse_num(value);
    else if (key == "lambda_max") cfg.scan_cfg.lambda_max = parse_num(value);
    else if (key == "coarse_step") cfg.scan_cfg.coarse_step = parse_num(value);
    else if (key == "refine_step") cfg.scan_cfg.refine_step = parse_num(value);
    else if (key == "refine_radius") cfg.scan_cfg.refine_radius = parse_num(value);
    else if (key == "exhaustive") cfg.scan_cfg.exhaustive = parse_bool(value);
    else if (key == "samples") cfg.sample_times = parse_time_list(value);
    else if (key == "out_dir") cfg.out_dir = value;
    else if (key == "format_csv") cfg.format_csv = parse_bool(value);
    else if (key == "format_json") cfg.format_json = parse_bool(value);
    else if (key == "pivot_free") cfg.pivot_free = parse_bool(value);
    else if (key == "epsilon1") cfg.epsilon1 = parse_num(value);
    else if (key == "epsilon2") cfg.epsilon2 = parse_num(value);
    else if (key == "domain_start") cfg.domain_start = parse_num(value);
    else if (key == "domain_end") cfg.domain_end = parse_num(value);
    else if (key == "initial_data") cfg.initial_data = value;
    else throw std::invalid_argument("config: unknown key '" + key + "'");
}

TableRow parse_row(const std::string& body) {
    TableRow row;
    bool have_h = false, have_dt = false;
    std::istringstream in(body);
    std::string token;
    while (in >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config row: expected key=value, got '" + token + "'");
        const std::string key = token.substr(0, eq);
        const std::string value = token.substr(eq + 1);
        if (key == "h") { row.h = parse_num(value); have_h = true; }
        else if (key == "dt") { row.dt = parse_num(value); have_dt = true; }
        else if (key == "lambda") {
            if (value == "scan") row.scan = true;
            else row.lambda = parse_num(value);
        }
        else if (key == "scale") {
            if (value != "both" && value != "desk" && value != "full")
                throw std::invalid_argument("config row: scale must be both, desk or full");
            row.scale = value;
        }
        else throw std::invalid_argument("config row: unknown key '" + key + "'");
    }
    if (!have_h || !have_dt)
        throw std::invalid_argument("config row: h and dt are required");
    return row;
}

} // namespace

std::vector<double> parse_time_list(const std::string& csv) {
    std::vector<double> out;
    std::istringstream in(csv);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_num(item));
    }
    return out;
}

RunConfig RunConfig::parse(std::istream& in) {
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        apply_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    return parse(in);
}

std::string RunConfig::serialize(bool params_only) const {
    std::ostringstream out;
    out << "problem = " << problem << "\n";
    out << "nu = " << num_to_string(nu) << "\n";
    out << "h = " << num_to_string(h) << "\n";
    out << "dt = " << num_to_string(dt) << "\n";
    out << "t_end = " << num_to_string(t_end) << "\n";
    out << "lambda = " << num_to_string(lambda) << "\n";
    out << "scan = " << (scan ? "true" : "false") << "\n";
    out << "lambda_min = " << num_to_string(scan_cfg.lambda_min) << "\n";
    out << "lambda_max = " << num_to_string(scan_cfg.lambda_max) << "\n";
    out << "coarse_step = " << num_to_string(scan_cfg.coarse_step) << "\n";
    out << "refine_step = " << num_to_string(scan_cfg.refine_step) << "\n";
    out << "refine_radius = " << num_to_string(scan_cfg.refine_radius) << "\n";
    out << "exhaustive = " << (scan_cfg.exhaustive ? "true" : "false") << "\n";
    if (!sample_times.empty()) {
        out << "samples = ";
        for (size_t i = 0; i < sample_times.size(); ++i)
            out << (i ? "," : "") << num_to_string(sample_times[i]);
        out << "\n";
    }
    if (!params_only) {
        out << "out_dir = " << out_dir << "\n";
        out << "format_csv = " << (format_csv ? "true" : "false") << "\n";
        out << "format_json = " << (format_json ? "true" : "false") << "\n";
    }
    out << "pivot_free = " << (pivot_free ? "true" : "false") << "\n";
    if (epsilon1) out << "epsilon1 = " << num_to_string(*epsilon1) << "\n";
    if (epsilon2) out << "epsilon2 = " << num_to_string(*epsilon2) << "\n";
    if (domain_start) out << "domain_start = " << num_to_string(*domain_start) << "\n";
    if (domain_end) out << "domain_end = " << num_to_string(*domain_end) << "\n";
    if (!initial_data.empty()) out << "initial_data = " << initial_data << "\n";
    return out.str();
}

ProblemSpec RunConfig::make_problem() const {
    if (problem == "custom") {
        if (!epsilon1 || !epsilon2 || !domain_start || !domain_end || initial_data.empty())
            throw std::invalid_argument(
                "custom problem needs epsilon1, epsilon2, domain_start, domain_end and "
                "initial_data");
        std::ifstream in(initial_data);
        if (!in) throw std::invalid_argument("cannot open initial data '" + initial_data + "'");
        std::vector<double> xs, u0, v0;
        std::string line;
        while (std::getline(in, line)) {
            line = trim(line);
            if (line.empty() || line[0] == '#' || std::isalpha(static_cast<unsigned char>(line[0])))
                continue;
            std::istringstream row(line);
            std::string cell;
            double vals[3];
            for (double& v : vals) {
                if (!std::getline(row, cell, ','))
                    throw std::invalid_argument("initial data: need x,u0,v0 per row");
                v = parse_num(trim(cell));
            }
            xs.push_back(vals[0]);
            u0.push_back(vals[1]);
            v0.push_back(vals[2]);
        }
        return custom_problem("custom", *epsilon1, *epsilon2, *domain_start, *domain_end,
                              t_end > 0 ? t_end : 1.0, std::move(xs), std::move(u0),
                              std::move(v0));
    }
    if (problem == "traveling_wave") return traveling_wave(nu);
    return find_problem(problem);
}

double RunConfig::resolved_t_end(const ProblemSpec& spec) const {
    return t_end > 0.0 ? t_end : spec.t_end;
}

BasisConfig RunConfig::make_grid(const ProblemSpec& spec) const {
    LambdaBounds bounds{scan_cfg.lambda_min, scan_cfg.lambda_max};
    bounds.min = std::min(bounds.min, lambda);
    bounds.max = std::max(bounds.max, lambda);
    return BasisConfig::from_spacing(spec.domain_start, spec.domain_end, h, lambda, bounds);
}

void RunConfig::validate(const ProblemSpec& spec) const {
    if (!(h > 0.0)) throw std::invalid_argument("config: h must be positive");
    if (!(dt > 0.0)) throw std::invalid_argument("config: dt must be positive");
    make_grid(spec); // h divides the domain
    const double tend = resolved_t_end(spec);
    const long n_steps = std::lround(tend / dt);
    if (n_steps < 1 || std::abs(n_steps * dt - tend) > 1e-9 * tend)
        throw std::invalid_argument("config: t_end is not an integer multiple of dt");
    for (double t : sample_times) {
        const long k = std::lround(t / dt);
        if (k < 0 || k > n_steps || std::abs(k * dt - t) > 1e-9 * std::max(1.0, std::abs(t)))
            throw std::invalid_argument("config: sample time " + std::to_string(t) +
                                        " is off the step grid");
    }
    if (scan) scan_cfg.validate();
}

TableSpec TableSpec::parse(std::istream& in) {
    TableSpec spec;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("row:", 0) == 0) {
            spec.rows.push_back(parse_row(line.substr(4)));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("table config line " + std::to_string(lineno) +
                                        ": expected key = value or row:");
        apply_key(spec.base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return spec;
}

TableSpec TableSpec::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("table config: cannot open '" + path + "'");
    return parse(in);
}

} // namespace nkg
