#include "caplab/runconfig.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace caplab {

namespace {

void reject_unknown_keys(const nlohmann::json& j,
                         const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key))
            throw ConfigError("unknown key \"" + key + "\" in " + where);
}

double number_at(const nlohmann::json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number())
        throw ConfigError(std::string(key) + " must be a number");
    return j[key].get<double>();
}

}  // namespace

MetricSpec MetricSpec::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("metric spec must be an object");
    reject_unknown_keys(j, {"type", "chart", "mass", "coefficients"},
                        "metric spec");
    MetricSpec spec;
    if (!j.contains("type") || !j["type"].is_string())
        throw ConfigError("metric spec needs a string \"type\"");
    spec.type = j["type"].get<std::string>();
    if (j.contains("chart")) spec.chart = j["chart"].get<std::string>();
    spec.mass = number_at(j, "mass", 1.0);
    if (j.contains("coefficients")) {
        if (!j["coefficients"].is_array())
            throw ConfigError("coefficients must be an array of numbers");
        for (const auto& c : j["coefficients"]) {
            if (!c.is_number())
                throw ConfigError("coefficients must be an array of numbers");
            spec.coefficients.push_back(c.get<double>());
        }
    }
    if (spec.type != "flat" && spec.type != "schwarzschild" &&
        spec.type != "conformal_perturbation")
        throw ConfigError("unknown metric type \"" + spec.type + "\"");
    if (spec.chart != "area" && spec.chart != "isotropic")
        throw ConfigError("chart must be \"area\" or \"isotropic\"");
    return spec;
}

MetricProfile MetricSpec::build() const {
    if (type == "flat") return MetricProfile::flat();
    if (type == "schwarzschild")
        return chart == "isotropic"
                   ? MetricProfile::schwarzschild_isotropic(mass)
                   : MetricProfile::schwarzschild_area_radius(mass);
    return MetricProfile::conformal_perturbation(coefficients);
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config root must be an object");
    reject_unknown_keys(j,
                        {"metrics", "p", "r0", "t_grid", "solver", "checks",
                         "output_dir", "strict_fp", "jobs"},
                        "config root");
    RunConfig cfg;
    if (!j.contains("metrics") || !j["metrics"].is_array() ||
        j["metrics"].empty())
        throw ConfigError("config needs a non-empty \"metrics\" array");
    for (const auto& m : j["metrics"])
        cfg.metrics.push_back(MetricSpec::from_json(m));

    if (!j.contains("p"))
        throw ConfigError("config needs a \"p\" array of exponents");
    const auto& ps = j["p"];
    if (ps.is_number()) {
        cfg.exponents.push_back(ps.get<double>());
    } else if (ps.is_array() && !ps.empty()) {
        for (const auto& p : ps) {
            if (!p.is_number()) throw ConfigError("\"p\" entries must be numbers");
            cfg.exponents.push_back(p.get<double>());
        }
    } else {
        throw ConfigError("\"p\" must be a number or non-empty array");
    }
    for (double p : cfg.exponents)
        if (!(p > 1.0 && p < 3.0))
            throw ConfigError("exponent p must lie in (1, 3)");

    if (j.contains("r0")) {
        const double r0 = number_at(j, "r0", 0.0);
        if (!(r0 > 0.0)) throw ConfigError("r0 must be positive");
        cfg.r0 = r0;
    }
    if (j.contains("t_grid")) {
        const auto& t = j["t_grid"];
        reject_unknown_keys(t, {"max", "count"}, "t_grid");
        cfg.t_max = number_at(t, "max", cfg.t_max);
        cfg.t_count = int(number_at(t, "count", cfg.t_count));
        if (!(cfg.t_max > 0.0) || cfg.t_count < 2)
            throw ConfigError("t_grid needs max > 0 and count >= 2");
    }
    if (j.contains("solver")) {
        const auto& s = j["solver"];
        reject_unknown_keys(s, {"quad_tol", "points_per_decade",
                                "r_far_factor"},
                            "solver");
        cfg.solver.quad_tol = number_at(s, "quad_tol", cfg.solver.quad_tol);
        cfg.solver.points_per_decade =
            int(number_at(s, "points_per_decade",
                          cfg.solver.points_per_decade));
        cfg.solver.r_far_factor =
            number_at(s, "r_far_factor", cfg.solver.r_far_factor);
        if (!(cfg.solver.quad_tol > 0.0) ||
            cfg.solver.points_per_decade < 4 ||
            !(cfg.solver.r_far_factor >= 1e2))
            throw ConfigError("solver parameters out of range");
    }
    if (j.contains("checks")) {
        if (!j["checks"].is_array())
            throw ConfigError("\"checks\" must be an array of names");
        for (const auto& c : j["checks"])
            cfg.checks.push_back(c.get<std::string>());
    }
    if (j.contains("output_dir"))
        cfg.output_dir = j["output_dir"].get<std::string>();
    if (j.contains("strict_fp")) {
        if (!j["strict_fp"].is_boolean())
            throw ConfigError("strict_fp must be a boolean");
        cfg.strict_fp = j["strict_fp"].get<bool>();
    }
    if (j.contains("jobs")) {
        cfg.jobs = int(number_at(j, "jobs", 1));
        if (cfg.jobs < 1) throw ConfigError("jobs must be >= 1");
    }
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return from_json(j);
}

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_solution_csv(const std::filesystem::path& path,
                        const PotentialSolution& solution) {
    std::ofstream out(path, std::ios::binary);  // binary: LF on every platform
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << "r,u,du_dr,w,grad_w\n";
    for (const auto& n : solution.nodes())
        out << format_g17(n.r) << ',' << format_g17(n.u) << ','
            << format_g17(n.du) << ',' << format_g17(n.w) << ','
            << format_g17(n.grad_w) << '\n';
    if (!out) throw IoError("write failed for " + path.string());
}

namespace {
constexpr const char* kSeriesHeader =
    "t,r,area,volume,cap,H,grad_w,m_hawking,m_p_hawking,m_p_hawking_mod,"
    "m_iso_p,m_iso,rhs_geroch";
}

void write_mass_series_csv(const std::filesystem::path& path,
                           const flow::MassSeries& series) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << kSeriesHeader << '\n';
    for (const auto& r : series.records)
        out << format_g17(r.t) << ',' << format_g17(r.r) << ','
            << format_g17(r.area) << ',' << format_g17(r.volume) << ','
            << format_g17(r.cap_t) << ',' << format_g17(r.mean_curvature)
            << ',' << format_g17(r.grad_w) << ',' << format_g17(r.m_hawking)
            << ',' << format_g17(r.m_p_hawking) << ','
            << format_g17(r.m_p_hawking_mod) << ',' << format_g17(r.m_iso_p)
            << ',' << format_g17(r.m_iso) << ',' << format_g17(r.rhs_geroch)
            << '\n';
    if (!out) throw IoError("write failed for " + path.string());
}

flow::MassSeries read_mass_series_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) ||
        line != kSeriesHeader)
        throw IoError("bad mass-series header in " + path.string());
    flow::MassSeries series;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        double v[13];
        std::string cell;
        for (int i = 0; i < 13; ++i) {
            if (!std::getline(row, cell, ','))
                throw IoError("short row in " + path.string());
            v[i] = std::stod(cell);
        }
        flow::LevelSetRecord r;
        r.t = v[0];
        r.r = v[1];
        r.area = v[2];
        r.volume = v[3];
        r.cap_t = v[4];
        r.mean_curvature = v[5];
        r.grad_w = v[6];
        r.m_hawking = v[7];
        r.m_p_hawking = v[8];
        r.m_p_hawking_mod = v[9];
        r.m_iso_p = v[10];
        r.m_iso = v[11];
        r.rhs_geroch = v[12];
        series.records.push_back(r);
    }
    return series;
}

std::string scan_file_stem(const std::string& metric_name, double p) {
    std::ostringstream os;
    os << metric_name << "__p" << p;
    return os.str();
}

}  // namespace caplab
