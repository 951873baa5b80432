#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "caplab/flow.hpp"
#include "caplab/metric.hpp"
#include "caplab/potential.hpp"

namespace caplab {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Declarative metric description from the config file.
struct MetricSpec {
    std::string type;            // flat | schwarzschild | conformal_perturbation
    std::string chart = "area";  // schwarzschild only: area | isotropic
    double mass = 1.0;
    std::vector<double> coefficients;  // conformal_perturbation only

    MetricProfile build() const;
    static MetricSpec from_json(const nlohmann::json& j);
};

struct RunConfig {
    std::vector<MetricSpec> metrics;
    std::vector<double> exponents;
    std::optional<double> r0;  // default: horizon / unit sphere per metric
    double t_max = 5.0;
    int t_count = 101;
    SolveOptions solver;
    std::vector<std::string> checks;  // empty = run everything
    std::string output_dir = ".";
    bool strict_fp = false;
    int jobs = 1;

    static RunConfig from_json(const nlohmann::json& j);
    static RunConfig from_file(const std::string& path);
};

/// 17 significant digits, '.' decimal -- round-trips every double.
std::string format_g17(double x);

void write_solution_csv(const std::filesystem::path& path,
                        const PotentialSolution& solution);
void write_mass_series_csv(const std::filesystem::path& path,
                           const flow::MassSeries& series);
flow::MassSeries read_mass_series_csv(const std::filesystem::path& path);

/// Deterministic scan file stem, e.g. "schwarzschild_area_m1__p2.5".
std::string scan_file_stem(const std::string& metric_name, double p);

}  // namespace caplab
