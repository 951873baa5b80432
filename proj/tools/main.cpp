#include <atomic>
#include <cfenv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "caplab/flow.hpp"
#include "caplab/metric.hpp"
#include "caplab/potential.hpp"
#include "caplab/runconfig.hpp"
#include "caplab/verify.hpp"

namespace {

namespace fs = std::filesystem;
using namespace caplab;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitSolverError = 3;
constexpr int kExitIoError = 4;

struct CliState {
    std::string config_path;
    std::string out_dir = ".";
    int jobs = 0;       // 0: take from config
    long seed = 0;      // reserved
    bool strict_fp = false;
};

RunConfig load_config(const CliState& cli) {
    if (cli.config_path.empty())
        throw ConfigError("--config PATH is required");
    RunConfig cfg = RunConfig::from_file(cli.config_path);
    if (!cli.out_dir.empty()) cfg.output_dir = cli.out_dir;
    if (cli.jobs > 0) cfg.jobs = cli.jobs;
    cfg.strict_fp = cfg.strict_fp || cli.strict_fp;
    if (cfg.strict_fp) std::fesetround(FE_TONEAREST);
    return cfg;
}

fs::path ensure_out_dir(const RunConfig& cfg) {
    fs::path dir(cfg.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string());
    return dir;
}

double base_radius_for(const RunConfig& cfg, const MetricProfile& metric) {
    if (cfg.r0) return *cfg.r0;
    if (auto h = metric.try_horizon_radius()) return *h;
    return std::max(1.0, 2.0 * metric.inner_radius());
}

int cmd_solve(const CliState& cli) {
    const RunConfig cfg = load_config(cli);
    const fs::path dir = ensure_out_dir(cfg);
    nlohmann::json summary = nlohmann::json::array();
    for (const auto& spec : cfg.metrics) {
        const MetricProfile metric = spec.build();
        for (double p : cfg.exponents) {
            const double r0 = base_radius_for(cfg, metric);
            const auto sol = solve_radial(metric, p, r0, cfg.solver);
            const std::string stem = scan_file_stem(metric.name(), p);
            write_solution_csv(dir / (stem + "__solution.csv"), sol);
            summary.push_back({{"metric", metric.name()},
                               {"p", p},
                               {"r0", r0},
                               {"capacity", sol.capacity()},
                               {"flux_constant", sol.flux_constant()},
                               {"t_max", sol.t_max()}});
        }
    }
    std::ofstream out(dir / "summary.json", std::ios::binary);
    if (!out) throw IoError("cannot write summary.json");
    out << summary.dump(2) << '\n';
    return kExitOk;
}

int cmd_scan(const CliState& cli) {
    const RunConfig cfg = load_config(cli);
    const fs::path dir = ensure_out_dir(cfg);

    struct Job {
        MetricSpec spec;
        double p;
        fs::path path;
    };
    std::vector<Job> jobs_list;
    std::set<std::string> stems;
    for (const auto& spec : cfg.metrics)
        for (double p : cfg.exponents) {
            const std::string stem =
                scan_file_stem(spec.build().name(), p);
            if (!stems.insert(stem).second)
                throw IoError("duplicate output path " + stem + ".csv");
            jobs_list.push_back({spec, p, dir / (stem + ".csv")});
        }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> solver_failed{false};
    std::atomic<bool> io_failed{false};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs_list.size(); i = next++) {
            const Job& job = jobs_list[i];
            try {
                const MetricProfile metric = job.spec.build();
                const double r0 = base_radius_for(cfg, metric);
                const auto sol = solve_radial(metric, job.p, r0, cfg.solver);
                const double t_hi = std::min(cfg.t_max, 0.99 * sol.t_max());
                const auto series = flow::mass_series(
                    sol, flow::uniform_t_grid(0.0, t_hi, cfg.t_count));
                write_mass_series_csv(job.path, series);
            } catch (const IoError& e) {
                std::fprintf(stderr, "scan: %s\n", e.what());
                io_failed = true;
            } catch (const std::exception& e) {
                std::fprintf(stderr, "scan: %s\n", e.what());
                solver_failed = true;
            }
        }
    };
    const int n_workers =
        std::max(1, std::min<int>(cfg.jobs, int(jobs_list.size())));
    std::vector<std::thread> pool;
    for (int i = 1; i < n_workers; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (io_failed) return kExitIoError;
    if (solver_failed) return kExitSolverError;
    return kExitOk;
}

int cmd_verify(const CliState& cli) {
    const RunConfig cfg = load_config(cli);
    const fs::path dir = ensure_out_dir(cfg);

    std::vector<verify::InequalityReport> reports = verify::default_suite();
    if (!cfg.checks.empty()) {
        std::set<std::string> wanted(cfg.checks.begin(), cfg.checks.end());
        std::erase_if(reports, [&](const auto& r) {
            return !wanted.count(r.check);
        });
        if (reports.empty())
            throw ConfigError("no check matches the \"checks\" selection");
    }

    std::ofstream out(dir / "reports.json", std::ios::binary);
    if (!out) throw IoError("cannot write reports.json");
    out << verify::reports_to_json(reports).dump(2) << '\n';

    bool any_fail = false;
    for (const auto& r : reports) {
        const auto& s = r.samples.front();
        std::printf("%-7s %-32s %-26s p=%-4g margin=% .3e\n",
                    r.status.c_str(), r.check.c_str(), s.metric.c_str(), s.p,
                    r.margin);
        any_fail = any_fail || r.failed();
    }
    return any_fail ? kExitCheckFailure : kExitOk;
}

int cmd_report(const CliState& cli) {
    const fs::path path = fs::path(cli.out_dir) / "reports.json";
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    nlohmann::json reports;
    try {
        in >> reports;
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError(std::string("bad reports.json: ") + e.what());
    }
    int pass = 0, fail = 0, skip = 0;
    for (const auto& r : reports) {
        const std::string status = r.at("status").get<std::string>();
        if (status == "pass") ++pass;
        else if (status == "fail") ++fail;
        else ++skip;
        std::printf("%-7s %-32s margin=% .3e tol=%g\n", status.c_str(),
                    r.at("check").get<std::string>().c_str(),
                    r.at("margin").get<double>(),
                    r.at("tolerance").get<double>());
    }
    std::printf("total: %d pass, %d fail, %d skipped\n", pass, fail, skip);
    return fail > 0 ? kExitCheckFailure : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-capacity verification laboratory"};
    app.require_subcommand(1);

    CliState cli;
    app.add_option("--config", cli.config_path, "JSON run configuration");
    app.add_option("--out", cli.out_dir, "output directory");
    app.add_option("--jobs", cli.jobs, "worker pool size for scans");
    app.add_option("--seed", cli.seed, "reserved; accepted for forward "
                                       "compatibility");
    app.add_flag("--strict-fp", cli.strict_fp,
                 "pin the floating-point environment for bit-stable output");

    auto* solve = app.add_subcommand("solve", "potential solve + capacity");
    auto* scan = app.add_subcommand("scan", "mass series per (metric, p)");
    auto* verify_cmd = app.add_subcommand("verify", "run verification checks");
    auto* report = app.add_subcommand("report", "summarize reports.json");
    for (auto* sub : {solve, scan, verify_cmd, report}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(cli);
        if (scan->parsed()) return cmd_scan(cli);
        if (verify_cmd->parsed()) return cmd_verify(cli);
        return cmd_report(cli);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfigError;
    } catch (const IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return kExitIoError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return kExitSolverError;
    }
}
