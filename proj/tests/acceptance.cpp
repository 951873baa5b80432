// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
// Each criterion exercises the library end to end at its stated tolerance;
// nothing here is allowed to consult the code paths it is checking for its
// own reference values.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "caplab/flow.hpp"
#include "caplab/metric.hpp"
#include "caplab/numerics.hpp"
#include "caplab/potential.hpp"
#include "caplab/specfun.hpp"
#include "caplab/variational.hpp"
#include "caplab/verify.hpp"

namespace fs = std::filesystem;
using namespace caplab;

namespace {

int g_failures = 0;

void report(int idx, bool ok, const std::string& what,
            const std::string& detail) {
    std::printf("%s  criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", idx,
                what.c_str(), detail.c_str());
    if (!ok) ++g_failures;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

const std::vector<double> kExponents{1.2, 1.5, 2.0, 2.5};

// -- 1: flat-space capacity, quadrature and variational routes ---------------
void criterion_1() {
    const auto g = MetricProfile::flat();
    double worst_quad = 0, worst_var = 0;
    for (double p : kExponents) {
        for (double R : {1.0, 2.5}) {
            const double exact = std::pow(R, 3.0 - p);
            const double quad = solve_radial(g, p, R).capacity();
            worst_quad = std::max(worst_quad, std::abs(quad / exact - 1.0));
            std::vector<double> ladder{10.0 * R, 100.0 * R, 1000.0 * R}, caps;
            for (double rm : ladder)
                caps.push_back(minimize_energy(g, p, R, rm, 800).capacity);
            const double var = extrapolate_capacity(ladder, caps, p).capacity;
            worst_var = std::max(worst_var, std::abs(var / exact - 1.0));
        }
    }
    report(1, worst_quad <= 1e-8 && worst_var <= 1e-3,
           "flat capacity R^{3-p}, quadrature 1e-8 / variational 1e-3",
           "quad " + fmt(worst_quad) + ", variational " + fmt(worst_var));
}

// -- 2: Schwarzschild capacity against the hypergeometric closed form --------
void criterion_2() {
    const auto g = MetricProfile::schwarzschild_area_radius(1.0);
    double worst = 0;
    for (double p : kExponents)
        for (double r0 : {2.0, 3.0, 10.0}) {
            const double exact = specfun::schwarzschild_capacity(1.0, r0, p);
            const double quad = solve_radial(g, p, r0).capacity();
            worst = std::max(worst, std::abs(quad / exact - 1.0));
        }
    const double horizon_err =
        std::abs(solve_radial(g, 2.0, 2.0).capacity() - 1.0);
    report(2, worst <= 1e-8 && horizon_err <= 1e-12,
           "Schwarzschild capacity vs 2F1 closed form, horizon via Gauss sum",
           "rel " + fmt(worst) + ", horizon " + fmt(horizon_err));
}

// -- 3: Hawking mass identity on Schwarzschild spheres -----------------------
void criterion_3() {
    double worst_schw = 0, worst_flat = 0;
    const auto area = MetricProfile::schwarzschild_area_radius(1.0);
    for (double r : {2.5, 4.0, 30.0, 1e3, 1e5}) {
        const double H = area.mean_curvature(r);
        const double A = area.area(r);
        worst_schw = std::max(
            worst_schw, std::abs(flow::hawking_mass(A, A * H * H) - 1.0));
    }
    const auto iso = MetricProfile::schwarzschild_isotropic(1.0);
    for (double s : {0.7, 2.0, 50.0, 1e4}) {
        const double H = iso.mean_curvature(s);
        const double A = iso.area(s);
        worst_schw = std::max(
            worst_schw, std::abs(flow::hawking_mass(A, A * H * H) - 1.0));
    }
    const auto flat = MetricProfile::flat();
    for (double r : {1.0, 10.0, 100.0}) {
        const double H = flat.mean_curvature(r);
        const double A = flat.area(r);
        worst_flat =
            std::max(worst_flat, std::abs(flow::hawking_mass(A, A * H * H)));
    }
    report(3, worst_schw <= 1e-10 && worst_flat <= 1e-12,
           "Hawking mass = m on Schwarzschild (both charts), 0 on flat",
           "schw " + fmt(worst_schw) + ", flat " + fmt(worst_flat));
}

// -- 4: monotonicity of the p-Hawking mass -----------------------------------
void criterion_4() {
    bool mono_ok = true;
    std::string why;
    const auto schw = MetricProfile::schwarzschild_area_radius(1.0);
    const auto pert = MetricProfile::conformal_perturbation({1.0, -0.05});
    for (const auto* metric : {&schw, &pert})
        for (double p : kExponents) {
            const auto sol =
                solve_radial(*metric, p, metric->horizon_radius());
            const auto rep =
                verify::check_monotonicity(sol, verify::Monotone::PHawking);
            if (rep.status != "pass") {
                mono_ok = false;
                why = metric->name() + " p=" + fmt(p);
            }
        }
    // endpoint bracket and far limit for Schwarzschild m = 1, p = 2
    const auto sol = solve_radial(schw, 2.0, 2.0);
    const double t_far = sol.evaluate(1e4).w;
    const auto series =
        flow::mass_series(sol, flow::uniform_t_grid(0.0, t_far, 257));
    double lo = 1e300, hi = -1e300;
    for (const auto& rec : series.records) {
        lo = std::min(lo, rec.m_p_hawking);
        hi = std::max(hi, rec.m_p_hawking);
    }
    const double limit_err = std::abs(series.records.back().m_p_hawking - 1.0);
    const bool bracket_ok = lo >= 0.625 - 1e-6 && hi <= 1.0 + 1e-6 &&
                            std::abs(series.records.front().m_p_hawking -
                                     0.625) <= 1e-6 &&
                            limit_err <= 1e-3;
    report(4, mono_ok && bracket_ok,
           "p-Hawking monotone; Schwarzschild p=2 endpoints [5/8,1]",
           mono_ok ? ("range [" + fmt(lo) + "," + fmt(hi) + "], far err " +
                      fmt(limit_err))
                   : ("monotonicity failed: " + why));
}

// -- 5: derivative identities along the flow ---------------------------------
void criterion_5() {
    const auto g = MetricProfile::schwarzschild_area_radius(1.0);
    bool ok = true;
    double worst = 0;
    for (double p : {1.5, 2.0, 2.5}) {
        const auto sol = solve_radial(g, p, 2.0);
        for (auto which :
             {verify::Derivative::Geroch, verify::Derivative::Cclt}) {
            const auto rep = verify::check_derivative(sol, which);
            ok = ok && rep.status == "pass";
            worst = std::max(
                worst,
                rep.diagnostics["max_relative_mismatch"].get<double>());
        }
    }
    report(5, ok, "d/dt of p-Hawking mass matches both closed-form RHS (1e-4)",
           "worst mismatch " + fmt(worst));
}

// -- 6: ordering against the modified mass -----------------------------------
void criterion_6() {
    const auto g = MetricProfile::schwarzschild_area_radius(1.0);
    bool ok = true;
    double gap = 0;
    for (double p : kExponents) {
        const auto sol = solve_radial(g, p, 2.0);
        const auto rep =
            verify::check_monotonicity(sol, verify::Monotone::Ordering);
        ok = ok && rep.status == "pass";
        if (rep.diagnostics.contains("gap_at_far"))
            gap = std::max(gap,
                           rep.diagnostics["gap_at_far"].get<double>());
    }
    report(6, ok, "p-Hawking <= modified variant, far gap <= 1e-3",
           "largest far gap " + fmt(gap));
}

// -- 7: capacitary Riemannian Penrose inequality -----------------------------
void criterion_7() {
    const auto g = MetricProfile::schwarzschild_area_radius(1.0);
    bool ok = true;
    double worst_deficit = 0;
    for (double p : kExponents) {
        for (auto which : {verify::Inequality::PenroseP,
                           verify::Inequality::CapacityPenroseGamma}) {
            const auto rep = verify::check_inequality(g, p, which);
            ok = ok && rep.status == "pass";
        }
        const double cap = solve_radial(g, p, 2.0).capacity();
        const double mismatch = std::abs(std::pow(cap, 1.0 / (3.0 - p)) / 2.0 -
                                         specfun::capacity_deficit_factor(p));
        worst_deficit = std::max(worst_deficit, mismatch);
        ok = ok && mismatch <= 1e-6;
    }
    const auto limit =
        verify::check_inequality(g, 1.5, verify::Inequality::PenroseLimit);
    ok = ok && limit.status == "pass";
    report(7, ok,
           "cap^{1/(3-p)} <= 2 m_ADM with the exact gamma deficit (1e-6), "
           "deficit -> 1 monotonically",
           "worst deficit mismatch " + fmt(worst_deficit));
}

// -- 8: asymptotic equivalence of the mass functionals -----------------------
void criterion_8() {
    bool ok = true;
    double worst = 0;
    const double adm_exact = 1.0;
    for (bool isotropic : {false, true}) {
        const auto g = isotropic
                           ? MetricProfile::schwarzschild_isotropic(1.0)
                           : MetricProfile::schwarzschild_area_radius(1.0);
        const double adm = g.adm_mass();
        worst = std::max(worst, std::abs(adm - adm_exact));
        for (double p : {1.5, 2.0}) {
            const auto sol = solve_radial(g, p, g.horizon_radius());
            const double t_far =
                sol.evaluate(sol.level_radius(sol.t_max() * 0.99)).w;
            const auto series = flow::mass_series(
                sol, flow::uniform_t_grid(0.0, t_far, 201));
            worst = std::max(worst, std::abs(series.iso_p.value - adm_exact));
            worst = std::max(worst, std::abs(series.iso.value - adm_exact));
            // alpha-normalized variants extrapolated over the last records
            for (double alpha : {1.0 / 3.0, (3.0 - p) / 3.0, 1.0}) {
                std::vector<double> q, ya, yb;
                const auto& rec = series.records;
                for (std::size_t i = rec.size() - 4; i < rec.size(); ++i) {
                    q.push_back(std::exp(-rec[i].t / (3.0 - p)));
                    ya.push_back(flow::alpha_iso_p(rec[i].volume,
                                                   rec[i].cap_t, p, alpha));
                    yb.push_back(
                        flow::alpha_iso(rec[i].volume, rec[i].area, alpha));
                }
                worst = std::max(worst,
                                 std::abs(num::extrapolate_to_zero(q, ya)
                                              .value - adm_exact));
                worst = std::max(worst,
                                 std::abs(num::extrapolate_to_zero(q, yb)
                                              .value - adm_exact));
            }
        }
    }
    ok = worst <= 1e-3;
    report(8, ok,
           "iso_p, iso, alpha variants and ADM mass agree (1e-3, both charts)",
           "worst deviation " + fmt(worst));
}

// -- 9: level-set asymptotics of the potential flow --------------------------
void criterion_9() {
    const auto g = MetricProfile::schwarzschild_area_radius(1.0);
    bool ok = true;
    std::string failed;
    const auto sol = solve_radial(g, 1.5, 2.0);
    for (auto which :
         {verify::Asymptotic::Area, verify::Asymptotic::CrossCapacity,
          verify::Asymptotic::EnergyDagger}) {
        const auto rep = verify::check_asymptotics(sol, which);
        if (rep.status != "pass") {
            ok = false;
            failed += rep.check + " ";
        }
    }
    const auto sol2 = solve_radial(g, 2.0, 2.0);
    for (auto which :
         {verify::Asymptotic::Area, verify::Asymptotic::EnergyDagger}) {
        const auto rep = verify::check_asymptotics(sol2, which);
        if (rep.status != "pass") {
            ok = false;
            failed += rep.check + " ";
        }
    }
    report(9, ok,
           "normalized area, cross-capacity and energy identity within 1%",
           ok ? "all asymptotic ratios within 1%" : ("failed: " + failed));
}

// -- 10: Fan-Shi-Tam style ADM recovery --------------------------------------
void criterion_10() {
    const auto g = MetricProfile::schwarzschild_isotropic(1.0);
    const auto sol = solve_radial(g, 2.0, g.horizon_radius());
    const auto rep =
        verify::check_asymptotics(sol, verify::Asymptotic::FanShiTam);
    report(10, rep.status == "pass",
           "large-sphere mass fit recovers the ADM mass (1e-3)",
           "margin " + fmt(rep.margin));
}

// -- 11: sharp isocapacitary deficit ratio -----------------------------------
void criterion_11() {
    const auto g = MetricProfile::schwarzschild_area_radius(1.0);
    bool ok = true;
    double worst_margin = 1e300;
    for (double p : {1.5, 2.0}) {
        const auto rep =
            verify::check_inequality(g, p, verify::Inequality::SharpIsocap);
        ok = ok && rep.status == "pass";
        worst_margin = std::min(worst_margin, rep.margin);
    }
    report(11, ok, "sharp isocapacitary deficit ratio -> 1 within 5%",
           "worst margin " + fmt(worst_margin));
}

// -- 12: CLI default suite and strict-fp reproducibility ---------------------
int run_cli(const std::string& args) {
    const std::string cmd = std::string(CAPLAB_CLI_PATH) + " " + args +
                            " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

bool same_bytes(const fs::path& a, const fs::path& b) {
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    if (!fa || !fb) return false;
    std::ostringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    return sa.str() == sb.str() && !sa.str().empty();
}

void criterion_12() {
    const fs::path dir = fs::temp_directory_path() / "caplab_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path cfg = dir / "config.json";
    {
        std::ofstream out(cfg);
        out << "{\n"
               "  \"metrics\": [{\"type\": \"flat\"},\n"
               "               {\"type\": \"schwarzschild\"}],\n"
               "  \"p\": [1.5],\n"
               "  \"t_grid\": {\"max\": 3.0, \"count\": 41}\n"
               "}\n";
    }
    const std::string base = "--config " + cfg.string();
    bool ok = true;
    std::string detail;

    if (run_cli("verify " + base + " --out " + (dir / "v0").string()) != 0) {
        ok = false;
        detail = "default verify suite returned nonzero";
    }
    for (const char* tag : {"v1", "v2"})
        if (ok && run_cli("verify " + base + " --strict-fp --out " +
                          (dir / tag).string()) != 0) {
            ok = false;
            detail = "strict-fp verify returned nonzero";
        }
    if (ok && !same_bytes(dir / "v1" / "reports.json",
                          dir / "v2" / "reports.json")) {
        ok = false;
        detail = "reports.json not byte-identical under --strict-fp";
    }
    for (const char* tag : {"s1", "s2"})
        if (ok && run_cli("scan " + base + " --strict-fp --out " +
                          (dir / tag).string()) != 0) {
            ok = false;
            detail = "strict-fp scan returned nonzero";
        }
    if (ok) {
        for (const char* name :
             {"flat__p1.5.csv", "schwarzschild_area_m1__p1.5.csv"})
            if (!same_bytes(dir / "s1" / name, dir / "s2" / name)) {
                ok = false;
                detail = std::string(name) +
                         " not byte-identical under --strict-fp";
            }
    }
    if (ok) detail = "exit 0; verify + scan outputs byte-identical";
    report(12, ok, "CLI default suite passes; strict-fp runs reproduce bytes",
           detail);
    fs::remove_all(dir);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    if (g_failures == 0) {
        std::printf("acceptance: all 12 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
    return 1;
}
