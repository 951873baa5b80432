#include "doctest.h"

#include <cmath>

#include "caplab/potential.hpp"
#include "caplab/verify.hpp"

using namespace caplab;

TEST_CASE("monotonicity checks pass on Schwarzschild") {
    const auto g = MetricProfile::schwarzschild_area_radius(1.0);
    const auto sol = solve_radial(g, 2.0, 2.0);
    for (auto which : {verify::Monotone::PHawking,
                       verify::Monotone::PHawkingModified,
                       verify::Monotone::Ordering}) {
        const auto rep = verify::check_monotonicity(sol, which);
        CHECK(rep.status == "pass");
        CHECK(rep.margin >= -rep.tolerance);
        CHECK_FALSE(rep.paper_ref.empty());
        CHECK(rep.samples.size() == 1);
        CHECK(rep.samples[0].p == 2.0);
    }
}

TEST_CASE("curvature-dependent checks are skipped when validation fails") {
    // R < 0 somewhere: the monotonicity statement carries no content here
    const auto bad = MetricProfile::conformal_perturbation({1.0, 0.1});
    const auto sol = solve_radial(bad, 2.0, bad.horizon_radius());
    const auto rep = verify::check_monotonicity(sol, verify::Monotone::PHawking);
    CHECK(rep.status == "skipped");
}

TEST_CASE("derivative identities hold along the flow") {
    const auto g = MetricProfile::schwarzschild_area_radius(1.0);
    const auto sol = solve_radial(g, 1.5, 2.0);
    for (auto which : {verify::Derivative::Geroch, verify::Derivative::Cclt}) {
        const auto rep = verify::check_derivative(sol, which);
        CHECK(rep.status == "pass");
    }
}

TEST_CASE("global inequality checks on Schwarzschild") {
    const auto g = MetricProfile::schwarzschild_area_radius(1.0);
    for (auto which : {verify::Inequality::PenroseP,
                       verify::Inequality::CapacityPenroseGamma,
                       verify::Inequality::BrayMiao,
                       verify::Inequality::SharpIsocap}) {
        const auto rep = verify::check_inequality(g, 1.5, which);
        CHECK(rep.status == "pass");
    }
    // the gamma-deficit equality is tight on Schwarzschild
    const auto gamma =
        verify::check_inequality(g, 2.0, verify::Inequality::CapacityPenroseGamma);
    CHECK(std::abs(gamma.margin) <= 1e-6);
}

TEST_CASE("Sobolev-constant comparison runs on flat space only") {
    const auto flat = MetricProfile::flat();
    const auto rep = verify::check_inequality(
        flat, 2.0, verify::Inequality::HawkingVsPHawking);
    CHECK(rep.status == "pass");
    const auto curved = MetricProfile::schwarzschild_area_radius(1.0);
    const auto skipped = verify::check_inequality(
        curved, 2.0, verify::Inequality::HawkingVsPHawking);
    CHECK(skipped.status == "skipped");
}

TEST_CASE("asymptotic expansions on Schwarzschild") {
    const auto g = MetricProfile::schwarzschild_area_radius(1.0);
    const auto sol = solve_radial(g, 1.5, 2.0);
    for (auto which : {verify::Asymptotic::PotentialLog,
                       verify::Asymptotic::Gradient,
                       verify::Asymptotic::Area,
                       verify::Asymptotic::EnergyDagger,
                       verify::Asymptotic::GradientDecay,
                       verify::Asymptotic::TwoSided,
                       verify::Asymptotic::Comparison}) {
        const auto rep = verify::check_asymptotics(sol, which);
        CHECK(rep.status == "pass");
    }
    const auto iso = MetricProfile::schwarzschild_isotropic(1.0);
    const auto sol_iso = solve_radial(iso, 2.0, iso.horizon_radius());
    CHECK(verify::check_asymptotics(sol_iso, verify::Asymptotic::FanShiTam)
              .status == "pass");
}

TEST_CASE("oracle consistency ties the three capacity routes together") {
    const auto rep =
        verify::check_oracle_consistency(MetricProfile::flat(), 1.5, 2.0);
    CHECK(rep.status == "pass");
    CHECK(rep.diagnostics.contains("quadrature"));
    const double cap = rep.diagnostics["quadrature"].get<double>();
    CHECK(cap == doctest::Approx(std::pow(2.0, 1.5)).epsilon(1e-9));
}

TEST_CASE("report serialization carries the full record") {
    const auto g = MetricProfile::flat();
    const auto sol = solve_radial(g, 2.0, 1.0);
    const auto rep = verify::check_monotonicity(sol, verify::Monotone::PHawking);
    const auto j = rep.to_json();
    for (const char* key :
         {"check", "paper_ref", "status", "margin", "tolerance", "samples",
          "diagnostics"})
        CHECK(j.contains(key));
    const auto arr = verify::reports_to_json({rep, rep});
    CHECK(arr.is_array());
    CHECK(arr.size() == 2);
}
