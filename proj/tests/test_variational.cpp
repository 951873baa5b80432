#include "doctest.h"

#include <cmath>
#include <vector>

#include "caplab/potential.hpp"
#include "caplab/specfun.hpp"
#include "caplab/variational.hpp"

using namespace caplab;

TEST_CASE("flat p = 2 condenser has the classical normalized value") {
    const auto g = MetricProfile::flat();
    const auto cond = minimize_energy(g, 2.0, 1.0, 2.0, 1024);
    // [DERIVED] cap of the (1,2) Euclidean condenser: (1 - 1/2)^{-1} = 2
    CHECK(cond.capacity == doctest::Approx(2.0).epsilon(1e-6));
    CHECK_FALSE(cond.used_flux_fallback);
    CHECK(cond.v.front() == 1.0);
    CHECK(cond.v.back() == 0.0);
}

TEST_CASE("discrete minimizer matches the closed-form condenser profile") {
    const auto g = MetricProfile::flat();
    for (double p : {1.5, 2.0}) {
        const double mu = -(3.0 - p) / (p - 1.0);
        const auto cond = minimize_energy(g, p, 1.0, 2.0, 4096);
        const double psiN = std::pow(2.0, mu);
        double worst = 0.0;
        for (std::size_t i = 0; i < cond.x.size(); ++i) {
            const double exact =
                (std::pow(cond.x[i], mu) - psiN) / (1.0 - psiN);
            worst = std::max(worst, std::abs(cond.v[i] - exact));
        }
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("energy of a restricted competitor bounds the minimum") {
    const auto g = MetricProfile::schwarzschild_area_radius(1.0);
    const double p = 1.8, r0 = 3.0, R = 50.0;
    const auto cond = minimize_energy(g, p, r0, R, 400);
    // restrict the quadrature solution to the condenser grid; by the
    // variational principle its (renormalized) energy cannot beat the minimum
    const auto sol = solve_radial(g, p, r0);
    const double uR = sol.evaluate(R).u;
    std::vector<double> v(cond.x.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = (sol.evaluate(cond.x[i]).u - uR) / (1.0 - uR);
    v.front() = 1.0;
    v.back() = 0.0;
    const double e_restricted = condenser_energy(g, p, cond.x, v);
    CHECK(e_restricted >= cond.energy * (1.0 - 1e-12));
    CHECK(e_restricted <= cond.energy * (1.0 + 1e-3));
}

TEST_CASE("extrapolation is exact on the Euclidean condenser law") {
    // [DERIVED] cond(R) = cap (1 - (R/r0)^mu)^{1-p} with cap = 1, r0 = 1
    for (double p : {1.3, 2.0, 2.5}) {
        const double mu = -(3.0 - p) / (p - 1.0);
        std::vector<double> R{10.0, 100.0, 1000.0}, c;
        for (double r : R)
            c.push_back(std::pow(1.0 - std::pow(r, mu), 1.0 - p));
        const auto fit = extrapolate_capacity(R, c, p);
        CHECK(fit.capacity == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(fit.residual < 1e-9);
    }
}

TEST_CASE("variational ladder reproduces the Schwarzschild oracle") {
    const auto g = MetricProfile::schwarzschild_area_radius(1.0);
    const double p = 1.5, r0 = 3.0;
    std::vector<double> R{100.0, 300.0, 1000.0}, c;
    for (double r : R) c.push_back(minimize_energy(g, p, r0, r, 1200).capacity);
    const auto fit = extrapolate_capacity(R, c, p);
    const double exact = specfun::schwarzschild_capacity(1.0, r0, p);
    CHECK(fit.capacity == doctest::Approx(exact).epsilon(1e-4));
}

TEST_CASE("argument validation") {
    const auto g = MetricProfile::flat();
    CHECK_THROWS(minimize_energy(g, 2.0, 1.0, 2.0, 8));  // too few cells
    std::vector<double> R{10.0, 100.0}, c{1.0, 1.0};
    CHECK_THROWS(extrapolate_capacity(R, c, 2.0));  // < 3 ladder points
    std::vector<double> R3{10.0, 100.0, 1000.0}, bad{1.0, -1.0, 1.0};
    CHECK_THROWS(extrapolate_capacity(R3, bad, 2.0));
}
