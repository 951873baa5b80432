#include "doctest.h"

#include <cmath>

#include "caplab/potential.hpp"
#include "caplab/specfun.hpp"

using namespace caplab;

TEST_CASE("flat-space potential matches the closed form") {
    const auto g = MetricProfile::flat();
    for (double p : {1.2, 1.5, 2.0, 2.5}) {
        const double r0 = 1.5;
        const auto sol = solve_radial(g, p, r0);
        const double mu = (3.0 - p) / (p - 1.0);
        // [TRIVIAL] cap = r0^{3-p}
        CHECK(sol.capacity() ==
              doctest::Approx(std::pow(r0, 3.0 - p)).epsilon(1e-10));
        // [DERIVED] u = (r0/r)^{(3-p)/(p-1)} pointwise
        for (double r : {1.5, 2.0, 10.0, 300.0}) {
            const auto e = sol.evaluate(r);
            CHECK(e.u == doctest::Approx(std::pow(r0 / r, mu)).epsilon(1e-9));
            CHECK(e.w ==
                  doctest::Approx((3.0 - p) * std::log(r / r0)).epsilon(1e-8));
            CHECK(e.grad_w == doctest::Approx((3.0 - p) / r).epsilon(1e-9));
        }
    }
}

TEST_CASE("first integral is constant along the solution") {
    const auto g = MetricProfile::schwarzschild_area_radius(1.0);
    for (double p : {1.4, 2.0, 2.6}) {
        const auto sol = solve_radial(g, p, 3.0);
        const double K = sol.flux_constant();
        for (double r : {3.0, 4.0, 20.0, 500.0}) {
            const auto e = sol.evaluate(r);
            const double h = g.area_radius(r);
            const double flux = h * h *
                                std::pow(g.radial_factor(r), 1.0 - p) *
                                std::pow(std::abs(e.du), p - 1.0);
            CHECK(flux == doctest::Approx(K).epsilon(1e-9));
        }
    }
}

TEST_CASE("Schwarzschild capacity agrees with the hypergeometric oracle") {
    const auto g = MetricProfile::schwarzschild_area_radius(1.0);
    for (double p : {1.2, 1.5, 2.0, 2.5}) {
        for (double r0 : {2.0, 3.0, 10.0}) {
            const auto sol = solve_radial(g, p, r0);
            const double exact = specfun::schwarzschild_capacity(1.0, r0, p);
            CHECK(sol.capacity() == doctest::Approx(exact).epsilon(1e-9));
        }
    }
    // [KNOWN] horizon, p = 2: the electrostatic capacity equals m = 1
    CHECK(solve_radial(g, 2.0, 2.0).capacity() ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gradient of w stays finite at the horizon pole") {
    const auto g = MetricProfile::schwarzschild_area_radius(1.0);
    const auto sol = solve_radial(g, 2.0, 2.0);
    const auto e = sol.evaluate(2.0);
    CHECK(e.u == doctest::Approx(1.0).epsilon(1e-14));
    // [KNOWN] |grad w|(2m) = 1/(4m) for p = 2, m = 1
    CHECK(e.grad_w == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(std::isfinite(e.grad_w));
}

TEST_CASE("level radius inverts the level function") {
    const auto g = MetricProfile::schwarzschild_isotropic(1.0);
    const auto sol = solve_radial(g, 1.5, g.horizon_radius());
    CHECK(sol.t_max() > 8.0);
    for (double t : {0.0, 0.5, 2.0, 6.0}) {
        const double r = sol.level_radius(t);
        CHECK(sol.evaluate(r).w == doctest::Approx(t).epsilon(1e-10));
    }
    CHECK_THROWS(sol.level_radius(-1.0));
    CHECK_THROWS(sol.level_radius(sol.t_max() + 10.0));
}

TEST_CASE("capacity scales as e^t along the level flow") {
    // cap_p of the level set {w = t} is e^t cap_p of the base sphere;
    // re-solving from the level radius must reproduce the scaling
    const auto g = MetricProfile::schwarzschild_area_radius(1.0);
    const auto sol = solve_radial(g, 1.5, 2.0);
    for (double t : {1.0, 3.0}) {
        const double rt = sol.level_radius(t);
        const auto lifted = solve_radial(g, 1.5, rt);
        CHECK(lifted.capacity() ==
              doctest::Approx(std::exp(t) * sol.capacity()).epsilon(1e-8));
    }
}

TEST_CASE("solver rejects a base sphere inside the boundary") {
    const auto g = MetricProfile::schwarzschild_area_radius(1.0);
    CHECK_THROWS(solve_radial(g, 2.0, 1.0));
    CHECK_THROWS(solve_radial(g, 3.2, 3.0));  // exponent guard
}
