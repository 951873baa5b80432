#pragma once

#include <stdexcept>

namespace caplab::specfun {

struct ParameterError : std::domain_error {
    using std::domain_error::domain_error;
};

/// The p-exponent range the solvers operate in; b = (3-p)/(p-1) and
/// c = 2/(p-1) blow up toward p = 1, so limits toward the endpoints are
/// probed by ladders instead of direct evaluation.
inline constexpr double kMinExponent = 1.05;
inline constexpr double kMaxExponent = 2.95;

void require_exponent(double p);

/// ln Gamma(x) for x > 0, Lanczos approximation, relative error <= 1e-13.
double ln_gamma(double x);

/// Gauss hypergeometric 2F1(1/2, (3-p)/(p-1), 2/(p-1); z) on z in [0, 1].
/// Power series for z <= 1/2, Euler transformation on (1/2, 3/4], the
/// z = 1 connection formula beyond, Gauss summation at z = 1.
double gauss_2f1(double p, double z);

/// Gauss summation value 2F1(1/2, b, c; 1) = sqrt(pi) Gamma(c)/Gamma(c-1/2)
/// for the same parameter family.
double gauss_2f1_at_one(double p);

/// Closed-form p-capacity of the sphere of area radius r0 in the
/// Schwarzschild metric of mass m:
///   cap_p = r0^{3-p} 2F1(1/2, (3-p)/(p-1), 2/(p-1); 2m/r0)^{-(p-1)}.
double schwarzschild_capacity(double m, double r0, double p);

/// Ratio of the horizon p-capacity root to 2m; the deficit factor
/// (sqrt(pi) Gamma(2/(p-1)) / Gamma(2/(p-1) - 1/2))^{-(p-1)/(3-p)}.
double capacity_deficit_factor(double p);

}  // namespace caplab::specfun
