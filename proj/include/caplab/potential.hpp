#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "caplab/metric.hpp"

namespace caplab {

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolveOptions {
    double quad_tol = 1e-10;
    int points_per_decade = 64;
    double r_far_factor = 1e6;  // far radius relative to r0
};

/// Radial p-capacitary potential of {radius <= r0}: u is p-harmonic with
/// u(r0) = 1, u -> 0 at infinity. The first integral
///   h^2 F^{1-p} |u'|^{p-2} u' = -K
/// reduces the solve to the improper integral I(x) = int_x^inf F h^{-2/(p-1)}
/// with u = I/I(r0) and K = I(r0)^{-(p-1)}.
class PotentialSolution {
public:
    struct Node {
        double r, u, du, w, grad_w;
    };
    struct Eval {
        double u, du, w, grad_w;
    };

    double exponent() const { return p_; }
    double base_radius() const { return r0_; }
    double far_radius() const { return x_.back(); }
    double flux_constant() const { return flux_; }
    /// cap_p(partial Omega) = ((p-1)/(3-p))^{p-1} K.
    double capacity() const { return capacity_; }
    const MetricProfile& metric() const { return metric_; }
    std::span<const Node> nodes() const { return nodes_; }

    /// Largest level value covered by the table.
    double t_max() const;

    /// u, u', w and |grad w| at radius r in [r0, R_far]. |grad w| stays
    /// finite at a horizon boundary even though u' does not.
    Eval evaluate(double r) const;

    /// Unique r with w(r) = t, 0 <= t <= t_max().
    double level_radius(double t) const;

private:
    friend PotentialSolution solve_radial(const MetricProfile&, double, double,
                                          const SolveOptions&);
    PotentialSolution(MetricProfile metric, double p, double r0,
                      SolveOptions opt);

    double integrand(double r) const;  // F h^{-2/(p-1)}
    double outer_integral(double r, std::size_t segment) const;  // I(r)

    MetricProfile metric_;
    double p_ = 0, r0_ = 0, c_ = 0;  // c = 2/(p-1)
    double flux_ = 0, capacity_ = 0, base_integral_ = 0;
    bool pole_at_base_ = false;
    SolveOptions opt_;
    std::vector<double> x_, outer_;  // grid and I(x_i)
    std::vector<Node> nodes_;
};

PotentialSolution solve_radial(const MetricProfile& metric, double p, double r0,
                               const SolveOptions& opt = {});

}  // namespace caplab
