#pragma once

#include <span>
#include <vector>

#include "caplab/metric.hpp"

namespace caplab {

/// Discretized condenser for the p-Dirichlet energy between the spheres at
/// r0 (value 1) and R_max (value 0). Cell energies are
/// weight_i * |dv_i / dx_i|^p with weight_i = 4 pi int_cell F^{1-p} h^2 dx,
/// so the radial gradient |v'|/F is folded into the weight.
struct DiscreteCondenser {
    double p = 0;
    std::vector<double> x;            // node radii, r0 .. R_max
    std::vector<double> v;            // node values, v[0] = 1, v[N] = 0
    std::vector<double> cell_weight;  // per-cell energy weights
    double energy = 0;                // sum of cell energies
    double capacity = 0;              // (1/4pi)((p-1)/(3-p))^{p-1} * energy
    int newton_iterations = 0;
    bool used_flux_fallback = false;
};

/// Minimizes the discrete condenser energy (strictly convex) by damped
/// Newton with line search; falls back to bisection on the flux constant,
/// which parametrizes all one-dimensional minimizers.
DiscreteCondenser minimize_energy(const MetricProfile& metric, double p,
                                  double r0, double r_max, int n_cells);

/// Condenser energy of an externally supplied monotone profile v on the
/// same grid (used to check the quadrature solution is an upper bound).
double condenser_energy(const MetricProfile& metric, double p,
                        std::span<const double> x, std::span<const double> v);

struct CapacityFit {
    double capacity = 0;
    double residual = 0;  // rms misfit of the R^{-(3-p)/(p-1)} correction law
};

/// Fits condenser(R)^{-1/(p-1)} = cap^{-1/(p-1)} + c R^{-(3-p)/(p-1)}
/// (the exact Euclidean condenser law) over a geometric R_max ladder.
CapacityFit extrapolate_capacity(std::span<const double> r_max,
                                 std::span<const double> condenser_capacity,
                                 double p);

}  // namespace caplab
