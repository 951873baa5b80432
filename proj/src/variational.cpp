#include "caplab/variational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "caplab/numerics.hpp"
#include "caplab/potential.hpp"
#include "caplab/specfun.hpp"

namespace caplab {

namespace {

std::vector<double> condenser_grid(const MetricProfile& metric, double r0,
                                   double r_max, int n_cells) {
    std::vector<double> x(n_cells + 1);
    if (metric.sqrt_pole_at(r0)) {
        // the minimizer behaves like 1 - C sqrt(r - r0) at a horizon pole;
        // grade the mesh quadratically there so piecewise-linear elements
        // keep their full order
        const double xi_min = 1e-3 * std::sqrt(std::max(r0, 1.0));
        const double xi_max = std::sqrt(r_max - r0);
        const double ratio = std::pow(xi_max / xi_min, 1.0 / (n_cells - 1));
        x[0] = r0;
        for (int i = 1; i <= n_cells; ++i) {
            const double xi = xi_min * std::pow(ratio, i - 1);
            x[i] = r0 + xi * xi;
        }
    } else {
        const double ratio = std::pow(r_max / r0, 1.0 / n_cells);
        for (int i = 0; i <= n_cells; ++i) x[i] = r0 * std::pow(ratio, i);
        x.front() = r0;
    }
    x.back() = r_max;
    return x;
}

std::vector<double> cell_weights(const MetricProfile& metric, double p,
                                 std::span<const double> x) {
    auto integrand = [&](double r) {
        const double h = metric.area_radius(r);
        return 4.0 * M_PI * std::pow(metric.radial_factor(r), 1.0 - p) * h * h;
    };
    const bool pole = metric.sqrt_pole_at(x[0]);
    std::vector<double> w(x.size() - 1);
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        if (i == 0 && pole) {
            // F^{1-p} vanishes like xi^{p-1} at the horizon pole but with a
            // singular derivative; substitute r = x0 + xi^2 and give the
            // quadrature a small absolute floor against the evaluation
            // noise of F right at the pole
            auto reg = [&](double xi) {
                return integrand(x[0] + xi * xi) * 2.0 * xi;
            };
            const double xi1 = std::sqrt(x[1] - x[0]);
            const double probe = std::abs(num::gk15(reg, 0.0, xi1).value);
            w[i] = num::integrate(reg, 0.0, xi1, 1e-12,
                                  1e-14 * (1.0 + probe));
        } else if (pole) {
            // f is evaluated with ~eps * r0 / (r - r0) relative noise near
            // the pole; an absolute floor keeps the quadrature from chasing
            // that noise below any attainable accuracy
            const double probe =
                std::abs(num::gk15(integrand, x[i], x[i + 1]).value);
            w[i] = num::integrate(integrand, x[i], x[i + 1], 1e-10,
                                  1e-14 * (1.0 + probe));
        } else {
            w[i] = num::integrate(integrand, x[i], x[i + 1], 1e-12);
        }
    }
    return w;
}

double total_energy(std::span<const double> a, std::span<const double> v,
                    double p) {
    double e = 0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        e += a[i] * std::pow(std::abs(v[i] - v[i + 1]), p);
    return e;
}

// All 1-D minimizers are parametrized by the flux constant lambda through
// p a_i d_i^{p-1} = lambda; the normalization sum d_i = 1 then fixes the
// drops in closed form (evaluated in logs to avoid underflow).
void flux_minimizer(std::span<const double> a, double p,
                    std::span<double> v) {
    const std::size_t n = a.size();
    std::vector<double> logd(n);
    double mx = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        logd[i] = -std::log(p * a[i]) / (p - 1.0);
        mx = std::max(mx, logd[i]);
    }
    double sum = 0;
    for (std::size_t i = 0; i < n; ++i) sum += std::exp(logd[i] - mx);
    const double lse = mx + std::log(sum);
    v[0] = 1.0;
    for (std::size_t i = 0; i < n; ++i)
        v[i + 1] = v[i] - std::exp(logd[i] - lse);
    v[n] = 0.0;
}

}  // namespace

DiscreteCondenser minimize_energy(const MetricProfile& metric, double p,
                                  double r0, double r_max, int n_cells) {
    specfun::require_exponent(p);
    if (n_cells < 16) throw std::invalid_argument("minimize_energy: N < 16");
    DiscreteCondenser cond;
    cond.p = p;
    cond.x = condenser_grid(metric, r0, r_max, n_cells);
    cond.cell_weight = cell_weights(metric, p, cond.x);

    const std::size_t n = std::size_t(n_cells);
    std::vector<double> a(n);
    for (std::size_t i = 0; i < n; ++i)
        a[i] = cond.cell_weight[i] /
               std::pow(cond.x[i + 1] - cond.x[i], p);

    // initial guess: linear in the Euclidean capacity coordinate
    const double mu = -(3.0 - p) / (p - 1.0);
    auto psi = [&](double x) { return std::pow(x, mu); };
    const double psi0 = psi(r0), psiN = psi(r_max);
    std::vector<double>& v = cond.v;
    v.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        v[i] = (psi(cond.x[i]) - psiN) / (psi0 - psiN);
    v[0] = 1.0;
    v[n] = 0.0;

    const double floor = 1e-14;
    auto gradient = [&](std::span<const double> vv, std::span<double> g) {
        double gmax = 0;
        for (std::size_t k = 1; k < n; ++k) {
            const double dl = vv[k - 1] - vv[k];
            const double dr = vv[k] - vv[k + 1];
            g[k - 1] = -p * a[k - 1] * std::pow(std::abs(dl), p - 1.0) *
                           (dl < 0 ? -1.0 : 1.0) +
                       p * a[k] * std::pow(std::abs(dr), p - 1.0) *
                           (dr < 0 ? -1.0 : 1.0);
            gmax = std::max(gmax, std::abs(g[k - 1]));
        }
        return gmax;
    };

    std::vector<double> g(n - 1), diag(n - 1), lower(n - 1), upper(n - 1);
    double g0 = gradient(v, g);
    double energy = total_energy(a, v, p);
    // the gradient entries are differences of per-cell fluxes, so their
    // rounding floor is set by the flux magnitude, not by g0 (the initial
    // guess is already near-optimal on smooth metrics)
    double flux_scale = 0;
    for (std::size_t i = 0; i < n; ++i)
        flux_scale = std::max(
            flux_scale, p * a[i] * std::pow(std::abs(v[i] - v[i + 1]), p - 1.0));
    const double target =
        std::max(1e-12 * g0, std::max(1e-14 * flux_scale, 1e-300));
    bool converged = g0 <= target;
    for (int it = 0; it < 60 && !converged; ++it) {
        for (std::size_t k = 1; k < n; ++k) {
            const double dl = std::max(std::abs(v[k - 1] - v[k]), floor);
            const double dr = std::max(std::abs(v[k] - v[k + 1]), floor);
            const double hl = p * (p - 1.0) * a[k - 1] * std::pow(dl, p - 2.0);
            const double hr = p * (p - 1.0) * a[k] * std::pow(dr, p - 2.0);
            diag[k - 1] = hl + hr;
            lower[k - 1] = k > 1 ? -hl : 0.0;
            upper[k - 1] = -hr;
        }
        std::vector<double> step(g.begin(), g.end());
        num::solve_tridiagonal(lower, diag, upper, step);

        double alpha = 1.0;
        std::vector<double> trial(v);
        bool improved = false;
        for (int ls = 0; ls < 40; ++ls) {
            for (std::size_t k = 1; k < n; ++k)
                trial[k] = v[k] - alpha * step[k - 1];
            const double e_trial = total_energy(a, trial, p);
            if (e_trial < energy) {
                v = trial;
                energy = e_trial;
                improved = true;
                break;
            }
            alpha *= 0.5;
        }
        ++cond.newton_iterations;
        if (!improved) break;
        converged = gradient(v, g) <= target;
    }
    // a stalled line search at a gradient within O(N^2 eps) of the flux
    // scale is the rounding floor of the tridiagonal solve, not a failure
    if (!converged && gradient(v, g) <= 1e-8 * flux_scale) converged = true;
    if (!converged) {
        flux_minimizer(a, p, v);
        energy = total_energy(a, v, p);
        cond.used_flux_fallback = true;
    }

    cond.energy = energy;
    cond.capacity = std::pow((p - 1.0) / (3.0 - p), p - 1.0) * energy /
                    (4.0 * M_PI);
    return cond;
}

double condenser_energy(const MetricProfile& metric, double p,
                        std::span<const double> x, std::span<const double> v) {
    auto w = cell_weights(metric, p, x);
    double e = 0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        e += w[i] * std::pow(std::abs(v[i] - v[i + 1]) / (x[i + 1] - x[i]), p);
    return e;
}

CapacityFit extrapolate_capacity(std::span<const double> r_max,
                                 std::span<const double> condenser_capacity,
                                 double p) {
    if (r_max.size() < 3 || r_max.size() != condenser_capacity.size())
        throw std::invalid_argument(
            "extrapolate_capacity: need >= 3 ladder points");
    const double mu = -(3.0 - p) / (p - 1.0);
    // The Euclidean condenser law cond(R) = cap (1 - (R/r0)^mu)^{1-p} is
    // exactly linear in R^mu after the change of variable y = cond^{-1/(p-1)},
    // so the fit is done there and mapped back.
    double s1 = 0, sb = 0, sbb = 0, sy = 0, sby = 0;
    const std::size_t n = r_max.size();
    const double e = -1.0 / (p - 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(condenser_capacity[i] > 0.0))
            throw std::runtime_error(
                "extrapolate_capacity: nonpositive ladder value");
        const double b = std::pow(r_max[i], mu);
        const double y = std::pow(condenser_capacity[i], e);
        s1 += 1.0;
        sb += b;
        sbb += b * b;
        sy += y;
        sby += b * y;
    }
    const double det = s1 * sbb - sb * sb;
    if (det == 0.0 || !std::isfinite(det))
        throw std::runtime_error("extrapolate_capacity: degenerate ladder");
    const double a0 = (sbb * sy - sb * sby) / det;
    const double a1 = (s1 * sby - sb * sy) / det;
    if (!(a0 > 0.0))
        throw std::runtime_error("extrapolate_capacity: fit diverged");
    const double cap = std::pow(a0, 1.0 / e);
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double model =
            std::pow(a0 + a1 * std::pow(r_max[i], mu), 1.0 / e);
        const double r = condenser_capacity[i] - model;
        ss += r * r;
    }
    return {cap, std::sqrt(ss / double(n))};
}

}  // namespace caplab
