#include "caplab/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "caplab/numerics.hpp"
#include "caplab/specfun.hpp"

namespace caplab {

double PotentialSolution::integrand(double r) const {
    return metric_.radial_factor(r) * std::pow(metric_.area_radius(r), -c_);
}

PotentialSolution::PotentialSolution(MetricProfile metric, double p, double r0,
                                     SolveOptions opt)
    : metric_(std::move(metric)), p_(p), r0_(r0), c_(2.0 / (p - 1.0)),
      opt_(opt) {
    specfun::require_exponent(p);
    if (r0 < metric_.inner_radius() || r0 <= 0.0)
        throw SolverError("solve_radial: base radius below inner boundary");
    pole_at_base_ = metric_.sqrt_pole_at(r0);

    const double r_far = r0 * opt.r_far_factor;
    const double decades = std::log10(opt.r_far_factor);
    const std::size_t n =
        std::max<std::size_t>(2, std::size_t(std::ceil(decades *
                                                       opt.points_per_decade)));
    const double ratio = std::pow(r_far / r0, 1.0 / double(n));
    x_.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) x_[i] = r0 * std::pow(ratio, double(i));
    x_.front() = r0;
    x_.back() = r_far;

    auto g = [this](double r) { return integrand(r); };
    std::vector<double> seg(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i == 0 && pole_at_base_) {
            auto reg = [&](double xi) {
                return integrand(r0 + xi * xi) * 2.0 * xi;
            };
            seg[i] = num::integrate(reg, 0.0, std::sqrt(x_[1] - r0),
                                    opt.quad_tol);
        } else {
            seg[i] = num::integrate(g, x_[i], x_[i + 1], opt.quad_tol);
        }
    }
    const double tail =
        num::integrate_to_infinity(g, r_far, c_, opt.quad_tol);

    outer_.resize(n + 1);
    outer_[n] = tail;
    for (std::size_t i = n; i-- > 0;) outer_[i] = outer_[i + 1] + seg[i];
    base_integral_ = outer_[0];

    flux_ = std::pow(base_integral_, -(p_ - 1.0));
    capacity_ = std::pow((p_ - 1.0) / (3.0 - p_), p_ - 1.0) * flux_;

    nodes_.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const double r = x_[i];
        const double u = outer_[i] / base_integral_;
        const double du = (i == 0 && pole_at_base_)
                              ? -std::numeric_limits<double>::infinity()
                              : -integrand(r) / base_integral_;
        const double w = (p_ - 1.0) * (std::log(base_integral_) -
                                       std::log(outer_[i]));
        const double grad_w =
            (p_ - 1.0) * std::pow(metric_.area_radius(r), -c_) / outer_[i];
        nodes_[i] = {r, u, du, w, grad_w};
    }
}

double PotentialSolution::outer_integral(double r, std::size_t i) const {
    auto g = [this](double x) { return integrand(x); };
    double partial;
    if (i == 0 && pole_at_base_) {
        auto reg = [&](double xi) { return integrand(r0_ + xi * xi) * 2.0 * xi; };
        partial = num::integrate(reg, std::sqrt(std::max(r - r0_, 0.0)),
                                 std::sqrt(x_[1] - r0_), opt_.quad_tol);
    } else {
        partial = num::integrate(g, r, x_[i + 1], opt_.quad_tol);
    }
    return outer_[i + 1] + partial;
}

PotentialSolution::Eval PotentialSolution::evaluate(double r) const {
    if (r < r0_ || r > x_.back())
        throw std::domain_error("evaluate: radius outside solution range");
    auto it = std::upper_bound(x_.begin(), x_.end(), r);
    std::size_t i = it == x_.begin() ? 0 : std::size_t(it - x_.begin()) - 1;
    i = std::min(i, x_.size() - 2);
    const double outer = outer_integral(r, i);
    Eval e;
    e.u = outer / base_integral_;
    e.du = (r == r0_ && pole_at_base_)
               ? -std::numeric_limits<double>::infinity()
               : -integrand(r) / base_integral_;
    e.w = (p_ - 1.0) * (std::log(base_integral_) - std::log(outer));
    e.grad_w = (p_ - 1.0) * std::pow(metric_.area_radius(r), -c_) / outer;
    return e;
}

double PotentialSolution::t_max() const { return nodes_.back().w; }

double PotentialSolution::level_radius(double t) const {
    if (t < 0.0 || t > t_max())
        throw std::domain_error("level_radius: level beyond table");
    if (t == 0.0) return r0_;
    // bracket on the node table, then polish on the exact w(r)
    std::size_t lo = 0, hi = nodes_.size() - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        (nodes_[mid].w <= t ? lo : hi) = mid;
    }
    auto f = [&](double r) { return evaluate(r).w - t; };
    auto df = [&](double r) {
        // dw/dr = (p-1) G(r) / I(r)
        auto e = evaluate(r);
        return (p_ - 1.0) * integrand(r) / (e.u * base_integral_);
    };
    return num::find_root(f, x_[lo], x_[hi],
                          1e-14 * std::max(x_[lo], 1.0), df);
}

PotentialSolution solve_radial(const MetricProfile& metric, double p, double r0,
                               const SolveOptions& opt) {
    try {
        return PotentialSolution(metric, p, r0, opt);
    } catch (const num::QuadratureError& e) {
        throw SolverError(std::string("solve_radial: ") + e.what());
    }
}

}  // namespace caplab
