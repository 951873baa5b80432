#include "caplab/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "caplab/numerics.hpp"

namespace caplab {

namespace {

std::string format_mass_tag(double m) {
    std::ostringstream os;
    os << m;
    std::string s = os.str();
    for (auto& c : s)
        if (c == '.' || c == '-') c = '_';
    return s;
}

double length_scale(double inner) { return std::max(inner, 1.0); }

}  // namespace

MetricProfile MetricProfile::flat() {
    MetricProfile g;
    g.form_ = MetricForm::AreaRadiusWarped;
    g.profile_ = {[](double) { return 1.0; }, [](double) { return 0.0; },
                  [](double) { return 0.0; }};
    g.inner_radius_ = 0.0;
    g.flat_space_ = true;
    g.name_ = "flat";
    return g;
}

MetricProfile MetricProfile::schwarzschild_area_radius(double m) {
    if (m < 0.0) throw std::domain_error("schwarzschild mass must be >= 0");
    if (m == 0.0) return flat();
    MetricProfile g;
    g.form_ = MetricForm::AreaRadiusWarped;
    g.profile_ = {
        [m](double r) { return 1.0 / std::sqrt(1.0 - 2.0 * m / r); },
        [m](double r) {
            const double f = 1.0 / std::sqrt(1.0 - 2.0 * m / r);
            return -m / (r * r) * f * f * f;
        },
        [m](double r) {
            const double a = 1.0 - 2.0 * m / r;
            return m * (2.0 * r - 3.0 * m) / (r * r * r * r) *
                   std::pow(a, -2.5);
        }};
    g.inner_radius_ = 2.0 * m;
    g.sqrt_pole_at_inner_ = true;
    g.name_ = "schwarzschild_area_m" + format_mass_tag(m);
    return g;
}

MetricProfile MetricProfile::schwarzschild_isotropic(double m) {
    if (m < 0.0) throw std::domain_error("schwarzschild mass must be >= 0");
    MetricProfile g;
    g.form_ = MetricForm::ConformallyFlatRadial;
    g.profile_ = {[m](double s) { return 1.0 + 0.5 * m / s; },
                  [m](double s) { return -0.5 * m / (s * s); },
                  [m](double s) { return m / (s * s * s); }};
    g.inner_radius_ = 0.5 * m;
    g.name_ = "schwarzschild_isotropic_m" + format_mass_tag(m);
    return g;
}

MetricProfile MetricProfile::conformal_perturbation(std::vector<double> coeffs) {
    MetricProfile g;
    g.form_ = MetricForm::ConformallyFlatRadial;
    auto c = std::make_shared<std::vector<double>>(std::move(coeffs));
    g.profile_ = {
        [c](double s) {
            double u = 1.0, sj = s;
            for (double a : *c) {
                u += a / sj;
                sj *= s;
            }
            return u;
        },
        [c](double s) {
            double du = 0.0, sj = s * s;
            for (std::size_t j = 0; j < c->size(); ++j) {
                du -= double(j + 1) * (*c)[j] / sj;
                sj *= s;
            }
            return du;
        },
        [c](double s) {
            double ddu = 0.0, sj = s * s * s;
            for (std::size_t j = 0; j < c->size(); ++j) {
                ddu += double(j + 1) * double(j + 2) * (*c)[j] / sj;
                sj *= s;
            }
            return ddu;
        }};
    // inner radius: the outermost minimal sphere when one exists, else just
    // outside the zero set of U
    double scale = 1.0;
    for (std::size_t j = 0; j < c->size(); ++j)
        scale = std::max(scale,
                         std::pow(std::abs((*c)[j]), 1.0 / double(j + 1)));
    g.inner_radius_ = 1e-6 * scale;
    g.name_ = "conformal";
    auto minimal = [&](double s) {
        return g.profile_.value(s) + 2.0 * s * g.profile_.d1(s);
    };
    double lo = 1e-4 * scale, hi = 1e4 * scale;
    double s_prev = hi, v_prev = minimal(hi);
    double found = -1.0;
    for (double s = hi; s >= lo; s /= 1.05) {
        const double v = minimal(s);
        if (std::isfinite(v) && v_prev > 0.0 && v <= 0.0) {
            found = num::find_root(minimal, s, s_prev);
            break;
        }
        if (g.profile_.value(s) <= 0.0) {
            g.inner_radius_ = s * 1.05;
            break;
        }
        s_prev = s;
        v_prev = v;
    }
    if (found > 0.0) g.inner_radius_ = found;
    return g;
}

MetricProfile MetricProfile::warped(RadialFunction f, double inner_radius,
                                    bool sqrt_pole_at_inner, std::string name) {
    MetricProfile g;
    g.form_ = MetricForm::AreaRadiusWarped;
    g.profile_ = std::move(f);
    g.inner_radius_ = inner_radius;
    g.sqrt_pole_at_inner_ = sqrt_pole_at_inner;
    g.name_ = std::move(name);
    return g;
}

MetricProfile MetricProfile::conformal(RadialFunction u, double inner_radius,
                                       std::string name) {
    MetricProfile g;
    g.form_ = MetricForm::ConformallyFlatRadial;
    g.profile_ = std::move(u);
    g.inner_radius_ = inner_radius;
    g.name_ = std::move(name);
    return g;
}

double MetricProfile::radial_factor(double x) const {
    if (form_ == MetricForm::AreaRadiusWarped) return profile_.value(x);
    const double u = profile_.value(x);
    return u * u;
}

double MetricProfile::area_radius(double x) const {
    if (form_ == MetricForm::AreaRadiusWarped) return x;
    const double u = profile_.value(x);
    return x * u * u;
}

double MetricProfile::area_radius_deriv(double x) const {
    if (form_ == MetricForm::AreaRadiusWarped) return 1.0;
    const double u = profile_.value(x);
    return u * u + 2.0 * x * u * profile_.d1(x);
}

double MetricProfile::area(double x) const {
    if (x < inner_radius_)
        throw std::domain_error("area: radius below inner boundary");
    const double h = area_radius(x);
    return 4.0 * M_PI * h * h;
}

double MetricProfile::mean_curvature(double x) const {
    if (x < inner_radius_)
        throw std::domain_error("mean_curvature: radius below inner boundary");
    return 2.0 * area_radius_deriv(x) / (radial_factor(x) * area_radius(x));
}

double MetricProfile::scalar_curvature(double x) const {
    if (x < inner_radius_ || sqrt_pole_at(x))
        throw std::domain_error("scalar_curvature: radius outside open domain");
    if (form_ == MetricForm::AreaRadiusWarped) {
        const double f = profile_.value(x);
        const double df = profile_.d1(x);
        // R = 4 m'(r)/r^2 with m = (r/2)(1 - f^{-2})
        const double dm = 0.5 * (1.0 - 1.0 / (f * f)) + x * df / (f * f * f);
        return 4.0 * dm / (x * x);
    }
    const double u = profile_.value(x);
    return -8.0 * std::pow(u, -5.0) * (profile_.d2(x) + 2.0 * profile_.d1(x) / x);
}

double MetricProfile::misner_sharp_mass(double x) const {
    const double ratio = area_radius_deriv(x) / radial_factor(x);
    return 0.5 * area_radius(x) * (1.0 - ratio * ratio);
}

double MetricProfile::volume(double lo, double hi, double rel_tol) const {
    if (lo < inner_radius_ || hi < lo)
        throw std::domain_error("volume: bad radial range");
    if (lo == hi) return 0.0;
    auto integrand = [this](double x) {
        const double h = area_radius(x);
        return 4.0 * M_PI * radial_factor(x) * h * h;
    };
    if (sqrt_pole_at(lo)) {
        // r = lo + xi^2 removes the (r-lo)^{-1/2} pole of f. Below xi0 the
        // chart cannot resolve r - lo (catastrophic cancellation inside f),
        // so that head is integrated from a quadratic fitted at clean
        // offsets, and the tail gets an absolute-tolerance floor against
        // the ~1e-8 relative evaluation noise just above xi0.
        auto reg = [&](double xi) {
            return integrand(lo + xi * xi) * 2.0 * xi;
        };
        const double xi1 = std::sqrt(hi - lo);
        const double xi0 =
            std::min(1e-4 * std::sqrt(length_scale(lo)), xi1 / 8.0);
        const double f1 = reg(xi0), f2 = reg(2.0 * xi0), f3 = reg(3.0 * xi0);
        // int_0^xi0 of the quadratic through (xi0,f1),(2xi0,f2),(3xi0,f3)
        const double head = xi0 * (23.0 * f1 - 16.0 * f2 + 5.0 * f3) / 12.0;
        const double probe = std::abs(num::gk15(reg, xi0, xi1).value);
        return head + num::integrate(reg, xi0, xi1, rel_tol,
                                     1e-11 * (1.0 + probe));
    }
    return num::integrate(integrand, lo, hi, rel_tol);
}

double MetricProfile::adm_mass() const {
    const double base = 1e3 * length_scale(inner_radius_);
    std::vector<double> q, y;
    for (int k = 0; k < 7; ++k) {
        const double r = base * std::pow(2.0, k);
        q.push_back(1.0 / r);
        if (form_ == MetricForm::AreaRadiusWarped)
            y.push_back(misner_sharp_mass(r));
        else
            y.push_back(2.0 * r * (profile_.value(r) - 1.0));
    }
    auto lim = num::extrapolate_to_zero(q, y);
    const double scale = std::max(std::abs(lim.value), 1.0);
    if (!std::isfinite(lim.value) || lim.residual > 1e-6 * scale) {
        auto rep = validate();
        throw LimitError("adm_mass: limit did not converge (fitted decay " +
                         std::to_string(rep.fitted_decay_exponent) + ")");
    }
    return lim.value;
}

std::optional<double> MetricProfile::try_horizon_radius(double search_bound) const {
    if (sqrt_pole_at_inner_) return inner_radius_;
    if (search_bound <= 0.0) search_bound = 1e6 * length_scale(inner_radius_);
    const double lo = std::max(inner_radius_, 1e-9 * length_scale(inner_radius_));
    double s_prev = search_bound;
    double v_prev = mean_curvature(s_prev);
    for (double s = search_bound; s > lo; s /= 1.05) {
        const double v = mean_curvature(std::max(s, lo));
        if (v_prev > 0.0 && v <= 0.0)
            return num::find_root([this](double x) { return mean_curvature(x); },
                                  std::max(s, lo), s_prev);
        s_prev = std::max(s, lo);
        v_prev = v;
    }
    // the horizon may sit exactly on the inner chart boundary (isotropic
    // Schwarzschild, conformal charts built from their own minimal-sphere
    // root), where the downward scan never crosses the sign change
    const double v_lo = mean_curvature(lo);
    if (v_prev > 0.0 && v_lo < 0.0)
        return num::find_root([this](double x) { return mean_curvature(x); },
                              lo, s_prev);
    if (std::abs(v_lo) <= 1e-9 / length_scale(lo)) return lo;
    return std::nullopt;
}

double MetricProfile::horizon_radius(double search_bound) const {
    auto h = try_horizon_radius(search_bound);
    if (!h) throw NoHorizonError("metric has no minimal sphere: " + name_);
    return *h;
}

double MetricProfile::volume_origin() const {
    auto h = try_horizon_radius();
    return h ? *h : inner_radius_;
}

bool MetricProfile::sqrt_pole_at(double x) const {
    return sqrt_pole_at_inner_ && x == inner_radius_;
}

ValidationReport MetricProfile::validate(double r_tol) const {
    ValidationReport rep;
    const double scale = length_scale(inner_radius_);
    const double lo = inner_radius_ > 0.0 ? inner_radius_ * (1.0 + 1e-4)
                                          : 1e-3 * scale;
    const double hi = 1e6 * scale;
    rep.worst_scalar_curvature = std::numeric_limits<double>::infinity();
    for (double x = lo; x <= hi; x *= 1.1) {
        const double r = scalar_curvature(x);
        if (r < rep.worst_scalar_curvature) {
            rep.worst_scalar_curvature = r;
            rep.worst_scalar_radius = x;
        }
    }
    if (rep.worst_scalar_curvature < -r_tol) {
        rep.passed = false;
        rep.failure = "negative scalar curvature";
    }
    // asymptotic flatness over the last decades of the grid
    std::vector<double> lx, ly;
    for (double x = 1e4 * scale; x <= hi; x *= 2.0) {
        double dev;
        if (form_ == MetricForm::AreaRadiusWarped) {
            dev = std::abs(profile_.value(x) - 1.0);
        } else {
            dev = std::abs(profile_.value(x) - 1.0) +
                  std::abs(x * profile_.d1(x));
        }
        rep.worst_flatness_deviation = std::max(rep.worst_flatness_deviation,
                                                dev);
        if (dev > 1e-300) {
            lx.push_back(std::log(x));
            ly.push_back(std::log(dev));
        }
    }
    if (lx.size() >= 2) {
        rep.fitted_decay_exponent = -num::fit_linear(lx, ly).slope;
    } else {
        rep.fitted_decay_exponent = std::numeric_limits<double>::infinity();
    }
    if (rep.worst_flatness_deviation > 0.05) {
        rep.passed = false;
        if (!rep.failure.empty()) rep.failure += "; ";
        rep.failure += "metric not asymptotically flat";
    }
    return rep;
}

}  // namespace caplab
