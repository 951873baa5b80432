#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace caplab {

struct NoHorizonError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class MetricForm { AreaRadiusWarped, ConformallyFlatRadial };

/// Radial profile function with two derivatives.
struct RadialFunction {
    std::function<double(double)> value;
    std::function<double(double)> d1;
    std::function<double(double)> d2;
};

struct ValidationReport {
    bool passed = true;
    double worst_scalar_curvature = 0.0;  // most negative sampled R
    double worst_scalar_radius = 0.0;
    double worst_flatness_deviation = 0.0;  // |f-1| (or |U-1| + |sU'|) at far end
    double fitted_decay_exponent = 0.0;     // tau from the tail of f-1 / U-1
    std::string failure;                    // empty on pass
};

/// Rotationally symmetric asymptotically flat 3-metric, either
///   g = f(r)^2 dr^2 + r^2 g_{S^2}   (area radius r), or
///   g = U(s)^4 delta                (conformally flat, coordinate radius s).
/// Both are exposed through the common warped-product accessors
/// F (radial factor), h (area radius) and h' as functions of the chart
/// coordinate, so the potential solver never branches on the form.
class MetricProfile {
public:
    static MetricProfile flat();
    static MetricProfile schwarzschild_area_radius(double m);
    static MetricProfile schwarzschild_isotropic(double m);
    /// U = 1 + sum_j coeffs[j-1] s^{-j}.
    static MetricProfile conformal_perturbation(std::vector<double> coeffs);
    static MetricProfile warped(RadialFunction f, double inner_radius,
                                bool sqrt_pole_at_inner = false,
                                std::string name = "warped");
    static MetricProfile conformal(RadialFunction u, double inner_radius,
                                   std::string name = "conformal");

    MetricForm form() const { return form_; }
    double inner_radius() const { return inner_radius_; }
    const std::string& name() const { return name_; }

    // Warped-product data at chart coordinate x (> inner radius).
    double radial_factor(double x) const;      // F
    double area_radius(double x) const;        // h
    double area_radius_deriv(double x) const;  // h'

    double area(double x) const;            // 4 pi h^2
    double mean_curvature(double x) const;  // 2 h' / (F h), outward
    double scalar_curvature(double x) const;
    double misner_sharp_mass(double x) const;  // (h/2)(1 - (h'/F)^2)

    double volume(double lo, double hi, double rel_tol = 1e-12) const;

    double adm_mass() const;

    /// Outermost root of the mean curvature; throws NoHorizonError if none
    /// below search_bound (default 1e6 times the inner/unit length scale).
    double horizon_radius(double search_bound = 0.0) const;
    std::optional<double> try_horizon_radius(double search_bound = 0.0) const;

    /// Radius the enclosed volume is measured from: the horizon when one
    /// exists, the inner chart radius otherwise.
    double volume_origin() const;

    ValidationReport validate(double r_tol = 1e-9) const;

    /// True when the radial factor has an integrable (r-x0)^{-1/2} pole at
    /// x0, i.e. an area-radius horizon boundary.
    bool sqrt_pole_at(double x) const;

    /// Whether f is analytically known to solve the vacuum constraint; used
    /// only to short-circuit derivative-free paths.
    bool is_flat_space() const { return flat_space_; }

private:
    MetricProfile() = default;

    MetricForm form_ = MetricForm::AreaRadiusWarped;
    RadialFunction profile_;  // f(r) or U(s)
    double inner_radius_ = 0.0;
    bool sqrt_pole_at_inner_ = false;
    bool flat_space_ = false;
    std::string name_;
};

}  // namespace caplab
