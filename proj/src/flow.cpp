#include "caplab/flow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "caplab/numerics.hpp"

namespace caplab::flow {

double hawking_mass(double area, double willmore) {
    if (!(area > 0)) throw std::invalid_argument("hawking_mass: area <= 0");
    return std::sqrt(area) / (16.0 * std::pow(M_PI, 1.5)) *
           (4.0 * M_PI - willmore / 4.0);
}

double p_hawking_mass(double p, double cap_t, double integral_grad2,
                      double integral_grad_h) {
    const double q = 3.0 - p;
    return std::pow(cap_t, 1.0 / q) / (8.0 * M_PI) *
           (4.0 * M_PI + integral_grad2 / (q * q) - integral_grad_h / q);
}

double p_hawking_modified(double p, double cap_t, double integral_grad2) {
    const double q = 3.0 - p;
    return std::pow(cap_t, 1.0 / q) / (4.0 * M_PI * q) *
           (4.0 * M_PI - integral_grad2 / (q * q));
}

double iso_p_quasilocal(double volume, double cap, double p) {
    if (!(cap > 0)) throw std::invalid_argument("iso_p_quasilocal: cap <= 0");
    const double q = 3.0 - p;
    return (volume - 4.0 * M_PI / 3.0 * std::pow(cap, 3.0 / q)) /
           (2.0 * p * M_PI * std::pow(cap, 2.0 / q));
}

double iso_quasilocal(double volume, double area) {
    if (!(area > 0)) throw std::invalid_argument("iso_quasilocal: area <= 0");
    return 2.0 / area * (volume - std::pow(area, 1.5) / (6.0 * std::sqrt(M_PI)));
}

double alpha_iso_p(double volume, double cap, double p, double alpha) {
    if (alpha == 0.0) throw std::invalid_argument("alpha_iso_p: alpha = 0");
    const double q = 3.0 - p;
    return 2.0 * std::pow(cap, (1.0 - 3.0 * alpha) / q) / (3.0 * p * alpha) *
           (std::pow(3.0 * volume / (4.0 * M_PI), alpha) -
            std::pow(cap, 3.0 * alpha / q));
}

double alpha_iso(double volume, double area, double alpha) {
    if (alpha == 0.0) throw std::invalid_argument("alpha_iso: alpha = 0");
    // isoperimetric analogue: radius variable sqrt(area/4pi) in place of
    // cap^{1/(3-p)}, alpha = 1 recovering iso_quasilocal
    const double rho = std::sqrt(area / (4.0 * M_PI));
    return 2.0 * std::pow(rho, 1.0 - 3.0 * alpha) / (3.0 * alpha) *
           (std::pow(3.0 * volume / (4.0 * M_PI), alpha) -
            std::pow(rho, 3.0 * alpha));
}

double geroch_rhs(const LevelSetRecord& rec, double p) {
    const double q = 3.0 - p;
    return std::pow(rec.cap_t, 1.0 / q) / (q * 8.0 * M_PI) *
           (rec.integral_scalar_half +
            (5.0 - p) / (p - 1.0) * rec.integral_deficit);
}

namespace {

LevelSetRecord make_record(const PotentialSolution& sol, double t,
                           double volume) {
    const MetricProfile& metric = sol.metric();
    const double p = sol.exponent();
    const double q = 3.0 - p;
    LevelSetRecord rec;
    rec.t = t;
    rec.r = sol.level_radius(t);
    rec.area = metric.area(rec.r);
    rec.volume = volume;
    rec.cap_t = std::exp(t) * sol.capacity();
    rec.mean_curvature = metric.mean_curvature(rec.r);
    rec.grad_w = sol.evaluate(rec.r).grad_w;

    // scalar curvature is sampled a hair off an area-radius horizon pole,
    // where the raw f'/f^3 expression is 0*inf (the limit itself is finite)
    double r_scal = rec.r;
    if (metric.sqrt_pole_at(r_scal))
        r_scal += 1e-7 * std::max(rec.r, 1.0);
    const double scal = metric.scalar_curvature(r_scal);

    const double g = rec.grad_w, H = rec.mean_curvature;
    rec.integral_scalar_half = rec.area * scal / 2.0;
    const double d = g / q - H / 2.0;
    rec.integral_deficit = rec.area * d * d;

    rec.m_hawking = hawking_mass(rec.area, rec.area * H * H);
    rec.m_p_hawking =
        p_hawking_mass(p, rec.cap_t, rec.area * g * g, rec.area * g * H);
    rec.m_p_hawking_mod = p_hawking_modified(p, rec.cap_t, rec.area * g * g);
    rec.m_iso_p = iso_p_quasilocal(rec.volume, rec.cap_t, p);
    rec.m_iso = iso_quasilocal(rec.volume, rec.area);
    rec.rhs_geroch = geroch_rhs(rec, p);
    return rec;
}

LimitEstimate estimate_limit(std::span<const double> q,
                             std::span<const double> y) {
    const auto ex = num::extrapolate_to_zero(q, y);
    return {ex.value, ex.residual};
}

}  // namespace

LevelSetRecord level_record(const PotentialSolution& solution, double t) {
    const MetricProfile& metric = solution.metric();
    const double r = solution.level_radius(t);
    return make_record(solution, t, metric.volume(metric.volume_origin(), r));
}

MassSeries mass_series(const PotentialSolution& solution,
                       std::span<const double> t_grid) {
    if (t_grid.empty())
        throw std::invalid_argument("mass_series: empty t-grid");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1]))
            throw std::invalid_argument("mass_series: t-grid not increasing");

    const MetricProfile& metric = solution.metric();
    MassSeries series;
    series.p = solution.exponent();
    series.records.reserve(t_grid.size());

    double r_prev = metric.volume_origin();
    double volume = 0.0;
    for (double t : t_grid) {
        const double r = solution.level_radius(t);
        volume += metric.volume(r_prev, r);
        r_prev = r;
        series.records.push_back(make_record(solution, t, volume));
    }

    const std::size_t n = series.records.size();
    const std::size_t k = std::min<std::size_t>(4, n);
    std::vector<double> q(k), y(k);
    const double decay = 1.0 / (3.0 - series.p);
    for (std::size_t i = 0; i < k; ++i)
        q[i] = std::exp(-decay * series.records[n - k + i].t);
    auto limit_of = [&](auto field) {
        for (std::size_t i = 0; i < k; ++i)
            y[i] = series.records[n - k + i].*field;
        return estimate_limit(q, y);
    };
    series.hawking = limit_of(&LevelSetRecord::m_hawking);
    series.p_hawking = limit_of(&LevelSetRecord::m_p_hawking);
    series.p_hawking_mod = limit_of(&LevelSetRecord::m_p_hawking_mod);
    series.iso_p = limit_of(&LevelSetRecord::m_iso_p);
    series.iso = limit_of(&LevelSetRecord::m_iso);
    return series;
}

std::vector<double> uniform_t_grid(double t_lo, double t_hi, int n) {
    if (n < 2 || !(t_hi > t_lo))
        throw std::invalid_argument("uniform_t_grid: bad parameters");
    std::vector<double> t(n);
    const double dt = (t_hi - t_lo) / (n - 1);
    for (int i = 0; i < n; ++i) t[i] = t_lo + dt * i;
    t.back() = t_hi;
    return t;
}

}  // namespace caplab::flow
