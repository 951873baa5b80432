#include "caplab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace caplab::num {

namespace {

// 15-point Kronrod abscissae/weights with the embedded 7-point Gauss rule.
constexpr double kKronrodX[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kKronrodW[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kGaussW[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

}  // namespace

RuleResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kKronrodX[i]);
        fv[14 - i] = f(c + h * kKronrodX[i]);
    }
    fv[7] = f(c);
    double kres = kKronrodW[7] * fv[7];
    double gres = kGaussW[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        kres += kKronrodW[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1)
            gres += kGaussW[i / 2] * (fv[i] + fv[14 - i]);
    }
    kres *= h;
    gres *= h;
    return {kres, std::abs(kres - gres)};
}

namespace {

double integrate_recursive(const std::function<double(double)>& f, double a,
                           double b, double tol, int depth, int max_depth,
                           double whole) {
    const double c = 0.5 * (a + b);
    auto left = gk15(f, a, c);
    auto right = gk15(f, c, b);
    const double sum = left.value + right.value;
    const double err = left.error + right.error;
    if (err <= tol || std::abs(sum - whole) <= tol) return sum;
    if (depth >= max_depth)
        throw QuadratureError("adaptive quadrature did not converge");
    return integrate_recursive(f, a, c, 0.5 * tol, depth + 1, max_depth,
                               left.value) +
           integrate_recursive(f, c, b, 0.5 * tol, depth + 1, max_depth,
                               right.value);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_tol, int max_depth) {
    if (a == b) return 0.0;
    auto first = gk15(f, a, b);
    double tol = std::max(abs_tol, rel_tol * std::abs(first.value));
    if (tol == 0.0) tol = rel_tol;
    if (first.error <= tol) return first.value;
    return integrate_recursive(f, a, b, tol, 0, max_depth, first.value);
}

double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             double decay, double rel_tol) {
    if (decay <= 1.0)
        throw QuadratureError("tail integrand does not decay fast enough");
    // x = a * u^{-beta}: integrand becomes a*beta*u^{-beta-1} f(a u^{-beta}),
    // which behaves like u^{beta(decay-1)-1} near u = 0.
    const double beta = 2.0 / (decay - 1.0);
    auto g = [&](double u) {
        if (u <= 0.0) return 0.0;
        const double x = a * std::pow(u, -beta);
        return a * beta * std::pow(u, -beta - 1.0) * f(x);
    };
    return integrate(g, 0.0, 1.0, rel_tol);
}

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double x_tol, const std::function<double(double)>& df) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw RootError("root bracket is not sign-changing");
    if (x_tol <= 0.0)
        x_tol = 4.0 * std::numeric_limits<double>::epsilon() *
                std::max(std::abs(lo), std::abs(hi));
    while (hi - lo > x_tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    double x = 0.5 * (lo + hi);
    if (df) {
        for (int i = 0; i < 4; ++i) {
            const double fx = f(x);
            const double dfx = df(x);
            if (dfx == 0.0) break;
            const double step = fx / dfx;
            const double next = x - step;
            if (next < lo || next > hi) break;
            x = next;
            if (std::abs(step) <= x_tol) break;
        }
    }
    return x;
}

Extrapolation extrapolate_to_zero(std::span<const double> q,
                                  std::span<const double> y) {
    const std::size_t n = q.size();
    if (n != y.size() || n < 2)
        throw std::invalid_argument("extrapolate_to_zero: need >= 2 samples");
    std::vector<double> t(y.begin(), y.end());
    double last = t.back();
    double correction = 0.0;
    for (std::size_t level = 1; level < n; ++level) {
        for (std::size_t i = 0; i + level < n; ++i) {
            const double denom = q[i] - q[i + level];
            t[i] = t[i + 1] + q[i + level] * (t[i + 1] - t[i]) / denom;
        }
        correction = std::abs(t[0] - last);
        last = t[0];
    }
    return {t[0], correction};
}

LinearFit fit_linear(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 2)
        throw std::invalid_argument("fit_linear: need >= 2 samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - intercept - slope * x[i];
        ss += r * r;
    }
    return {intercept, slope, std::sqrt(ss / n)};
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n)
        throw std::invalid_argument("MonotoneCubic: bad grid");
    std::vector<double> delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        delta[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
    d_.resize(n);
    d_[0] = delta[0];
    d_[n - 1] = delta[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            d_[i] = 0.0;
        } else {
            // weighted harmonic mean keeps the interpolant monotone
            const double w1 = 2.0 * (x_[i + 1] - x_[i]) + (x_[i] - x_[i - 1]);
            const double w2 = (x_[i + 1] - x_[i]) + 2.0 * (x_[i] - x_[i - 1]);
            d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
}

std::size_t MonotoneCubic::locate(double x) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = it == x_.begin() ? 0 : std::size_t(it - x_.begin()) - 1;
    return std::min(i, x_.size() - 2);
}

double MonotoneCubic::operator()(double x) const {
    const std::size_t i = locate(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
    const double h10 = t * (1 - t) * (1 - t);
    const double h01 = t * t * (3 - 2 * t);
    const double h11 = t * t * (t - 1);
    return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
}

double MonotoneCubic::derivative(double x) const {
    const std::size_t i = locate(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double dh00 = 6 * t * (t - 1);
    const double dh10 = (1 - t) * (1 - 3 * t);
    const double dh01 = -dh00;
    const double dh11 = t * (3 * t - 2);
    return (dh00 * y_[i] + dh01 * y_[i + 1]) / h + dh10 * d_[i] + dh11 * d_[i + 1];
}

void solve_tridiagonal(std::span<double> lower, std::span<double> diag,
                       std::span<double> upper, std::span<double> rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double m = lower[i] / diag[i - 1];
        diag[i] -= m * upper[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    rhs[n - 1] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

}  // namespace caplab::num
