#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace caplab::num {

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RootError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Adaptive Gauss-Kronrod (15 point) integration of f over [a, b].
/// Stops when the local error estimate is below rel_tol * |integral| + abs_tol.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12, double abs_tol = 0.0,
                 int max_depth = 48);

/// Integral of f over [a, +inf) for integrands decaying like x^{-decay},
/// decay > 1. Uses the substitution x = a * u^{-beta} with beta chosen so the
/// transformed integrand vanishes linearly at u = 0.
double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             double decay, double rel_tol = 1e-12);

/// Non-adaptive 15-point Gauss-Kronrod rule on [a, b] with error estimate.
struct RuleResult {
    double value;
    double error;
};
RuleResult gk15(const std::function<double(double)>& f, double a, double b);

/// Root of f in the bracket [lo, hi] (f(lo), f(hi) of opposite sign) by
/// bisection with Newton polish when df is supplied.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double x_tol = 0.0,
                 const std::function<double(double)>& df = nullptr);

/// Polynomial extrapolation of samples (q_i, y_i) to q = 0 (Neville's scheme).
/// Returns the limit estimate and the magnitude of the last correction as a
/// residual diagnostic.
struct Extrapolation {
    double value;
    double residual;
};
Extrapolation extrapolate_to_zero(std::span<const double> q,
                                  std::span<const double> y);

/// Least-squares fit of y = c0 + c1 * x over the samples; returns {c0, c1}
/// and the rms residual.
struct LinearFit {
    double intercept;
    double slope;
    double rms_residual;
};
LinearFit fit_linear(std::span<const double> x, std::span<const double> y);

/// Monotone cubic (Fritsch-Carlson) interpolant on a strictly increasing grid.
class MonotoneCubic {
public:
    MonotoneCubic() = default;
    MonotoneCubic(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    double derivative(double x) const;

private:
    std::vector<double> x_, y_, d_;  // nodes, values, node slopes
    std::size_t locate(double x) const;
};

/// Solves the tridiagonal system with diagonals (lower, diag, upper) in place.
void solve_tridiagonal(std::span<double> lower, std::span<double> diag,
                       std::span<double> upper, std::span<double> rhs);

}  // namespace caplab::num
