#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "oscact/errors.hpp"

namespace oscact {

struct QuadratureResult {
  double value = 0.0;
  double error_bound = 0.0;  // sum of per-panel estimates, >= 0
  long evaluations = 0;
};

/// Adaptive Gauss-Kronrod (G7,K15) integration of f over [a,b].
///
/// tol is an absolute tolerance; panels are bisected until the estimated
/// panel error drops below its share of tol or below the rounding floor of
/// the panel value, so for tolerances tighter than double precision allows
/// the returned error_bound is the honest bound. A reversed interval
/// (a > b) integrates [b,a] and flips the sign.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double tol = 1e-10);

/// Central difference (f(x+h) - f(x-h)) / (2h). O(h^2) for C^3 integrands.
double derivative_central(const std::function<double(double)>& f, double x, double h);

/// Central difference with the default step cbrt(eps) * max(1,|x|).
double derivative_central(const std::function<double(double)>& f, double x);

/// Central second difference (f(x+h) - 2f(x) + f(x-h)) / h^2.
double second_derivative_central(const std::function<double(double)>& f, double x, double h);

/// Default finite-difference step: cbrt(machine epsilon) * max(1, |x|).
double default_fd_step(double x);

/// 1/(e^u - 1) through expm1; accurate to ~1e-15 relative for
/// |u| in [1e-12, 700]. Returns the asymptotic branch value for huge |u|
/// (0 for u -> +inf, -1 for u -> -inf). u = 0 is a pole.
double stable_expm1_ratio(double u);

/// Every adjacent grid pair (x_i, x_{i+1}) on which f changes sign or
/// touches zero. The grid must be strictly increasing with >= 2 points.
std::vector<std::pair<double, double>> scan_sign_change(const std::function<double(double)>& f,
                                                        std::span<const double> grid);

/// count >= 2 equally spaced points with both endpoints exact.
std::vector<double> linspace(double lo, double hi, int count);

/// count >= 2 log-spaced points between positive endpoints.
std::vector<double> logspace(double lo, double hi, int count);

}  // namespace oscact
