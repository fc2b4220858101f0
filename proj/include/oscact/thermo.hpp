#pragma once

#include <span>
#include <string>
#include <vector>

#include "oscact/actions.hpp"
#include "oscact/darboux.hpp"

namespace oscact {

enum class Regime { positive_T_boson, negative_T_fermion };

std::string regime_name(Regime r);

/// Temperature read off x = omega / T; the sign convention attaches the
/// minus sign of the fermionic branch to T, not to omega.
struct TemperatureSign {
  double x;
  double omega;
  double temperature;  // omega / x, k_B = 1
  Regime regime;       // negative_T_fermion iff x < 0
};

TemperatureSign temperature_sign_map(double x, double omega);

/// Internal energy U = omega * f(x).
double internal_energy(const ActionModel& f, double x, double omega);
double internal_energy(const DarbouxFamily& family, double x, double omega);

// ---------------------------------------------------------------------------
// Entropy: S(x) = x f(x) - ln|w(x)| - C, with C fixed by lim_{x->+inf} S = 0.
// Dimensionless, k_B = 1; scale-free because the zero-mode normalization
// cancels between ln|w| and C.
// ---------------------------------------------------------------------------

/// Normalization constant C for a seed member (lambda = inf); analytic.
double entropy_normalization(const ActionModel& seed_action, const ZeroMode& mode);

/// Normalization constant for a finite-lambda family member, from a large-x
/// probe with a step-doubling consistency check.
double entropy_normalization(const DarbouxFamily& family);

double entropy(const ActionModel& seed_action, const ZeroMode& mode, double x);
double entropy(const DarbouxFamily& family, double x);

struct EntropyProfile {
  std::vector<double> grid;
  std::vector<double> entropy_values;
  double normalization_constant = 0.0;
  std::string family_label;
};

EntropyProfile entropy_profile(const ActionModel& seed_action, const ZeroMode& mode,
                               std::span<const double> grid);
EntropyProfile entropy_profile(const DarbouxFamily& family, std::span<const double> grid);

/// Centered difference of S minus x f'(x); the two non-derivative terms of
/// dS/dx cancel exactly, so this must vanish to O(h^2).
double entropy_derivative_check(const ActionModel& seed_action, const ZeroMode& mode, double x,
                                double h);
double entropy_derivative_check(const DarbouxFamily& family, double x, double h);

// ---------------------------------------------------------------------------
// Kink profile of a finite-lambda family action.
// ---------------------------------------------------------------------------

struct KinkProfile {
  double left_asymptote = 0.0;   // mean of the 5 leftmost samples
  double right_asymptote = 0.0;  // mean of the 5 rightmost samples
  double transition_width = 0.0; // x-distance between the 10% and 90% swing crossings
};

/// Plateaus and 10%-90% transition width of f_g on the given grid. Throws
/// InsufficientDomainError when the outermost samples have not flattened.
KinkProfile kink_profile(const DarbouxFamily& family, std::span<const double> grid);

}  // namespace oscact
