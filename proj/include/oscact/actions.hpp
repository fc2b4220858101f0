#pragma once

#include <functional>
#include <string>

#include "oscact/errors.hpp"

namespace oscact {

enum class Family {
  planck,
  vacuum,
  thermal,
  fermi_symmetric,
  general_zero_mode,
  darboux,
};

std::string family_name(Family f);
Family family_from_name(const std::string& name);

// ---------------------------------------------------------------------------
// Closed-form thermodynamic actions, x = beta * omega.
// ---------------------------------------------------------------------------

/// Planck action hbar/2 + hbar/(e^{hbar x} - 1) = (hbar/2) coth(hbar x / 2),
/// evaluated through the expm1 kernel. Odd in x; singular at x = 0.
double planck_action(double x, double hbar);

/// Pure thermal action hbar/(e^{hbar x} - 1). Singular at x = 0.
double thermal_action(double x, double hbar);

/// Constant vacuum action hbar/2.
double vacuum_action(double hbar);

/// Fermi-Dirac action -hbar/2 + hbar/(e^{-hbar x} + 1) = (hbar/2) tanh(hbar x / 2).
/// Odd, bounded by hbar/2, regular everywhere.
double fermi_action(double x, double hbar);

struct ZeroModeValue {
  double w;
  double w_prime;
};

/// w(x) = A e^{hbar x/2} + B e^{-hbar x/2} and its exact derivative,
/// switching to a log-space evaluation once |hbar x| is large enough that a
/// direct term would over/underflow spuriously.
ZeroModeValue general_zero_mode(double x, double A, double B, double hbar);

// ---------------------------------------------------------------------------
// Zero modes of w'' = (hbar/2)^2 w.
// ---------------------------------------------------------------------------

/// w(x) = scale * (A e^{hbar x/2} + B e^{-hbar x/2}).
///
/// The normalization scale only affects raw values of w and w'; every
/// action-level quantity (log derivative, Darboux family members, entropy)
/// is computed from the unit-scale coefficients and cannot see it.
class ZeroMode {
 public:
  static ZeroMode planck(double hbar, double scale = 1.0);     // A = 1/2, B = -1/2 (sinh)
  static ZeroMode vacuum(double hbar, double scale = 1.0);     // A = 1,   B = 0
  static ZeroMode symmetric(double hbar, double scale = 1.0);  // A = B = 1/2 (cosh)
  static ZeroMode general(double A, double B, double hbar, double scale = 1.0);

  Family family() const { return family_; }
  double hbar() const { return hbar_; }
  double scale() const { return scale_; }
  double coeff_a() const { return a_; }
  double coeff_b() const { return b_; }

  double value(double x) const;       // scale * w(x); may honestly overflow to +-inf
  double derivative(double x) const;  // scale * w'(x), exact analytic derivative

  double unscaled_value(double x) const;
  double unscaled_derivative(double x) const;

  /// log|w(x)/scale|; -inf at a node. Safe for any |hbar x|.
  double log_abs_unscaled(double x) const;

  /// w'(x)/w(x); scale-free. Throws NodeError at a zero of w.
  double log_derivative(double x) const;

  /// True when A and B have opposite signs, i.e. w has a real node.
  bool has_node() const;
  /// Location of that node, ln(-B/A)/hbar.
  double node_location() const;

 private:
  ZeroMode(Family family, double A, double B, double hbar, double scale);

  Family family_;
  double a_, b_;
  double hbar_;
  double scale_;
};

/// w'(x)/w(x) for a zero mode; the map back from modes to actions.
double log_derivative_action(const ZeroMode& mode, double x);

/// Fermionic partner mode 1/w_b(x). Throws NodeError at a node of w_b.
double fermionic_zero_mode(const ZeroMode& seed_mode, double x);

// ---------------------------------------------------------------------------
// Tagged action evaluator.
// ---------------------------------------------------------------------------

/// An action f(x) with family identity and parameters. Closed-form families
/// evaluate analytically; the darboux tag carries registered evaluators
/// (falling back to a central difference when no derivative is registered).
class ActionModel {
 public:
  static ActionModel planck(double hbar = 1.0);
  static ActionModel vacuum(double hbar = 1.0);
  static ActionModel thermal(double hbar = 1.0);
  static ActionModel fermi(double hbar = 1.0);
  static ActionModel general(double A, double B, double hbar = 1.0);
  static ActionModel darboux(double hbar, double lambda, std::function<double(double)> f,
                             std::function<double(double)> f_prime = {});

  double value(double x) const;
  double derivative(double x) const;

  Family family() const { return family_; }
  double hbar() const { return hbar_; }
  double coeff_a() const { return a_; }
  double coeff_b() const { return b_; }
  /// Darboux parameter; +infinity for every non-darboux family.
  double lambda() const { return lambda_; }

 private:
  ActionModel(Family family, double hbar);

  Family family_;
  double hbar_;
  double a_ = 0.0, b_ = 0.0;
  double lambda_;
  std::function<double(double)> f_;
  std::function<double(double)> f_prime_;
};

/// A point of the (x, omega, beta) triple with x = beta * omega.
struct ScaledPoint {
  double x;
  double omega;
  double beta;

  static ScaledPoint from_beta_omega(double beta, double omega);
};

}  // namespace oscact
