#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oscact/actions.hpp"
#include "oscact/errors.hpp"

namespace oscact {

/// Extended-real Darboux parameter. +infinity is a distinguished value that
/// selects the seed member of a family exactly (no 1/lambda residue).
class Lambda {
 public:
  Lambda(double v);  // implicit on purpose; rejects NaN and -inf
  static Lambda infinity();

  bool is_infinite() const { return infinite_; }
  /// Finite value, or +inf when infinite.
  double value() const;

  friend bool operator==(const Lambda& a, const Lambda& b);
  friend bool operator<(const Lambda& a, const Lambda& b);

  std::string str() const;  // "inf" or the shortest round-trip decimal

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

Lambda lambda_from_string(const std::string& text);

enum class I0Mode { closed_form, quadrature };

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return x >= lo && x <= hi; }
  double width() const { return hi - lo; }
};

/// I0(x) = integral_0^x w^2(y) dy for the stored mode, scale included.
/// closed_form is available for the planck and vacuum modes only.
double i0_integral(const ZeroMode& seed_mode, double x, I0Mode mode, double quad_tol = 1e-10);

/// Same integral for the unit-scale mode; this is what parametrizes the
/// Darboux families, so lambda has a scale-free meaning.
double i0_normalized(const ZeroMode& seed_mode, double x, I0Mode mode, double quad_tol = 1e-10);

struct LambdaValidation {
  bool valid = false;
  Interval domain{};
  std::vector<Interval> violations;  // brackets around zeros of I0 + lambda
  bool boundary_degenerate = false;  // lambda == 0: I0 + lambda -> 0 at x -> 0
};

/// Scans I0(x) + lambda for sign changes on a uniform grid over the domain.
LambdaValidation validate_lambda(const ActionModel& seed, const ZeroMode& seed_mode, Lambda lambda,
                                 Interval domain, int grid_density = 256);

struct DarbouxOptions {
  std::optional<I0Mode> i0_mode;    // default: closed form when available
  bool strict_lambda = true;        // additionally require lambda > 0
  bool allow_negative_x = false;    // planck seed: admit the x < 0 branch
  int validation_grid_density = 256;
  double quadrature_tol = 1e-10;
};

/// One-parameter family of actions built from a seed solution f_p of
/// f' + f^2 = (hbar/2)^2 and its zero mode w_b:
///
///   f_g(x; lambda) = f_p(x) - w_b^2(x) / (I0(x) + lambda).
///
/// Construction validates that I0 + lambda has no zero on the domain.
/// All members are evaluated from the unit-scale zero mode.
class DarbouxFamily {
 public:
  static DarbouxFamily create(const ActionModel& seed, const ZeroMode& seed_mode, Lambda lambda,
                              Interval x_domain, const DarbouxOptions& opts = {});
  static DarbouxFamily planck_seed(double hbar, Lambda lambda, Interval x_domain,
                                   const DarbouxOptions& opts = {});
  static DarbouxFamily vacuum_seed(double hbar, Lambda lambda, Interval x_domain,
                                   const DarbouxOptions& opts = {});
  static DarbouxFamily symmetric_seed(double hbar, Lambda lambda, Interval x_domain,
                                      const DarbouxOptions& opts = {});
  static DarbouxFamily general_seed(double A, double B, double hbar, Lambda lambda,
                                    Interval x_domain, const DarbouxOptions& opts = {});

  const ActionModel& seed() const { return seed_; }
  const ZeroMode& seed_mode() const { return seed_mode_; }
  Lambda lambda() const { return lambda_; }
  Interval x_domain() const { return x_domain_; }
  I0Mode i0_mode() const { return i0_mode_; }
  double hbar() const { return seed_.hbar(); }

  double i0(double x) const;                  // unit-scale I0(x)
  double v(double x) const;                   // (I0 + lambda) / w^2; +inf at lambda = inf
  double v_derivative(double x) const;        // quotient-rule path, for the Bernoulli check
  double action(double x) const;              // f_g(x; lambda)
  double action_derivative(double x) const;   // analytic d f_g / dx
  double transformed_potential(double x) const;  // V_{1,g}
  double transformed_zero_mode(double x) const;  // w_b/(I0+lambda); seed mode at lambda = inf

  double seed_potential() const;                 // V1 = (hbar/2)^2
  double partner_potential(double x) const;      // V2 = -f_p' + f_p^2

  /// log|transformed zero mode|; stable in the far tails.
  double log_abs_transformed_mode(double x) const;

  /// Evaluators without the x-domain check, for asymptotic probes. Only
  /// meaningful where I0 + lambda keeps its sign (I0 is monotone, so any
  /// x beyond a validated right endpoint qualifies).
  double action_raw(double x) const;

  /// The family action as a tagged evaluator (family = darboux).
  ActionModel as_action() const;

 private:
  DarbouxFamily(ActionModel seed, ZeroMode seed_mode, Lambda lambda, Interval domain, I0Mode i0_mode,
                double quad_tol);

  void check_domain(double x) const;
  double correction(double x) const;  // g = w^2/(I0+lambda); the asymptotic branch for huge |x|
  double correction_derivative(double x) const;

  ActionModel seed_;
  ZeroMode seed_mode_;
  Lambda lambda_;
  Interval x_domain_;
  I0Mode i0_mode_;
  double quad_tol_;
};

// ---------------------------------------------------------------------------
// Riccati residuals.
// ---------------------------------------------------------------------------

/// f'(x) + f(x)^2 - V1(x); zero iff f solves the bosonic Riccati equation at x.
double bosonic_residual(const ActionModel& f, double x, const std::function<double(double)>& V1);
double bosonic_residual(const std::function<double(double)>& f,
                        const std::function<double(double)>& f_prime, double x,
                        const std::function<double(double)>& V1);

/// -f'(x) + f(x)^2 - V2(x); zero iff f solves the fermionic Riccati equation at x.
double fermionic_residual(const ActionModel& f, double x, const std::function<double(double)>& V2);

/// f'(x) + hbar f(x) + f(x)^2; zero iff f solves the Bernoulli equation.
double bernoulli_residual(const ActionModel& f, double x, double hbar);
double bernoulli_residual(const std::function<double(double)>& f,
                          const std::function<double(double)>& f_prime, double x, double hbar);

/// Supersymmetric partner potential V2(x) = -f_p'(x) + f_p(x)^2.
double fermionic_partner(const ActionModel& seed, double x);

enum class ResidualKind { bosonic, fermionic, bernoulli };

struct RiccatiResidualReport {
  ResidualKind kind;
  std::vector<double> grid;
  double max_abs_residual = 0.0;
  double argmax_x = 0.0;
};

RiccatiResidualReport residual_report(ResidualKind kind, const ActionModel& f,
                                      const std::function<double(double)>& potential,
                                      std::span<const double> grid, double hbar);

// ---------------------------------------------------------------------------
// lambda -> infinity convergence.
// ---------------------------------------------------------------------------

struct ConvergenceRow {
  Lambda lambda;
  double sup_deviation = 0.0;  // sup over grid of |f_g(x; lambda) - f_p(x)|
  double argmax_x = 0.0;
};

/// Sup-norm deviation from the seed per lambda, for an increasing lambda
/// sequence, evaluated on the given grid. Invalid lambdas throw
/// ValidationError.
std::vector<ConvergenceRow> lambda_convergence_report(const ActionModel& seed,
                                                      const ZeroMode& seed_mode,
                                                      std::span<const Lambda> lambdas,
                                                      std::span<const double> grid,
                                                      const DarbouxOptions& opts = {});

}  // namespace oscact
