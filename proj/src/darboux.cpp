#include "oscact/darboux.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "oscact/numerics.hpp"

namespace oscact {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Beyond |hbar x| = 350 the correction w^2/(I0 + lambda) equals its
// asymptotic branch to better than e^{-350}; switching avoids inf/inf.
constexpr double kAsymptoticLimit = 350.0;

double sq(double v) { return v * v; }

[[noreturn]] void throw_i0_singular(double x) {
  std::ostringstream os;
  os << "I0(x) + lambda vanishes at x = " << x;
  throw SingularityError(os.str(), x);
}

[[noreturn]] void throw_node(double x) {
  std::ostringstream os;
  os << "zero mode has a node at x = " << x;
  throw NodeError(os.str(), x);
}

}  // namespace

// ---------------------------------------------------------------------------
// Lambda
// ---------------------------------------------------------------------------

Lambda::Lambda(double v) : value_(v), infinite_(std::isinf(v) && v > 0.0) {
  if (std::isnan(v) || (std::isinf(v) && v < 0.0))
    throw ArgumentError("lambda must be a real number or +infinity");
}

Lambda Lambda::infinity() { return Lambda(kInf); }

double Lambda::value() const { return infinite_ ? kInf : value_; }

bool operator==(const Lambda& a, const Lambda& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

bool operator<(const Lambda& a, const Lambda& b) {
  if (a.infinite_) return false;
  if (b.infinite_) return true;
  return a.value_ < b.value_;
}

std::string Lambda::str() const {
  if (infinite_) return "inf";
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), value_);
  (void)ec;
  return std::string(buf, p);
}

Lambda lambda_from_string(const std::string& text) {
  if (text == "inf" || text == "+inf" || text == "infinity") return Lambda::infinity();
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || p != last) throw ArgumentError("cannot parse lambda value: " + text);
  return Lambda(v);
}

// ---------------------------------------------------------------------------
// I0
// ---------------------------------------------------------------------------

namespace {

double i0_closed_form_unit(const ZeroMode& mode, double x) {
  const double h = mode.hbar();
  switch (mode.family()) {
    case Family::vacuum:
      // int_0^x e^{h y} dy
      return std::expm1(h * x) / h;
    case Family::planck:
      // int_0^x sinh^2(h y / 2) dy
      return 0.5 * (std::sinh(h * x) / h - x);
    default:
      throw UnsupportedError("closed-form I0 is available for the planck and vacuum modes only");
  }
}

}  // namespace

double i0_normalized(const ZeroMode& seed_mode, double x, I0Mode mode, double quad_tol) {
  if (mode == I0Mode::closed_form) return i0_closed_form_unit(seed_mode, x);
  const auto integrand = [&seed_mode](double y) { return sq(seed_mode.unscaled_value(y)); };
  return integrate_adaptive(integrand, 0.0, x, quad_tol).value;
}

double i0_integral(const ZeroMode& seed_mode, double x, I0Mode mode, double quad_tol) {
  return sq(seed_mode.scale()) * i0_normalized(seed_mode, x, mode, quad_tol);
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace {

I0Mode default_i0_mode(Family family) {
  return (family == Family::planck || family == Family::vacuum) ? I0Mode::closed_form
                                                                : I0Mode::quadrature;
}

void check_seed_pair(const ActionModel& seed, const ZeroMode& mode) {
  switch (seed.family()) {
    case Family::planck:
    case Family::vacuum:
    case Family::fermi_symmetric:
    case Family::general_zero_mode:
      break;
    default:
      throw ArgumentError("family seed must be a zero-mode action (planck, vacuum, fermi, general)");
  }
  if (seed.family() != mode.family())
    throw ArgumentError("seed action and seed mode families differ");
  if (seed.hbar() != mode.hbar()) throw ArgumentError("seed action and seed mode disagree on hbar");
  if (seed.family() == Family::general_zero_mode &&
      (seed.coeff_a() != mode.coeff_a() || seed.coeff_b() != mode.coeff_b()))
    throw ArgumentError("seed action and seed mode disagree on (A, B)");
}

}  // namespace

LambdaValidation validate_lambda(const ActionModel& seed, const ZeroMode& seed_mode, Lambda lambda,
                                 Interval domain, int grid_density) {
  check_seed_pair(seed, seed_mode);
  if (grid_density < 16) throw ArgumentError("validate_lambda: grid_density must be >= 16");
  if (!std::isfinite(domain.lo) || !std::isfinite(domain.hi) || !(domain.lo < domain.hi))
    throw ArgumentError("validate_lambda: domain must be bounded with lo < hi");

  LambdaValidation out;
  out.domain = domain;
  out.boundary_degenerate = !lambda.is_infinite() && lambda.value() == 0.0;
  if (lambda.is_infinite()) {
    out.valid = true;
    return out;
  }

  const I0Mode im = default_i0_mode(seed_mode.family());
  const std::vector<double> grid = linspace(domain.lo, domain.hi, grid_density);
  const double lam = lambda.value();
  const auto shifted_i0 = [&](double x) { return i0_normalized(seed_mode, x, im) + lam; };
  const auto brackets = scan_sign_change(shifted_i0, grid);
  out.violations.reserve(brackets.size());
  for (const auto& [lo, hi] : brackets) out.violations.push_back(Interval{lo, hi});
  out.valid = brackets.empty();
  return out;
}

// ---------------------------------------------------------------------------
// DarbouxFamily
// ---------------------------------------------------------------------------

DarbouxFamily::DarbouxFamily(ActionModel seed, ZeroMode seed_mode, Lambda lambda, Interval domain,
                             I0Mode i0_mode, double quad_tol)
    : seed_(std::move(seed)),
      seed_mode_(std::move(seed_mode)),
      lambda_(lambda),
      x_domain_(domain),
      i0_mode_(i0_mode),
      quad_tol_(quad_tol) {}

DarbouxFamily DarbouxFamily::create(const ActionModel& seed, const ZeroMode& seed_mode,
                                    Lambda lambda, Interval x_domain, const DarbouxOptions& opts) {
  check_seed_pair(seed, seed_mode);
  if (!std::isfinite(x_domain.lo) || !std::isfinite(x_domain.hi) || !(x_domain.lo < x_domain.hi))
    throw ArgumentError("family domain must be bounded with lo < hi");

  if (seed.family() == Family::planck && x_domain.lo <= 0.0 && !opts.allow_negative_x)
    throw ArgumentError(
        "planck-seed family is restricted to x > 0 by default; "
        "set allow_negative_x to evaluate the x < 0 branch");
  if (seed_mode.has_node() && x_domain.contains(seed_mode.node_location())) {
    std::ostringstream os;
    os << "family domain contains the zero-mode node at x = " << seed_mode.node_location();
    throw ArgumentError(os.str());
  }

  I0Mode im = opts.i0_mode.value_or(default_i0_mode(seed.family()));
  if (im == I0Mode::closed_form && seed.family() != Family::planck &&
      seed.family() != Family::vacuum)
    throw UnsupportedError("closed-form I0 is available for the planck and vacuum seeds only");

  if (!lambda.is_infinite()) {
    if (opts.strict_lambda && !(lambda.value() > 0.0))
      throw ArgumentError("strict mode requires lambda > 0 (use permissive mode to rely on the scan only)");
    const LambdaValidation validation =
        validate_lambda(seed, seed_mode, lambda, x_domain, opts.validation_grid_density);
    if (!validation.valid) {
      std::vector<std::pair<double, double>> brackets;
      brackets.reserve(validation.violations.size());
      for (const Interval& v : validation.violations) brackets.emplace_back(v.lo, v.hi);
      std::ostringstream os;
      os << "I0(x) + lambda vanishes inside the requested domain (lambda = " << lambda.str() << ")";
      throw ValidationError(os.str(), std::move(brackets));
    }
  }
  return DarbouxFamily(seed, seed_mode, lambda, x_domain, im, opts.quadrature_tol);
}

DarbouxFamily DarbouxFamily::planck_seed(double hbar, Lambda lambda, Interval x_domain,
                                         const DarbouxOptions& opts) {
  return create(ActionModel::planck(hbar), ZeroMode::planck(hbar), lambda, x_domain, opts);
}

DarbouxFamily DarbouxFamily::vacuum_seed(double hbar, Lambda lambda, Interval x_domain,
                                         const DarbouxOptions& opts) {
  return create(ActionModel::vacuum(hbar), ZeroMode::vacuum(hbar), lambda, x_domain, opts);
}

DarbouxFamily DarbouxFamily::symmetric_seed(double hbar, Lambda lambda, Interval x_domain,
                                            const DarbouxOptions& opts) {
  return create(ActionModel::fermi(hbar), ZeroMode::symmetric(hbar), lambda, x_domain, opts);
}

DarbouxFamily DarbouxFamily::general_seed(double A, double B, double hbar, Lambda lambda,
                                          Interval x_domain, const DarbouxOptions& opts) {
  return create(ActionModel::general(A, B, hbar), ZeroMode::general(A, B, hbar), lambda, x_domain,
                opts);
}

void DarbouxFamily::check_domain(double x) const {
  if (!x_domain_.contains(x)) {
    std::ostringstream os;
    os << "x = " << x << " outside the validated family domain [" << x_domain_.lo << ", "
       << x_domain_.hi << "]";
    throw DomainError(os.str(), x);
  }
}

double DarbouxFamily::i0(double x) const { return i0_normalized(seed_mode_, x, i0_mode_, quad_tol_); }

// Limit of I0 as x -> -inf (right = false) or +inf (right = true); finite
// only when the corresponding exponential is absent from the mode.
namespace {
double i0_limit(const ZeroMode& mode, bool right) {
  const double a = mode.coeff_a(), b = mode.coeff_b(), h = mode.hbar();
  if (right && a == 0.0) return b * b / h;
  if (!right && b == 0.0) return -(a * a) / h;
  return right ? kInf : -kInf;
}
}  // namespace

double DarbouxFamily::correction(double x) const {
  if (lambda_.is_infinite()) return 0.0;
  const double h = hbar();
  const double lam = lambda_.value();

  if (seed_.family() == Family::vacuum) {
    // w^2/(I0+lambda) = h / (1 + (h*lambda - 1) e^{-h x}); exact at
    // h*lambda = 1 and free of expm1 cancellation in the far tails.
    const double c = h * lam - 1.0;
    if (c == 0.0) return h;
    if (h * x < -700.0) return 0.0;  // |d| -> inf
    const double d = 1.0 + c * std::exp(-h * x);
    if (d == 0.0) throw_i0_singular(x);
    return h / d;
  }

  const double u = h * x;
  if (u > kAsymptoticLimit) return seed_mode_.coeff_a() != 0.0 ? h : 0.0;
  if (u < -kAsymptoticLimit) return seed_mode_.coeff_b() != 0.0 ? -h : 0.0;

  const double w = seed_mode_.unscaled_value(x);
  const double denom = i0(x) + lam;
  if (denom == 0.0) throw_i0_singular(x);
  return sq(w) / denom;
}

double DarbouxFamily::correction_derivative(double x) const {
  if (lambda_.is_infinite()) return 0.0;
  const double g = correction(x);
  return g * (2.0 * seed_.value(x) - g);
}

double DarbouxFamily::action_raw(double x) const {
  if (lambda_.is_infinite()) return seed_.value(x);
  return seed_.value(x) - correction(x);
}

double DarbouxFamily::action(double x) const {
  check_domain(x);
  return action_raw(x);
}

double DarbouxFamily::action_derivative(double x) const {
  check_domain(x);
  if (lambda_.is_infinite()) return seed_.derivative(x);
  return seed_.derivative(x) - correction_derivative(x);
}

double DarbouxFamily::transformed_potential(double x) const {
  check_domain(x);
  return seed_potential() - 2.0 * correction_derivative(x);
}

double DarbouxFamily::transformed_zero_mode(double x) const {
  check_domain(x);
  // The lambda = inf member degenerates to zero; the renormalized limit
  // lambda * w(x; lambda) -> w_b is the natural representative.
  if (lambda_.is_infinite()) return seed_mode_.unscaled_value(x);

  const double h = hbar();
  const double lam = lambda_.value();
  if (seed_.family() == Family::vacuum) {
    const double c = h * lam - 1.0;
    if (h * x < -700.0) {
      if (c == 0.0) return h * std::exp(-0.5 * h * x);  // honest overflow eventually
      return 0.0;  // w/(I0+lam) ~ h e^{h x/2}/c
    }
    const double d = 1.0 + c * std::exp(-h * x);
    if (d == 0.0) throw_i0_singular(x);
    return h * std::exp(-0.5 * h * x) / d;
  }

  const double u = h * x;
  if (u > kAsymptoticLimit) {
    if (seed_mode_.coeff_a() != 0.0) {  // w/(I0+lam) -> h/w
      const double sign = seed_mode_.coeff_a() > 0.0 ? 1.0 : -1.0;
      return sign * h * std::exp(-seed_mode_.log_abs_unscaled(x));
    }
    const double denom = i0_limit(seed_mode_, true) + lam;
    if (denom == 0.0) throw_i0_singular(x);
    return seed_mode_.unscaled_value(x) / denom;
  }
  if (u < -kAsymptoticLimit) {
    if (seed_mode_.coeff_b() != 0.0) {  // w/(I0+lam) -> -h/w
      const double sign = seed_mode_.coeff_b() > 0.0 ? 1.0 : -1.0;
      return -sign * h * std::exp(-seed_mode_.log_abs_unscaled(x));
    }
    const double denom = i0_limit(seed_mode_, false) + lam;
    if (denom == 0.0) throw_i0_singular(x);
    return seed_mode_.unscaled_value(x) / denom;
  }

  const double denom = i0(x) + lam;
  if (denom == 0.0) throw_i0_singular(x);
  return seed_mode_.unscaled_value(x) / denom;
}

double DarbouxFamily::log_abs_transformed_mode(double x) const {
  if (lambda_.is_infinite()) return seed_mode_.log_abs_unscaled(x);

  const double h = hbar();
  const double lam = lambda_.value();
  if (seed_.family() == Family::vacuum) {
    // log|w_lambda| = log h - h x/2 - log|1 + c e^{-h x}| via a signed
    // log-sum-exp, stable over the full double range of h x.
    const double c = h * lam - 1.0;
    double log_d = 0.0;
    if (c != 0.0) {
      const double s = std::log(std::abs(c)) - h * x;
      if (s > 50.0) {
        log_d = s;
      } else {
        const double t = (c > 0.0 ? 1.0 : -1.0) * std::exp(s);
        const double d = 1.0 + t;
        if (d == 0.0) throw_i0_singular(x);
        log_d = d > 0.0 ? std::log1p(t) : std::log(-d);
      }
    }
    return std::log(h) - 0.5 * h * x - log_d;
  }

  const double u = h * x;
  if (u > kAsymptoticLimit && seed_mode_.coeff_a() != 0.0)
    return std::log(h) - seed_mode_.log_abs_unscaled(x);
  if (u < -kAsymptoticLimit && seed_mode_.coeff_b() != 0.0)
    return std::log(h) - seed_mode_.log_abs_unscaled(x);

  double denom;
  if (u > kAsymptoticLimit)
    denom = i0_limit(seed_mode_, true) + lam;
  else if (u < -kAsymptoticLimit)
    denom = i0_limit(seed_mode_, false) + lam;
  else
    denom = i0(x) + lam;
  if (denom == 0.0) throw_i0_singular(x);
  return seed_mode_.log_abs_unscaled(x) - std::log(std::abs(denom));
}

double DarbouxFamily::v(double x) const {
  check_domain(x);
  if (seed_mode_.unscaled_value(x) == 0.0) throw_node(x);
  if (lambda_.is_infinite()) return kInf;
  return 1.0 / correction(x);
}

double DarbouxFamily::v_derivative(double x) const {
  check_domain(x);
  const double w = seed_mode_.unscaled_value(x);
  if (w == 0.0) throw_node(x);
  const double wp = seed_mode_.unscaled_derivative(x);
  const double denom = i0(x) + lambda_.value();
  // quotient rule: v' = 1 - 2 (I0 + lambda) w' / w^3; independent of the
  // v()/correction() evaluation path
  return 1.0 - 2.0 * denom * wp / (w * w * w);
}

double DarbouxFamily::seed_potential() const { return 0.25 * sq(hbar()); }

double DarbouxFamily::partner_potential(double x) const { return fermionic_partner(seed_, x); }

ActionModel DarbouxFamily::as_action() const {
  return ActionModel::darboux(
      hbar(), lambda_.value(), [fam = *this](double x) { return fam.action(x); },
      [fam = *this](double x) { return fam.action_derivative(x); });
}

// ---------------------------------------------------------------------------
// Residuals
// ---------------------------------------------------------------------------

double bosonic_residual(const ActionModel& f, double x, const std::function<double(double)>& V1) {
  return f.derivative(x) + sq(f.value(x)) - V1(x);
}

double bosonic_residual(const std::function<double(double)>& f,
                        const std::function<double(double)>& f_prime, double x,
                        const std::function<double(double)>& V1) {
  return f_prime(x) + sq(f(x)) - V1(x);
}

double fermionic_residual(const ActionModel& f, double x, const std::function<double(double)>& V2) {
  return -f.derivative(x) + sq(f.value(x)) - V2(x);
}

double bernoulli_residual(const ActionModel& f, double x, double hbar) {
  return f.derivative(x) + hbar * f.value(x) + sq(f.value(x));
}

double bernoulli_residual(const std::function<double(double)>& f,
                          const std::function<double(double)>& f_prime, double x, double hbar) {
  return f_prime(x) + hbar * f(x) + sq(f(x));
}

double fermionic_partner(const ActionModel& seed, double x) {
  return -seed.derivative(x) + sq(seed.value(x));
}

RiccatiResidualReport residual_report(ResidualKind kind, const ActionModel& f,
                                      const std::function<double(double)>& potential,
                                      std::span<const double> grid, double hbar) {
  if (grid.empty()) throw ArgumentError("residual_report: grid must not be empty");
  if (kind != ResidualKind::bernoulli && !potential)
    throw ArgumentError("residual_report: potential required for bosonic/fermionic residuals");

  RiccatiResidualReport report;
  report.kind = kind;
  report.grid.assign(grid.begin(), grid.end());
  report.max_abs_residual = -1.0;
  for (double x : grid) {
    double r = 0.0;
    switch (kind) {
      case ResidualKind::bosonic: r = bosonic_residual(f, x, potential); break;
      case ResidualKind::fermionic: r = fermionic_residual(f, x, potential); break;
      case ResidualKind::bernoulli: r = bernoulli_residual(f, x, hbar); break;
    }
    if (std::abs(r) > report.max_abs_residual) {
      report.max_abs_residual = std::abs(r);
      report.argmax_x = x;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// lambda -> infinity convergence
// ---------------------------------------------------------------------------

std::vector<ConvergenceRow> lambda_convergence_report(const ActionModel& seed,
                                                      const ZeroMode& seed_mode,
                                                      std::span<const Lambda> lambdas,
                                                      std::span<const double> grid,
                                                      const DarbouxOptions& opts) {
  if (lambdas.empty()) throw ArgumentError("lambda_convergence_report: empty lambda sequence");
  for (size_t i = 1; i < lambdas.size(); ++i)
    if (!(lambdas[i - 1] < lambdas[i]))
      throw ArgumentError("lambda_convergence_report: lambda sequence must be increasing");
  if (grid.empty()) throw ArgumentError("lambda_convergence_report: empty grid");

  const bool any_finite =
      std::any_of(lambdas.begin(), lambdas.end(), [](const Lambda& l) { return !l.is_infinite(); });
  if (any_finite && grid.size() < 2)
    throw ArgumentError("lambda_convergence_report: need >= 2 grid points for finite lambdas");

  std::vector<ConvergenceRow> rows;
  rows.reserve(lambdas.size());
  for (const Lambda& lam : lambdas) {
    ConvergenceRow row{lam, 0.0, grid.front()};
    if (!lam.is_infinite()) {
      const Interval dom{grid.front(), grid.back()};
      const DarbouxFamily family = DarbouxFamily::create(seed, seed_mode, lam, dom, opts);
      for (double x : grid) {
        const double dev = std::abs(family.action(x) - seed.value(x));
        if (dev > row.sup_deviation) {
          row.sup_deviation = dev;
          row.argmax_x = x;
        }
      }
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace oscact
