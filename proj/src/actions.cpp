#include "oscact/actions.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "oscact/numerics.hpp"

namespace oscact {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Beyond this |hbar x / 2| a single exponential term can over/underflow on
// its own; switch to the signed log-sum-exp path.
constexpr double kDirectExpLimit = 350.0;

void require_hbar(double hbar) {
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw ArgumentError("hbar must be positive and finite");
}

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// s1*e^{t1} + s2*e^{t2} without spurious overflow: factor out the larger
// exponent. The result may still be a genuine +-inf.
double signed_exp_sum(double s1, double t1, double s2, double t2) {
  if (s1 == 0.0 && s2 == 0.0) return 0.0;
  if (s1 == 0.0) return s2 * std::exp(t2);
  if (s2 == 0.0) return s1 * std::exp(t1);
  const double m = std::max(t1, t2);
  const double r = s1 * std::exp(t1 - m) + s2 * std::exp(t2 - m);
  return r * std::exp(m);
}

// A e^{u} + B e^{-u} over the full double range of u.
double two_term_mode(double A, double B, double u) {
  if (std::abs(u) <= kDirectExpLimit) return A * std::exp(u) + B * std::exp(-u);
  const double t1 = A == 0.0 ? -kInf : u + std::log(std::abs(A));
  const double t2 = B == 0.0 ? -kInf : -u + std::log(std::abs(B));
  return signed_exp_sum(sgn(A), t1, sgn(B), t2);
}

double two_term_log_abs(double A, double B, double u) {
  if (A == 0.0) return std::log(std::abs(B)) - u;  // pure exponentials stay exact
  if (B == 0.0) return std::log(std::abs(A)) + u;
  if (std::abs(u) <= kDirectExpLimit) return std::log(std::abs(A * std::exp(u) + B * std::exp(-u)));
  const double t1 = u + std::log(std::abs(A));
  const double t2 = -u + std::log(std::abs(B));
  const double m = std::max(t1, t2);
  const double r = sgn(A) * std::exp(t1 - m) + sgn(B) * std::exp(t2 - m);
  return m + std::log(std::abs(r));
}

// (hbar/2) (A e^{u} - B e^{-u}) / (A e^{u} + B e^{-u}) with u = hbar x / 2,
// rearranged per sign of x so the surviving exponential always decays.
double mode_log_derivative(double A, double B, double hbar, double x) {
  double num, den;
  if (x >= 0.0) {
    const double t = std::exp(-hbar * x);  // underflows to 0 for huge x; correct limit
    num = A - B * t;
    den = A + B * t;
  } else {
    const double t = std::exp(hbar * x);
    num = A * t - B;
    den = A * t + B;
  }
  if (den == 0.0) {
    std::ostringstream os;
    os << "zero mode has a node at x = " << x;
    throw NodeError(os.str(), x);
  }
  return 0.5 * hbar * num / den;
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::planck: return "planck";
    case Family::vacuum: return "vacuum";
    case Family::thermal: return "thermal";
    case Family::fermi_symmetric: return "fermi";
    case Family::general_zero_mode: return "general";
    case Family::darboux: return "darboux";
  }
  return "unknown";
}

Family family_from_name(const std::string& name) {
  if (name == "planck") return Family::planck;
  if (name == "vacuum") return Family::vacuum;
  if (name == "thermal") return Family::thermal;
  if (name == "fermi" || name == "fermi_symmetric") return Family::fermi_symmetric;
  if (name == "general" || name == "general_zero_mode") return Family::general_zero_mode;
  if (name == "darboux") return Family::darboux;
  throw ArgumentError("unknown family name: " + name);
}

double planck_action(double x, double hbar) {
  require_hbar(hbar);
  if (x == 0.0) throw SingularityError("planck action diverges at x = 0", 0.0);
  return 0.5 * hbar + hbar * stable_expm1_ratio(hbar * x);
}

double thermal_action(double x, double hbar) {
  require_hbar(hbar);
  if (x == 0.0) throw SingularityError("thermal action diverges at x = 0", 0.0);
  return hbar * stable_expm1_ratio(hbar * x);
}

double vacuum_action(double hbar) {
  require_hbar(hbar);
  return 0.5 * hbar;
}

double fermi_action(double x, double hbar) {
  require_hbar(hbar);
  return 0.5 * hbar * std::tanh(0.5 * hbar * x);
}

ZeroModeValue general_zero_mode(double x, double A, double B, double hbar) {
  require_hbar(hbar);
  if (A == 0.0 && B == 0.0) throw ArgumentError("general_zero_mode: (A, B) must not be (0, 0)");
  const double u = 0.5 * hbar * x;
  return ZeroModeValue{two_term_mode(A, B, u), 0.5 * hbar * two_term_mode(A, -B, u)};
}

// ---------------------------------------------------------------------------
// ZeroMode
// ---------------------------------------------------------------------------

ZeroMode::ZeroMode(Family family, double A, double B, double hbar, double scale)
    : family_(family), a_(A), b_(B), hbar_(hbar), scale_(scale) {
  require_hbar(hbar);
  if (scale == 0.0 || !std::isfinite(scale)) throw ArgumentError("zero mode scale must be finite and nonzero");
  if (A == 0.0 && B == 0.0) throw ArgumentError("zero mode coefficients (A, B) must not be (0, 0)");
}

ZeroMode ZeroMode::planck(double hbar, double scale) {
  return ZeroMode(Family::planck, 0.5, -0.5, hbar, scale);
}

ZeroMode ZeroMode::vacuum(double hbar, double scale) {
  return ZeroMode(Family::vacuum, 1.0, 0.0, hbar, scale);
}

ZeroMode ZeroMode::symmetric(double hbar, double scale) {
  return ZeroMode(Family::fermi_symmetric, 0.5, 0.5, hbar, scale);
}

ZeroMode ZeroMode::general(double A, double B, double hbar, double scale) {
  return ZeroMode(Family::general_zero_mode, A, B, hbar, scale);
}

double ZeroMode::unscaled_value(double x) const { return two_term_mode(a_, b_, 0.5 * hbar_ * x); }

double ZeroMode::unscaled_derivative(double x) const {
  return 0.5 * hbar_ * two_term_mode(a_, -b_, 0.5 * hbar_ * x);
}

double ZeroMode::value(double x) const { return scale_ * unscaled_value(x); }

double ZeroMode::derivative(double x) const { return scale_ * unscaled_derivative(x); }

double ZeroMode::log_abs_unscaled(double x) const { return two_term_log_abs(a_, b_, 0.5 * hbar_ * x); }

double ZeroMode::log_derivative(double x) const { return mode_log_derivative(a_, b_, hbar_, x); }

bool ZeroMode::has_node() const { return a_ != 0.0 && b_ != 0.0 && sgn(a_) != sgn(b_); }

double ZeroMode::node_location() const {
  if (!has_node()) throw ArgumentError("zero mode has no node");
  return std::log(-b_ / a_) / hbar_;
}

double log_derivative_action(const ZeroMode& mode, double x) { return mode.log_derivative(x); }

double fermionic_zero_mode(const ZeroMode& seed_mode, double x) {
  const double w = seed_mode.value(x);
  if (w == 0.0) {
    std::ostringstream os;
    os << "fermionic zero mode pole at node x = " << x;
    throw NodeError(os.str(), x);
  }
  return 1.0 / w;
}

// ---------------------------------------------------------------------------
// ActionModel
// ---------------------------------------------------------------------------

ActionModel::ActionModel(Family family, double hbar) : family_(family), hbar_(hbar), lambda_(kInf) {
  require_hbar(hbar);
}

ActionModel ActionModel::planck(double hbar) { return ActionModel(Family::planck, hbar); }
ActionModel ActionModel::vacuum(double hbar) { return ActionModel(Family::vacuum, hbar); }
ActionModel ActionModel::thermal(double hbar) { return ActionModel(Family::thermal, hbar); }
ActionModel ActionModel::fermi(double hbar) { return ActionModel(Family::fermi_symmetric, hbar); }

ActionModel ActionModel::general(double A, double B, double hbar) {
  if (A == 0.0 && B == 0.0) throw ArgumentError("general action: (A, B) must not be (0, 0)");
  ActionModel m(Family::general_zero_mode, hbar);
  m.a_ = A;
  m.b_ = B;
  return m;
}

ActionModel ActionModel::darboux(double hbar, double lambda, std::function<double(double)> f,
                                 std::function<double(double)> f_prime) {
  if (!f) throw ArgumentError("darboux action: evaluator required");
  ActionModel m(Family::darboux, hbar);
  m.lambda_ = lambda;
  m.f_ = std::move(f);
  m.f_prime_ = std::move(f_prime);
  return m;
}

double ActionModel::value(double x) const {
  switch (family_) {
    case Family::planck: return planck_action(x, hbar_);
    case Family::vacuum: return vacuum_action(hbar_);
    case Family::thermal: return thermal_action(x, hbar_);
    case Family::fermi_symmetric: return fermi_action(x, hbar_);
    case Family::general_zero_mode: return mode_log_derivative(a_, b_, hbar_, x);
    case Family::darboux: return f_(x);
  }
  throw Error("unreachable action family");
}

double ActionModel::derivative(double x) const {
  switch (family_) {
    case Family::planck:
    case Family::thermal: {
      if (x == 0.0) throw SingularityError("action derivative diverges at x = 0", 0.0);
      const double s = std::sinh(0.5 * hbar_ * x);
      return -0.25 * hbar_ * hbar_ / (s * s);
    }
    case Family::vacuum: return 0.0;
    case Family::fermi_symmetric: {
      const double c = std::cosh(0.5 * hbar_ * x);
      return 0.25 * hbar_ * hbar_ / (c * c);
    }
    case Family::general_zero_mode: {
      // f' = hbar^2 A B / w^2: from w'' = (hbar/2)^2 w and f = w'/w.
      const double w = two_term_mode(a_, b_, 0.5 * hbar_ * x);
      if (w == 0.0) {
        std::ostringstream os;
        os << "action derivative pole at node x = " << x;
        throw NodeError(os.str(), x);
      }
      return hbar_ * hbar_ * a_ * b_ / (w * w);
    }
    case Family::darboux:
      if (f_prime_) return f_prime_(x);
      return derivative_central(f_, x, default_fd_step(x));
  }
  throw Error("unreachable action family");
}

ScaledPoint ScaledPoint::from_beta_omega(double beta, double omega) {
  if (!(omega > 0.0)) throw ArgumentError("omega must be positive");
  return ScaledPoint{beta * omega, omega, beta};
}

}  // namespace oscact
