#include "oscact/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace oscact {

namespace {

void require_grid(std::span<const double> grid, size_t min_points, const char* who) {
  if (grid.size() < min_points) {
    std::ostringstream os;
    os << who << ": grid needs at least " << min_points << " points";
    throw InsufficientDomainError(os.str());
  }
  for (size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw ArgumentError(std::string(who) + ": grid must be strictly increasing");
}

}  // namespace

std::string regime_name(Regime r) {
  return r == Regime::positive_T_boson ? "positive_T_boson" : "negative_T_fermion";
}

TemperatureSign temperature_sign_map(double x, double omega) {
  if (!(omega > 0.0)) throw ArgumentError("temperature_sign_map: omega must be positive");
  if (x == 0.0) throw SingularityError("temperature is infinite at x = 0", 0.0);
  const Regime regime = x < 0.0 ? Regime::negative_T_fermion : Regime::positive_T_boson;
  return TemperatureSign{x, omega, omega / x, regime};
}

double internal_energy(const ActionModel& f, double x, double omega) {
  if (!(omega > 0.0)) throw ArgumentError("internal_energy: omega must be positive");
  return omega * f.value(x);
}

double internal_energy(const DarbouxFamily& family, double x, double omega) {
  if (!(omega > 0.0)) throw ArgumentError("internal_energy: omega must be positive");
  return omega * family.action(x);
}

// ---------------------------------------------------------------------------
// Entropy
// ---------------------------------------------------------------------------

double entropy_normalization(const ActionModel& seed_action, const ZeroMode& mode) {
  if (seed_action.family() != mode.family())
    throw ArgumentError("entropy: action and zero mode families differ");
  // x f - ln|A e^{hx/2} + B e^{-hx/2}| -> -ln|A| (or -ln|B| when A = 0).
  const double a = mode.coeff_a();
  return a != 0.0 ? -std::log(std::abs(a)) : -std::log(std::abs(mode.coeff_b()));
}

double entropy_normalization(const DarbouxFamily& family) {
  if (family.lambda().is_infinite())
    return entropy_normalization(family.seed(), family.seed_mode());

  const double h = family.hbar();
  const auto phi = [&family](double x) {
    return x * family.action_raw(x) - family.log_abs_transformed_mode(x);
  };
  // The tail converges exponentially; two probes a decade of e-foldings
  // apart agreeing to ~1e-10 is a reliable limit. I0 is monotone, so the
  // probes beyond a validated right endpoint cannot cross a singularity.
  const double x1 = std::max(family.x_domain().hi, 45.0 / h);
  const double x2 = x1 + 10.0 / h;
  const double p1 = phi(x1);
  const double p2 = phi(x2);
  if (!std::isfinite(p1) || !std::isfinite(p2) ||
      std::abs(p1 - p2) > 1e-9 * std::max(1.0, std::abs(p2)))
    throw NormalizationError("entropy normalization limit did not converge at the probe points");
  return p2;
}

double entropy(const ActionModel& seed_action, const ZeroMode& mode, double x) {
  const double c = entropy_normalization(seed_action, mode);
  return x * seed_action.value(x) - mode.log_abs_unscaled(x) - c;
}

double entropy(const DarbouxFamily& family, double x) {
  if (family.lambda().is_infinite()) return entropy(family.seed(), family.seed_mode(), x);
  const double c = entropy_normalization(family);
  return x * family.action(x) - family.log_abs_transformed_mode(x) - c;
}

namespace {

template <class EntropyFn>
EntropyProfile build_profile(EntropyFn&& s, std::span<const double> grid, double c,
                             std::string label) {
  require_grid(grid, 2, "entropy_profile");
  EntropyProfile profile;
  profile.grid.assign(grid.begin(), grid.end());
  profile.entropy_values.reserve(grid.size());
  for (double x : grid) profile.entropy_values.push_back(s(x));
  profile.normalization_constant = c;
  profile.family_label = std::move(label);
  return profile;
}

}  // namespace

EntropyProfile entropy_profile(const ActionModel& seed_action, const ZeroMode& mode,
                               std::span<const double> grid) {
  const double c = entropy_normalization(seed_action, mode);
  return build_profile(
      [&](double x) { return x * seed_action.value(x) - mode.log_abs_unscaled(x) - c; }, grid, c,
      family_name(seed_action.family()) + " lambda=inf");
}

EntropyProfile entropy_profile(const DarbouxFamily& family, std::span<const double> grid) {
  if (family.lambda().is_infinite()) return entropy_profile(family.seed(), family.seed_mode(), grid);
  const double c = entropy_normalization(family);
  return build_profile(
      [&](double x) { return x * family.action(x) - family.log_abs_transformed_mode(x) - c; }, grid,
      c, family_name(family.seed().family()) + " lambda=" + family.lambda().str());
}

double entropy_derivative_check(const ActionModel& seed_action, const ZeroMode& mode, double x,
                                double h) {
  if (!(h > 0.0)) throw ArgumentError("entropy_derivative_check: step must be > 0");
  const double c = entropy_normalization(seed_action, mode);
  const auto s = [&](double y) { return y * seed_action.value(y) - mode.log_abs_unscaled(y) - c; };
  const double ds = (s(x + h) - s(x - h)) / (2.0 * h);
  return ds - x * seed_action.derivative(x);
}

double entropy_derivative_check(const DarbouxFamily& family, double x, double h) {
  if (!(h > 0.0)) throw ArgumentError("entropy_derivative_check: step must be > 0");
  if (family.lambda().is_infinite())
    return entropy_derivative_check(family.seed(), family.seed_mode(), x, h);
  const auto s = [&](double y) {
    return y * family.action(y) - family.log_abs_transformed_mode(y);
  };
  const double ds = (s(x + h) - s(x - h)) / (2.0 * h);
  return ds - x * family.action_derivative(x);
}

// ---------------------------------------------------------------------------
// Kink profile
// ---------------------------------------------------------------------------

KinkProfile kink_profile(const DarbouxFamily& family, std::span<const double> grid) {
  if (family.lambda().is_infinite())
    throw ArgumentError("kink_profile: the lambda = inf member has no kink; use a finite lambda");
  require_grid(grid, 16, "kink_profile");

  std::vector<double> f(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) f[i] = family.action(grid[i]);

  constexpr size_t kPlateauSamples = 5;
  double left = 0.0, right = 0.0;
  for (size_t i = 0; i < kPlateauSamples; ++i) {
    left += f[i];
    right += f[f.size() - 1 - i];
  }
  left /= kPlateauSamples;
  right /= kPlateauSamples;

  const double swing = right - left;
  const auto window_spread = [&](size_t begin) {
    double lo = f[begin], hi = f[begin];
    for (size_t i = begin; i < begin + kPlateauSamples; ++i) {
      lo = std::min(lo, f[i]);
      hi = std::max(hi, f[i]);
    }
    return hi - lo;
  };
  const double flat_tol = std::max(1e-6, 1e-3 * std::abs(swing));
  if (window_spread(0) > flat_tol || window_spread(f.size() - kPlateauSamples) > flat_tol)
    throw InsufficientDomainError(
        "kink_profile: grid does not reach the asymptotic plateaus (outermost samples not flat)");

  KinkProfile profile{left, right, 0.0};
  if (std::abs(swing) <= 1e-9 * std::max({1.0, std::abs(left), std::abs(right)})) return profile;

  // 10% / 90% swing crossing levels, located by linear interpolation at the
  // first crossing from the left.
  const double level_a = left + 0.1 * swing;
  const double level_b = left + 0.9 * swing;
  const auto first_crossing = [&](double level) {
    for (size_t i = 0; i + 1 < f.size(); ++i) {
      const double d0 = f[i] - level, d1 = f[i + 1] - level;
      if (d0 == 0.0) return grid[i];
      if ((d0 < 0.0) != (d1 < 0.0) || d1 == 0.0)
        return grid[i] + (grid[i + 1] - grid[i]) * d0 / (d0 - d1);
    }
    return std::numeric_limits<double>::quiet_NaN();
  };
  const double xa = first_crossing(level_a);
  const double xb = first_crossing(level_b);
  if (std::isnan(xa) || std::isnan(xb))
    throw InsufficientDomainError("kink_profile: transition levels not crossed on the grid");
  profile.transition_width = std::abs(xb - xa);
  return profile;
}

}  // namespace oscact
