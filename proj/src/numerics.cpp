#include "oscact/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace oscact {

namespace {

// Kronrod-15 abscissae/weights and the embedded Gauss-7 weights, as in
// QUADPACK's dqk15. Nodes are for the unit interval [-1,1]; the table is
// symmetric about 0.
constexpr double kXgk[8] = {
    0.9914553711208126,  0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911,  0.4058451513773972, 0.2077849550078985, 0.0,
};
constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502, 0.1406532597155259,
    0.1690047266392679, 0.1903505780647854, 0.2044329400752989, 0.2094821410847278,
};
constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189, 0.4179591836734694,
};

struct Panel {
  double a, b;
  double value;
  double error;
};

[[noreturn]] void throw_nonfinite(double x) {
  std::ostringstream os;
  os << "integrand is not finite at x = " << x;
  throw DomainError(os.str(), x);
}

double checked_eval(const std::function<double(double)>& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) throw_nonfinite(x);
  return y;
}

// One G7/K15 panel. Returns the K15 estimate; err receives the QUADPACK
// style refined |K15 - G7| estimate.
double kronrod_panel(const std::function<double(double)>& f, double a, double b, double& err) {
  const double center = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);

  const double fc = checked_eval(f, center);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;

  double fv[8];
  fv[7] = fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = hw * kXgk[i];
    const double y1 = checked_eval(f, center - dx);
    const double y2 = checked_eval(f, center + dx);
    const double sum = y1 + y2;
    resk += kWgk[i] * sum;
    if (i % 2 == 1) resg += kWg[i / 2] * sum;
    fv[i] = sum;
  }

  // resasc: integral of |f - mean| on the panel, used to temper the raw
  // |K - G| difference exactly as QUADPACK does.
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int i = 0; i < 7; ++i) resasc += kWgk[i] * std::abs(fv[i] - 2.0 * reskh) * 0.5;
  resasc *= std::abs(hw) * 2.0;

  const double result = resk * hw;
  double abserr = std::abs((resk - resg) * hw);
  if (resasc != 0.0 && abserr != 0.0)
    abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
  err = abserr;
  return result;
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double tol) {
  if (!(tol > 0.0)) throw ArgumentError("integrate_adaptive: tolerance must be > 0");
  if (!std::isfinite(a) || !std::isfinite(b))
    throw ArgumentError("integrate_adaptive: interval endpoints must be finite");

  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  if (a == b) {
    checked_eval(f, a);
    return QuadratureResult{0.0, 0.0, 1};
  }

  constexpr int kMaxPanels = 4000;
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  const double total_len = b - a;
  const double min_width = 8.0 * kEps * std::max({std::abs(a), std::abs(b), 1.0});

  std::vector<Panel> work;
  std::vector<Panel> done;
  long evals = 0;

  double err0 = 0.0;
  const double v0 = kronrod_panel(f, a, b, err0);
  evals += 15;
  work.push_back({a, b, v0, err0});

  while (!work.empty()) {
    const Panel p = work.back();
    work.pop_back();

    const double share = tol * ((p.b - p.a) / total_len) * 0.5;
    const double floor = 50.0 * kEps * std::abs(p.value);
    if (p.error <= std::max(share, floor) || (p.b - p.a) < min_width) {
      done.push_back(p);
      continue;
    }
    if (static_cast<int>(work.size() + done.size()) + 2 > kMaxPanels)
      throw Error("integrate_adaptive: too many subdivisions");

    const double mid = 0.5 * (p.a + p.b);
    double e1 = 0.0, e2 = 0.0;
    const double v1 = kronrod_panel(f, p.a, mid, e1);
    const double v2 = kronrod_panel(f, mid, p.b, e2);
    evals += 30;
    work.push_back({mid, p.b, v2, e2});
    work.push_back({p.a, mid, v1, e1});
  }

  // Sum left to right for a deterministic, orientation-stable total.
  std::sort(done.begin(), done.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
  double value = 0.0, error_bound = 0.0;
  for (const Panel& p : done) {
    value += p.value;
    error_bound += p.error;
  }
  return QuadratureResult{sign * value, error_bound, evals};
}

double default_fd_step(double x) {
  static const double h0 = std::cbrt(std::numeric_limits<double>::epsilon());
  return h0 * std::max(1.0, std::abs(x));
}

double derivative_central(const std::function<double(double)>& f, double x, double h) {
  if (!(h > 0.0)) throw ArgumentError("derivative_central: step must be > 0");
  const double fp = checked_eval(f, x + h);
  const double fm = checked_eval(f, x - h);
  return (fp - fm) / (2.0 * h);
}

double derivative_central(const std::function<double(double)>& f, double x) {
  return derivative_central(f, x, default_fd_step(x));
}

double second_derivative_central(const std::function<double(double)>& f, double x, double h) {
  if (!(h > 0.0)) throw ArgumentError("second_derivative_central: step must be > 0");
  const double fp = checked_eval(f, x + h);
  const double fc = checked_eval(f, x);
  const double fm = checked_eval(f, x - h);
  return (fp - 2.0 * fc + fm) / (h * h);
}

double stable_expm1_ratio(double u) {
  if (u == 0.0) throw SingularityError("1/(e^u - 1) is singular at u = 0", 0.0);
  if (std::isnan(u)) throw ArgumentError("stable_expm1_ratio: u is NaN");
  // expm1 saturates to +inf (ratio 0) and to -1 (ratio -1) outside the
  // representable range; both are the correct asymptotic branch values.
  return 1.0 / std::expm1(u);
}

std::vector<std::pair<double, double>> scan_sign_change(const std::function<double(double)>& f,
                                                        std::span<const double> grid) {
  if (grid.size() < 2) throw ArgumentError("scan_sign_change: grid needs at least 2 points");
  for (size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw ArgumentError("scan_sign_change: grid must be strictly increasing");

  std::vector<double> values(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) values[i] = checked_eval(f, grid[i]);

  std::vector<std::pair<double, double>> brackets;
  for (size_t i = 0; i + 1 < grid.size(); ++i) {
    const double fl = values[i], fr = values[i + 1];
    if (fl == 0.0 || fr == 0.0 || (fl < 0.0) != (fr < 0.0))
      brackets.emplace_back(grid[i], grid[i + 1]);
  }
  return brackets;
}

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 2) throw ArgumentError("linspace: need at least 2 points");
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
    throw ArgumentError("linspace: endpoints must be finite with lo < hi");
  std::vector<double> xs(static_cast<size_t>(count));
  const double step = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i) xs[static_cast<size_t>(i)] = lo + step * i;
  xs.front() = lo;
  xs.back() = hi;
  return xs;
}

std::vector<double> logspace(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > 0.0)) throw ArgumentError("logspace: endpoints must be positive");
  std::vector<double> xs = linspace(std::log(lo), std::log(hi), count);
  for (double& x : xs) x = std::exp(x);
  xs.front() = lo;
  xs.back() = hi;
  return xs;
}

}  // namespace oscact
