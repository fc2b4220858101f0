#include "oscact/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "oscact/actions.hpp"
#include "oscact/darboux.hpp"
#include "oscact/noise.hpp"
#include "oscact/numerics.hpp"
#include "oscact/thermo.hpp"

namespace oscact {

namespace {

struct SeedPair {
  ActionModel action;
  ZeroMode mode;
};

SeedPair make_seed(Family family, double hbar, double A = 0.0, double B = 0.0) {
  switch (family) {
    case Family::planck: return {ActionModel::planck(hbar), ZeroMode::planck(hbar)};
    case Family::vacuum: return {ActionModel::vacuum(hbar), ZeroMode::vacuum(hbar)};
    case Family::fermi_symmetric: return {ActionModel::fermi(hbar), ZeroMode::symmetric(hbar)};
    case Family::general_zero_mode:
      return {ActionModel::general(A, B, hbar), ZeroMode::general(A, B, hbar)};
    default: throw ArgumentError("verify: not a seed family");
  }
}

// Largest right-subinterval of `want` on which lambda validates. I0 is
// monotone, so the region right of the last violation bracket is safe.
std::optional<Interval> usable_domain(const SeedPair& seed, Lambda lambda, Interval want,
                                      int density = 256) {
  if (lambda.is_infinite()) return want;
  LambdaValidation val = validate_lambda(seed.action, seed.mode, lambda, want, density);
  if (val.valid) return want;
  const double spacing = want.width() / (density - 1);
  const double lo = val.violations.back().hi + spacing;
  if (!(lo < want.hi)) return std::nullopt;
  val = validate_lambda(seed.action, seed.mode, lambda, Interval{lo, want.hi}, density);
  if (!val.valid) return std::nullopt;
  return Interval{lo, want.hi};
}

class Recorder {
 public:
  explicit Recorder(Suite suite) { report_.suite = suite; }

  void add(const std::string& name, double max_residual, double tolerance) {
    report_.checks.push_back(
        VerifyCheck{name, max_residual, tolerance, max_residual <= tolerance});
  }

  void add_bool(const std::string& name, bool pass) {
    report_.checks.push_back(VerifyCheck{name, pass ? 0.0 : 1.0, 0.5, pass});
  }

  VerifyReport finish() {
    report_.overall = std::all_of(report_.checks.begin(), report_.checks.end(),
                                  [](const VerifyCheck& c) { return c.pass; });
    return std::move(report_);
  }

 private:
  VerifyReport report_;
};

std::vector<double> log_grid() { return logspace(0.1, 10.0, 64); }
std::vector<double> symmetric_grid() { return linspace(-10.0, 10.0, 64); }

const double kHbarFactors[3] = {0.5, 1.0, 2.0};

// ---------------------------------------------------------------------------
// riccati suite
// ---------------------------------------------------------------------------

void run_riccati(Recorder& rec, const VerifyOptions& opts) {
  const auto lg = log_grid();
  const auto sg = symmetric_grid();

  double planck_res = 0.0, vacuum_res = 0.0, fermi_res = 0.0, thermal_res = 0.0;
  double decomposition = 0.0, product = 0.0, oddness = 0.0;
  double logderiv = 0.0;
  for (double fac : kHbarFactors) {
    const double h = fac * opts.hbar;
    const ActionModel planck = ActionModel::planck(h);
    const ActionModel vacuum = ActionModel::vacuum(h);
    const ActionModel fermi = ActionModel::fermi(h);
    const ActionModel thermal = ActionModel::thermal(h);
    const auto v1 = [h](double) { return 0.25 * h * h; };

    planck_res = std::max(
        planck_res, residual_report(ResidualKind::bosonic, planck, v1, lg, h).max_abs_residual);
    vacuum_res = std::max(
        vacuum_res, residual_report(ResidualKind::bosonic, vacuum, v1, sg, h).max_abs_residual);
    fermi_res = std::max(
        fermi_res, residual_report(ResidualKind::bosonic, fermi, v1, sg, h).max_abs_residual);
    thermal_res = std::max(
        thermal_res, residual_report(ResidualKind::bernoulli, thermal, {}, lg, h).max_abs_residual);

    const ZeroMode planck_mode = ZeroMode::planck(h);
    const ZeroMode vacuum_mode = ZeroMode::vacuum(h);
    const ZeroMode symmetric_mode = ZeroMode::symmetric(h);
    for (double x : lg) {
      const double fp = planck.value(x);
      const double ft = thermal.value(x);
      decomposition = std::max(decomposition, std::abs((fp - ft) - 0.5 * h) / (0.5 * h));
      product = std::max(product,
                         std::abs(fp * fermi.value(x) - 0.25 * h * h) / (0.25 * h * h));
      oddness = std::max(oddness, std::abs(planck.value(-x) + fp) / std::abs(fp));
      oddness = std::max(oddness,
                         std::abs(fermi.value(-x) + fermi.value(x)) / (0.5 * h));
      logderiv = std::max(logderiv, std::abs(planck_mode.log_derivative(x) - fp));
    }
    for (double x : sg) {
      logderiv = std::max(logderiv, std::abs(vacuum_mode.log_derivative(x) - 0.5 * h));
      logderiv =
          std::max(logderiv, std::abs(symmetric_mode.log_derivative(x) - fermi.value(x)));
    }
  }

  rec.add("riccati.planck.bosonic-residual", planck_res, opts.tolerance);
  rec.add("riccati.vacuum.bosonic-residual", vacuum_res, opts.tolerance);
  rec.add("riccati.fermi.bosonic-residual", fermi_res, opts.tolerance);
  rec.add("riccati.thermal.bernoulli-residual", thermal_res, opts.tolerance);
  rec.add("riccati.planck-thermal.decomposition", decomposition, 1e-13);
  rec.add("riccati.planck-fermi.product-identity", product, 1e-12);
  rec.add("riccati.oddness", oddness, 1e-13);
  rec.add("riccati.mode-log-derivative", logderiv, 1e-12);
}

// ---------------------------------------------------------------------------
// darboux suite
// ---------------------------------------------------------------------------

struct FamilyCase {
  DarbouxFamily family;
  std::vector<double> grid;
};

std::vector<FamilyCase> family_cases(Family seed_family, double hbar, bool include_inf) {
  const std::vector<double> base_lambdas = {1.0, 2.0, 10.0, 1000.0};
  std::vector<FamilyCase> cases;
  const SeedPair seed = make_seed(seed_family, hbar);
  const bool positive_only = seed_family == Family::planck;
  const Interval want =
      positive_only ? Interval{0.1, 10.0} : Interval{symmetric_grid().front(), symmetric_grid().back()};

  std::vector<Lambda> lambdas;
  for (double l : base_lambdas) lambdas.push_back(Lambda(l));
  if (include_inf) lambdas.push_back(Lambda::infinity());

  for (const Lambda& lam : lambdas) {
    const auto dom = usable_domain(seed, lam, want);
    if (!dom) continue;  // lambda forbids the whole window at this hbar
    std::vector<double> grid = positive_only ? logspace(dom->lo, dom->hi, 64)
                                             : linspace(dom->lo, dom->hi, 64);
    cases.push_back(FamilyCase{DarbouxFamily::create(seed.action, seed.mode, lam, *dom), grid});
  }
  return cases;
}

void run_darboux(Recorder& rec, const VerifyOptions& opts) {
  struct SeedSpec {
    Family family;
    const char* label;
  };
  const SeedSpec seeds[] = {{Family::planck, "planck"},
                            {Family::vacuum, "vacuum"},
                            {Family::fermi_symmetric, "symmetric"}};

  for (const SeedSpec& s : seeds) {
    double fermionic = 0.0, bosonic = 0.0, bernoulli = 0.0, logderiv_fd = 0.0, mode_ode = 0.0;
    for (double fac : kHbarFactors) {
      const double h = fac * opts.hbar;
      for (const FamilyCase& fc : family_cases(s.family, h, true)) {
        const DarbouxFamily& fam = fc.family;
        const ActionModel f_g = fam.as_action();
        const auto v2 = [&fam](double x) { return fam.partner_potential(x); };
        const auto v1g = [&fam](double x) { return fam.transformed_potential(x); };
        fermionic = std::max(
            fermionic,
            residual_report(ResidualKind::fermionic, f_g, v2, fc.grid, h).max_abs_residual);
        bosonic = std::max(
            bosonic, residual_report(ResidualKind::bosonic, f_g, v1g, fc.grid, h).max_abs_residual);
        if (!fam.lambda().is_infinite()) {
          // Normalized: the two independent paths agree to machine
          // precision relative to the term size, which reaches ~1e12 at the
          // grid corners (lambda = 1000, x = -10, hbar = 2).
          for (double x : fc.grid) {
            const double term = 2.0 * fam.v(x) * fam.seed().value(x);
            const double res = std::abs(fam.v_derivative(x) + term - 1.0);
            bernoulli = std::max(bernoulli, res / std::max(1.0, std::abs(term)));
          }
        }
        // finite-difference cross-checks on a thinned grid
        const double h_fd = 1e-5;
        for (size_t i = 2; i + 2 < fc.grid.size(); i += 8) {
          const double x = fc.grid[i];
          const double d_ln_w =
              (fam.log_abs_transformed_mode(x + h_fd) - fam.log_abs_transformed_mode(x - h_fd)) /
              (2.0 * h_fd);
          logderiv_fd = std::max(logderiv_fd, std::abs(fam.action(x) - d_ln_w));

          const double h2 = 1e-4;
          const double w0 = fam.transformed_zero_mode(x);
          const double wpp = (fam.transformed_zero_mode(x + h2) - 2.0 * w0 +
                              fam.transformed_zero_mode(x - h2)) /
                             (h2 * h2);
          mode_ode = std::max(mode_ode, std::abs(wpp / w0 - fam.transformed_potential(x)));
        }
      }
    }
    const std::string p = std::string("darboux.") + s.label;
    rec.add(p + ".fermionic-invariance", fermionic, opts.tolerance);
    rec.add(p + ".bosonic-self-consistency", bosonic, opts.tolerance);
    rec.add(p + ".bernoulli-identity", bernoulli, opts.tolerance);
    rec.add(p + ".log-derivative-fd", logderiv_fd, 1e-6);
    rec.add(p + ".mode-ode-fd", mode_ode, 1e-6);
  }

  // Closed form vs quadrature I0, |hbar x| <= 10.
  double i0_dev = 0.0;
  for (double fac : kHbarFactors) {
    const double h = fac * opts.hbar;
    for (Family fam : {Family::planck, Family::vacuum}) {
      const ZeroMode mode = make_seed(fam, h).mode;
      for (double x : linspace(-10.0 / h, 10.0 / h, 41)) {
        const double closed = i0_integral(mode, x, I0Mode::closed_form);
        const double quad = i0_integral(mode, x, I0Mode::quadrature);
        i0_dev = std::max(i0_dev, std::abs(closed - quad));
      }
    }
  }
  rec.add("darboux.i0.closed-vs-quadrature", i0_dev, 1e-9);

  // Vacuum-seed closed forms.
  double closed_form = 0.0, constant_branch = 0.0, tanh_branch = 0.0, seed_repro = 0.0;
  for (double fac : kHbarFactors) {
    const double h = fac * opts.hbar;
    const auto grid = linspace(-10.0 / h, 10.0 / h, 64);
    const Interval dom{grid.front(), grid.back()};
    for (double lam : {1.5 / h, 2.0 / h, 10.0}) {
      const DarbouxFamily fam = DarbouxFamily::vacuum_seed(h, Lambda(lam), dom);
      for (double x : grid) {
        const double ref = 0.5 * h - h * std::exp(h * x) / (std::exp(h * x) - 1.0 + h * lam);
        closed_form = std::max(closed_form, std::abs(fam.action(x) - ref));
      }
    }
    const DarbouxFamily fam_const = DarbouxFamily::vacuum_seed(h, Lambda(1.0 / h), dom);
    const DarbouxFamily fam_tanh = DarbouxFamily::vacuum_seed(h, Lambda(2.0 / h), dom);
    for (double x : grid) {
      constant_branch = std::max(constant_branch, std::abs(fam_const.action(x) + 0.5 * h));
      tanh_branch = std::max(
          tanh_branch, std::abs(fam_tanh.action(x) + 0.5 * h * std::tanh(0.5 * h * x)));
    }

    const DarbouxFamily fam_inf = DarbouxFamily::vacuum_seed(h, Lambda::infinity(), dom);
    const DarbouxFamily fam_inf_p = DarbouxFamily::planck_seed(h, Lambda::infinity(), {0.1, 10.0});
    for (double x : grid) seed_repro = std::max(seed_repro, std::abs(fam_inf.action(x) - 0.5 * h));
    for (double x : log_grid())
      seed_repro =
          std::max(seed_repro, std::abs(fam_inf_p.action(x) - planck_action(x, h)));
  }
  rec.add("darboux.vacuum.closed-form", closed_form, 1e-12);
  rec.add("darboux.vacuum.lambda-1-over-hbar", constant_branch, 1e-12);
  rec.add("darboux.vacuum.lambda-2-over-hbar", tanh_branch, 1e-12);
  rec.add("darboux.seed-reproduction", seed_repro, 0.0);

  // Forbidden lambda is detected with a bracket around the known zero.
  {
    const double h = opts.hbar;
    const SeedPair seed = make_seed(Family::vacuum, h);
    const Lambda lam(0.5 / h);
    const Interval dom{-2.0 / h, 2.0 / h};
    const LambdaValidation val = validate_lambda(seed.action, seed.mode, lam, dom, 256);
    const double x_star = std::log(0.5) / h;
    const double spacing = dom.width() / 255.0;
    double dist = 1e300;
    for (const Interval& b : val.violations)
      dist = std::min(dist, std::max({b.lo - x_star, x_star - b.hi, 0.0}));
    rec.add("darboux.validation.detects-forbidden-lambda", val.valid ? 1e300 : dist, spacing);
  }
}

// ---------------------------------------------------------------------------
// limits suite
// ---------------------------------------------------------------------------

void run_limits(Recorder& rec, const VerifyOptions& opts) {
  const double h = opts.hbar;

  // sup|f_g - f_p| halves when lambda doubles once lambda dominates
  // sup I0; start the ladder a factor 40 above it so the ratio sits in
  // [0.45, 0.55] by construction of the 1/lambda law.
  const auto ladder_check = [&](Family fam, const std::vector<double>& grid, const char* name) {
    const SeedPair seed = make_seed(fam, h);
    const I0Mode im = fam == Family::general_zero_mode ? I0Mode::quadrature : I0Mode::closed_form;
    const double sup_i0 = std::max(1.0, std::abs(i0_normalized(seed.mode, grid.back(), im)));
    const double lam0 = std::exp2(std::ceil(std::log2(std::max(10.0, 40.0 * sup_i0))));
    std::vector<Lambda> lambdas{Lambda(lam0), Lambda(2.0 * lam0), Lambda(4.0 * lam0)};
    const auto rows = lambda_convergence_report(seed.action, seed.mode, lambdas, grid);
    double worst = 0.0;
    for (size_t i = 1; i < rows.size(); ++i) {
      if (!(rows[i].sup_deviation < rows[i - 1].sup_deviation)) worst = 1e300;
      worst = std::max(worst, std::abs(rows[i].sup_deviation / rows[i - 1].sup_deviation - 0.5));
    }
    rec.add(name, worst, 0.05);
  };
  ladder_check(Family::planck, log_grid(), "limits.planck.lambda-doubling");
  ladder_check(Family::vacuum, symmetric_grid(), "limits.vacuum.lambda-doubling");

  // lambda = inf member deviates from the seed by exactly zero.
  {
    const SeedPair seed = make_seed(Family::planck, h);
    std::vector<Lambda> inf_only{Lambda::infinity()};
    const auto rows = lambda_convergence_report(seed.action, seed.mode, inf_only, log_grid());
    rec.add("limits.seed-deviation-zero", rows.front().sup_deviation, 0.0);
  }

  // Vacuum family interpolates between +hbar/2 and -hbar/2.
  {
    double worst = 0.0;
    const double X = 18.0 / h;
    for (double lam : {1.5 / h, 4.0 / h}) {
      const DarbouxFamily fam = DarbouxFamily::vacuum_seed(h, Lambda(lam), {-X, X});
      worst = std::max(worst, std::abs(fam.action(-X) - 0.5 * h));
      worst = std::max(worst, std::abs(fam.action(X) + 0.5 * h));
    }
    rec.add("limits.vacuum.interpolation", worst, 1e-6 * std::max(1.0, h));
  }
}

// ---------------------------------------------------------------------------
// entropy suite
// ---------------------------------------------------------------------------

void run_entropy(Recorder& rec, const VerifyOptions& opts) {
  const double h = opts.hbar;

  {
    double worst = 0.0;
    const ActionModel vac = ActionModel::vacuum(h);
    const ZeroMode mode = ZeroMode::vacuum(h);
    for (double x : symmetric_grid()) worst = std::max(worst, std::abs(entropy(vac, mode, x)));
    rec.add("entropy.vacuum.zero", worst, 1e-12);
  }

  {
    double worst = 0.0;
    const ActionModel planck = ActionModel::planck(h);
    const ZeroMode mode = ZeroMode::planck(h);
    for (double x : log_grid()) {
      const double oracle = x * planck.value(x) - std::log(2.0 * std::sinh(0.5 * h * x));
      worst = std::max(worst, std::abs(entropy(planck, mode, x) - oracle));
    }
    rec.add("entropy.planck.closed-form", worst, 1e-10);
  }

  {
    double worst = 0.0;
    const ActionModel planck = ActionModel::planck(h);
    const ZeroMode pmode = ZeroMode::planck(h);
    for (double x : {0.5 / h, 1.0 / h, 3.0 / h})
      worst = std::max(worst, std::abs(entropy_derivative_check(planck, pmode, x, 1e-4)));
    const DarbouxFamily fam = DarbouxFamily::vacuum_seed(h, Lambda(2.0 / h), {-10.0 / h, 10.0 / h});
    for (double x : {0.5 / h, 1.0 / h, 3.0 / h})
      worst = std::max(worst, std::abs(entropy_derivative_check(fam, x, 1e-4)));
    rec.add("entropy.derivative-identity", worst, 1e-6);
  }

  {
    // Third-law tail: S -> 0 from above, |S| decreasing over the tail.
    const ActionModel planck = ActionModel::planck(h);
    const ZeroMode mode = ZeroMode::planck(h);
    const auto grid = logspace(0.1 / h, 30.0 / h, 64);
    const EntropyProfile prof = entropy_profile(planck, mode, grid);
    double worst = 0.0;
    for (size_t i = prof.grid.size() - 10; i + 1 < prof.grid.size(); ++i) {
      worst = std::max(worst, std::abs(prof.entropy_values[i + 1]) -
                                  std::abs(prof.entropy_values[i]));
      worst = std::max(worst, -prof.entropy_values[i]);
    }
    rec.add("entropy.third-law-tail", worst, 0.0);
  }

  {
    double worst = 0.0;
    const auto grid = linspace(-18.0 / h, 18.0 / h, 601);
    for (double lam : {1.5 / h, 4.0 / h, 10.0 / h}) {
      const DarbouxFamily fam =
          DarbouxFamily::vacuum_seed(h, Lambda(lam), {grid.front(), grid.back()});
      const KinkProfile kink = kink_profile(fam, grid);
      worst = std::max(worst, std::abs(kink.left_asymptote - 0.5 * h));
      worst = std::max(worst, std::abs(kink.right_asymptote + 0.5 * h));
    }
    rec.add("entropy.kink-plateaus", worst, 1e-6 * std::max(1.0, h));
  }
}

// ---------------------------------------------------------------------------
// fdt suite
// ---------------------------------------------------------------------------

void run_fdt(Recorder& rec, const VerifyOptions& opts) {
  const double h = opts.hbar;
  const ResistanceModel r50 = ResistanceModel::constant(50.0);

  {
    // lambda = inf darboux power reduces to the Nyquist form bit-identically.
    const auto omegas = logspace(0.01, 10.0, 32);
    const double beta = 1.0;
    const DarbouxFamily fam =
        DarbouxFamily::planck_seed(h, Lambda::infinity(), {beta * omegas.front(), beta * omegas.back()});
    double worst = 0.0;
    for (double w : omegas)
      worst = std::max(worst,
                       std::abs(darboux_power(w, beta, fam, r50) - nyquist_power(w, beta, r50, h)));
    rec.add("fdt.seed-reduction-bit-identical", worst, 0.0);
  }

  {
    // Classical flat spectrum: |P pi / (R T) - 1| <= (hbar beta omega)^2 / 12.
    const double beta = 1.0;
    double worst = 0.0;
    for (double u : logspace(1e-6, 0.01, 32)) {
      const double omega = u / (h * beta);
      const double p = nyquist_power(omega, beta, r50, h);
      const double flat = std::abs(p * std::numbers::pi * beta / 50.0 - 1.0);
      worst = std::max(worst, flat - u * u / 12.0);
    }
    rec.add("fdt.classical-flatness", worst, 1e-12);
  }

  {
    const ResistanceModel rlc = ResistanceModel::parallel_rlc(100.0, 1.0, 0.01);
    const double w0 = rlc.resonance_omega();
    double worst = std::abs(rlc(w0, 1.0) - 100.0);
    for (double w : logspace(0.1 * w0, 10.0 * w0, 64))
      worst = std::max(worst, rlc(w, 1.0) - 100.0);
    rec.add("fdt.resonance-bound", worst, 0.0);
  }

  {
    // Positivity at x > 0 for the Nyquist branch; the fermionic vacuum
    // branch comes out negative and must be carried with its sign.
    bool ok = true;
    const auto omegas = logspace(0.1, 5.0, 16);
    std::vector<Lambda> lambdas{Lambda(2.0 / h), Lambda::infinity()};
    SweepSpec spec;
    spec.seed_family = Family::vacuum;
    spec.hbar = h;
    const SpectrumTable table = spectrum_sweep(omegas, 1.0, lambdas, spec, r50);
    for (const SpectrumRecord& rec_row : table.records) {
      if (rec_row.lambda.is_infinite()) {
        if (!(rec_row.power > 0.0)) ok = false;  // vacuum seed: hbar/2 branch
      } else {
        if (!(rec_row.power < 0.0)) ok = false;  // tanh branch is negative at x > 0
        if (rec_row.branch != SpectralBranch::fermionic) ok = false;
      }
    }
    for (double w : omegas)
      if (!(nyquist_power(w, 1.0, r50, h) > 0.0)) ok = false;
    rec.add_bool("fdt.sign-carried", ok);
  }
}

}  // namespace

std::string suite_name(Suite s) {
  switch (s) {
    case Suite::riccati: return "riccati";
    case Suite::darboux: return "darboux";
    case Suite::limits: return "limits";
    case Suite::entropy: return "entropy";
    case Suite::fdt: return "fdt";
    case Suite::all: return "all";
  }
  return "unknown";
}

Suite suite_from_name(const std::string& name) {
  if (name == "riccati") return Suite::riccati;
  if (name == "darboux") return Suite::darboux;
  if (name == "limits") return Suite::limits;
  if (name == "entropy") return Suite::entropy;
  if (name == "fdt") return Suite::fdt;
  if (name == "all") return Suite::all;
  throw ArgumentError("unknown verify suite: " + name);
}

VerifyReport run_suite(Suite suite, const VerifyOptions& opts) {
  if (!(opts.hbar > 0.0)) throw ArgumentError("verify: hbar must be positive");
  if (!(opts.tolerance > 0.0)) throw ArgumentError("verify: tolerance must be positive");

  Recorder rec(suite);
  if (suite == Suite::riccati || suite == Suite::all) run_riccati(rec, opts);
  if (suite == Suite::darboux || suite == Suite::all) run_darboux(rec, opts);
  if (suite == Suite::limits || suite == Suite::all) run_limits(rec, opts);
  if (suite == Suite::entropy || suite == Suite::all) run_entropy(rec, opts);
  if (suite == Suite::fdt || suite == Suite::all) run_fdt(rec, opts);
  return rec.finish();
}

}  // namespace oscact
