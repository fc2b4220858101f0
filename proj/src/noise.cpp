#include "oscact/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

namespace oscact {

namespace {

double power_kernel(double omega, double r, double action_value) {
  return (omega / std::numbers::pi) * r * action_value;
}

DarbouxFamily make_family(const SweepSpec& spec, Lambda lambda, Interval domain) {
  switch (spec.seed_family) {
    case Family::planck: return DarbouxFamily::planck_seed(spec.hbar, lambda, domain, spec.options);
    case Family::vacuum: return DarbouxFamily::vacuum_seed(spec.hbar, lambda, domain, spec.options);
    case Family::fermi_symmetric:
      return DarbouxFamily::symmetric_seed(spec.hbar, lambda, domain, spec.options);
    case Family::general_zero_mode:
      return DarbouxFamily::general_seed(spec.A, spec.B, spec.hbar, lambda, domain, spec.options);
    default:
      throw ArgumentError("spectrum_sweep: seed must be planck, vacuum, fermi or general");
  }
}

}  // namespace

ResistanceModel ResistanceModel::constant(double R) {
  if (!(R > 0.0)) throw ArgumentError("constant resistance must be positive");
  ResistanceModel m(Kind::constant);
  m.r_ = R;
  return m;
}

ResistanceModel ResistanceModel::parallel_rlc(double R, double L, double C) {
  if (!(R > 0.0) || !(L > 0.0) || !(C > 0.0))
    throw ArgumentError("parallel RLC components must all be positive");
  ResistanceModel m(Kind::parallel_rlc);
  m.r_ = R;
  m.l_ = L;
  m.c_ = C;
  return m;
}

ResistanceModel ResistanceModel::custom(std::function<double(double, double)> r) {
  if (!r) throw ArgumentError("custom resistance model requires an evaluator");
  ResistanceModel m(Kind::custom);
  m.fn_ = std::move(r);
  return m;
}

double ResistanceModel::resonance_omega() const {
  if (kind_ != Kind::parallel_rlc) throw ArgumentError("resonance frequency: not a parallel RLC model");
  return 1.0 / std::sqrt(l_ * c_);
}

double ResistanceModel::quality_factor() const {
  if (kind_ != Kind::parallel_rlc) throw ArgumentError("quality factor: not a parallel RLC model");
  return r_ * std::sqrt(c_ / l_);
}

double ResistanceModel::operator()(double omega, double beta) const {
  if (!(omega > 0.0)) throw ArgumentError("resistance: omega must be positive");
  switch (kind_) {
    case Kind::constant: return r_;
    case Kind::parallel_rlc: {
      const double w0 = resonance_omega();
      const double q = quality_factor();
      const double detune = omega / w0 - w0 / omega;
      return r_ / (1.0 + q * q * detune * detune);
    }
    case Kind::custom: return fn_(omega, beta);
  }
  throw Error("unreachable resistance kind");
}

double resistance(const ResistanceModel& model, double omega, double beta) {
  return model(omega, beta);
}

double nyquist_power(double omega, double beta, const ResistanceModel& model, double hbar) {
  if (!(omega > 0.0)) throw ArgumentError("nyquist_power: omega must be positive");
  const double x = beta * omega;
  if (x == 0.0) throw SingularityError("nyquist_power: beta * omega must be nonzero", 0.0);
  return power_kernel(omega, model(omega, beta), planck_action(x, hbar));
}

double darboux_power(double omega, double beta, const DarbouxFamily& family,
                     const ResistanceModel& model) {
  if (!(omega > 0.0)) throw ArgumentError("darboux_power: omega must be positive");
  return power_kernel(omega, model(omega, beta), family.action(beta * omega));
}

std::string spectral_branch_name(SpectralBranch b) {
  return b == SpectralBranch::bosonic ? "bosonic" : "fermionic";
}

SpectrumTable spectrum_sweep(std::span<const double> omegas, double beta,
                             std::span<const Lambda> lambdas, const SweepSpec& spec,
                             const ResistanceModel& model) {
  if (omegas.empty()) throw ArgumentError("spectrum_sweep: empty omega grid");
  if (lambdas.empty()) throw ArgumentError("spectrum_sweep: empty lambda list");
  if (beta == 0.0) throw SingularityError("spectrum_sweep: beta must be nonzero", 0.0);
  for (double w : omegas)
    if (!(w > 0.0)) throw ArgumentError("spectrum_sweep: omega values must be positive");

  std::vector<double> ws(omegas.begin(), omegas.end());
  std::sort(ws.begin(), ws.end());
  std::vector<Lambda> ls(lambdas.begin(), lambdas.end());
  std::sort(ls.begin(), ls.end());

  // x-range the sweep will touch; a single point widens to a small interval
  // so validation has room to scan.
  double x_lo = beta * ws.front(), x_hi = beta * ws.back();
  if (x_lo > x_hi) std::swap(x_lo, x_hi);
  if (x_lo == x_hi) {
    const double pad = 1e-3 * std::max(1.0, std::abs(x_lo));
    x_lo -= pad;
    x_hi += pad;
  }
  const Interval domain{x_lo, x_hi};

  // Build (and thereby validate) every family before emitting anything.
  std::vector<DarbouxFamily> families;
  families.reserve(ls.size());
  for (const Lambda& lam : ls) families.push_back(make_family(spec, lam, domain));

  SpectrumTable table;
  table.records.reserve(ws.size() * ls.size());
  for (double omega : ws) {
    for (size_t i = 0; i < ls.size(); ++i) {
      const double r = model(omega, beta);
      const double p = darboux_power(omega, beta, families[i], model);
      table.records.push_back(SpectrumRecord{
          omega, beta, ls[i], r, p,
          p < 0.0 ? SpectralBranch::fermionic : SpectralBranch::bosonic});
    }
  }
  return table;
}

}  // namespace oscact
