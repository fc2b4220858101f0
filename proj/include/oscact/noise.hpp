#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "oscact/actions.hpp"
#include "oscact/darboux.hpp"

namespace oscact {

/// Resistance R(omega, beta) entering the spectral power. Built-in models
/// ignore beta; the custom kind accepts any user-supplied dependence.
class ResistanceModel {
 public:
  enum class Kind { constant, parallel_rlc, custom };

  static ResistanceModel constant(double R);
  /// Parallel RLC tank: R / (1 + Q^2 (omega/omega0 - omega0/omega)^2) with
  /// omega0 = 1/sqrt(LC) and Q = R sqrt(C/L).
  static ResistanceModel parallel_rlc(double R, double L, double C);
  static ResistanceModel custom(std::function<double(double, double)> r);

  double operator()(double omega, double beta) const;

  Kind kind() const { return kind_; }
  double r() const { return r_; }
  double inductance() const { return l_; }
  double capacitance() const { return c_; }
  double resonance_omega() const;  // parallel_rlc only
  double quality_factor() const;   // parallel_rlc only

 private:
  explicit ResistanceModel(Kind kind) : kind_(kind) {}

  Kind kind_;
  double r_ = 0.0, l_ = 0.0, c_ = 0.0;
  std::function<double(double, double)> fn_;
};

double resistance(const ResistanceModel& model, double omega, double beta);

/// Spectral power P(omega, beta) = (omega/pi) R(omega, beta) f_P(beta omega).
double nyquist_power(double omega, double beta, const ResistanceModel& model, double hbar);

/// One-parameter generalization: (omega/pi) R(omega, beta) f_g(beta omega; lambda).
/// At lambda = inf with a planck seed this is bit-identical to nyquist_power.
double darboux_power(double omega, double beta, const DarbouxFamily& family,
                     const ResistanceModel& model);

/// Sign class of a spectral record; negative power is the fermionic
/// (negative-temperature) branch and is never clamped.
enum class SpectralBranch { bosonic, fermionic };

std::string spectral_branch_name(SpectralBranch b);

struct SpectrumRecord {
  double omega = 0.0;
  double beta = 0.0;
  Lambda lambda{0.0};
  double resistance = 0.0;
  double power = 0.0;
  SpectralBranch branch = SpectralBranch::bosonic;
};

struct SpectrumTable {
  std::vector<SpectrumRecord> records;  // ordered by (omega, lambda)
};

struct SweepSpec {
  Family seed_family = Family::planck;
  double hbar = 1.0;
  double A = 0.0, B = 0.0;  // general seeds only
  DarbouxOptions options;
};

/// Full (omega, lambda) cross product. Every finite lambda is validated on
/// the x-range implied by beta and the omega grid before any record is
/// produced; one invalid lambda rejects the whole sweep (ValidationError).
SpectrumTable spectrum_sweep(std::span<const double> omegas, double beta,
                             std::span<const Lambda> lambdas, const SweepSpec& spec,
                             const ResistanceModel& model);

}  // namespace oscact
