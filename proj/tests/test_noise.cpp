#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oscact/noise.hpp"
#include "oscact/numerics.hpp"

using namespace oscact;

TEST_CASE("resistance: constant model") {
  const ResistanceModel r = ResistanceModel::constant(50.0);
  for (double w : {1e-3, 1.0, 1e6}) CHECK(r(w, 0.7) == 50.0);
  CHECK_THROWS_AS(r(0.0, 1.0), ArgumentError);
  CHECK_THROWS_AS(r(-1.0, 1.0), ArgumentError);
  CHECK_THROWS_AS(ResistanceModel::constant(0.0), ArgumentError);
}

TEST_CASE("resistance: parallel RLC tank") {
  // L = 1, C = 0.01 -> omega0 = 10, Q = R sqrt(C/L) = 10 at R = 100
  const ResistanceModel rlc = ResistanceModel::parallel_rlc(100.0, 1.0, 0.01);
  CHECK(rlc.resonance_omega() == doctest::Approx(10.0));
  CHECK(rlc.quality_factor() == doctest::Approx(10.0));

  CHECK(rlc(10.0, 1.0) == 100.0);  // exact at resonance
  CHECK(std::abs(rlc(20.0, 1.0) - 100.0 / 226.0) <= 1e-12);
  CHECK(rlc(20.0, 1.0) == doctest::Approx(0.442478).epsilon(1e-5));

  // bounded by R everywhere, symmetric detuning in omega/omega0
  for (double w : logspace(0.01, 1e4, 200)) {
    CHECK(rlc(w, 1.0) <= 100.0);
    CHECK(rlc(w, 1.0) > 0.0);
  }
  CHECK_THROWS_AS(ResistanceModel::parallel_rlc(100.0, -1.0, 0.01), ArgumentError);
  CHECK_THROWS_AS(ResistanceModel::constant(50.0).resonance_omega(), ArgumentError);
}

TEST_CASE("resistance: custom model sees beta") {
  const ResistanceModel r =
      ResistanceModel::custom([](double omega, double beta) { return omega * beta; });
  CHECK(r(3.0, 2.0) == 6.0);
  CHECK(resistance(r, 3.0, 2.0) == 6.0);
}

TEST_CASE("nyquist_power: classical flat, quantum zero-point, kernel cancellation") {
  const ResistanceModel r1 = ResistanceModel::constant(1.0);

  // classical limit: P -> R T / pi, T = 100
  const double p_classical = nyquist_power(0.001, 0.01, r1, 1.0);
  CHECK(p_classical == doctest::Approx(100.0 / std::numbers::pi).epsilon(1e-6));
  CHECK(p_classical == doctest::Approx(31.8310).epsilon(1e-4));

  // quantum limit: P -> omega hbar / (2 pi)
  const double p_quantum = nyquist_power(10.0, 10.0, r1, 1.0);
  CHECK(p_quantum == doctest::Approx(10.0 / (2.0 * std::numbers::pi)).epsilon(1e-12));
  CHECK(p_quantum == doctest::Approx(1.591549).epsilon(1e-6));

  // R = pi cancels the omega/pi prefactor at omega = 1
  const ResistanceModel rpi = ResistanceModel::constant(std::numbers::pi);
  CHECK(std::abs(nyquist_power(1.0, 1.0, rpi, 1.0) - planck_action(1.0, 1.0)) <= 1e-15);

  CHECK_THROWS_AS(nyquist_power(1.0, 0.0, r1, 1.0), SingularityError);
  CHECK_THROWS_AS(nyquist_power(0.0, 1.0, r1, 1.0), ArgumentError);
}

TEST_CASE("darboux_power: seed member is bit-identical to nyquist_power") {
  const ResistanceModel r = ResistanceModel::constant(50.0);
  const DarbouxFamily fam = DarbouxFamily::planck_seed(1.0, Lambda::infinity(), {0.001, 20.0});
  for (double w : logspace(0.01, 10.0, 40))
    CHECK(darboux_power(w, 1.0, fam, r) == nyquist_power(w, 1.0, r, 1.0));
}

TEST_CASE("darboux_power: fermionic vacuum branches carry their sign") {
  const ResistanceModel rpi = ResistanceModel::constant(std::numbers::pi);
  const DarbouxFamily constant = DarbouxFamily::vacuum_seed(1.0, Lambda(1.0), {-2.0, 2.0});
  CHECK(darboux_power(1.0, 1.0, constant, rpi) == doctest::Approx(-0.5).epsilon(1e-14));

  const DarbouxFamily tanh_branch = DarbouxFamily::vacuum_seed(1.0, Lambda(2.0), {-2.0, 2.0});
  CHECK(std::abs(darboux_power(1.0, 1.0, tanh_branch, rpi) + 0.2310585786300049) <= 1e-12);
}

TEST_CASE("spectrum_sweep: cardinality, ordering and the seed reference column") {
  const ResistanceModel r = ResistanceModel::constant(1.0);
  SweepSpec spec;  // planck seed, hbar 1

  std::vector<double> single{1.0};
  std::vector<Lambda> inf_only{Lambda::infinity()};
  const auto one = spectrum_sweep(single, 1.0, inf_only, spec, r);
  REQUIRE(one.records.size() == 1);
  CHECK(one.records[0].power == nyquist_power(1.0, 1.0, r, 1.0));

  std::vector<double> omegas{2.0, 0.5, 1.0};
  std::vector<Lambda> lams{Lambda::infinity(), Lambda(2.0)};
  const auto table = spectrum_sweep(omegas, 1.0, lams, spec, r);
  REQUIRE(table.records.size() == 6);
  for (size_t i = 0; i < 6; i += 2) {
    CHECK_FALSE(table.records[i].lambda.is_infinite());  // finite lambda sorts first
    CHECK(table.records[i + 1].lambda.is_infinite());
    CHECK(table.records[i].omega == table.records[i + 1].omega);
  }
  CHECK(table.records[0].omega == 0.5);
  CHECK(table.records[4].omega == 2.0);
}

TEST_CASE("spectrum_sweep: classical flatness within 1 percent") {
  const ResistanceModel r = ResistanceModel::constant(1.0);
  SweepSpec spec;
  const double temperature = 100.0;
  const double beta = 1.0 / temperature;
  const auto omegas = logspace(1e-3, 10.0, 24);  // x <= 0.1
  std::vector<Lambda> inf_only{Lambda::infinity()};
  const auto table = spectrum_sweep(omegas, beta, inf_only, spec, r);
  for (const SpectrumRecord& rec : table.records) {
    const double flat = rec.power * std::numbers::pi / temperature;
    CHECK(std::abs(flat - 1.0) <= 0.01);
    CHECK(rec.branch == SpectralBranch::bosonic);
  }
}

TEST_CASE("spectrum_sweep: negative powers are never clamped and tagged fermionic") {
  const ResistanceModel r = ResistanceModel::constant(1.0);
  SweepSpec spec;
  spec.seed_family = Family::vacuum;
  const auto omegas = logspace(0.1, 5.0, 8);
  std::vector<Lambda> lams{Lambda(2.0), Lambda::infinity()};
  const auto table = spectrum_sweep(omegas, 1.0, lams, spec, r);
  for (const SpectrumRecord& rec : table.records) {
    if (rec.lambda.is_infinite()) {
      CHECK(rec.power > 0.0);
      CHECK(rec.branch == SpectralBranch::bosonic);
    } else {
      CHECK(rec.power < 0.0);
      CHECK(rec.branch == SpectralBranch::fermionic);
    }
  }
}

TEST_CASE("spectrum_sweep: one invalid lambda rejects the whole sweep") {
  const ResistanceModel r = ResistanceModel::constant(1.0);
  SweepSpec spec;
  spec.seed_family = Family::vacuum;
  const auto omegas = logspace(0.1, 1.0, 8);
  std::vector<Lambda> lams{Lambda(10.0), Lambda(0.5)};  // 0.5 forbidden at beta = -1
  CHECK_THROWS_AS(spectrum_sweep(omegas, -1.0, lams, spec, r), ValidationError);
  CHECK_THROWS_AS(spectrum_sweep({}, 1.0, lams, spec, r), ArgumentError);
  CHECK_THROWS_AS(spectrum_sweep(omegas, 0.0, lams, spec, r), SingularityError);
}

TEST_CASE("spectrum_sweep: negative beta drives the negative-temperature branch") {
  const ResistanceModel r = ResistanceModel::constant(1.0);
  SweepSpec spec;
  spec.options.allow_negative_x = true;  // planck seed on x < 0
  const auto omegas = logspace(0.5, 2.0, 6);
  std::vector<Lambda> inf_only{Lambda::infinity()};
  const auto table = spectrum_sweep(omegas, -1.0, inf_only, spec, r);
  for (const SpectrumRecord& rec : table.records) {
    CHECK(rec.beta == -1.0);
    CHECK(rec.power < 0.0);  // odd planck action at x < 0
    CHECK(rec.branch == SpectralBranch::fermionic);
    CHECK(rec.power == nyquist_power(rec.omega, -1.0, r, 1.0));
  }
}

TEST_CASE("spectral branch names") {
  CHECK(spectral_branch_name(SpectralBranch::bosonic) == "bosonic");
  CHECK(spectral_branch_name(SpectralBranch::fermionic) == "fermionic");
}
