#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "oscact/numerics.hpp"

using namespace oscact;

namespace {

// Independent fixed-grid oracle: composite Simpson. Fourth order, so a few
// thousand panels put smooth integrands far below the tolerances asserted
// against the adaptive result.
double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double sum = f(a) + f(b);
  for (int i = 1; i < panels; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
  return sum * h / 3.0;
}

}  // namespace

TEST_CASE("integrate_adaptive: constant integrand is exact") {
  const auto r = integrate_adaptive([](double) { return 1.0; }, 0.0, 1.0, 1e-10);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.error_bound >= 0.0);
  CHECK(r.evaluations >= 15);
}

TEST_CASE("integrate_adaptive: exp against the closed-form antiderivative") {
  const auto r = integrate_adaptive([](double y) { return std::exp(y); }, 0.0, 1.0, 1e-10);
  CHECK(std::abs(r.value - std::expm1(1.0)) <= 1e-12);
}

TEST_CASE("integrate_adaptive: sinh^2(y/2) against symbolic and fixed-grid oracles") {
  const auto f = [](double y) { return std::pow(std::sinh(0.5 * y), 2); };
  const double closed = 0.5 * (std::sinh(1.0) - 1.0);  // antiderivative (sinh(x) - x)/2
  const auto r = integrate_adaptive(f, 0.0, 1.0, 1e-10);
  CHECK(std::abs(r.value - closed) <= 1e-12);
  CHECK(std::abs(simpson(f, 0.0, 1.0, 4000) - closed) <= 1e-13);
  CHECK(closed == doctest::Approx(0.0876005968219007));
}

TEST_CASE("integrate_adaptive: degenerate and reversed intervals") {
  const auto f = [](double y) { return std::exp(y) * std::cos(y); };
  const auto zero = integrate_adaptive(f, 2.0, 2.0, 1e-10);
  CHECK(zero.value == 0.0);
  CHECK(zero.evaluations >= 1);

  const auto fwd = integrate_adaptive(f, 0.0, 2.0, 1e-10);
  const auto rev = integrate_adaptive(f, 2.0, 0.0, 1e-10);
  CHECK(rev.value == -fwd.value);  // reversal is a sign flip of the same sum
}

TEST_CASE("integrate_adaptive: additivity over a splitting point") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> in01(0.05, 0.95);
  const auto f = [](double y) { return std::exp(y) * std::sin(3.0 * y) + 2.0; };
  const double tol = 1e-10;
  const double whole = integrate_adaptive(f, -1.0, 3.0, tol).value;
  for (int i = 0; i < 50; ++i) {
    const double c = -1.0 + 4.0 * in01(rng);
    const double split =
        integrate_adaptive(f, -1.0, c, tol).value + integrate_adaptive(f, c, 3.0, tol).value;
    CHECK(std::abs(split - whole) <= 2.0 * tol);
  }
}

TEST_CASE("integrate_adaptive: determinism") {
  const auto f = [](double y) { return std::cos(10.0 * y) / (1.0 + y * y); };
  const auto a = integrate_adaptive(f, 0.0, 5.0, 1e-12);
  const auto b = integrate_adaptive(f, 0.0, 5.0, 1e-12);
  CHECK(a.value == b.value);
  CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("integrate_adaptive: error reporting") {
  CHECK_THROWS_AS(integrate_adaptive([](double) { return 1.0; }, 0.0, 1.0, 0.0), ArgumentError);
  CHECK_THROWS_AS(integrate_adaptive([](double) { return 1.0; }, 0.0, 1.0, -1e-3), ArgumentError);
  try {
    integrate_adaptive([](double y) { return 1.0 / y; }, -1.0, 1.0, 1e-10);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(e.where() == 0.0);  // the K15 center node
  }
}

TEST_CASE("derivative_central: quadratics are exact to rounding") {
  const double d = derivative_central([](double y) { return y * y; }, 3.0, 1e-4);
  CHECK(std::abs(d - 6.0) <= 1e-7);
}

TEST_CASE("derivative_central: exp at 0") {
  const double d = derivative_central([](double y) { return std::exp(y); }, 0.0, 1e-5);
  CHECK(std::abs(d - 1.0) <= 1e-9);
}

TEST_CASE("derivative_central: constants give exactly zero") {
  CHECK(derivative_central([](double) { return 4.25; }, 17.0, 1e-3) == 0.0);
  CHECK(derivative_central([](double) { return 4.25; }, -2.0) == 0.0);
}

TEST_CASE("derivative_central: O(h^2) error scaling on exp") {
  const auto f = [](double y) { return std::exp(y); };
  const double e1 = std::abs(derivative_central(f, 0.0, 1e-3) - 1.0);
  const double e2 = std::abs(derivative_central(f, 0.0, 5e-4) - 1.0);
  CHECK(e2 / e1 > 0.2);
  CHECK(e2 / e1 < 0.35);  // halving h cuts the error ~4x
}

TEST_CASE("derivative_central: argument and domain errors") {
  CHECK_THROWS_AS(derivative_central([](double y) { return y; }, 0.0, 0.0), ArgumentError);
  CHECK_THROWS_AS(derivative_central([](double y) { return std::log(y); }, 0.0, 1.0), DomainError);
}

TEST_CASE("second_derivative_central: exp") {
  const double d = second_derivative_central([](double y) { return std::exp(y); }, 0.0, 1e-4);
  CHECK(std::abs(d - 1.0) <= 1e-6);
}

TEST_CASE("stable_expm1_ratio: reference values") {
  // long-double evaluation as a higher-precision oracle
  CHECK(std::abs(stable_expm1_ratio(1.0) - static_cast<double>(1.0L / expm1l(1.0L))) <= 1e-16);
  CHECK(stable_expm1_ratio(1.0) == doctest::Approx(0.5819767068693265).epsilon(1e-14));

  // Laurent expansion 1/u - 1/2 + u/12 for small u
  const double u = 1e-8;
  const double laurent = 1.0 / u - 0.5 + u / 12.0;
  CHECK(std::abs(stable_expm1_ratio(u) - laurent) / laurent <= 1e-13);

  CHECK(stable_expm1_ratio(800.0) == 0.0);    // asymptotic branch
  CHECK(stable_expm1_ratio(-800.0) == -1.0);  // asymptotic branch
}

TEST_CASE("stable_expm1_ratio: reflection identity r(u) + r(-u) = -1") {
  for (double u : logspace(1e-9, 600.0, 200)) {
    const double r = stable_expm1_ratio(u);
    const double sum = r + stable_expm1_ratio(-u);
    CHECK(std::abs(sum + 1.0) <=
          8.0 * std::numeric_limits<double>::epsilon() * std::abs(r) + 1e-15);
  }
}

TEST_CASE("stable_expm1_ratio: singularity at zero") {
  CHECK_THROWS_AS(stable_expm1_ratio(0.0), SingularityError);
  CHECK_THROWS_AS(stable_expm1_ratio(std::nan("")), ArgumentError);
}

TEST_CASE("scan_sign_change: single root bracket") {
  const std::vector<double> grid{0.0, 1.0};
  const auto brackets = scan_sign_change([](double y) { return y - 0.5; }, grid);
  REQUIRE(brackets.size() == 1);
  CHECK(brackets[0].first == 0.0);
  CHECK(brackets[0].second == 1.0);
}

TEST_CASE("scan_sign_change: positive definite function has no brackets") {
  const auto grid = linspace(-4.0, 4.0, 33);
  CHECK(scan_sign_change([](double y) { return y * y + 1.0; }, grid).empty());
}

TEST_CASE("scan_sign_change: locates the vacuum I0 + lambda zero") {
  // I0(y) = e^y - 1 (hbar = 1); with lambda = -0.5 the zero is ln(1.5).
  const double x_star = std::log(1.5);
  const auto grid = linspace(-2.0, 2.0, 65);
  const auto brackets = scan_sign_change([](double y) { return std::expm1(y) - 0.5; }, grid);
  REQUIRE(brackets.size() == 1);
  CHECK(brackets[0].first <= x_star);
  CHECK(brackets[0].second >= x_star);
}

TEST_CASE("scan_sign_change: touching zero is reported") {
  const std::vector<double> grid{-1.0, 0.0, 1.0};
  const auto brackets = scan_sign_change([](double y) { return y * y; }, grid);
  CHECK(brackets.size() == 2);  // both pairs adjacent to the exact zero
}

TEST_CASE("scan_sign_change: errors") {
  const std::vector<double> bad{1.0, 1.0};
  CHECK_THROWS_AS(scan_sign_change([](double y) { return y; }, bad), ArgumentError);
  const std::vector<double> grid{-1.0, 1.0};
  CHECK_THROWS_AS(scan_sign_change([](double y) { return std::sqrt(y); }, grid), DomainError);
}

TEST_CASE("linspace and logspace endpoints are exact") {
  const auto lin = linspace(-3.0, 7.0, 11);
  CHECK(lin.front() == -3.0);
  CHECK(lin.back() == 7.0);
  CHECK(lin[5] == doctest::Approx(2.0));

  const auto lg = logspace(0.1, 10.0, 64);
  CHECK(lg.front() == 0.1);
  CHECK(lg.back() == 10.0);
  CHECK(lg.size() == 64);
  CHECK_THROWS_AS(logspace(-1.0, 1.0, 8), ArgumentError);
  CHECK_THROWS_AS(linspace(0.0, 1.0, 1), ArgumentError);
}
