#include <doctest.h>

#include <cmath>
#include <limits>

#include "fracspec/errors.hpp"
#include "fracspec/quadrature.hpp"

using fracspec::Errc;
using fracspec::Error;
using fracspec::integrate;
using fracspec::integrate_singular;
using fracspec::integrate_to_infinity;

TEST_CASE("adaptive rule reproduces smooth closed forms") {
  auto sq = [](double x) { return x * x; };
  auto r = integrate(sq, 0.0, 1.0, 1e-14, 1e-14);
  CHECK(std::fabs(r.value - 1.0 / 3.0) < 1e-13);

  auto s = integrate([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-13, 1e-13);
  CHECK(std::fabs(s.value - 2.0) < 1e-12);
  CHECK(s.error_estimate < 1e-10);
  CHECK(s.evaluations > 0);
}

TEST_CASE("adaptive rule concentrates work near a spike") {
  // Narrow Lorentzian: integral over [-1,1] is 2 atan(1000).
  auto f = [](double x) { return 1.0 / (x * x + 1e-6); };
  auto r = integrate(f, -1.0, 1.0, 1e-9, 1e-12);
  double exact = 2e3 * std::atan(1e3);
  CHECK(std::fabs(r.value - exact) / exact < 1e-11);
}

TEST_CASE("empty interval integrates to zero") {
  auto r = integrate([](double x) { return x; }, 2.0, 2.0, 1e-12, 1e-12);
  CHECK(r.value == 0.0);
  CHECK(r.evaluations == 0);
}

TEST_CASE("singular rule handles inverse square root endpoints") {
  // int_0^1 (1-s^2)^{-1/2} ds = pi/2, singular at the right endpoint.
  auto f = [](double x, double /*da*/, double db) {
    return 1.0 / std::sqrt(db * (1.0 + x));
  };
  auto r = integrate_singular(f, 0.0, 1.0, 1e-13);
  CHECK(std::fabs(r.value - M_PI / 2.0) < 1e-12);
}

TEST_CASE("singular rule handles a log endpoint singularity") {
  // int_0^1 log(1/x) dx = 1, singular at the left endpoint.
  auto f = [](double /*x*/, double da, double /*db*/) { return -std::log(da); };
  auto r = integrate_singular(f, 0.0, 1.0, 1e-13);
  CHECK(std::fabs(r.value - 1.0) < 1e-12);
}

TEST_CASE("singular rule is exact enough on smooth integrands too") {
  auto f = [](double x, double, double) { return std::exp(x); };
  auto r = integrate_singular(f, 0.0, 1.0, 1e-13);
  CHECK(std::fabs(r.value - (std::exp(1.0) - 1.0)) < 1e-12);
}

TEST_CASE("half line integrals via the 1/x fold") {
  auto r = integrate_to_infinity([](double x) { return 1.0 / (x * x); }, 1.0, 1e-13);
  CHECK(std::fabs(r.value - 1.0) < 1e-12);

  auto s = integrate_to_infinity(
      [](double x) { return std::pow(x, -1.5); }, 1.0, 1e-13);
  CHECK(std::fabs(s.value - 2.0) < 5e-12);

  auto e = integrate_to_infinity([](double x) { return std::exp(-x); }, 1.0, 1e-13);
  CHECK(std::fabs(e.value - std::exp(-1.0)) < 1e-12);
}

TEST_CASE("half line fold survives deep tails without NaN") {
  // Large lower endpoint: the transformed integrand is evaluated at points
  // where v = a/u approaches overflow; the value must stay clean.
  for (double a : {16384.5, 1e6, 1e12}) {
    auto r = integrate_to_infinity([](double x) { return 1.0 / (x * x); }, a, 1e-16);
    CHECK(std::isfinite(r.value));
    CHECK(std::fabs(r.value - 1.0 / a) / (1.0 / a) < 1e-11);
  }
  // Slowly decaying tail: x^{-10/9} stresses the u -> 0 corner hardest.
  auto s = integrate_to_infinity(
      [](double x) { return std::pow(x, -10.0 / 9.0); }, 2.0, 1e-13);
  double exact = 9.0 * std::pow(2.0, -1.0 / 9.0);
  CHECK(std::fabs(s.value - exact) / exact < 1e-10);
}

TEST_CASE("quadrature error paths") {
  CHECK_THROWS_WITH_AS(
      integrate_to_infinity([](double x) { return x; }, 0.0, 1e-10),
      doctest::Contains("positive"), Error);

  // Unreachable tolerance on a genuinely rough integrand exhausts the
  // segment budget instead of looping forever.
  auto rough = [](double x) { return std::sqrt(std::fabs(x)); };
  try {
    integrate(rough, std::numeric_limits<double>::denorm_min(), 1.0, 1e-300, 0.0);
    FAIL("expected QuadratureNonConvergence");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::QuadratureNonConvergence);
  }
}
