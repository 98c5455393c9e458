#include "fracspec/summation.hpp"

#include <cmath>
#include <string>

#include "fracspec/detail/numeric.hpp"
#include "fracspec/errors.hpp"
#include "fracspec/quadrature.hpp"

namespace fracspec {

namespace {
constexpr std::int64_t kDoublingFloor = std::int64_t{1} << 10;
constexpr std::int64_t kDoublingBudget = std::int64_t{1} << 30;
}  // namespace

SummationEstimate euler_maclaurin_constant(const std::function<double(double)>& f,
                                           std::int64_t a, double target_tol) {
  if (a < 1) fail(Errc::NonPositiveInput, "truncation start a must be >= 1");
  if (!(target_tol > 0.0)) fail(Errc::NonPositiveInput, "target_tol must be positive");

  std::int64_t b = kDoublingFloor;
  while (b < a) b *= 2;

  double prev = f(static_cast<double>(b));
  while (prev > target_tol) {
    if (b > kDoublingBudget / 2) {
      fail(Errc::Budget, "f still above target at b = 2^30; refusing to double further");
    }
    b *= 2;
    double cur = f(static_cast<double>(b));
    if (cur > prev * (1.0 + 1e-12)) {
      fail(Errc::NotDecreasing,
           "f increased between doubling samples " + std::to_string(b / 2) +
               " and " + std::to_string(b));
    }
    prev = cur;
  }

  detail::KahanSum sum;
  double last = f(static_cast<double>(a));
  sum.add(last);
  for (std::int64_t j = a + 1; j <= b; ++j) {
    double v = f(static_cast<double>(j));
    // Spot-check monotonicity on the first stretch; checking every one of up
    // to 2^30 terms would double the cost for no extra signal.
    if (j - a <= 64 && v > last * (1.0 + 1e-12)) {
      fail(Errc::NotDecreasing, "f increased between consecutive integers near " +
                                    std::to_string(j));
    }
    last = v;
    sum.add(v);
  }

  QuadratureResult integral =
      integrate(f, static_cast<double>(a), static_cast<double>(b),
                1e-13 * (1.0 + std::fabs(sum.value())), 1e-11);

  SummationEstimate est;
  est.constant = sum.value() - integral.value;
  est.error_bracket = prev;
  est.b_used = b;
  return est;
}

double zeta_extended(double d, double tol) {
  if (!(d > 0.0)) fail(Errc::NonPositiveInput, "zeta_extended requires d > 0");
  if (std::fabs(d - 1.0) < 1e-9) {
    fail(Errc::PoleAtOne, "zeta has a pole at d = 1");
  }
  if (!(tol > 0.0)) fail(Errc::NonPositiveInput, "tol must be positive");

  // Midpoint-corrected truncation: error ~ (d/24) b^{-d-1}; pick b so that
  // is comfortably under tol, floor 64 so small-d cases keep headroom.
  double b_real = std::ceil(std::pow(d / (6.0 * tol), 1.0 / (d + 1.0)));
  if (!(b_real < 2.147e9)) {
    fail(Errc::Budget, "zeta_extended truncation point exceeds the term budget");
  }
  std::int64_t b = std::max<std::int64_t>(64, static_cast<std::int64_t>(b_real));

  detail::KahanSum sum;
  for (std::int64_t j = 1; j <= b; ++j) {
    sum.add(std::pow(static_cast<double>(j), -d));
  }
  double tail = std::pow(static_cast<double>(b) + 0.5, 1.0 - d) / (d - 1.0);
  return sum.value() + tail;
}

double decreasing_tail_sum(const std::function<double(double)>& f,
                           std::int64_t a, double abs_tol) {
  if (a < 1) fail(Errc::NonPositiveInput, "tail start a must be >= 1");
  if (!(abs_tol > 0.0)) fail(Errc::NonPositiveInput, "abs_tol must be positive");

  // Midpoint-rule defect of replacing sum_{j>B} f(j) by int_{B+1/2}^inf f is
  // about |f'(B)|/24, estimated by a central difference. Double B until that
  // drops under abs_tol/2.
  std::int64_t b = 1 << 12;
  while (b < a) b *= 2;
  for (;;) {
    double defect =
        (f(static_cast<double>(b) - 0.5) - f(static_cast<double>(b) + 0.5)) / 24.0;
    if (defect <= 0.5 * abs_tol) break;
    if (b > kDoublingBudget / 2) {
      fail(Errc::Budget, "tail sum could not reach the requested accuracy by b = 2^30");
    }
    b *= 2;
  }

  detail::KahanSum sum;
  for (std::int64_t j = a; j <= b; ++j) sum.add(f(static_cast<double>(j)));
  QuadratureResult q =
      integrate_to_infinity(f, static_cast<double>(b) + 0.5, 0.25 * abs_tol);
  return sum.value() + q.value;
}

}  // namespace fracspec
