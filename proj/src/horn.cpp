#include "fracspec/horn.hpp"

#include <cmath>

#include "fracspec/errors.hpp"

namespace fracspec {

namespace {

constexpr double kPi = 3.141592653589793;
constexpr std::int64_t kSlabBudget = std::int64_t{1} << 30;

void check_rect_inputs(double half_width, double lambda) {
  if (!(half_width > 0.0)) {
    fail(Errc::NonPositiveInput, "rectangle half-width must be positive");
  }
  if (lambda < 0.0 || !std::isfinite(lambda)) {
    fail(Errc::DomainError, "lambda must be finite and nonnegative");
  }
}

// Count modes of one rectangle. h_min = 0 gives the mixed count, 1 the
// Dirichlet count. k iterates while the h = h_min mode fits; for each k the
// largest admissible h comes from the analytic ellipse arc and is then
// corrected against rect_mode_energy itself, so every (h, k) decision is the
// shared expression, never a rearranged one.
std::int64_t rect_count(double half_width, double lambda, std::int64_t h_min) {
  std::int64_t total = 0;
  for (std::int64_t k = 1;; ++k) {
    double base = rect_mode_energy(0, k, half_width);
    if (base > lambda) break;
    double rest = lambda - base;
    double h_est = std::floor(std::sqrt(rest) / kPi);
    if (h_est >= 9.0e18) {
      fail(Errc::Overflow, "rectangle count exceeds 64-bit range");
    }
    std::int64_t h = static_cast<std::int64_t>(h_est);
    while (rect_mode_energy(h + 1, k, half_width) <= lambda) ++h;
    while (h >= 1 && rect_mode_energy(h, k, half_width) > lambda) --h;
    std::int64_t count_k = h - h_min + 1;  // modes h_min..h
    if (count_k > 0 && __builtin_add_overflow(total, count_k, &total)) {
      fail(Errc::Overflow, "rectangle count exceeds 64-bit range");
    }
  }
  return total;
}

}  // namespace

HornDomain::HornDomain(DimensionFunction df, double L) : df_(std::move(df)), L_(L) {
  if (df_.regime() != Regime::NonIntegrable) {
    fail(Errc::RegimeError,
         "a horn profile needs d > 1 (width vanishing slowly: infinite area, "
         "discrete spectrum)");
  }
  if (!(L_ > 0.0)) fail(Errc::NonPositiveInput, "profile scale L must be positive");
}

double rect_mode_energy(std::int64_t h, std::int64_t k, double half_width) {
  double hv = static_cast<double>(h) * kPi;
  double kv = static_cast<double>(k) * kPi / (2.0 * half_width);
  return hv * hv + kv * kv;
}

std::int64_t rectangle_count_mixed(double half_width, double lambda) {
  check_rect_inputs(half_width, lambda);
  return rect_count(half_width, lambda, 0);
}

std::int64_t rectangle_count_dirichlet(double half_width, double lambda) {
  check_rect_inputs(half_width, lambda);
  return rect_count(half_width, lambda, 1);
}

BracketResult horn_bracket(const HornDomain& horn, double lambda) {
  if (!(lambda > 0.0)) fail(Errc::NonPositiveInput, "lambda must be positive");

  BracketResult r;
  r.lambda = lambda;

  // Upper chain: slab j spans [j, j+1] with the wide cross-section g(j).
  for (std::int64_t j = 1;; ++j) {
    if (j > kSlabBudget) fail(Errc::Budget, "slab count exceeded 2^30");
    std::int64_t c = rectangle_count_mixed(horn.profile(static_cast<double>(j)), lambda);
    if (c == 0) break;
    if (__builtin_add_overflow(r.upper, c, &r.upper)) {
      fail(Errc::Overflow, "bracket sum exceeds 64-bit range");
    }
    r.j_max_upper = j;
  }
  // Lower chain: the narrow cross-section g(j+1), all-Dirichlet.
  for (std::int64_t j = 1;; ++j) {
    if (j > kSlabBudget) fail(Errc::Budget, "slab count exceeded 2^30");
    std::int64_t c =
        rectangle_count_dirichlet(horn.profile(static_cast<double>(j + 1)), lambda);
    if (c == 0) break;
    if (__builtin_add_overflow(r.lower, c, &r.lower)) {
      fail(Errc::Overflow, "bracket sum exceeds 64-bit range");
    }
    r.j_max_lower = j;
  }
  return r;
}

HornBounds horn_asymptotic_bounds(const HornDomain& horn, double lambda) {
  if (!(lambda > 0.0)) fail(Errc::NonPositiveInput, "lambda must be positive");
  const double d = horn.df().d();
  const double root = std::sqrt(lambda);
  auto f_L = [&horn](double x) { return horn.df().f(horn.L() * x); };
  HornBounds b;
  b.lower_pred = 1.0 / (d - 1.0) * (root / kPi) * f_L(root / (2.0 * kPi));
  b.upper_pred = d / (d - 1.0) * root * f_L(2.0 * root / kPi);
  return b;
}

}  // namespace fracspec
