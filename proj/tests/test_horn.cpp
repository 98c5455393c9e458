#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "fracspec/errors.hpp"
#include "fracspec/horn.hpp"

using namespace fracspec;

namespace {

// Exhaustive rectangle mode enumeration straight from the shared energy
// expression; deliberately structured unlike rect loops in the library.
std::int64_t brute_rect(double hw, double lambda, std::int64_t h_min) {
  std::int64_t count = 0;
  // Energy increases in h, so the first h whose k = 1 mode misses ends it.
  for (std::int64_t h = h_min; rect_mode_energy(h, 1, hw) <= lambda; ++h) {
    for (std::int64_t k = 1; rect_mode_energy(h, k, hw) <= lambda; ++k) ++count;
  }
  return count;
}

// Slow reference for the bracket: literal slab-by-slab rectangle counts.
BracketResult brute_bracket(const HornDomain& horn, double lambda) {
  BracketResult r;
  r.lambda = lambda;
  for (std::int64_t j = 1;; ++j) {
    std::int64_t c = rectangle_count_mixed(horn.profile(static_cast<double>(j)), lambda);
    if (c == 0) break;
    r.upper += c;
    r.j_max_upper = j;
  }
  for (std::int64_t j = 1;; ++j) {
    std::int64_t c =
        rectangle_count_dirichlet(horn.profile(static_cast<double>(j + 1)), lambda);
    if (c == 0) break;
    r.lower += c;
    r.j_max_lower = j;
  }
  return r;
}

}  // namespace

TEST_CASE("mode energy closed form") {
  CHECK(rect_mode_energy(0, 1, 0.5) == doctest::Approx(M_PI * M_PI).epsilon(1e-15));
  CHECK(rect_mode_energy(1, 1, 0.5) ==
        doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-15));
  CHECK(rect_mode_energy(2, 3, 0.25) ==
        doctest::Approx(4.0 * M_PI * M_PI + 36.0 * M_PI * M_PI).epsilon(1e-15));
}

TEST_CASE("rectangle counters against brute enumeration") {
  for (double hw : {0.2, 0.3, 0.5, 1.0, 2.5, 10.0}) {
    for (double lam : {1.0, 9.87, 50.0, 171.5, 987.6, 10000.0}) {
      CAPTURE(hw);
      CAPTURE(lam);
      CHECK(rectangle_count_mixed(hw, lam) == brute_rect(hw, lam, 0));
      CHECK(rectangle_count_dirichlet(hw, lam) == brute_rect(hw, lam, 1));
    }
  }
}

TEST_CASE("rectangle counter edge cases") {
  // Smallest mixed mode of the hw = 0.5 rectangle sits exactly at pi^2.
  CHECK(rectangle_count_mixed(0.5, 0.9 * M_PI * M_PI) == 0);
  CHECK(rectangle_count_mixed(0.5, M_PI * M_PI) == 1);
  // Dirichlet needs h >= 1 on top: first mode at 2 pi^2.
  CHECK(rectangle_count_dirichlet(0.5, 1.9 * M_PI * M_PI) == 0);
  CHECK(rectangle_count_dirichlet(0.5, 2.0 * M_PI * M_PI) == 1);
  // Mixed dominates Dirichlet by exactly the number of occupied k rows.
  for (double lam : {100.0, 1234.5}) {
    std::int64_t rows = 0;
    while (rect_mode_energy(0, rows + 1, 0.7) <= lam) ++rows;
    CHECK(rectangle_count_mixed(0.7, lam) -
              rectangle_count_dirichlet(0.7, lam) ==
          rows);
  }
  CHECK(rectangle_count_mixed(0.5, 0.0) == 0);
  CHECK_THROWS_AS(rectangle_count_mixed(0.0, 10.0), Error);
  CHECK_THROWS_AS(rectangle_count_dirichlet(-1.0, 10.0), Error);
  CHECK_THROWS_AS(rectangle_count_mixed(0.5, -1.0), Error);
}

TEST_CASE("horn domain construction") {
  CHECK_NOTHROW(HornDomain(DimensionFunction::pure_power(2.0)));
  try {
    HornDomain h(DimensionFunction::pure_power(0.5));
    FAIL("expected RegimeError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::RegimeError);
  }
  CHECK_THROWS_AS(HornDomain(DimensionFunction::pure_power(2.0), 0.0), Error);
  HornDomain h(DimensionFunction::pure_power(3.0), 0.5);
  CHECK(h.profile(8.0) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("bracket equals the slab-by-slab reference") {
  for (double d : {1.5, 2.0, 3.0}) {
    HornDomain horn(DimensionFunction::pure_power(d));
    for (double lam : {50.0, 300.0, 1000.0}) {
      auto fast = horn_bracket(horn, lam);
      auto slow = brute_bracket(horn, lam);
      CHECK(fast.lower == slow.lower);
      CHECK(fast.upper == slow.upper);
      CHECK(fast.j_max_lower == slow.j_max_lower);
      CHECK(fast.j_max_upper == slow.j_max_upper);
      CHECK(fast.lower <= fast.upper);
    }
  }
  HornDomain scaled(DimensionFunction::pure_power(2.0), 0.5);
  auto fast = horn_bracket(scaled, 500.0);
  auto slow = brute_bracket(scaled, 500.0);
  CHECK(fast.lower == slow.lower);
  CHECK(fast.upper == slow.upper);
}

TEST_CASE("bracket grows with lambda and stays ordered") {
  HornDomain horn(DimensionFunction::pure_power(2.0));
  std::int64_t prev_lower = -1;
  std::int64_t prev_upper = -1;
  for (double lam : {100.0, 400.0, 1600.0, 6400.0}) {
    auto r = horn_bracket(horn, lam);
    CHECK(r.lower <= r.upper);
    CHECK(r.lower > prev_lower);
    CHECK(r.upper > prev_upper);
    prev_lower = r.lower;
    prev_upper = r.upper;
  }
}

TEST_CASE("asymptotic bound formulas") {
  HornDomain horn(DimensionFunction::pure_power(3.0), 1.0);
  double lam = 1.0e4;
  auto b = horn_asymptotic_bounds(horn, lam);
  double root = 100.0;
  CHECK(b.lower_pred ==
        doctest::Approx(0.5 * (root / M_PI) * std::pow(root / (2.0 * M_PI), 3.0))
            .epsilon(1e-12));
  CHECK(b.upper_pred ==
        doctest::Approx(1.5 * root * std::pow(2.0 * root / M_PI, 3.0)).epsilon(1e-12));
  CHECK_THROWS_AS(horn_asymptotic_bounds(horn, 0.0), Error);
  CHECK_THROWS_AS(horn_bracket(horn, -5.0), Error);
}

TEST_CASE("bracket sides respect the asymptotic envelope") {
  for (double d : {1.5, 2.0, 3.0}) {
    HornDomain horn(DimensionFunction::pure_power(d));
    double lam = 1.0e5;
    auto r = horn_bracket(horn, lam);
    auto b = horn_asymptotic_bounds(horn, lam);
    CHECK(static_cast<double>(r.lower) >= 0.8 * b.lower_pred);
    CHECK(static_cast<double>(r.upper) <= 1.2 * b.upper_pred);
  }
}
