#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fracspec/dimension.hpp"

namespace fracspec {

// How literally the tail law l_j = L g(j) is meant.
//   Exact:      l_j = L g(j) for every j >= start_index.
//   Asymptotic: l_j ~ L g(j); exact counting is unavailable.
//   TwoSided:   c1 g(j) <= l_j <= c2 g(j); only order-of-growth statements.
enum class TailMode { Exact, Asymptotic, TwoSided };

struct TailLaw {
  DimensionFunction df;
  TailMode mode = TailMode::Exact;
  double L = 1.0;
  std::int64_t start_index = 0;  // 0 = set to prefix size + 1 on construction
  double lower_const = 1.0;      // c1, TwoSided only
  double upper_const = 1.0;      // c2, TwoSided only
};

// A countable disjoint union of intervals, described by the multiset of
// lengths: an explicit nonincreasing prefix l_1 >= ... >= l_m > 0 plus an
// optional law for the remaining lengths. Interval positions never matter
// for anything computed here, so they are not modeled.
class FractalString {
 public:
  // Finite string: prefix only.
  explicit FractalString(std::vector<double> prefix);

  FractalString(std::vector<double> prefix, TailLaw tail);

  // The workhorse shape l_j = L j^{-1/d}, no prefix, exact tail.
  static FractalString power_tail(double d, double L = 1.0);

  const std::vector<double>& prefix() const { return prefix_; }
  const std::optional<TailLaw>& tail() const { return tail_; }

  bool finite_measure() const;

  // Total length sum(l_j). +infinity when the tail has d > 1. For a
  // TwoSided tail this is the nominal value of the law at c = 1.
  double measure() const { return measure_; }

  // l_j for j within the prefix or, past it, the tail law value L g(j).
  double length(std::int64_t j) const;

  // sum_{j >= start} L g(j) over the tail law; requires a finite-measure
  // tail. All consumers share this one routine (and its fixed internal
  // tolerance policy), so overlapping tails agree bit for bit.
  double tail_sum_from(std::int64_t start) const;

 private:
  std::vector<double> prefix_;
  std::optional<TailLaw> tail_;
  double measure_ = 0.0;
};

}  // namespace fracspec
