#pragma once

#include <functional>
#include <memory>
#include <vector>

namespace fracspec {

enum class Family { PurePower, PowerLog, PowerLogLog, Custom };

// Integrable: d in (0,1), the profile has finite area under g.
// NonIntegrable: d > 1. d = 1 belongs to neither and is rejected.
enum class Regime { Integrable, NonIntegrable };

struct HomogeneityReport {
  std::vector<double> x_values;      // the probed x sequence
  std::vector<double> max_deviation; // max_t |h(t x)/h(x) - t^d| per x
  bool pass = false;
};

// A dimension function h together with its two companion transforms
//
//     g(x) = h^{-1}(1/x),        f(x) = 1/h(1/x),
//
// so that g is strictly decreasing, f strictly increasing, and for the pure
// power h(x) = x^d they reduce to g(x) = x^{-1/d}, f(x) = x^d exactly.
//
// Families (a >= 0 is the log-correction exponent):
//   PurePower    h(x) = x^d
//   PowerLog     h(x) = x^d / log(1/x + 1)^a
//   PowerLogLog  h(x) = x^d / log(log(1/x + 1))^a   (needs x < 1/(e-1))
//   Custom       user-supplied strictly increasing evaluator
//
// Immutable after construction; safe to share across threads. All numeric
// inversion is bisection with geometric bracket growth seeded by the pure
// power approximation x^{-1/d}.
class DimensionFunction {
 public:
  static DimensionFunction pure_power(double d);
  static DimensionFunction power_log(double d, double a);
  static DimensionFunction power_log_log(double d, double a);
  static DimensionFunction custom(double d,
                                  std::function<double(double)> h_eval);

  Family family() const { return family_; }
  double d() const { return d_; }
  double a() const { return a_; }
  Regime regime() const { return regime_; }
  double tol_rel() const { return tol_rel_; }

  // h(x). Throws NonPositiveInput for x <= 0; DomainError where the family
  // formula is undefined (PowerLogLog needs log log(1/x+1) > 0) or a Custom
  // evaluator returns a non-finite value.
  double h(double x) const;

  // g(x) = h^{-1}(1/x). Closed form for PurePower, bisection otherwise.
  // Throws BracketFailure if no bracket encloses the target after expansion
  // (the symptom of a Custom h that is not increasing).
  double g(double x) const;

  // f(x) = 1/h(1/x). Strictly increasing; f(x) = x^d for PurePower.
  double f(double x) const;

  // Scaling diagnostic: for each x in x_seq reports
  // max over t_grid of |h(t x)/h(x) - t^d|; passes when the maxima are
  // eventually nonincreasing and the final one is <= tol.
  HomogeneityReport verify_homogeneity(const std::vector<double>& t_grid,
                                       const std::vector<double>& x_seq,
                                       double tol) const;

  // Integrable regime: int_x^inf g du / (x g(x)), tending to d/(1-d).
  // NonIntegrable: int_1^x g du / (x g(x)), tending to d/(d-1).
  double tail_ratio(double x) const;

 private:
  DimensionFunction() = default;

  Family family_ = Family::PurePower;
  double d_ = 0.0;
  double a_ = 0.0;
  Regime regime_ = Regime::Integrable;
  double tol_rel_ = 1e-12;
  std::function<double(double)> custom_h_;
};

}  // namespace fracspec
