#pragma once

#include <vector>

#include "fracspec/fractal_string.hpp"

namespace fracspec {

struct ContentEstimate {
  std::vector<double> eps_grid;  // as supplied, decreasing
  std::vector<double> values;    // scaled neighborhood measures
  double upper = 0.0;            // limsup proxy: max over the last quartile
  double lower = 0.0;            // liminf proxy: min over the last quartile
  bool measurable = false;       // (upper - lower) / upper <= 0.05
};

// Length of the inner eps-collar of the string's boundary: each interval
// contributes min(l_j, 2 eps) (two end collars of width eps, capped at the
// interval itself). The tail since the first fully-swallowed interval is the
// same analytic tail sum that measure() uses, so for 2 eps >= l_1 the result
// equals measure() to the last bit. Returns +infinity for d > 1 tails (the
// collar of an infinite-length string), never throws for those.
double tubular_measure(const FractalString& s, double eps);

// Content probes along a decreasing eps grid: values are
// eps^{-(1-d)} * tubular (exponent probe) or h(eps)/eps * tubular (general
// probe). upper/lower summarize the last quartile; measurable within 5% is a
// reporting convention, not a theorem. Throws InfiniteMeasure for d > 1.
ContentEstimate minkowski_content(const FractalString& s, double probe_d,
                                  const std::vector<double>& eps_grid);
ContentEstimate minkowski_content(const FractalString& s,
                                  const DimensionFunction& probe,
                                  const std::vector<double>& eps_grid);

// Boundary dimension estimate: the probe exponent where the scaled content
// flips from divergent to vanishing, located by bisection on the slope of
// log(value) against log(1/eps) over [d_grid.front(), d_grid.back()]. A
// finite string (dimension 0, below any grid) is recovered by extrapolating
// the slope instead. Throws NoCrossover when the estimate contradicts the
// grid on the high side or comes out meaningfully negative.
double dimension_scan(const FractalString& s, const std::vector<double>& d_grid,
                      const std::vector<double>& eps_grid);

}  // namespace fracspec
