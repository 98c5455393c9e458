#pragma once

#include <cstdint>

#include "fracspec/dimension.hpp"

namespace fracspec {

// Quasibounded planar domain {(x, y) : x >= 1, |y| <= L g(x)} for a profile
// g from a dimension function with d > 1: the width vanishes too slowly for
// finite area, yet fast enough that the Dirichlet spectrum stays discrete
// and the count grows like lambda^{(d+1)/2} instead of the area law.
class HornDomain {
 public:
  HornDomain(DimensionFunction df, double L = 1.0);

  const DimensionFunction& df() const { return df_; }
  double L() const { return L_; }
  double profile(double x) const { return L_ * df_.g(x); }

 private:
  DimensionFunction df_;
  double L_;
};

struct BracketResult {
  double lambda = 0.0;
  std::int64_t lower = 0;        // sum of Dirichlet rectangle counts
  std::int64_t upper = 0;        // sum of mixed rectangle counts
  std::int64_t j_max_lower = 0;  // last rectangle with a nonzero count
  std::int64_t j_max_upper = 0;
};

struct HornBounds {
  double lower_pred = 0.0;
  double upper_pred = 0.0;
};

// Mode energy of the unit-depth cross-section rectangle [0,1] x [-hw, hw]:
// (h pi)^2 + (k pi / (2 hw))^2. Exposed because exactness of the rectangle
// counters is defined relative to this one expression: any consumer that
// re-derives it with different rounding can disagree at boundary ties.
double rect_mode_energy(std::int64_t h, std::int64_t k, double half_width);

// #{(h,k) : h >= 0, k >= 1, rect_mode_energy <= lambda}: Neumann on the
// vertical sides (the h = 0 column counts). Exact integer.
std::int64_t rectangle_count_mixed(double half_width, double lambda);

// Same with h >= 1: Dirichlet on all sides.
std::int64_t rectangle_count_dirichlet(double half_width, double lambda);

// Dirichlet-Neumann bracketing through unit-width rectangle slabs:
//   sum_j dirichlet(L g(j+1))  <=  N(lambda, horn)  <=  sum_j mixed(L g(j)).
// Each sum stops at its exact per-term vanishing point (the first rectangle
// eigenvalue passes lambda); Budget if that takes more than 2^30 slabs.
BracketResult horn_bracket(const HornDomain& horn, double lambda);

// Leading-term predictions bracketing the count, no remainder correction:
//   lower_pred = 1/(d-1) * (lambda^{1/2}/pi) * f_L(lambda^{1/2}/(2 pi))
//   upper_pred = d/(d-1) * lambda^{1/2} * f_L(2 lambda^{1/2}/pi)
HornBounds horn_asymptotic_bounds(const HornDomain& horn, double lambda);

}  // namespace fracspec
