#pragma once

#include <cstdint>
#include <functional>

namespace fracspec {

struct SummationEstimate {
  double constant = 0.0;       // the extracted limit C
  double error_bracket = 0.0;  // f(b_used): the remainder is O(f(b))
  std::int64_t b_used = 0;     // truncation point actually reached
};

// Limit C = lim_{b->inf} ( sum_{j=a}^{b} f(j) - int_a^b f(t) dt ) for a
// nonnegative, continuous, monotone decreasing f tending to zero.
//
// b doubles from 2^10 until f(b) <= target_tol, the sum is compensated, the
// integral goes through the adaptive quadrature. error_bracket reports
// f(b_used); the remainder of the limit is of that order but the sharp
// constant is not available, so treat it as a scale, not a certificate.
//
// Throws NotDecreasing when the sampled f increases along the doubling
// sequence, Budget when b would pass 2^30 before f is small enough.
SummationEstimate euler_maclaurin_constant(const std::function<double(double)>& f,
                                           std::int64_t a, double target_tol);

// Riemann zeta on (0,1) u (1,inf) through the truncated-sum representation
//
//     zeta(d) ~ sum_{j<=b} j^{-d} + (b + 1/2)^{1-d} / (d - 1),
//
// whose midpoint-corrected tail makes the error O(d b^{-d-1}) in both
// regimes: for d > 1 the correction is the integral tail of the series, for
// d < 1 it cancels the divergent part of the partial sums and the limit is
// the continued zeta. Absolute error <= tol. Throws PoleAtOne near d = 1.
double zeta_extended(double d, double tol);

// sum_{j=a}^{inf} f(j) for a decreasing integrable f: exact partial sum to a
// point B where the midpoint-rule defect is negligible, then the integral
// int_{B+1/2}^{inf} f. Shared by every consumer that must agree with another
// tail to full precision (string measure, tube volumes), so all of them see
// the same B-selection and the same quadrature.
double decreasing_tail_sum(const std::function<double(double)>& f,
                           std::int64_t a, double abs_tol);

}  // namespace fracspec
