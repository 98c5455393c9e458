#pragma once

#include <cstdint>
#include <functional>

namespace fracspec {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::int64_t evaluations = 0;
};

// Integrand for integrate_singular. Receives the abscissa together with its
// distances to both endpoints, computed without cancellation. Integrands with
// an endpoint singularity must build the singular factor from da/db, never
// from x - a or b - x (those lose all digits once the node hugs an endpoint).
using SingularIntegrand =
    std::function<double(double x, double dist_a, double dist_b)>;

// Double-exponential (tanh-sinh) rule on [a, b]. Handles integrable endpoint
// singularities. Levels are refined until successive estimates agree within
// abs_tol; throws QuadratureNonConvergence past the level budget.
QuadratureResult integrate_singular(const SingularIntegrand& f, double a,
                                    double b, double abs_tol);

// Globally adaptive Gauss-Kronrod 15 on [a, b] for integrands that are smooth
// in the interior. Keeps a worst-segment heap, so widely separated scales
// (e.g. [1, 1e9] with a power-law integrand) refine where needed instead of
// uniformly. Stops when the summed error estimate drops below
// max(abs_tol, rel_tol * |integral|); throws QuadratureNonConvergence when
// the segment budget is exhausted first.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double abs_tol, double rel_tol);

// Improper integral over [a, inf), a > 0, via the substitution u = a/v, which
// maps the tail onto (0, 1] and hands the result to the tanh-sinh rule. The
// substituted integrand may be singular at u = 0 when f decays slowly; the
// distance-aware evaluation keeps that stable.
QuadratureResult integrate_to_infinity(const std::function<double(double)>& f,
                                       double a, double abs_tol);

}  // namespace fracspec
