#pragma once

#include <cstdint>
#include <optional>

#include "fracspec/fractal_string.hpp"

namespace fracspec {

enum class CountAlgorithm { Naive, Hyperbola, AsymptoticOnly };

// One (lambda, p) counting query, exact and/or asymptotic pieces.
//
// With x = lambda^{1/p} / pi_p the exact count is sum_j floor(l_j x) and the
// two-term law splits it as
//
//     N(lambda) = measure * x  +  zeta(d) * f_L(x)  +  o(f_L(x))   (d < 1)
//     N(lambda) =                zeta(d) * f_L(x)  +  o(f_L(x))   (d > 1)
//
// where f_L(x) = f(L x) absorbs the tail scale.
struct CountBreakdown {
  double lambda = 0.0;
  double p = 0.0;
  std::optional<std::int64_t> exact;
  std::optional<double> weyl_term;      // measure * x, finite-measure strings
  double boundary_term = 0.0;           // zeta(d) * f_L(x); 0 if no tail
  std::optional<double> residual;       // exact - weyl - boundary
  std::int64_t cutoff_j = 0;            // largest j with l_j * x >= 1
  CountAlgorithm algorithm = CountAlgorithm::Naive;

  // Diagnostics. terms_evaluated counts length-law evaluations, the honest
  // work measure when comparing the two exact counters. guard_hits counts
  // floors where the guard band changed the answer (l_j x within one part in
  // 1e13 below an integer).
  std::int64_t terms_evaluated = 0;
  std::int64_t guard_hits = 0;

  // Two-sided order bracket, only for TwoSided tails with d > 1.
  std::optional<double> bound_lower;
  std::optional<double> bound_upper;
};

struct OscillationSample {
  std::int64_t exact = 0;
  double s_value = 0.0;  // m * exact / lambda^{d/p}, d = log m / log n
};

// pi_p = 2 (p-1)^{1/p} * int_0^1 (1 - s^p)^{-1/p} ds, the half-period of the
// p-trigonometric sine. Tanh-sinh quadrature handles the s = 1 singularity;
// absolute error <= 1e-12. Memoized per p. DomainError for p <= 1.
double pi_p(double p);

// k-th Dirichlet eigenvalue of the one-interval problem on (0, T):
// lambda_k = pi_p^p k^p / T^p.
double interval_eigenvalue(double T, double p, std::int64_t k);

// Exact count by direct summation of floor(l_j x) up to the cutoff. Needs a
// literal length law: throws InexactTail for Asymptotic/TwoSided tails.
// Throws Overflow instead of wrapping if the count leaves 64 bits.
CountBreakdown count_naive(const FractalString& s, double p, double lambda);

// Same integer, computed with O(f_L(x)^{1/(1+d)}) length-law evaluations
// instead of O(f_L(x)): counts lattice points below j -> x l_j once columnwise
// up to the curve's diagonal crossing K and once rowwise through the inverse
// law, then removes the double-counted K x K block. Bit-for-bit equal to
// count_naive by construction (shared term kernel, shared floor guard).
// Requires an empty prefix and an Exact tail.
CountBreakdown count_hyperbola(const FractalString& s, double p, double lambda);

// Two-term (d < 1) or one-term (d > 1) asymptotic law; for TwoSided tails
// with d > 1, the order bracket with the explicit constants instead. Throws
// RegimeError when no tail is present or for a TwoSided tail with d < 1.
CountBreakdown asymptotic_count(const FractalString& s, double p, double lambda);

// Predicted k-th eigenvalue for infinite-measure strings (tail d > 1):
// lambda_k = [L g(pi_p^d k / zeta(d))]^{-p}, the inverse of the one-term
// count law. RegimeError for d < 1 or TwoSided tails.
double eigenvalue_growth(const FractalString& s, double p, std::int64_t k);

// Self-similar infinite-measure example: m^k intervals of length n^{1-k} for
// each k >= 1 (m > n >= 2), so N = sum_k m^k floor(x / n^{k-1}). Returns the
// exact count and the normalized value m N / lambda^{d/p}, which oscillates
// log-periodically in lambda instead of converging. DomainError if m <= n.
OscillationSample oscillating_count(std::int64_t m, std::int64_t n, double p,
                                    double lambda);

}  // namespace fracspec
