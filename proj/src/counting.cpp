#include "fracspec/counting.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "fracspec/detail/numeric.hpp"
#include "fracspec/detail/search.hpp"
#include "fracspec/errors.hpp"
#include "fracspec/parallel.hpp"
#include "fracspec/quadrature.hpp"
#include "fracspec/summation.hpp"

namespace fracspec {

namespace {

// Floor guard band: floor(y (1 + delta)) instead of floor(y). Power-law
// strings put l_j x exactly on integers all the time; binary64 rounding must
// not undercount those boundary lattice points. delta also defines the
// comparison "t >= k" used by the rowwise counter: floor(y(1+delta)) >= k is
// the same predicate as y(1+delta) >= k for integer k, which is what keeps
// the two counters bit-identical.
constexpr double kGuard = 1e-13;

constexpr std::int64_t kChunk = std::int64_t{1} << 22;

inline std::int64_t guarded_floor(double y, std::int64_t& guard_hits) {
  double fl = std::floor(y * (1.0 + kGuard));
  if (fl >= 9.0e18) fail(Errc::Overflow, "count exceeds 64-bit range");
  if (y < fl) ++guard_hits;  // the band changed the answer: log it
  return static_cast<std::int64_t>(fl);
}

double zeta_cached(double d) {
  static std::mutex mu;
  static std::map<double, double> memo;
  std::lock_guard<std::mutex> lock(mu);
  auto it = memo.find(d);
  if (it != memo.end()) return it->second;
  double v = zeta_extended(d, 1e-10);
  memo.emplace(d, v);
  return v;
}

// Term function t(j) = (x L) * kernel(j) with l_j = L g(j). Both counters and
// every predicate go through this one object, so a given j always yields the
// same double.
struct Term {
  double xs = 0.0;  // x * L
  detail::PowKernel pk;
  const DimensionFunction* df = nullptr;  // set for non-PurePower families

  double operator()(double j) const { return df ? xs * df->g(j) : xs * pk(j); }
};

Term make_term(const TailLaw& law, double x) {
  Term t;
  t.xs = x * law.L;
  if (law.df.family() == Family::PurePower) {
    t.pk = detail::PowKernel::for_dimension(law.df.d());
  } else {
    t.df = &law.df;
  }
  return t;
}

struct IntPartial {
  std::int64_t sum = 0;
  std::int64_t hits = 0;
  bool overflow = false;
};

// sum of guarded floors of xs * kern(j), j in [lo, hi] inclusive. kern must
// be nonincreasing (true of every length law), which lets each chunk prove
// from its first term that plain adds cannot overflow; otherwise the chunk
// runs checked arithmetic.
template <class Kernel>
IntPartial floor_sum_range(std::int64_t lo, std::int64_t hi, double xs,
                           Kernel kern) {
  if (hi < lo) return {};
  auto body = [xs, kern](std::int64_t a, std::int64_t b, IntPartial& part) {
    double t0 = xs * kern(static_cast<double>(a));
    double bound = (std::floor(t0 * (1.0 + kGuard)) + 1.0) *
                   static_cast<double>(b - a);
    std::int64_t s = 0;
    std::int64_t h = 0;
    if (bound < 9.0e18) {
      for (std::int64_t j = a; j < b; ++j) {
        double y = xs * kern(static_cast<double>(j));
        double fl = std::floor(y * (1.0 + kGuard));
        if (y < fl) ++h;
        s += static_cast<std::int64_t>(fl);
      }
    } else {
      for (std::int64_t j = a; j < b; ++j) {
        double y = xs * kern(static_cast<double>(j));
        double fl = std::floor(y * (1.0 + kGuard));
        if (y < fl) ++h;
        if (fl >= 9.0e18 ||
            __builtin_add_overflow(s, static_cast<std::int64_t>(fl), &s)) {
          part.overflow = true;
          return;
        }
      }
    }
    part.sum = s;
    part.hits = h;
  };
  auto combine = [](IntPartial acc, const IntPartial& p) {
    acc.overflow = acc.overflow || p.overflow ||
                   __builtin_add_overflow(acc.sum, p.sum, &acc.sum);
    acc.hits += p.hits;
    return acc;
  };
  return detail::reduce_chunked<IntPartial>(lo, hi + 1, kChunk, IntPartial{},
                                            body, combine);
}

// One instantiation per power kind so the inner loop inlines the kernel; the
// Generic/custom paths go through the slower indirect call.
IntPartial dispatch_floor_sum(const Term& t, std::int64_t lo, std::int64_t hi) {
  using K = detail::PowKernel::Kind;
  if (t.df) {
    const DimensionFunction* df = t.df;
    return floor_sum_range(lo, hi, t.xs, [df](double j) { return df->g(j); });
  }
  const double nq = t.pk.neg_q;
  switch (t.pk.kind) {
    case K::InvSquare:
      return floor_sum_range(lo, hi, t.xs, [nq](double j) {
        return detail::PowKernel::eval_kind<K::InvSquare>(j, nq);
      });
    case K::InvQuad:
      return floor_sum_range(lo, hi, t.xs, [nq](double j) {
        return detail::PowKernel::eval_kind<K::InvQuad>(j, nq);
      });
    case K::InvSqrt:
      return floor_sum_range(lo, hi, t.xs, [nq](double j) {
        return detail::PowKernel::eval_kind<K::InvSqrt>(j, nq);
      });
    case K::InvCbrt:
      return floor_sum_range(lo, hi, t.xs, [nq](double j) {
        return detail::PowKernel::eval_kind<K::InvCbrt>(j, nq);
      });
    case K::InvTwoThirds:
      return floor_sum_range(lo, hi, t.xs, [nq](double j) {
        return detail::PowKernel::eval_kind<K::InvTwoThirds>(j, nq);
      });
    case K::InvFourThirds:
      return floor_sum_range(lo, hi, t.xs, [nq](double j) {
        return detail::PowKernel::eval_kind<K::InvFourThirds>(j, nq);
      });
    case K::InvFiveHalves:
      return floor_sum_range(lo, hi, t.xs, [nq](double j) {
        return detail::PowKernel::eval_kind<K::InvFiveHalves>(j, nq);
      });
    case K::Generic:
      break;
  }
  return floor_sum_range(lo, hi, t.xs, [nq](double j) {
    return detail::PowKernel::eval_kind<K::Generic>(j, nq);
  });
}

using detail::last_true_from;

// l_j x >= k as the guarded floor sees it.
bool term_at_least(const Term& t, std::int64_t j, std::int64_t k,
                   std::int64_t& evals) {
  ++evals;
  return t(static_cast<double>(j)) * (1.0 + kGuard) >= static_cast<double>(k);
}

// Analytic estimate of the largest j with l_j x >= k: j ~ f(x L / k). May be
// unavailable (family domain) or overflow; both fall back to searching.
std::int64_t inverse_hint(const TailLaw& law, double xs, std::int64_t k) {
  try {
    double est = law.df.f(xs / static_cast<double>(k));
    if (std::isfinite(est) && est < 8.9e18) return static_cast<std::int64_t>(est);
  } catch (const Error&) {
  }
  return 0;
}

// f_L(x) = f(L x): the boundary-term argument with the tail scale absorbed.
double f_scaled(const TailLaw& law, double x) { return law.df.f(law.L * x); }

void fill_asymptotics(CountBreakdown& b, const FractalString& s, double x) {
  const auto& tail = s.tail();
  if (!tail) {
    b.weyl_term = s.measure() * x;
    b.boundary_term = 0.0;
    if (b.exact) b.residual = static_cast<double>(*b.exact) - *b.weyl_term;
    return;
  }
  if (!(x > 0.0)) {
    if (s.finite_measure()) b.weyl_term = 0.0;
    b.boundary_term = 0.0;
    if (b.exact) b.residual = static_cast<double>(*b.exact);
    return;
  }
  const double d = tail->df.d();
  if (tail->mode == TailMode::TwoSided) {
    if (d < 1.0) {
      fail(Errc::RegimeError,
           "no asymptotic statement for a two-sided tail with d < 1");
    }
    b.bound_lower = 1.0 / (d - 1.0) * f_scaled(*tail, tail->lower_const * x);
    b.bound_upper = d / (d - 1.0) * f_scaled(*tail, tail->upper_const * x);
    b.boundary_term = 0.0;
    return;
  }
  try {
    double fl = f_scaled(*tail, x);
    b.boundary_term = zeta_cached(d) * fl;
  } catch (const Error&) {
    // f undefined this far down (PowerLogLog small-x); leave the term at 0
    // and report no residual rather than a wrong one.
    b.boundary_term = 0.0;
    if (d < 1.0) b.weyl_term = s.measure() * x;
    return;
  }
  if (d < 1.0) {
    b.weyl_term = s.measure() * x;
    if (b.exact) {
      b.residual =
          static_cast<double>(*b.exact) - *b.weyl_term - b.boundary_term;
    }
  } else {
    if (b.exact) {
      b.residual = static_cast<double>(*b.exact) - b.boundary_term;
    }
  }
}

void check_lambda(double lambda) {
  if (lambda < 0.0 || !std::isfinite(lambda)) {
    fail(Errc::DomainError, "lambda must be finite and nonnegative");
  }
}

}  // namespace

double pi_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    fail(Errc::DomainError, "pi_p requires 1 < p < infinity");
  }
  static std::mutex mu;
  static std::map<double, double> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(p);
    if (it != memo.end()) return it->second;
  }
  // integrand (1 - s^p)^{-1/p}; 1 - s^p from whichever endpoint distance is
  // accurate: s = 1 - db near the singular end, s = da near zero.
  auto f = [p](double, double da, double db) {
    double log_s = db <= da ? std::log1p(-db) : std::log(da);
    double one_minus_sp = -std::expm1(p * log_s);
    return std::pow(one_minus_sp, -1.0 / p);
  };
  QuadratureResult q = integrate_singular(f, 0.0, 1.0, 1e-13);
  double value = 2.0 * std::pow(p - 1.0, 1.0 / p) * q.value;
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(p, value);
  return value;
}

double interval_eigenvalue(double T, double p, std::int64_t k) {
  if (!(T > 0.0)) fail(Errc::DomainError, "interval length T must be positive");
  if (k < 1) fail(Errc::DomainError, "eigenvalue index k must be >= 1");
  double pp = pi_p(p);  // validates p
  return std::pow(pp * static_cast<double>(k) / T, p);
}

CountBreakdown count_naive(const FractalString& s, double p, double lambda) {
  check_lambda(lambda);
  const double pp = pi_p(p);
  const double x = lambda > 0.0 ? std::pow(lambda, 1.0 / p) / pp : 0.0;

  CountBreakdown b;
  b.lambda = lambda;
  b.p = p;
  b.algorithm = CountAlgorithm::Naive;

  std::int64_t sum = 0;
  for (std::size_t i = 0; i < s.prefix().size(); ++i) {
    double y = s.prefix()[i] * x;
    std::int64_t fl = guarded_floor(y, b.guard_hits);
    ++b.terms_evaluated;
    if (fl >= 1) b.cutoff_j = static_cast<std::int64_t>(i) + 1;
    if (__builtin_add_overflow(sum, fl, &sum)) {
      fail(Errc::Overflow, "count exceeds 64-bit range");
    }
  }

  if (s.tail()) {
    const TailLaw& law = *s.tail();
    if (law.mode != TailMode::Exact) {
      fail(Errc::InexactTail,
           "exact counting needs a literal tail law (mode Exact)");
    }
    Term term = make_term(law, x);
    const std::int64_t j0 = law.start_index;
    if (x > 0.0 && term_at_least(term, j0, 1, b.terms_evaluated)) {
      std::int64_t hint = inverse_hint(law, term.xs, 1);
      std::int64_t J = last_true_from(j0, hint, [&](std::int64_t j) {
        return term_at_least(term, j, 1, b.terms_evaluated);
      });
      IntPartial part = dispatch_floor_sum(term, j0, J);
      b.terms_evaluated += J - j0 + 1;
      b.guard_hits += part.hits;
      if (part.overflow || __builtin_add_overflow(sum, part.sum, &sum)) {
        fail(Errc::Overflow, "count exceeds 64-bit range");
      }
      b.cutoff_j = J;
    }
  }

  b.exact = sum;
  fill_asymptotics(b, s, x);
  return b;
}

CountBreakdown count_hyperbola(const FractalString& s, double p, double lambda) {
  check_lambda(lambda);
  if (!s.tail()) {
    fail(Errc::DomainError, "hyperbola counting needs a tail law over all j");
  }
  const TailLaw& law = *s.tail();
  if (law.mode != TailMode::Exact) {
    fail(Errc::InexactTail, "exact counting needs a literal tail law (mode Exact)");
  }
  if (!s.prefix().empty()) {
    fail(Errc::DomainError,
         "hyperbola counting requires the law to cover all j (empty prefix)");
  }

  const double pp = pi_p(p);
  const double x = lambda > 0.0 ? std::pow(lambda, 1.0 / p) / pp : 0.0;

  CountBreakdown b;
  b.lambda = lambda;
  b.p = p;
  b.algorithm = CountAlgorithm::Hyperbola;

  Term term = make_term(law, x);
  if (!(x > 0.0) || !term_at_least(term, 1, 1, b.terms_evaluated)) {
    b.exact = 0;
    fill_asymptotics(b, s, x);
    return b;
  }

  // Split point K: the diagonal crossing x l(K) = K, by bisection. Any split
  // is correct (the identity below holds for every A >= 1); K only sets the
  // work balance at ~sqrt of the naive term count.
  auto phi = [&](double K) {
    ++b.terms_evaluated;
    return term(K) - K;
  };
  std::int64_t A = 1;
  if (phi(1.0) >= 0.0) {
    double lo = 1.0;
    double hi = 2.0;
    try {
      double fe = f_scaled(law, x);
      if (std::isfinite(fe) && fe > hi) hi = fe;
    } catch (const Error&) {
    }
    int guard = 0;
    while (phi(hi) > 0.0) {
      hi *= 2.0;
      if (++guard > 200) {
        fail(Errc::InverseFailure, "no upper bracket for the diagonal crossing");
      }
    }
    for (int it = 0; it < 200 && hi - lo > 1e-9; ++it) {
      double mid = 0.5 * (lo + hi);
      (phi(mid) > 0.0 ? lo : hi) = mid;
    }
    A = static_cast<std::int64_t>(std::floor(lo));
    if (A < 1) A = 1;
  }

  // Columnwise part: j = 1..A below the curve.
  IntPartial cols = dispatch_floor_sum(term, 1, A);
  b.terms_evaluated += A;
  b.guard_hits += cols.hits;
  if (cols.overflow) fail(Errc::Overflow, "count exceeds 64-bit range");
  std::int64_t sum = cols.sum;

  // Rowwise part: every k = 1..B with B = floor(x l(A+1)) contributes the
  // lattice points at j > A on row k, i.e. (largest j with x l(j) >= k) - A.
  // Rows above B have no points past column A, so the two sweeps cover each
  // lattice point exactly once; the A x B block below the crossing is what
  // both sweeps see, which the "- A" per row removes.
  std::int64_t B = guarded_floor(term(static_cast<double>(A + 1)), b.guard_hits);
  ++b.terms_evaluated;
  std::int64_t widest_row = 0;
  for (std::int64_t k = 1; k <= B; ++k) {
    std::int64_t hint = inverse_hint(law, term.xs, k);
    std::int64_t jk = last_true_from(A + 1, hint, [&](std::int64_t j) {
      return term_at_least(term, j, k, b.terms_evaluated);
    });
    if (k == 1) widest_row = jk;
    if (__builtin_add_overflow(sum, jk - A, &sum)) {
      fail(Errc::Overflow, "count exceeds 64-bit range");
    }
  }

  b.exact = sum;
  b.cutoff_j = B >= 1 ? widest_row : A;
  fill_asymptotics(b, s, x);
  return b;
}

CountBreakdown asymptotic_count(const FractalString& s, double p, double lambda) {
  if (!(lambda > 0.0)) fail(Errc::NonPositiveInput, "lambda must be positive");
  if (!s.tail()) {
    fail(Errc::RegimeError, "asymptotic laws need a tail; finite strings have none");
  }
  const double pp = pi_p(p);
  const double x = std::pow(lambda, 1.0 / p) / pp;

  CountBreakdown b;
  b.lambda = lambda;
  b.p = p;
  b.algorithm = CountAlgorithm::AsymptoticOnly;
  fill_asymptotics(b, s, x);

  // Nominal cutoff under the law (exact for mode Exact).
  Term term = make_term(*s.tail(), x);
  const std::int64_t j0 = s.tail()->start_index;
  if (term_at_least(term, j0, 1, b.terms_evaluated)) {
    std::int64_t hint = inverse_hint(*s.tail(), term.xs, 1);
    b.cutoff_j = last_true_from(j0, hint, [&](std::int64_t j) {
      return term_at_least(term, j, 1, b.terms_evaluated);
    });
  }
  return b;
}

double eigenvalue_growth(const FractalString& s, double p, std::int64_t k) {
  if (k < 1) fail(Errc::DomainError, "rank k must be >= 1");
  if (!s.tail() || s.tail()->df.regime() != Regime::NonIntegrable ||
      s.tail()->mode == TailMode::TwoSided) {
    fail(Errc::RegimeError,
         "eigenvalue growth law holds for d > 1 tails with a definite law");
  }
  const TailLaw& law = *s.tail();
  const double d = law.df.d();
  const double y = std::pow(pi_p(p), d) * static_cast<double>(k) / zeta_cached(d);
  return std::pow(law.L * law.df.g(y), -p);
}

OscillationSample oscillating_count(std::int64_t m, std::int64_t n, double p,
                                    double lambda) {
  if (n < 2 || m <= n) {
    fail(Errc::DomainError,
         "self-similar example needs m > n >= 2 (infinite measure)");
  }
  if (!(lambda > 0.0)) fail(Errc::NonPositiveInput, "lambda must be positive");
  const double pp = pi_p(p);
  const double x = std::pow(lambda, 1.0 / p) / pp;
  const double d = std::log(static_cast<double>(m)) / std::log(static_cast<double>(n));

  OscillationSample out;
  std::int64_t mk = 1;       // m^k
  double scale = 1.0;        // n^{k-1}
  std::int64_t dummy_hits = 0;
  for (;;) {
    std::int64_t fl = guarded_floor(x / scale, dummy_hits);
    if (fl == 0) break;
    std::int64_t piece;
    if (__builtin_mul_overflow(mk, m, &mk) ||
        __builtin_mul_overflow(mk, fl, &piece) ||
        __builtin_add_overflow(out.exact, piece, &out.exact)) {
      fail(Errc::Overflow, "count exceeds 64-bit range");
    }
    scale *= static_cast<double>(n);
  }
  out.s_value = static_cast<double>(out.exact) * static_cast<double>(m) /
                std::pow(lambda, d / p);
  return out;
}

}  // namespace fracspec
