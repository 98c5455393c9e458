#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>

// Small numeric helpers shared across modules. Internal: no API stability.

namespace fracspec::detail {

// Compensated (Kahan) accumulator for long floating sums.
struct KahanSum {
  double s = 0.0;
  double c = 0.0;
  void add(double x) {
    double y = x - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  double value() const { return s; }
};

// x^{-1/3} via bit-trick seed plus four Newton steps r <- r(4 - x r^3)/3.
// Each step cubes the relative error; measured worst case against std::cbrt
// is below 6e-16, i.e. within a couple of ulp. Considerably faster than a
// libm call, which matters in billion-term counting loops.
inline double fast_inv_cbrt(double x) {
  std::uint64_t i;
  std::memcpy(&i, &x, 8);
  i = 0x553ef0ff289dd798ULL - i / 3;
  double r;
  std::memcpy(&r, &i, 8);
  for (int it = 0; it < 4; ++it) {
    double r3 = r * r * r;
    r = r * (4.0 - x * r3) * (1.0 / 3.0);
  }
  return r;
}

// Evaluator for x^{-q}, q = 1/d > 0. The rational exponents exercised by the
// counting grids get branch-free closed forms; everything else falls back to
// std::pow. Every consumer must see the exact same rounding per term, so the
// per-kind expression lives in eval_kind and both the runtime dispatcher and
// the kind-templated hot loops call that one function.
struct PowKernel {
  enum class Kind : std::uint8_t {
    InvSquare,     // q = 2       (d = 0.5)
    InvQuad,       // q = 4       (d = 0.25)
    InvSqrt,       // q = 1/2     (d = 2)
    InvCbrt,       // q = 1/3     (d = 3)
    InvTwoThirds,  // q = 2/3     (d = 1.5)
    InvFourThirds, // q = 4/3     (d = 0.75)
    InvFiveHalves, // q = 5/2     (d = 0.4)
    Generic,
  };

  Kind kind = Kind::Generic;
  double neg_q = 0.0;  // -1/d, used by Generic

  template <Kind K>
  static double eval_kind(double x, double neg_q) {
    if constexpr (K == Kind::InvSquare) {
      return 1.0 / (x * x);
    } else if constexpr (K == Kind::InvQuad) {
      double x2 = x * x;
      return 1.0 / (x2 * x2);
    } else if constexpr (K == Kind::InvSqrt) {
      return 1.0 / std::sqrt(x);
    } else if constexpr (K == Kind::InvCbrt) {
      return fast_inv_cbrt(x);
    } else if constexpr (K == Kind::InvTwoThirds) {
      double r = fast_inv_cbrt(x);
      return r * r;
    } else if constexpr (K == Kind::InvFourThirds) {
      double r = fast_inv_cbrt(x);
      double r2 = r * r;
      return r2 * r2;
    } else if constexpr (K == Kind::InvFiveHalves) {
      return 1.0 / (x * x * std::sqrt(x));
    } else {
      return std::pow(x, neg_q);
    }
  }

  static PowKernel for_dimension(double d) {
    PowKernel k;
    k.neg_q = -1.0 / d;
    auto near = [d](double v) { return std::fabs(d - v) < 1e-12; };
    if (near(0.5)) k.kind = Kind::InvSquare;
    else if (near(0.25)) k.kind = Kind::InvQuad;
    else if (near(2.0)) k.kind = Kind::InvSqrt;
    else if (near(3.0)) k.kind = Kind::InvCbrt;
    else if (near(1.5)) k.kind = Kind::InvTwoThirds;
    else if (near(0.75)) k.kind = Kind::InvFourThirds;
    else if (near(0.4)) k.kind = Kind::InvFiveHalves;
    return k;
  }

  double operator()(double x) const {
    switch (kind) {
      case Kind::InvSquare: return eval_kind<Kind::InvSquare>(x, neg_q);
      case Kind::InvQuad: return eval_kind<Kind::InvQuad>(x, neg_q);
      case Kind::InvSqrt: return eval_kind<Kind::InvSqrt>(x, neg_q);
      case Kind::InvCbrt: return eval_kind<Kind::InvCbrt>(x, neg_q);
      case Kind::InvTwoThirds: return eval_kind<Kind::InvTwoThirds>(x, neg_q);
      case Kind::InvFourThirds: return eval_kind<Kind::InvFourThirds>(x, neg_q);
      case Kind::InvFiveHalves: return eval_kind<Kind::InvFiveHalves>(x, neg_q);
      case Kind::Generic: break;
    }
    return eval_kind<Kind::Generic>(x, neg_q);
  }
};

}  // namespace fracspec::detail
