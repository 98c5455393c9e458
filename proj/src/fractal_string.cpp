#include "fracspec/fractal_string.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "fracspec/detail/numeric.hpp"
#include "fracspec/errors.hpp"
#include "fracspec/summation.hpp"

namespace fracspec {

namespace {

void validate_prefix(const std::vector<double>& prefix) {
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (!(prefix[i] > 0.0)) {
      fail(Errc::NonPositiveInput, "interval lengths must be positive");
    }
    if (i > 0 && prefix[i] > prefix[i - 1]) {
      fail(Errc::DomainError, "interval lengths must be nonincreasing");
    }
  }
}

double prefix_measure(const std::vector<double>& prefix) {
  detail::KahanSum s;
  for (double l : prefix) s.add(l);
  return s.value();
}

}  // namespace

FractalString::FractalString(std::vector<double> prefix)
    : prefix_(std::move(prefix)) {
  validate_prefix(prefix_);
  measure_ = prefix_measure(prefix_);
}

FractalString::FractalString(std::vector<double> prefix, TailLaw tail)
    : prefix_(std::move(prefix)), tail_(std::move(tail)) {
  validate_prefix(prefix_);
  if (!(tail_->L > 0.0)) fail(Errc::NonPositiveInput, "tail scale L must be positive");
  const auto j0 = static_cast<std::int64_t>(prefix_.size()) + 1;
  if (tail_->start_index == 0) {
    tail_->start_index = j0;
  } else if (tail_->start_index != j0) {
    fail(Errc::DomainError,
         "tail start index must continue the prefix (expected " +
             std::to_string(j0) + ")");
  }
  if (tail_->mode == TailMode::TwoSided) {
    if (!(tail_->lower_const > 0.0) || tail_->upper_const < tail_->lower_const) {
      fail(Errc::DomainError, "TwoSided tail needs 0 < c1 <= c2");
    }
  }
  // Junction monotonicity, enforced only where the law is literal.
  if (!prefix_.empty() && tail_->mode == TailMode::Exact) {
    double first_tail = tail_->L * tail_->df.g(static_cast<double>(tail_->start_index));
    if (prefix_.back() < first_tail * (1.0 - 1e-9)) {
      fail(Errc::DomainError,
           "prefix ends shorter than the first tail length; lengths must be "
           "nonincreasing across the junction");
    }
  }

  if (tail_->df.regime() == Regime::NonIntegrable) {
    measure_ = std::numeric_limits<double>::infinity();
  } else {
    measure_ = prefix_measure(prefix_) + tail_sum_from(tail_->start_index);
  }
}

FractalString FractalString::power_tail(double d, double L) {
  TailLaw law{DimensionFunction::pure_power(d)};
  law.L = L;
  return FractalString({}, law);
}

bool FractalString::finite_measure() const {
  return !tail_ || tail_->df.regime() == Regime::Integrable;
}

double FractalString::length(std::int64_t j) const {
  if (j < 1) fail(Errc::NonPositiveInput, "interval index must be >= 1");
  if (j <= static_cast<std::int64_t>(prefix_.size())) {
    return prefix_[static_cast<std::size_t>(j - 1)];
  }
  if (!tail_) fail(Errc::DomainError, "index past the end of a finite string");
  return tail_->L * tail_->df.g(static_cast<double>(j));
}

double FractalString::tail_sum_from(std::int64_t start) const {
  if (!tail_) fail(Errc::DomainError, "string has no tail");
  if (tail_->df.regime() == Regime::NonIntegrable) {
    fail(Errc::InfiniteMeasure, "tail with d > 1 has a divergent length sum");
  }
  if (start < tail_->start_index) {
    fail(Errc::DomainError, "tail sum may not start before the tail itself");
  }
  const DimensionFunction& df = tail_->df;
  // Tolerance must depend only on (df, start): every caller then issues the
  // identical computation, which is what makes tube volumes at large eps
  // match measure() bitwise.
  double scale = static_cast<double>(start) * df.g(static_cast<double>(start));
  double tol = std::max(1e-280, 1e-13 * scale);
  double unscaled =
      decreasing_tail_sum([&df](double t) { return df.g(t); }, start, tol);
  return tail_->L * unscaled;
}

}  // namespace fracspec
