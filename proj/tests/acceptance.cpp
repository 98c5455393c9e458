// Acceptance gate for the fracspec library and CLI. Each criterion prints
// exactly one PASS/FAIL line with the achieved numbers; the process exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdarg>
#include <functional>
#include <string>
#include <vector>

#include "fracspec/counting.hpp"
#include "fracspec/horn.hpp"
#include "fracspec/minkowski.hpp"
#include "fracspec/summation.hpp"
#include "spawn.hpp"

using namespace fracspec;

namespace {

int g_failures = 0;

void report(int n, bool ok, const char* fmt, ...) {
  char detail[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(detail, sizeof detail, fmt, ap);
  va_end(ap);
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", n, detail);
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

void run_criterion(int n, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(n, false, "unexpected exception: %s", e.what());
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- criterion 1: the two exact counters agree integer for integer --------

void criterion_1() {
  auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> ds = {0.25, 0.4, 0.5, 0.75, 1.5, 3.0};
  const std::vector<double> ps = {1.5, 2.0, 3.0};
  int cases = 0;
  int agreed = 0;
  double largest_lambda = 0.0;
  for (double d : ds) {
    FractalString s = FractalString::power_tail(d);
    // The naive counter walks ~x^d terms, so the d = 3 column uses smaller
    // thresholds to stay inside the time budget at the same term count.
    std::vector<double> xs = (d == 3.0) ? std::vector<double>{5, 25, 125, 625}
                                        : std::vector<double>{10, 100, 1000, 10000};
    for (double p : ps) {
      double pp = pi_p(p);
      for (double x : xs) {
        double lambda = std::pow(pp * x, p);
        CountBreakdown a = count_naive(s, p, lambda);
        CountBreakdown b = count_hyperbola(s, p, lambda);
        ++cases;
        if (a.exact && b.exact && *a.exact == *b.exact) ++agreed;
        if (lambda > largest_lambda) largest_lambda = lambda;
      }
    }
  }
  double dt = seconds_since(t0);
  bool ok = (agreed == cases) && dt < 30.0;
  report(1, ok, "hyperbola == naive on %d/%d (d,p,lambda) cases, largest lambda %.3g, %.1fs",
         agreed, cases, largest_lambda, dt);
}

// ---- criterion 2: two-term law residual for d = 1/2 -----------------------

void criterion_2() {
  auto t0 = std::chrono::steady_clock::now();
  FractalString s = FractalString::power_tail(0.5);
  double zeta_half = zeta_extended(0.5, 1e-7);
  double pp = pi_p(2.0);
  double r[3];
  for (int k = 2; k <= 4; ++k) {
    double x = std::pow(10.0, k);
    double lambda = (pp * x) * (pp * x);
    CountBreakdown b = count_hyperbola(s, 2.0, lambda);
    double n = static_cast<double>(*b.exact);
    r[k - 2] = std::fabs(n - s.measure() * x - zeta_half * std::sqrt(x)) / std::sqrt(x);
  }
  double dt = seconds_since(t0);
  bool ok = r[2] <= 0.1 && r[0] >= r[1] && r[1] >= r[2] && dt < 60.0;
  report(2, ok, "scaled residuals %.4f -> %.4f -> %.4f (need final <= 0.1, improving), %.1fs",
         r[0], r[1], r[2], dt);
}

// ---- criterion 3: one-term law for d = 2 -----------------------------------

void criterion_3() {
  auto t0 = std::chrono::steady_clock::now();
  FractalString s = FractalString::power_tail(2.0);
  double pp = pi_p(2.0);
  double target = M_PI * M_PI / 6.0;
  double rel[2];
  for (int i = 0; i < 2; ++i) {
    double x = (i == 0) ? 100.0 : 1000.0;
    double lambda = (pp * x) * (pp * x);
    CountBreakdown b = count_naive(s, 2.0, lambda);
    double ratio = static_cast<double>(*b.exact) / (x * x);
    rel[i] = std::fabs(ratio / target - 1.0);
  }
  double dt = seconds_since(t0);
  bool ok = rel[1] <= 0.05 && rel[1] <= rel[0] && dt < 60.0;
  report(3, ok, "N/x^2 off zeta(2) by %.4f then %.5f (need final <= 0.05, improving), %.1fs",
         rel[0], rel[1], dt);
}

// ---- criterion 4: eigenvalue growth against rank inversion -----------------

void criterion_4() {
  FractalString s = FractalString::power_tail(2.0);
  const std::int64_t k = 1000000;
  double predicted = eigenvalue_growth(s, 2.0, k);

  auto rank = [&](double lambda) { return *count_naive(s, 2.0, lambda).exact; };
  double lo = 1.0, hi = 2.0 * predicted;
  while (rank(hi) < k) hi *= 2.0;
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    if (rank(mid) >= k) hi = mid;
    else lo = mid;
  }
  double rel = std::fabs(predicted / hi - 1.0);
  report(4, rel <= 0.02,
         "lambda_k prediction %.6g vs inverted rank %.6g at k = 10^6, off by %.4f%%",
         predicted, hi, 100.0 * rel);
}

// ---- criterion 5: the p-sine half period -----------------------------------

void criterion_5() {
  double worst = 0.0;
  for (double p : {1.2, 1.5, 2.0, 3.0, 5.0}) {
    double closed = 2.0 * M_PI * std::pow(p - 1.0, 1.0 / p) / (p * std::sin(M_PI / p));
    double rel = std::fabs(pi_p(p) / closed - 1.0);
    if (rel > worst) worst = rel;
  }
  double at2 = std::fabs(pi_p(2.0) - M_PI);
  bool ok = worst <= 1e-10 && at2 <= 1e-12;
  report(5, ok, "worst relative gap to the reflection formula %.2e, |pi_p(2) - pi| = %.2e",
         worst, at2);
}

// ---- criterion 6: zeta values and the Euler-Maclaurin constant -------------

void criterion_6() {
  double e2 = std::fabs(zeta_extended(2.0, 1e-11) - M_PI * M_PI / 6.0);
  double e4 = std::fabs(zeta_extended(4.0, 1e-11) - std::pow(M_PI, 4) / 90.0);

  SummationEstimate em =
      euler_maclaurin_constant([](double t) { return 1.0 / t; }, 1, 1e-7);
  // Oracle: gamma = H_n - ln n - 1/(2n) + O(n^-2), compensated summation.
  const std::int64_t n = 10000000;
  double h = 0.0, c = 0.0;
  for (std::int64_t j = 1; j <= n; ++j) {
    double y = 1.0 / static_cast<double>(j) - c;
    double t = h + y;
    c = (t - h) - y;
    h = t;
  }
  double gamma_oracle = h - std::log(static_cast<double>(n)) - 0.5 / static_cast<double>(n);
  double eg = std::fabs(em.constant - gamma_oracle);
  bool ok = e2 <= 1e-10 && e4 <= 1e-10 && eg <= 1e-6;
  report(6, ok, "zeta(2) off %.1e, zeta(4) off %.1e, gamma off %.1e vs harmonic oracle",
         e2, e4, eg);
}

// ---- criterion 7: tube volumes and the dimension scan ----------------------

void criterion_7() {
  double worst_content = 0.0;
  double worst_scan = 0.0;
  double eps = std::pow(2.0, -20);
  std::vector<double> eps_grid;
  for (int i = 0; i < 12; ++i) eps_grid.push_back(std::pow(2.0, -6 - 2 * i));
  for (double d : {0.25, 0.5, 0.75}) {
    FractalString s = FractalString::power_tail(d);
    double scaled = tubular_measure(s, eps) * std::pow(eps, -(1.0 - d));
    double limit = std::pow(2.0, 1.0 - d) / (1.0 - d);
    double rel = std::fabs(scaled / limit - 1.0);
    if (rel > worst_content) worst_content = rel;

    double est = dimension_scan(s, {0.05, 0.95}, eps_grid);
    double gap = std::fabs(est - d);
    if (gap > worst_scan) worst_scan = gap;
  }
  bool ok = worst_content <= 0.03 && worst_scan <= 0.02;
  report(7, ok,
         "scaled tube volume at eps = 2^-20 off by <= %.4f (need 0.03), "
         "dimension scan off by <= %.4f (need 0.02)",
         worst_content, worst_scan);
}

// ---- criterion 8: horn bracket -----------------------------------------------

std::int64_t brute_rect(double hw, double lambda, std::int64_t h_min) {
  std::int64_t count = 0;
  for (std::int64_t h = h_min; rect_mode_energy(h, 1, hw) <= lambda; ++h) {
    for (std::int64_t k = 1; rect_mode_energy(h, k, hw) <= lambda; ++k) ++count;
  }
  return count;
}

void criterion_8() {
  auto t0 = std::chrono::steady_clock::now();

  bool rect_ok = true;
  for (double hw : {0.2, 0.5, 1.0, 2.5}) {
    for (double lam : {100.0, 1000.0, 9999.5, 10000.0}) {
      if (rectangle_count_mixed(hw, lam) != brute_rect(hw, lam, 0)) rect_ok = false;
      if (rectangle_count_dirichlet(hw, lam) != brute_rect(hw, lam, 1)) rect_ok = false;
    }
  }

  bool ordered = true;
  bool envelope = true;
  double ratio_min = 1e300, ratio_max = 0.0;
  for (double d : {1.5, 2.0, 3.0}) {
    HornDomain horn(DimensionFunction::pure_power(d));
    for (double lam : {1e3, 1e4, 1e5}) {
      BracketResult r = horn_bracket(horn, lam);
      if (r.lower > r.upper) ordered = false;
      double norm = std::pow(lam, 0.5 * (d + 1.0));
      for (double side : {static_cast<double>(r.lower), static_cast<double>(r.upper)}) {
        double ratio = side / norm;
        if (ratio < ratio_min) ratio_min = ratio;
        if (ratio > ratio_max) ratio_max = ratio;
      }
      if (lam == 1e5) {
        HornBounds b = horn_asymptotic_bounds(horn, lam);
        if (static_cast<double>(r.upper) > 1.2 * b.upper_pred) envelope = false;
      }
    }
  }
  bool interval_ok = ratio_min >= 1e-3 && ratio_max <= 50.0;

  double dt = seconds_since(t0);
  bool ok = rect_ok && ordered && interval_ok && envelope && dt < 300.0;
  report(8, ok,
         "rect counters %s brute, lower <= upper %s, N/lambda^((d+1)/2) in "
         "[%.3g, %.3g] (need [1e-3, 50]), upper envelope %s, %.1fs",
         rect_ok ? "match" : "MISS", ordered ? "holds" : "BROKEN", ratio_min, ratio_max,
         envelope ? "holds" : "BROKEN", dt);
}

// ---- criterion 9: self-similar oscillation ---------------------------------

void criterion_9() {
  double pp = pi_p(2.0);

  // Independent enumeration of N = sum_k m^k floor(x / n^(k-1)), with the
  // same near-integer rounding convention the counters document (floors
  // within one part in 1e13 below an integer round up).
  auto brute = [&](double lambda) {
    double x = std::pow(lambda, 0.5) / pp;
    std::int64_t total = 0;
    std::int64_t mk = 1;
    for (double scale = 1.0;; scale *= 2.0) {
      auto fl = static_cast<std::int64_t>(std::floor((x / scale) * (1.0 + 1e-13)));
      if (fl == 0) break;
      mk *= 4;
      total += mk * fl;
    }
    return total;
  };

  bool exact_ok = true;
  double lam480 = (8.0 * pp) * (8.0 * pp);
  for (double lam : {13.7, 99.0, lam480, 640.0, 5000.0, 1.0e6}) {
    OscillationSample s = oscillating_count(4, 2, 2.0, lam);
    if (s.exact != brute(lam)) exact_ok = false;
  }
  bool count480 = oscillating_count(4, 2, 2.0, lam480).exact == 480;

  // Octave drift of s(lambda) = m N / lambda^(d/p) along x = 2^j.
  bool drift_ok = true;
  double s_last = 0.0;
  for (int j = 6; j <= 12; ++j) {
    double x = std::pow(2.0, j);
    double lam = (pp * x) * (pp * x);
    double s1 = oscillating_count(4, 2, 2.0, lam).s_value;
    double s2 = oscillating_count(4, 2, 2.0, 4.0 * lam).s_value;
    double bound = 10.0 * 4.0 * (2.0 * x) / lam;
    if (std::fabs(s2 - s1) > bound) drift_ok = false;
    s_last = s1;
  }
  double limit_gap = std::fabs(s_last - 32.0 / (M_PI * M_PI));

  // A second geometric subsequence settles on a different value: the
  // normalized count genuinely oscillates instead of converging.
  double s_alt = oscillating_count(4, 2, 2.0, std::pow(pp * 1.4 * 4096.0, 2.0)).s_value;
  double split = std::fabs(s_alt - s_last);

  bool ok = exact_ok && count480 && drift_ok && limit_gap <= 1e-3 && split > 1.0;
  report(9, ok,
         "exact == enumeration %s (480 at x = 8: %s), octave drift bounded %s, "
         "subsequence limits %.4f vs %.4f (split %.2f)",
         exact_ok ? "yes" : "NO", count480 ? "yes" : "NO", drift_ok ? "yes" : "NO",
         s_last, s_alt, split);
}

// ---- criterion 10: CLI byte determinism across thread counts ---------------

void criterion_10() {
  char lam_hyper[48];
  std::snprintf(lam_hyper, sizeof lam_hyper, "%.17g", (1e4 * M_PI) * (1e4 * M_PI));
  std::vector<std::string> jobs = {
      "count --string power:d=3 --p 2 --lambda 600000 --algo naive --out csv",
      std::string("count --string power:d=0.5 --p 2 --lambda ") + lam_hyper +
          " --algo hyperbola --out json",
      "content --string power:d=0.5 --eps 0.25 0.015625 0.0009765625 6.103515625e-05"
      " --out json",
      "horn --string power:d=2 --lambda 1000 10000 --out csv",
      "oscillate --m 4 --n 2 --p 2 --lambda 640 10240 --out csv",
  };
  int stable = 0;
  for (const std::string& job : jobs) {
    std::string base;
    bool same = true;
    for (int threads : {1, 4, 8}) {
      std::string cmd = shell_quote(FRACSPEC_CLI_BIN) + " " + job + " --threads " +
                        std::to_string(threads) + " 2>/dev/null";
      SpawnResult r = run_command(cmd);
      if (r.exit_code != 0) same = false;
      if (threads == 1) base = r.output;
      else if (r.output != base) same = false;
    }
    if (same && !base.empty()) ++stable;
  }
  report(10, stable == static_cast<int>(jobs.size()),
         "%d/%d CLI jobs byte-identical across --threads 1/4/8", stable,
         static_cast<int>(jobs.size()));
}

}  // namespace

int main() {
  std::printf("fracspec acceptance gate\n");
  run_criterion(1, criterion_1);
  run_criterion(2, criterion_2);
  run_criterion(3, criterion_3);
  run_criterion(4, criterion_4);
  run_criterion(5, criterion_5);
  run_criterion(6, criterion_6);
  run_criterion(7, criterion_7);
  run_criterion(8, criterion_8);
  run_criterion(9, criterion_9);
  run_criterion(10, criterion_10);
  std::printf("%d criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
