#pragma once

#include <cstdint>

#include "fracspec/errors.hpp"

namespace fracspec::detail {

// Largest j >= lo satisfying pred, for a pred that is true at lo and
// eventually false (monotone true -> false). hint seeds the search: when it
// is accurate the answer costs O(1) probes, but correctness never depends on
// it. Galloping + binary search otherwise.
template <class Pred>
std::int64_t last_true_from(std::int64_t lo, std::int64_t hint, Pred pred) {
  std::int64_t j = hint > lo ? hint : lo;
  if (j > lo && !pred(j)) {
    std::int64_t good = lo;
    std::int64_t bad = j;
    while (bad - good > 1) {
      std::int64_t mid = good + (bad - good) / 2;
      (pred(mid) ? good : bad) = mid;
    }
    return good;
  }
  std::int64_t step = 1;
  while (pred(j + step)) {
    j += step;
    step *= 2;
    if (j + step > (std::int64_t{1} << 62)) {
      fail(Errc::Budget, "boundary search ran away; predicate does not turn false");
    }
  }
  std::int64_t good = j;
  std::int64_t bad = j + step;
  while (bad - good > 1) {
    std::int64_t mid = good + (bad - good) / 2;
    (pred(mid) ? good : bad) = mid;
  }
  return good;
}

}  // namespace fracspec::detail
