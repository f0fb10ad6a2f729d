#pragma once

#include <algorithm>
#include <cstdint>

namespace hyperfact {

using Count = std::int64_t;

// Exact binomial coefficient. Returns 0 for k < 0, n < 0 or k > n.
constexpr Count binom(Count n, Count k) noexcept {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  Count result = 1;
  for (Count i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

constexpr Count floor_div(Count a, Count b) noexcept {
  Count q = a / b;
  return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
}

constexpr Count ceil_div(Count a, Count b) noexcept { return -floor_div(-a, b); }

}  // namespace hyperfact
