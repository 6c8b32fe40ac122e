#pragma once

#include <cstdint>
#include <vector>

namespace starpir {

// Binomial coefficient, saturating at cap+1 once it is known to exceed cap.
inline std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t c = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    if (c > cap) return cap + 1;
    c = c * (n - i) / (i + 1);  // exact at every step
  }
  return c > cap ? cap + 1 : c;
}

// base^exp, saturating at cap+1.
inline std::uint64_t pow_capped(std::uint64_t base, std::uint64_t exp, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && r > cap / base) return cap + 1;
    r *= base;
    if (r > cap) return cap + 1;
  }
  return r;
}

// Calls fn with every k-subset of {0,...,n-1} in lexicographic order.
// fn returns false to abort; the function returns false iff aborted.
template <typename Fn>
bool for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return true;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    if (!fn(static_cast<const std::vector<std::size_t>&>(idx))) return false;
    if (k == 0) return true;
    // advance
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (idx[i] != i + n - k) {
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) return true;
    }
  }
}

}  // namespace starpir
