#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tmoebius {

inline std::vector<std::int64_t> divisors(std::int64_t n) {
  if (n <= 0) throw std::domain_error("divisors: n must be positive, got " + std::to_string(n));
  std::vector<std::int64_t> small, large;
  for (std::int64_t k = 1; k * k <= n; ++k) {
    if (n % k == 0) {
      small.push_back(k);
      if (k != n / k) large.push_back(n / k);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

/// σ₁(n) = Σ_{k | n} k.
inline std::int64_t sigma1(std::int64_t n) {
  if (n <= 0) throw std::domain_error("sigma1: n must be positive, got " + std::to_string(n));
  std::int64_t s = 0;
  for (std::int64_t k : divisors(n)) s += k;
  return s;
}

/// σ̃₁(n) = Σ_{k | n, k odd} n/k, the divisor sum attached to ground floors.
inline std::int64_t sigma1_tilde(std::int64_t n) {
  if (n <= 0) throw std::domain_error("sigma1_tilde: n must be positive, got " + std::to_string(n));
  std::int64_t s = 0;
  for (std::int64_t k : divisors(n)) {
    if (k % 2 == 1) s += n / k;
  }
  return s;
}

}  // namespace tmoebius
