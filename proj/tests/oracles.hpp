#pragma once

// Reference implementations for the test suites, written from scratch
// against the definitions. None of this shares code with the library's
// wheel or segmented-sieve paths.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

// Plain Eratosthenes; composite[v] == true for composite v, false for primes.
inline std::vector<bool> composite_table(std::uint64_t limit) {
  std::vector<bool> comp(limit + 1, false);
  comp[0] = true;
  if (limit >= 1) comp[1] = true;
  for (std::uint64_t i = 2; i * i <= limit; ++i) {
    if (!comp[i]) {
      for (std::uint64_t j = i * i; j <= limit; j += i) comp[j] = true;
    }
  }
  return comp;
}

inline std::vector<std::uint64_t> primes_to(std::uint64_t limit) {
  std::vector<bool> comp = composite_table(limit);
  std::vector<std::uint64_t> out;
  for (std::uint64_t v = 2; v <= limit; ++v) {
    if (!comp[v]) out.push_back(v);
  }
  return out;
}

inline std::uint64_t pi_of(const std::vector<std::uint64_t>& primes, std::uint64_t x) {
  return static_cast<std::uint64_t>(
      std::upper_bound(primes.begin(), primes.end(), x) - primes.begin());
}

inline bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) return false;
  }
  return true;
}

// Brute-force count of primes p <= limit with p = a + n*d, n >= 0.
inline std::uint64_t count_ap_primes(std::uint64_t a, std::uint64_t d, std::uint64_t limit) {
  std::uint64_t count = 0;
  for (std::uint64_t v = a; v <= limit;) {
    if (is_prime(v)) ++count;
    if (limit - v < d) break;
    v += d;
  }
  return count;
}

// Integers in [1, length] coprime to length, by the gcd definition.
inline std::vector<std::uint64_t> coprime_to(std::uint64_t length) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t v = 1; v <= length; ++v) {
    if (std::gcd(v, length) == 1) out.push_back(v);
  }
  return out;
}

}  // namespace oracle
