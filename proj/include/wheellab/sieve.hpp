#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "wheellab/pattern.hpp"
#include "wheellab/wheel.hpp"

namespace wheellab {

// Knobs for the segmented sieve. Results are identical for any legal
// combination; these only trade memory for speed.
struct SieveConfig {
  unsigned wheel_basis = 4;              // candidate wheel {2,3,5,7} by default
  std::uint64_t segment_size = 1 << 16;  // integers per segment
  unsigned threads = 1;
};

struct PrimeCount {
  std::uint64_t limit = 0;
  std::uint64_t count = 0;
};

// Streams the primes in [lo, hi] segment by segment, ascending. The handler
// receives consecutive segment indices starting at 0; with threads > 1 the
// segments are sieved concurrently but handed over in order, so output is
// reproducible byte for byte.
void for_each_prime_segment(
    std::uint64_t lo, std::uint64_t hi, const SieveConfig& cfg,
    const std::function<void(std::uint64_t seg_index, std::span<const std::uint64_t> primes)>& handler);

// Convenience wrapper over for_each_prime_segment.
void for_each_prime(std::uint64_t lo, std::uint64_t hi, const SieveConfig& cfg,
                    const std::function<void(std::uint64_t prime)>& fn);

// pi(x), exact.
PrimeCount count_primes(std::uint64_t x, const SieveConfig& cfg = {});

// One block element with its least prime factor; least_factor == 0 marks a prime.
struct ClassifiedElement {
  std::uint64_t value = 0;
  std::uint64_t least_factor = 0;

  bool is_prime() const { return least_factor == 0; }
};

// Block 0 of the wheel over the first m primes, every element labeled prime
// or composite-with-least-prime-factor, plus the prime landmarks the labeling
// depends on: p_{m+k}, the largest prime below sqrt(X/2), and p_{m+K}, the
// largest prime <= X, where X = 1 + p_1*...*p_m is the last block element.
struct BlockClassification {
  unsigned m = 0;
  std::uint64_t x = 0;                    // 1 + primorial(m)
  std::uint64_t sqrt_half_x = 0;          // isqrt(X / 2); "below sqrt(X/2)" == "<= this"
  unsigned k = 0;                         // primes in (p_m, sqrt_half_x]
  std::optional<std::uint64_t> p_m_plus_k;
  std::uint64_t big_k = 0;                // primes in (p_m, X], i.e. pi(X) - m
  std::uint64_t p_m_plus_big_k = 0;       // largest prime <= X
  std::vector<ClassifiedElement> elements;
};

BlockClassification classify_block(unsigned m, const SieveConfig& cfg = {},
                                   const WheelBudget& budget = {});

// Gap-2 pairs in block 0 and how many of them are composite on both sides,
// next to the quantities the same counting argument uses:
//   eq_main_value = 14 * (p_2-2)...(p_m-2)
//   n_value       = floor((p_2-2)...(p_m-2) / 15)
struct PairCensus {
  unsigned m = 0;
  std::uint64_t pair_count_total = 0;
  std::uint64_t composite_pairs = 0;
  double threshold = 0.0;  // sqrt(X/2)
  std::uint64_t eq_main_value = 0;
  std::uint64_t n_value = 0;
};

PairCensus composite_pair_census(unsigned m, const SieveConfig& cfg = {},
                                 const WheelBudget& budget = {});

// The window {q in M_{p_{n-1}} : p_n < q < p_n * p_{n+1}, q != p_n^2},
// which consists exactly of consecutive primes. The report records whether
// the window matches the primes in the open interval.
struct WindowReport {
  unsigned n = 0;
  std::uint64_t window_lo = 0;   // p_n, exclusive
  std::uint64_t window_hi = 0;   // p_n * p_{n+1}, exclusive
  std::vector<std::uint64_t> members;
  VerificationReport report;
};

WindowReport consecutive_primes_window(unsigned n);

}  // namespace wheellab
