#pragma once

#include <cstdint>
#include <vector>

#include "wheellab/errors.hpp"

namespace wheellab {

// Memory cap for materializing wheel residues and gaps. One entry costs
// 12 bytes (u64 residue + u32 gap). The default of 2^26 entries (768 MiB)
// admits bases up to the first 9 primes.
struct WheelBudget {
  std::uint64_t max_entries = std::uint64_t{1} << 26;

  static WheelBudget from_mib(std::uint64_t mib) {
    return WheelBudget{mib * (std::uint64_t{1} << 20) / 12};
  }
};

// One period of the primorial wheel over the first n primes: the integers
// in [1, L] coprime to L = p_1*...*p_n, and the cyclic gap sequence between
// consecutive coprime integers. There are T = (p_1-1)*...*(p_n-1) of each.
struct WheelPattern {
  std::vector<std::uint32_t> basis;    // p_1..p_n, ascending
  std::uint64_t length = 0;            // L, the primorial
  std::uint64_t period = 0;            // T, count of residues/gaps
  std::vector<std::uint64_t> residues; // ascending, residues[0] == 1
  std::vector<std::uint32_t> gaps;     // gaps[i] = next coprime after residues[i];
                                       // gaps[T-1] wraps to 1 + L

  unsigned basis_size() const { return static_cast<unsigned>(basis.size()); }
  std::uint32_t max_basis_prime() const { return basis.back(); }

  bool operator==(const WheelPattern&) const = default;
};

// The j-th period of coprime integers, shifted into (1 + jL, 1 + (j+1)L].
// Block 0 runs from the first coprime integer above 1 through 1 + L.
struct Block {
  std::uint64_t index = 0;
  std::vector<std::uint64_t> elements;
};

// Constructs the wheel for the first n primes by directly sieving one
// period. Throws OverflowError when the primorial exceeds 64 bits (n > 15)
// and BudgetError when the period exceeds the materialization budget.
WheelPattern build_wheel(unsigned n, const WheelBudget& budget = {});

// Extends a wheel by the next prime p: replicates the pattern p times and
// deletes the multiples p*h, h coprime to the old length. Field-for-field
// equal to build_wheel(n+1), but computed by the replication route.
WheelPattern extend_wheel(const WheelPattern& w, const WheelBudget& budget = {});

// Elements of the j-th block. Throws OverflowError if 1 + (j+1)L does not fit.
Block block_of(const WheelPattern& w, std::uint64_t j);

// Checks every WheelPattern invariant; throws InvariantError on the first
// violation. Cheap relative to construction.
void validate_wheel(const WheelPattern& w);

// The i-th prime (1-based: nth_prime(1) == 2), from a process-wide table
// extended on demand by sieving.
std::uint64_t nth_prime(unsigned i);

// Primes <= limit, from the same table. Intended for modest limits
// (base primes, trial division); use the segmented sieve for big ranges.
std::vector<std::uint64_t> small_primes(std::uint64_t limit);

// Scalar wheel parameters, usable beyond the materialization budget.
std::uint64_t primorial(unsigned n);          // p_1*...*p_n, checked
std::uint64_t wheel_period(unsigned n);       // (p_1-1)*...*(p_n-1), checked

// Product (p_2-2)(p_3-2)...(p_n-2); the empty product (n < 2) is 1.
std::uint64_t skip_product(unsigned n);

// a*b with overflow check.
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);

// Exact floor of sqrt(n).
std::uint64_t isqrt(std::uint64_t n);

}  // namespace wheellab
