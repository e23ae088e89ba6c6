#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "wheellab/sieve.hpp"

namespace wheellab {

// Prime counts per unit residue class of a modulus. Conservation:
// sum of counts + #{primes dividing the modulus, <= limit} == pi(limit).
struct APCensus {
  std::uint64_t modulus = 0;
  std::uint64_t limit = 0;
  std::map<std::uint64_t, std::uint64_t> counts;  // every unit class, even empty ones
  std::uint64_t pi_limit = 0;
  std::vector<std::uint64_t> excluded_basis_primes;  // primes dividing the modulus, <= limit
};

// Census over an arbitrary modulus d >= 1. Throws BudgetError when the
// number of unit classes exceeds the budget.
APCensus residue_census(std::uint64_t modulus, std::uint64_t limit,
                        const SieveConfig& cfg = {}, const WheelBudget& budget = {});

// Census over the wheel columns: modulus = primorial(n).
APCensus column_census(unsigned n, std::uint64_t limit, const SieveConfig& cfg = {},
                       const WheelBudget& budget = {});

// Primes along the row sub-progression a + j*(k0-1)*L for j >= 1 (the
// starting element a itself is excluded), up to limit. k0 >= 2.
PrimeCount row_progression(unsigned n, std::uint64_t a, std::uint64_t k0,
                           std::uint64_t limit, const SieveConfig& cfg = {});

// Where a progression first meets a wheel: the smallest supported basis size
// whose largest prime does not divide the step, and the smallest h >= 0 with
// a + h*d coprime to that wheel's length.
struct WheelEmbedding {
  unsigned n = 0;
  std::uint64_t h = 0;
  std::uint64_t residue = 0;  // (a + h*d) mod primorial(n)
};

struct ProgressionReport {
  std::uint64_t a = 0;
  std::uint64_t d = 0;
  std::uint64_t limit = 0;
  std::uint64_t count = 0;
  bool coprime = false;  // gcd(a, d) == 1
  std::optional<WheelEmbedding> embedding;
};

// Primes <= limit of the form a + n*d, n >= 0. When gcd(a, d) > 1 at most
// one such prime exists and the report says so.
ProgressionReport general_progression(std::uint64_t a, std::uint64_t d,
                                      std::uint64_t limit, const SieveConfig& cfg = {});

struct TwinPair {
  std::uint64_t u = 0;
  std::uint64_t v = 0;  // u + 2
  std::uint64_t aligned_count = 0;  // k with u+kL and v+kL both prime, both <= limit
};

// Every gap-2 residue pair of the wheel (as many as the gap-2 multiplicity,
// wrap pair (L-1, L+1) included) with aligned prime-pair counts up to limit.
struct TwinColumnReport {
  unsigned n = 0;
  std::uint64_t modulus = 0;
  std::uint64_t limit = 0;
  std::vector<TwinPair> pairs;
};

TwinColumnReport twin_column_pairs(unsigned n, std::uint64_t limit,
                                   const SieveConfig& cfg = {},
                                   const WheelBudget& budget = {});

// Census rows "residue,count" ascending by residue.
std::string census_csv(const APCensus& census, bool header = true);

}  // namespace wheellab
