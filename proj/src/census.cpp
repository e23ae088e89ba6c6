#include "wheellab/census.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace wheellab {

APCensus residue_census(std::uint64_t modulus, std::uint64_t limit,
                        const SieveConfig& cfg, const WheelBudget& budget) {
  if (modulus < 1) throw DomainError("census modulus must be >= 1");

  APCensus census;
  census.modulus = modulus;
  census.limit = limit;

  // phi(modulus) classes get materialized into an ordered map whose nodes
  // cost about four budget entries each.
  std::uint64_t allowance = budget.max_entries / 4;
  std::uint64_t units = 0;
  for (std::uint64_t r = 0; r < modulus; ++r) {
    if (std::gcd(r, modulus) == 1) {
      ++units;
      if (units > allowance) {
        throw BudgetError("unit class count exceeds the materialization budget");
      }
    }
  }
  for (std::uint64_t r = 0; r < modulus; ++r) {
    if (std::gcd(r, modulus) == 1) census.counts.emplace(r == 0 ? modulus : r, 0);
  }

  for_each_prime(2, limit, cfg, [&](std::uint64_t p) {
    ++census.pi_limit;
    if (modulus % p == 0) {
      census.excluded_basis_primes.push_back(p);
      return;
    }
    if (std::gcd(p % modulus, modulus) == 1) {
      std::uint64_t r = p % modulus;
      ++census.counts[r == 0 ? modulus : r];
    }
    // gcd(p, modulus) > 1 with p not dividing modulus cannot happen for prime p.
  });
  return census;
}

APCensus column_census(unsigned n, std::uint64_t limit, const SieveConfig& cfg,
                       const WheelBudget& budget) {
  return residue_census(primorial(n), limit, cfg, budget);
}

PrimeCount row_progression(unsigned n, std::uint64_t a, std::uint64_t k0,
                           std::uint64_t limit, const SieveConfig& cfg) {
  std::uint64_t length = primorial(n);
  if (a < 1 || a > length || std::gcd(a, length) != 1) {
    throw DomainError("row start must be a unit residue of the wheel");
  }
  if (k0 < 2) throw DomainError("row step needs k0 >= 2 (k0 = 1 gives a zero step)");
  std::uint64_t step = checked_mul(k0 - 1, length);

  PrimeCount out{limit, 0};
  if (limit < a || limit - a < step) return out;
  std::uint64_t first = a + step;
  std::uint64_t target = a % step;
  for_each_prime(first, limit, cfg, [&](std::uint64_t p) {
    if (p % step == target) ++out.count;
  });
  return out;
}

namespace {

bool is_prime_by_trial(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t p : small_primes(isqrt(v))) {
    if (p * p > v) break;
    if (v % p == 0) return v == p;
  }
  return true;
}

constexpr unsigned kMaxEmbeddingBasis = 15;  // primorial width limit
constexpr std::uint64_t kMaxEmbeddingSearch = 1 << 20;

std::optional<WheelEmbedding> find_embedding(std::uint64_t a, std::uint64_t d) {
  unsigned n = 0;
  for (unsigned i = 1; i <= kMaxEmbeddingBasis; ++i) {
    if (d % nth_prime(i) != 0) {
      n = i;
      break;
    }
  }
  if (n == 0) return std::nullopt;
  std::uint64_t length = primorial(n);
  for (std::uint64_t h = 0; h <= kMaxEmbeddingSearch; ++h) {
    std::uint64_t v = 0;
    if (__builtin_mul_overflow(h, d, &v) || __builtin_add_overflow(a, v, &v)) break;
    if (std::gcd(v, length) == 1) {
      return WheelEmbedding{n, h, v % length};
    }
  }
  return std::nullopt;
}

}  // namespace

ProgressionReport general_progression(std::uint64_t a, std::uint64_t d,
                                      std::uint64_t limit, const SieveConfig& cfg) {
  if (d < 1) throw DomainError("progression step d must be >= 1");

  ProgressionReport report;
  report.a = a;
  report.d = d;
  report.limit = limit;
  report.coprime = std::gcd(a, d) == 1;

  if (!report.coprime) {
    // Every element shares gcd(a, d) > 1, so only that prime itself qualifies.
    if (a != 0 && a <= limit && is_prime_by_trial(a)) {
      report.count = 1;
    } else if (a == 0 && d <= limit && is_prime_by_trial(d)) {
      report.count = 1;
    }
    return report;
  }

  report.embedding = find_embedding(a, d);
  if (a > limit) return report;
  std::uint64_t target = a % d;
  for_each_prime(std::max<std::uint64_t>(a, 2), limit, cfg, [&](std::uint64_t p) {
    if (p % d == target) ++report.count;
  });
  return report;
}

TwinColumnReport twin_column_pairs(unsigned n, std::uint64_t limit,
                                   const SieveConfig& cfg, const WheelBudget& budget) {
  if (n < 2) throw DomainError("twin columns need a basis of at least {2, 3}");
  WheelPattern w = build_wheel(n, budget);

  TwinColumnReport report;
  report.n = n;
  report.modulus = w.length;
  report.limit = limit;
  for (std::size_t i = 0; i < w.gaps.size(); ++i) {
    if (w.gaps[i] == 2) {
      report.pairs.push_back({w.residues[i], w.residues[i] + 2, 0});
    }
  }

  // One prime stream, bucketed by residue class into per-pair k-sets.
  // Gap-2 pairs never chain (three coprime values 2 apart would cover all
  // classes mod 3), so each class belongs to at most one pair and side.
  struct Slot {
    std::size_t pair_index;
    bool upper_side;
  };
  std::unordered_map<std::uint64_t, Slot> slots;
  std::vector<std::vector<std::uint64_t>> k_lower(report.pairs.size());
  std::vector<std::vector<std::uint64_t>> k_upper(report.pairs.size());
  for (std::size_t i = 0; i < report.pairs.size(); ++i) {
    slots[report.pairs[i].u % w.length] = {i, false};
    slots[report.pairs[i].v % w.length] = {i, true};
  }

  for_each_prime(2, limit, cfg, [&](std::uint64_t p) {
    auto it = slots.find(p % w.length);
    if (it == slots.end()) return;
    const auto& pair = report.pairs[it->second.pair_index];
    std::uint64_t origin = it->second.upper_side ? pair.v : pair.u;
    if (p < origin) return;  // the class representative below the origin is 1 = v - L
    std::uint64_t k = (p - origin) / w.length;
    (it->second.upper_side ? k_upper : k_lower)[it->second.pair_index].push_back(k);
  });

  for (std::size_t i = 0; i < report.pairs.size(); ++i) {
    const auto& lows = k_lower[i];
    const auto& ups = k_upper[i];
    std::size_t a = 0;
    std::size_t b = 0;
    std::uint64_t matches = 0;
    while (a < lows.size() && b < ups.size()) {
      if (lows[a] < ups[b]) {
        ++a;
      } else if (ups[b] < lows[a]) {
        ++b;
      } else {
        ++matches;
        ++a;
        ++b;
      }
    }
    report.pairs[i].aligned_count = matches;
  }
  return report;
}

std::string census_csv(const APCensus& census, bool header) {
  std::ostringstream os;
  if (header) os << "residue,count\n";
  for (const auto& [residue, count] : census.counts) {
    os << residue << ',' << count << '\n';
  }
  return os.str();
}

}  // namespace wheellab
