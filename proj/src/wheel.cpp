#include "wheellab/wheel.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>

namespace wheellab {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw OverflowError("product exceeds 64-bit range");
  }
  return r;
}

std::uint64_t isqrt(std::uint64_t n) {
  if (n == 0) return 0;
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  // sqrt(double) can be off by one in either direction near 2^53 and above.
  while (r > 0 && (unsigned __int128)r * r > n) --r;
  while ((unsigned __int128)(r + 1) * (r + 1) <= n) ++r;
  return r;
}

namespace {

// Process-wide prime table, grown by re-sieving when a request outruns it.
struct PrimeTableState {
  std::mutex mu;
  std::uint64_t limit = 0;
  std::vector<std::uint64_t> primes;
};

PrimeTableState& table() {
  static PrimeTableState t;
  return t;
}

std::vector<std::uint64_t> sieve_to(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  std::vector<bool> comp(limit + 1, false);
  for (std::uint64_t i = 2; i * i <= limit; ++i) {
    if (!comp[i]) {
      for (std::uint64_t j = i * i; j <= limit; j += i) comp[j] = true;
    }
  }
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (!comp[i]) out.push_back(i);
  }
  return out;
}

void ensure_table_limit(std::uint64_t limit) {
  PrimeTableState& t = table();
  if (t.limit >= limit) return;
  std::uint64_t next = std::max<std::uint64_t>(t.limit * 2, 1u << 16);
  while (next < limit) next *= 2;
  t.primes = sieve_to(next);
  t.limit = next;
}

}  // namespace

std::uint64_t nth_prime(unsigned i) {
  if (i == 0) throw DomainError("prime index is 1-based");
  PrimeTableState& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  while (t.primes.size() < i) {
    ensure_table_limit(t.limit == 0 ? (1u << 16) : t.limit + 1);
  }
  return t.primes[i - 1];
}

std::vector<std::uint64_t> small_primes(std::uint64_t limit) {
  PrimeTableState& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  ensure_table_limit(limit);
  auto end = std::upper_bound(t.primes.begin(), t.primes.end(), limit);
  return {t.primes.begin(), end};
}

std::uint64_t primorial(unsigned n) {
  if (n == 0) throw DomainError("basis size must be at least 1");
  std::uint64_t l = 1;
  for (unsigned i = 1; i <= n; ++i) l = checked_mul(l, nth_prime(i));
  return l;
}

std::uint64_t wheel_period(unsigned n) {
  if (n == 0) throw DomainError("basis size must be at least 1");
  std::uint64_t t = 1;
  for (unsigned i = 1; i <= n; ++i) t = checked_mul(t, nth_prime(i) - 1);
  return t;
}

std::uint64_t skip_product(unsigned n) {
  std::uint64_t q = 1;
  for (unsigned i = 2; i <= n; ++i) q = checked_mul(q, nth_prime(i) - 2);
  return q;
}

namespace {

// Derives gaps from residues, including the wrap gap to 1 + L.
std::vector<std::uint32_t> gaps_from_residues(const std::vector<std::uint64_t>& residues,
                                              std::uint64_t length) {
  std::vector<std::uint32_t> gaps(residues.size());
  for (std::size_t i = 0; i + 1 < residues.size(); ++i) {
    gaps[i] = static_cast<std::uint32_t>(residues[i + 1] - residues[i]);
  }
  gaps.back() = static_cast<std::uint32_t>(1 + length - residues.back());
  return gaps;
}

}  // namespace

WheelPattern build_wheel(unsigned n, const WheelBudget& budget) {
  if (n == 0) throw DomainError("basis size must be at least 1");
  std::uint64_t length = primorial(n);
  std::uint64_t period = wheel_period(n);
  if (period > budget.max_entries) {
    throw BudgetError("wheel period " + std::to_string(period) +
                      " exceeds the materialization budget of " +
                      std::to_string(budget.max_entries) + " entries");
  }

  WheelPattern w;
  for (unsigned i = 1; i <= n; ++i) w.basis.push_back(static_cast<std::uint32_t>(nth_prime(i)));
  w.length = length;
  w.period = period;

  // One period sieved directly: mark multiples of each basis prime in [1, L].
  std::vector<bool> hit(length + 1, false);
  for (std::uint32_t p : w.basis) {
    for (std::uint64_t q = p; q <= length; q += p) hit[q] = true;
  }
  w.residues.reserve(period);
  for (std::uint64_t v = 1; v <= length; ++v) {
    if (!hit[v]) w.residues.push_back(v);
  }
  w.gaps = gaps_from_residues(w.residues, length);
  return w;
}

WheelPattern extend_wheel(const WheelPattern& w, const WheelBudget& budget) {
  unsigned n = w.basis_size();
  std::uint64_t p = nth_prime(n + 1);
  std::uint64_t length = checked_mul(w.length, p);
  std::uint64_t period = checked_mul(w.period, p - 1);
  if (period > budget.max_entries) {
    throw BudgetError("extended period " + std::to_string(period) +
                      " exceeds the materialization budget of " +
                      std::to_string(budget.max_entries) + " entries");
  }

  WheelPattern out;
  out.basis = w.basis;
  out.basis.push_back(static_cast<std::uint32_t>(p));
  out.length = length;
  out.period = period;
  out.residues.reserve(period);
  // p copies of the old period; drop the multiples of p among them.
  for (std::uint64_t rep = 0; rep < p; ++rep) {
    std::uint64_t base = rep * w.length;
    for (std::uint64_t r : w.residues) {
      std::uint64_t v = base + r;
      if (v % p != 0) out.residues.push_back(v);
    }
  }
  out.gaps = gaps_from_residues(out.residues, length);
  return out;
}

Block block_of(const WheelPattern& w, std::uint64_t j) {
  if (j == UINT64_MAX) throw OverflowError("block index exceeds 64-bit range");
  std::uint64_t shift = checked_mul(w.length, j);
  std::uint64_t last = checked_mul(w.length, j + 1);
  if (last > UINT64_MAX - 1) throw OverflowError("block end exceeds 64-bit range");
  last += 1;

  Block b;
  b.index = j;
  b.elements.reserve(w.period);
  // Residue 1 shifts out of (1 + jL, 1 + (j+1)L]; 1 + (j+1)L shifts in.
  for (std::size_t i = 1; i < w.residues.size(); ++i) {
    b.elements.push_back(w.residues[i] + shift);
  }
  b.elements.push_back(last);
  return b;
}

void validate_wheel(const WheelPattern& w) {
  auto fail = [](const std::string& what) { throw InvariantError("wheel invariant: " + what); };

  unsigned n = w.basis_size();
  if (n == 0) fail("empty basis");
  for (unsigned i = 0; i < n; ++i) {
    if (w.basis[i] != nth_prime(i + 1)) fail("basis is not the first n primes");
  }
  if (w.length != primorial(n)) fail("length != primorial of basis");
  if (w.period != wheel_period(n)) fail("period != totient of primorial");
  if (w.residues.size() != w.period) fail("residue count != period");
  if (w.gaps.size() != w.period) fail("gap count != period");
  if (w.residues.front() != 1) fail("first residue != 1");

  std::uint64_t prev = 0;
  for (std::uint64_t r : w.residues) {
    if (r <= prev) fail("residues not strictly ascending");
    if (r > w.length) fail("residue beyond one period");
    for (std::uint32_t p : w.basis) {
      if (r % p == 0) fail("residue shares a factor with the basis");
    }
    prev = r;
  }
  // T distinct coprime values in [1, L] with T == phi(L) means none missing.

  std::uint64_t gap_sum = 0;
  for (std::size_t i = 0; i + 1 < w.residues.size(); ++i) {
    if (w.residues[i] + w.gaps[i] != w.residues[i + 1]) fail("gap does not match residues");
    gap_sum += w.gaps[i];
  }
  if (w.residues.back() + w.gaps.back() != 1 + w.length) fail("wrap gap does not reach 1 + L");
  gap_sum += w.gaps.back();
  if (gap_sum != w.length) fail("gap sum != length");
}

}  // namespace wheellab
