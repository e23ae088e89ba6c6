#include "wheellab/sieve.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <mutex>
#include <numeric>
#include <thread>

namespace wheellab {

namespace {

// Walks the integers coprime to a wheel's basis in ascending order by
// rolling through the gap array.
class WheelRoller {
 public:
  WheelRoller(const WheelPattern& w, std::uint64_t start_at) : wheel_(w) {
    std::uint64_t base = start_at / w.length * w.length;
    std::uint64_t rem = start_at - base;
    auto it = std::lower_bound(w.residues.begin(), w.residues.end(),
                               std::max<std::uint64_t>(rem, 1));
    // gcd(L-1, L) = 1, so a residue >= rem always exists within the period.
    index_ = static_cast<std::size_t>(it - w.residues.begin());
    value_ = base + *it;
  }

  std::uint64_t value() const { return value_; }

  void advance() {
    value_ += wheel_.gaps[index_];
    ++index_;
    if (index_ == wheel_.gaps.size()) index_ = 0;
  }

 private:
  const WheelPattern& wheel_;
  std::uint64_t value_ = 0;
  std::size_t index_ = 0;
};

struct SieveShared {
  const WheelPattern& wheel;
  const std::vector<std::uint64_t>& base_primes;  // primes <= isqrt(hi)
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::uint64_t seg_size = 0;
  std::uint64_t n_segments = 0;
};

void sieve_one_segment(const SieveShared& sh, std::uint64_t seg,
                       std::vector<std::uint8_t>& mark, std::vector<std::uint64_t>& out) {
  std::uint64_t s_lo = sh.lo + seg * sh.seg_size;
  std::uint64_t s_hi = std::min(sh.hi, s_lo + sh.seg_size - 1);
  mark.assign(s_hi - s_lo + 1, 0);

  std::uint32_t basis_max = sh.wheel.max_basis_prime();
  for (std::uint64_t p : sh.base_primes) {
    if (p <= basis_max) continue;
    if (p * p > s_hi) break;
    std::uint64_t start = std::max(p * p, ((s_lo - 1) / p + 1) * p);
    for (std::uint64_t q = start; q <= s_hi;) {
      mark[q - s_lo] = 1;
      if (s_hi - q < p) break;
      q += p;
    }
  }

  out.clear();
  // Basis primes sort below every wheel candidate (>= p_{n+1}).
  for (std::uint32_t p : sh.wheel.basis) {
    if (p >= s_lo && p <= s_hi) out.push_back(p);
  }
  for (WheelRoller r(sh.wheel, std::max<std::uint64_t>(s_lo, 2)); r.value() <= s_hi;
       r.advance()) {
    if (!mark[r.value() - s_lo]) out.push_back(r.value());
  }
}

}  // namespace

void for_each_prime_segment(
    std::uint64_t lo, std::uint64_t hi, const SieveConfig& cfg,
    const std::function<void(std::uint64_t, std::span<const std::uint64_t>)>& handler) {
  if (hi < 2 || hi < lo) return;
  lo = std::max<std::uint64_t>(lo, 2);

  WheelPattern wheel = build_wheel(cfg.wheel_basis);
  std::vector<std::uint64_t> base_primes = small_primes(isqrt(hi));
  std::uint64_t seg_size = std::max<std::uint64_t>(cfg.segment_size, 64);
  std::uint64_t n_segments = (hi - lo) / seg_size + 1;

  SieveShared sh{wheel, base_primes, lo, hi, seg_size, n_segments};

  unsigned threads = std::max(1u, cfg.threads);
  threads = static_cast<unsigned>(
      std::min<std::uint64_t>(threads, n_segments));

  if (threads == 1) {
    std::vector<std::uint8_t> mark;
    std::vector<std::uint64_t> out;
    for (std::uint64_t seg = 0; seg < n_segments; ++seg) {
      sieve_one_segment(sh, seg, mark, out);
      handler(seg, out);
    }
    return;
  }

  std::atomic<std::uint64_t> next{0};
  std::mutex mu;
  std::condition_variable cv;
  std::uint64_t emit_next = 0;
  bool aborted = false;
  std::exception_ptr error;

  auto worker = [&] {
    std::vector<std::uint8_t> mark;
    std::vector<std::uint64_t> out;
    try {
      for (;;) {
        std::uint64_t seg = next.fetch_add(1);
        if (seg >= n_segments) return;
        sieve_one_segment(sh, seg, mark, out);
        std::unique_lock<std::mutex> lock(mu);
        cv.wait(lock, [&] { return aborted || emit_next == seg; });
        if (aborted) return;
        handler(seg, out);
        ++emit_next;
        cv.notify_all();
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!error) error = std::current_exception();
      aborted = true;
      cv.notify_all();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

void for_each_prime(std::uint64_t lo, std::uint64_t hi, const SieveConfig& cfg,
                    const std::function<void(std::uint64_t)>& fn) {
  for_each_prime_segment(lo, hi, cfg,
                         [&](std::uint64_t, std::span<const std::uint64_t> primes) {
                           for (std::uint64_t p : primes) fn(p);
                         });
}

PrimeCount count_primes(std::uint64_t x, const SieveConfig& cfg) {
  std::uint64_t count = 0;
  for_each_prime_segment(2, x, cfg,
                         [&](std::uint64_t, std::span<const std::uint64_t> primes) {
                           count += primes.size();
                         });
  return PrimeCount{x, count};
}

BlockClassification classify_block(unsigned m, const SieveConfig& cfg,
                                   const WheelBudget& budget) {
  WheelPattern w = build_wheel(m, budget);
  std::uint64_t x = w.length + 1;

  BlockClassification bc;
  bc.m = m;
  bc.x = x;
  bc.sqrt_half_x = isqrt(x / 2);

  std::uint32_t pm = w.max_basis_prime();
  for (std::uint64_t p : small_primes(bc.sqrt_half_x)) {
    if (p > pm) {
      ++bc.k;
      bc.p_m_plus_k = p;
    }
  }

  // Least-factor labels come from a segmented sieve over (1, X]: multiples
  // of each prime in (p_m, sqrt(X)] get that prime if nothing smaller claimed
  // them first. Block elements are coprime to the basis, so primes <= p_m
  // never divide them and are skipped.
  std::vector<std::uint64_t> sieve_primes = small_primes(isqrt(x));
  std::uint64_t seg_size = std::max<std::uint64_t>(cfg.segment_size, 64);
  bc.elements.reserve(w.period);

  WheelRoller roller(w, 2);  // first block element is p_{m+1}
  std::vector<std::uint32_t> lpf;
  for (std::uint64_t s_lo = 2; s_lo <= x; s_lo += seg_size) {
    std::uint64_t s_hi = std::min(x, s_lo + seg_size - 1);
    lpf.assign(s_hi - s_lo + 1, 0);
    for (std::uint64_t p : sieve_primes) {
      if (p <= pm) continue;
      std::uint64_t start = std::max(2 * p, ((s_lo - 1) / p + 1) * p);
      for (std::uint64_t q = start; q <= s_hi; q += p) {
        if (!lpf[q - s_lo]) lpf[q - s_lo] = static_cast<std::uint32_t>(p);
      }
    }
    while (roller.value() <= s_hi) {
      std::uint64_t v = roller.value();
      std::uint64_t f = lpf[v - s_lo];
      bc.elements.push_back({v, f});
      if (f == 0) {
        ++bc.big_k;
        bc.p_m_plus_big_k = v;
      }
      roller.advance();
    }
  }
  return bc;
}

PairCensus composite_pair_census(unsigned m, const SieveConfig& cfg,
                                 const WheelBudget& budget) {
  BlockClassification bc = classify_block(m, cfg, budget);

  PairCensus pc;
  pc.m = m;
  for (std::size_t i = 0; i + 1 < bc.elements.size(); ++i) {
    if (bc.elements[i + 1].value - bc.elements[i].value != 2) continue;
    ++pc.pair_count_total;
    if (!bc.elements[i].is_prime() && !bc.elements[i + 1].is_prime()) {
      ++pc.composite_pairs;
    }
  }
  pc.threshold = std::sqrt(static_cast<double>(bc.x) / 2.0);
  std::uint64_t skips = skip_product(m);
  pc.eq_main_value = checked_mul(14, skips);
  pc.n_value = skips / 15;
  return pc;
}

WindowReport consecutive_primes_window(unsigned n) {
  if (n < 2) throw DomainError("window uses p_{n-1}, p_n, p_{n+1}: n must be >= 2");
  std::uint64_t pn = nth_prime(n);
  std::uint64_t pn_next = nth_prime(n + 1);
  std::uint64_t window_hi = checked_mul(pn, pn_next);
  std::uint64_t pn_sq = checked_mul(pn, pn);
  std::uint64_t wheel_len = primorial(n - 1);

  WindowReport wr;
  wr.n = n;
  wr.window_lo = pn;
  wr.window_hi = window_hi;
  for (std::uint64_t q = pn + 1; q < window_hi; ++q) {
    if (q == pn_sq) continue;
    if (std::gcd(q, wheel_len) == 1) wr.members.push_back(q);
  }

  // Trial division, independent of the wheel filter above.
  std::vector<std::uint64_t> divisors = small_primes(isqrt(window_hi));
  auto is_prime = [&](std::uint64_t v) {
    for (std::uint64_t p : divisors) {
      if (p * p > v) break;
      if (v % p == 0) return false;
    }
    return v >= 2;
  };
  std::vector<std::uint64_t> primes_in_window;
  for (std::uint64_t q = pn + 1; q < window_hi; ++q) {
    if (is_prime(q)) primes_in_window.push_back(q);
  }

  const std::string name = "consecutive-primes-window";
  if (wr.members == primes_in_window) {
    wr.report = VerificationReport::pass(name);
  } else {
    Witness wit;
    std::size_t upto = std::min(wr.members.size(), primes_in_window.size());
    std::size_t i = 0;
    while (i < upto && wr.members[i] == primes_in_window[i]) ++i;
    wit.index = i;
    wit.expected = i < primes_in_window.size() ? primes_in_window[i] : 0;
    wit.actual = i < wr.members.size() ? wr.members[i] : 0;
    wit.note = "window member differs from the prime sequence";
    wr.report = VerificationReport::fail(name, wit);
  }
  return wr;
}

}  // namespace wheellab
