#include "wheellab/estimates.hpp"

#include <cmath>

namespace wheellab {
namespace consts {

double e_gamma() { return std::exp(kEulerGamma); }

double e_59_threshold() { return std::exp(5.9); }

void verify_constants() {
  if (std::abs(e_gamma() - kEGammaReference) > 1e-10) {
    throw InvariantError("stored Euler constant disagrees with the e^gamma reference");
  }
}

}  // namespace consts

namespace {

// Product accumulator tracking the rounding residue of each multiply via fma.
struct CompensatedProduct {
  double hi = 1.0;
  double lo = 0.0;
  std::uint64_t n = 0;

  void multiply(double f) {
    double p = hi * f;
    double e = std::fma(hi, f, -p);  // exact residue of hi*f
    lo = std::fma(lo, f, e);
    hi = p;
    ++n;
  }

  double value() const { return hi + lo; }

  // First-order bound: one rounding on the final fold plus the accumulated
  // second-order terms of the lo track.
  double error_estimate() const {
    double eps = std::numeric_limits<double>::epsilon();
    return std::abs(value()) * eps * (2.0 + static_cast<double>(n) * eps);
  }
};

BoundReport ratio_bounds(const std::string& check, std::uint64_t x, double c_low,
                         double c_high, const SieveConfig& cfg) {
  double xl = static_cast<double>(x) / std::log(static_cast<double>(x));
  BoundReport r;
  r.check = check;
  r.x_or_m = x;
  r.value = static_cast<double>(count_primes(x, cfg).count);
  r.lower = c_low * xl;
  r.upper = c_high * xl;
  r.holds = r.lower < r.value && r.value < r.upper;
  r.margin_low = r.value - r.lower;
  r.margin_high = r.upper - r.value;
  return r;
}

}  // namespace

BoundReport chebyshev_bounds(std::uint64_t x, const SieveConfig& cfg) {
  if (x < 2) throw DomainError("chebyshev bounds need x >= 2");
  return ratio_bounds("chebyshev", x, consts::kChebyshevC1, consts::kChebyshevC2, cfg);
}

BoundReport erdos_bounds(std::uint64_t x, const SieveConfig& cfg) {
  if (x < 3) throw DomainError("erdos bounds need x >= 3");
  return ratio_bounds("erdos", x, consts::kErdosLower, consts::kErdosUpper, cfg);
}

BoundReport mertens_product(std::uint64_t x, const SieveConfig& cfg) {
  if (x < 2) throw DomainError("mertens product needs x >= 2");
  CompensatedProduct prod;
  for_each_prime(2, x, cfg, [&](std::uint64_t p) {
    prod.multiply(static_cast<double>(p - 1) / static_cast<double>(p));
  });

  double log_x = std::log(static_cast<double>(x));
  double reference = std::exp(-consts::kEulerGamma) / log_x;

  BoundReport r;
  r.check = "mertens";
  r.x_or_m = x;
  r.value = prod.value();
  r.lower = reference;
  r.upper = reference;
  r.holds = true;  // reference only; the O(1/log x) factor is not a bound
  r.margin_low = r.value - reference;
  r.margin_high = reference - r.value;
  r.rel_error = r.value * consts::e_gamma() * log_x - 1.0;
  r.value_err = prod.error_estimate();
  r.flags = {"reference-only", "o-term-omitted"};
  return r;
}

BoundReport harmonic_bounds(std::uint64_t n) {
  if (n < 2) {
    throw DomainError("harmonic bounds need N >= 2: H_1 = 1 equals 1 + log 1, "
                      "so the strict upper bound fails");
  }
  double sum = 0.0;
  for (std::uint64_t i = n; i >= 1; --i) sum += 1.0 / static_cast<double>(i);

  BoundReport r;
  r.check = "harmonic";
  r.x_or_m = n;
  r.value = sum;
  r.lower = std::log1p(static_cast<double>(n));
  r.upper = 1.0 + std::log(static_cast<double>(n));
  r.holds = r.lower < r.value && r.value < r.upper;
  r.margin_low = r.value - r.lower;
  r.margin_high = r.upper - r.value;
  return r;
}

BoundReport primorial_pi_sandwich(unsigned m, const SieveConfig& cfg) {
  if (m < 1) throw DomainError("sandwich needs m >= 1");
  std::uint64_t x = primorial(m) + 1;

  double log_x = std::log(static_cast<double>(x));
  double base = (static_cast<double>(x) - 1.0) / log_x / consts::e_gamma();

  BoundReport r;
  r.check = "pi-sandwich";
  r.x_or_m = m;
  r.x_value = x;
  r.value = static_cast<double>(count_primes(x, cfg).count);
  r.lower = base + static_cast<double>(m);
  r.upper = 2.0 * base + static_cast<double>(m);
  r.holds = r.lower < r.value && r.value < r.upper;
  r.margin_low = r.value - r.lower;
  r.margin_high = r.upper - r.value;
  r.flags.push_back("o-term-omitted");
  if (m <= 3) r.flags.push_back("tiny-x");
  if (static_cast<double>(m) < log_x) r.flags.push_back("m-below-log-x");
  return r;
}

namespace {

// prod (1 - 1/p) over the primes in (p_m, isqrt(X/2)]; empty product is 1.
double tail_product(unsigned m, std::uint64_t x, unsigned* k_out) {
  std::uint64_t pm = nth_prime(m);
  std::uint64_t kappa = isqrt(x / 2);
  CompensatedProduct prod;
  unsigned k = 0;
  for (std::uint64_t p : small_primes(kappa)) {
    if (p <= pm) continue;
    prod.multiply(static_cast<double>(p - 1) / static_cast<double>(p));
    ++k;
  }
  if (k_out) *k_out = k;
  return prod.value();
}

InequalityReport counting_inequality(const std::string& check, unsigned m, unsigned n,
                                     double coefficient, const SieveConfig& cfg) {
  std::uint64_t x = primorial(m) + 1;
  InequalityReport r;
  r.check = check;
  r.m = m;
  r.n = n;
  r.x = x;
  double tail = tail_product(m, x, &r.k);
  r.lhs = coefficient * static_cast<double>(skip_product(m)) * tail;
  r.rhs = static_cast<double>(count_primes(x, cfg).count) - static_cast<double>(m);
  r.satisfied = r.lhs <= r.rhs;
  return r;
}

}  // namespace

InequalityReport main_inequality2_report(unsigned m, unsigned n, const SieveConfig& cfg) {
  if (n < 2) throw DomainError("inequality coefficient needs n >= 2");
  if (m < n) throw DomainError("inequality needs m >= n");
  // primorial(n)/skip_product(n); exact for n = 4 (210/15 = 14).
  double coefficient = static_cast<double>(primorial(n)) /
                       static_cast<double>(skip_product(n));
  return counting_inequality("main-inequality2", m, n, coefficient, cfg);
}

InequalityReport main_inequality_report(unsigned m, const SieveConfig& cfg) {
  if (m < 2) throw DomainError("inequality needs m >= 2");
  return counting_inequality("main-inequality", m, 4, 14.0, cfg);
}

InequalityReport alpha_claim_scan(std::uint64_t p_m) {
  if (static_cast<double>(p_m) <= consts::e_59_threshold()) {
    throw DomainError("alpha claim applies for p_m > e^{5.9} (about 365.04)");
  }
  {
    bool prime = p_m >= 2;
    for (std::uint64_t p : small_primes(isqrt(p_m))) {
      if (p_m % p == 0 && p_m != p) {
        prime = false;
        break;
      }
    }
    if (!prime) throw DomainError("p_m must be prime");
  }

  InequalityReport r;
  r.check = "alpha-claim";
  r.p_m = p_m;
  r.rhs = 2.0 * std::log(2.0);
  double denom = std::exp(2.0 * consts::kEulerGamma) * std::log(static_cast<double>(p_m));

  double q = 1.0;  // prod_{i=2}^{n} p_i / (p_i - 2)
  for (unsigned n = 2;; ++n) {
    std::uint64_t pn = nth_prime(n);
    if (pn >= p_m) break;
    q *= static_cast<double>(pn) / static_cast<double>(pn - 2);
    double alpha = 2.0 * (2.0 * q - 1.0) / denom;
    r.n = n;
    r.alpha = alpha;
    r.lhs = alpha;
    if (alpha > r.rhs) {
      r.found = true;
      r.satisfied = true;
      return r;
    }
  }
  r.found = false;
  r.satisfied = false;
  return r;
}

std::vector<BoundViolation> scan_bounds(const std::string& which, std::uint64_t lo,
                                        std::uint64_t hi, const SieveConfig& cfg) {
  double c_low = 0.0;
  double c_high = 0.0;
  std::uint64_t min_x = 0;
  if (which == "erdos") {
    c_low = consts::kErdosLower;
    c_high = consts::kErdosUpper;
    min_x = 3;
  } else if (which == "chebyshev") {
    c_low = consts::kChebyshevC1;
    c_high = consts::kChebyshevC2;
    min_x = 2;
  } else {
    throw DomainError("unknown bound scan: " + which);
  }
  lo = std::max(lo, min_x);
  std::vector<BoundViolation> violations;
  if (hi < lo) return violations;

  std::vector<std::uint64_t> primes;
  for_each_prime(2, hi, cfg, [&](std::uint64_t p) { primes.push_back(p); });

  std::size_t idx = 0;
  std::uint64_t pi = 0;
  for (std::uint64_t x = 2; x <= hi; ++x) {
    while (idx < primes.size() && primes[idx] <= x) {
      ++idx;
      ++pi;
    }
    if (x < lo) continue;
    double xl = static_cast<double>(x) / std::log(static_cast<double>(x));
    double lower = c_low * xl;
    double upper = c_high * xl;
    double value = static_cast<double>(pi);
    if (!(lower < value && value < upper)) {
      violations.push_back({x, lower, pi, upper});
    }
  }
  return violations;
}

}  // namespace wheellab
