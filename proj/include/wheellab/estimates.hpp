#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "wheellab/sieve.hpp"

namespace wheellab {
namespace consts {

// Euler's constant to 15 significant digits, and the derived e^gamma.
inline constexpr double kEulerGamma = 0.577215664901533;
// Reference value for e^gamma used to cross-check the stored constant.
inline constexpr double kEGammaReference = 1.78107241799;
inline constexpr double kErdosLower = 0.6931471805599453;   // log 2
inline constexpr double kErdosUpper = 1.3862943611198906;   // 2 log 2
inline constexpr double kChebyshevC1 = 0.6931471805599453 / 3.0;  // (1/3) log 2
inline constexpr double kChebyshevC2 = 6.0 * 0.6931471805599453;  // 6 log 2

double e_gamma();          // exp(kEulerGamma)
double e_59_threshold();   // exp(5.9), approx 365.04

// Throws InvariantError if exp(kEulerGamma) drifts from the reference
// beyond 1e-10. Called by the CLI on startup and by the test suites.
void verify_constants();

}  // namespace consts

// A quantity sandwiched between analytic bounds. margin_low/margin_high are
// value - lower and upper - value. `flags` carries qualifiers such as
// "o-term-omitted" for bounds whose unpinned O(1/log x) factor was dropped;
// such reports are heuristic, not proofs. For reference-only reports
// (mertens_product) lower == upper == reference, holds is vacuously true,
// and rel_error carries the measured relative deviation.
struct BoundReport {
  std::string check;
  std::uint64_t x_or_m = 0;
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool holds = false;
  double margin_low = 0.0;
  double margin_high = 0.0;
  std::vector<std::string> flags;
  double rel_error = std::numeric_limits<double>::quiet_NaN();
  double value_err = std::numeric_limits<double>::quiet_NaN();
  std::optional<std::uint64_t> x_value;  // X = 1 + primorial(m), when keyed by m
};

// Two sides of one of the counting inequalities. `satisfied` is reported,
// never asserted: at small scales the inequality is expected to fail, which
// is exactly the arithmetic the contradiction argument runs on.
struct InequalityReport {
  std::string check;
  unsigned m = 0;
  unsigned n = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
  unsigned k = 0;                        // primes in (p_m, sqrt(X/2)]
  std::uint64_t x = 0;                   // 1 + primorial(m)
  std::uint64_t p_m = 0;                 // alpha scan input
  bool found = false;                    // alpha scan outcome
  double alpha = std::numeric_limits<double>::quiet_NaN();
};

// pi(x) strictly between (log2/3) x/log x and (6 log2) x/log x; x >= 2.
BoundReport chebyshev_bounds(std::uint64_t x, const SieveConfig& cfg = {});

// pi(x) strictly between (log2) x/log x and (2 log2) x/log x; x >= 3.
// Note the lower bound is attained (not exceeded) at x = 4, where both
// sides equal 2; the report is honest about that single failure.
BoundReport erdos_bounds(std::uint64_t x, const SieveConfig& cfg = {});

// prod_{p <= x} (1 - 1/p) with compensated accumulation, against the
// reference e^{-gamma}/log x; rel_error = value * e^gamma * log x - 1.
BoundReport mertens_product(std::uint64_t x, const SieveConfig& cfg = {});

// log(1+N) < H_N < 1 + log N, strict; N >= 2 (equality at N = 1).
BoundReport harmonic_bounds(std::uint64_t n);

// pi(X) for X = 1 + primorial(m) against (1/e^gamma)(X-1)/log X + m and
// twice that; O-term dropped, flagged heuristic.
BoundReport primorial_pi_sandwich(unsigned m, const SieveConfig& cfg = {});

// 14 (p_2-2)...(p_m-2) prod_{i=m+1}^{m+k}(1 - 1/p_i)  vs  pi(X) - m.
InequalityReport main_inequality_report(unsigned m, const SieveConfig& cfg = {});

// Same with the coefficient generalized to primorial(n)/((p_2-2)...(p_n-2));
// n = 4 reproduces main_inequality_report exactly.
InequalityReport main_inequality2_report(unsigned m, unsigned n,
                                         const SieveConfig& cfg = {});

// Finds the minimal n with p_n < p_m such that
//   alpha = 2 (2 prod_{i=2}^{n} p_i/(p_i-2) - 1) / (e^{2 gamma} log p_m)
// exceeds 2 log 2. Requires p_m prime and p_m > e^{5.9}.
InequalityReport alpha_claim_scan(std::uint64_t p_m);

// A bound violation found by a range scan.
struct BoundViolation {
  std::uint64_t x = 0;
  double lower = 0.0;
  std::uint64_t pi = 0;
  double upper = 0.0;
};

// Scans every integer x in [lo, hi] with a single prime stream and an
// incremental pi. `which` is "erdos" (lo clamped to 3) or "chebyshev"
// (lo clamped to 2). Expected violation set: {4} for erdos, {} for chebyshev.
std::vector<BoundViolation> scan_bounds(const std::string& which, std::uint64_t lo,
                                        std::uint64_t hi, const SieveConfig& cfg = {});

}  // namespace wheellab
