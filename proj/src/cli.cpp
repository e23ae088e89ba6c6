#include "wheellab/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wheellab/report_io.hpp"

namespace wheellab::cli {

namespace {

using nlohmann::json;

enum class Format { kText, kJson, kCsv };

Format parse_format(const std::string& s) {
  if (s == "text") return Format::kText;
  if (s == "json") return Format::kJson;
  if (s == "csv") return Format::kCsv;
  throw DomainError("unknown format '" + s + "' (expected text, json or csv)");
}

// Shared flags. Sieve knobs never appear in output, so identical queries
// print identical bytes whatever the thread count or segment size.
struct Common {
  std::string format = "text";
  unsigned threads = 1;
  std::uint64_t segment_size = std::uint64_t{1} << 16;
  std::uint64_t memory_budget_mib = 768;
  std::string cache_dir;
  bool no_header = false;

  Format fmt() const { return parse_format(format); }
  SieveConfig sieve() const { return SieveConfig{4, segment_size, threads}; }
  WheelBudget budget() const { return WheelBudget::from_mib(memory_budget_mib); }

  std::filesystem::path resolved_cache_dir() const {
    if (!cache_dir.empty()) return cache_dir;
    if (const char* env = std::getenv("WHEELLAB_CACHE_DIR")) return env;
    return ".";
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format: text, json or csv");
  cmd->add_option("--threads", c.threads, "Sieve worker threads")
      ->check(CLI::Range(1u, 256u));
  cmd->add_option("--segment-size", c.segment_size, "Sieve segment size in integers")
      ->check(CLI::Range(std::uint64_t{64}, std::uint64_t{1} << 30));
  cmd->add_option("--memory-budget", c.memory_budget_mib,
                  "Materialization budget in MiB (>= 1)")
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 20));
  cmd->add_option("--cache-dir", c.cache_dir,
                  "Cache directory (default $WHEELLAB_CACHE_DIR, else .)");
  cmd->add_flag("--no-header", c.no_header, "Omit the header row in csv output");
}

std::uint64_t parse_u64(const std::string& tok) {
  try {
    std::size_t used = 0;
    std::uint64_t v = std::stoull(tok, &used);
    if (used != tok.size()) {
      throw DomainError("cannot parse '" + tok + "' as a number");
    }
    return v;
  } catch (const std::invalid_argument&) {
    throw DomainError("cannot parse '" + tok + "' as a number");
  } catch (const std::out_of_range&) {
    throw DomainError("value out of range in '" + tok + "'");
  }
}

// "a..b" inclusive ranges and comma lists, e.g. "2..8" or "3,5,9..12".
std::vector<std::pair<std::uint64_t, std::uint64_t>> parse_spans(const std::string& s) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> spans;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    std::string tok = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
    if (tok.empty()) throw DomainError("empty entry in '" + s + "'");
    std::size_t dots = tok.find("..");
    if (dots == std::string::npos) {
      std::uint64_t v = parse_u64(tok);
      spans.emplace_back(v, v);
    } else {
      std::uint64_t a = parse_u64(tok.substr(0, dots));
      std::uint64_t b = parse_u64(tok.substr(dots + 2));
      if (b < a) throw DomainError("descending range '" + tok + "'");
      spans.emplace_back(a, b);
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return spans;
}

std::vector<std::uint64_t> expand_spans(const std::string& s, std::uint64_t max_count) {
  std::vector<std::uint64_t> values;
  for (auto [a, b] : parse_spans(s)) {
    if (b - a >= max_count - values.size()) {
      throw DomainError("range '" + s + "' expands past " + std::to_string(max_count) +
                        " values");
    }
    for (std::uint64_t v = a;; ++v) {
      values.push_back(v);
      if (v == b) break;
    }
  }
  return values;
}

void emit_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

// ---- wheel ---------------------------------------------------------------

struct WheelArgs {
  Common common;
  unsigned n = 0;
  bool extend = false;
  std::int64_t block = -1;
  bool with_gaps = false;
  bool with_residues = false;
};

int run_wheel(const WheelArgs& a, std::ostream& out) {
  WheelPattern w = build_wheel(a.n, a.common.budget());
  json extra = json::object();
  if (a.extend) {
    w = extend_wheel(w, a.common.budget());
    extra["route"] = "extend";
  }
  if (a.block >= 0) {
    Block b = block_of(w, static_cast<std::uint64_t>(a.block));
    switch (a.common.fmt()) {
      case Format::kJson: {
        json j = block_json(b);
        j["n"] = w.basis_size();
        emit_json(out, j);
        break;
      }
      case Format::kCsv:
        if (!a.common.no_header) out << "element\n";
        for (std::uint64_t e : b.elements) out << e << '\n';
        break;
      case Format::kText:
        for (std::uint64_t e : b.elements) out << e << '\n';
        break;
    }
    return 0;
  }
  switch (a.common.fmt()) {
    case Format::kJson: {
      json j = wheel_json(w, a.with_gaps, a.with_residues);
      j.update(extra);
      emit_json(out, j);
      break;
    }
    case Format::kCsv: {
      if (!a.common.no_header) out << "n,length,period\n";
      out << w.basis_size() << ',' << w.length << ',' << w.period << '\n';
      break;
    }
    case Format::kText: {
      out << "n=" << w.basis_size() << " basis=";
      for (std::size_t i = 0; i < w.basis.size(); ++i) {
        if (i) out << ',';
        out << w.basis[i];
      }
      out << " length=" << w.length << " period=" << w.period << '\n';
      if (a.with_gaps) {
        out << "gaps=";
        for (std::size_t i = 0; i < w.gaps.size(); ++i) {
          if (i) out << ',';
          out << w.gaps[i];
        }
        out << '\n';
      }
      if (a.with_residues) {
        out << "residues=";
        for (std::size_t i = 0; i < w.residues.size(); ++i) {
          if (i) out << ',';
          out << w.residues[i];
        }
        out << '\n';
      }
      break;
    }
  }
  return 0;
}

// ---- gaps ----------------------------------------------------------------

struct GapsArgs {
  Common common;
  unsigned n = 0;
};

int run_gaps(const GapsArgs& a, std::ostream& out) {
  WheelPattern w = build_wheel(a.n, a.common.budget());
  GapHistogram h = gap_histogram(w);
  switch (a.common.fmt()) {
    case Format::kJson:
      emit_json(out, histogram_json(w, h));
      break;
    case Format::kCsv:
    case Format::kText:
      out << histogram_csv(h, !a.common.no_header && a.common.fmt() == Format::kCsv);
      break;
  }
  return 0;
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
  Common common;
  std::string n_spec = "2..8";
  std::string checks = "mirror,multiplicity,central,last";
};

int run_verify(const VerifyArgs& a, std::ostream& out) {
  bool want_mirror = false;
  bool want_mult = false;
  bool want_central = false;
  bool want_last = false;
  std::size_t pos = 0;
  while (pos <= a.checks.size()) {
    std::size_t comma = a.checks.find(',', pos);
    std::string tok =
        a.checks.substr(pos, comma == std::string::npos ? comma : comma - pos);
    if (tok == "mirror") {
      want_mirror = true;
    } else if (tok == "multiplicity") {
      want_mult = true;
    } else if (tok == "central") {
      want_central = true;
    } else if (tok == "last") {
      want_last = true;
    } else {
      throw DomainError("unknown check '" + tok +
                        "' (expected mirror, multiplicity, central, last)");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }

  json results = json::array();
  bool all_passed = true;
  for (std::uint64_t n : expand_spans(a.n_spec, 64)) {
    WheelPattern w = build_wheel(static_cast<unsigned>(n), a.common.budget());
    std::vector<VerificationReport> selected;
    if (want_mirror) selected.push_back(check_mirror_symmetry(w));
    if (want_mult || want_central || want_last) {
      std::vector<VerificationReport> mult = check_gap_multiplicities(w);
      if (want_mult) {
        selected.push_back(mult[0]);  // skip-multiplicity
        selected.push_back(mult[1]);  // even-multiplicities
      }
      if (want_central) selected.push_back(mult[2]);
      if (want_last) selected.push_back(mult[3]);
    }
    for (const auto& r : selected) {
      all_passed = all_passed && r.passed;
      json j = verification_json(r);
      j["n"] = n;
      results.push_back(std::move(j));
    }
  }

  switch (a.common.fmt()) {
    case Format::kJson:
      emit_json(out, results);
      break;
    case Format::kCsv:
      if (!a.common.no_header) out << "n,check,passed\n";
      for (const auto& r : results) {
        out << r["n"].get<std::uint64_t>() << ',' << r["check"].get<std::string>() << ','
            << (r["passed"].get<bool>() ? "true" : "false") << '\n';
      }
      break;
    case Format::kText:
      for (const auto& r : results) {
        out << (r["passed"].get<bool>() ? "PASS" : "FAIL") << " n="
            << r["n"].get<std::uint64_t>() << ' ' << r["check"].get<std::string>() << '\n';
      }
      break;
  }
  return all_passed ? 0 : 1;
}

// ---- primes / pi -----------------------------------------------------------

struct PrimesArgs {
  Common common;
  std::uint64_t limit = 0;
  std::string x_spec;
};

int run_primes(const PrimesArgs& a, std::ostream& out) {
  std::uint64_t lo = 2;
  std::uint64_t hi = a.limit;
  if (!a.x_spec.empty()) {
    auto spans = parse_spans(a.x_spec);
    if (spans.size() != 1) throw DomainError("--x takes a single value or range here");
    lo = spans[0].first;
    hi = spans[0].second;
  }
  if (hi == 0) throw DomainError("give --limit or --x");

  Format fmt = a.common.fmt();
  if (fmt == Format::kJson) {
    json arr = json::array();
    for_each_prime(lo, hi, a.common.sieve(), [&](std::uint64_t p) { arr.push_back(p); });
    emit_json(out, arr);
  } else {
    if (fmt == Format::kCsv && !a.common.no_header) out << "prime\n";
    for_each_prime(lo, hi, a.common.sieve(), [&](std::uint64_t p) { out << p << '\n'; });
  }
  return 0;
}

struct PiArgs {
  Common common;
  std::string x_spec;
};

int run_pi(const PiArgs& a, std::ostream& out) {
  std::vector<std::uint64_t> xs = expand_spans(a.x_spec, 1 << 24);
  std::vector<std::uint64_t> sorted = xs;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  // One stream, counts sampled at each requested point.
  std::map<std::uint64_t, std::uint64_t> pi_at;
  std::uint64_t count = 0;
  std::size_t idx = 0;
  for_each_prime(2, sorted.back(), a.common.sieve(), [&](std::uint64_t p) {
    while (idx < sorted.size() && sorted[idx] < p) pi_at[sorted[idx++]] = count;
    ++count;
  });
  while (idx < sorted.size()) pi_at[sorted[idx++]] = count;

  switch (a.common.fmt()) {
    case Format::kJson: {
      if (xs.size() == 1) {
        emit_json(out, prime_count_json({xs[0], pi_at[xs[0]]}));
      } else {
        json arr = json::array();
        for (std::uint64_t x : xs) arr.push_back(prime_count_json({x, pi_at[x]}));
        emit_json(out, arr);
      }
      break;
    }
    case Format::kCsv:
      if (!a.common.no_header) out << "x,pi\n";
      for (std::uint64_t x : xs) out << x << ',' << pi_at[x] << '\n';
      break;
    case Format::kText:
      for (std::uint64_t x : xs) out << "pi(" << x << ") = " << pi_at[x] << '\n';
      break;
  }
  return 0;
}

// ---- prop2 -----------------------------------------------------------------

struct Prop2Args {
  Common common;
  std::string n_spec = "2..8";
};

int run_prop2(const Prop2Args& a, std::ostream& out) {
  bool all_passed = true;
  json arr = json::array();
  for (std::uint64_t n : expand_spans(a.n_spec, 64)) {
    WindowReport wr = consecutive_primes_window(static_cast<unsigned>(n));
    all_passed = all_passed && wr.report.passed;
    arr.push_back(window_json(wr));
  }
  switch (a.common.fmt()) {
    case Format::kJson:
      emit_json(out, arr);
      break;
    case Format::kCsv:
      if (!a.common.no_header) out << "n,window_lo,window_hi,members,passed\n";
      for (const auto& j : arr) {
        out << j["n"].get<unsigned>() << ',' << j["window_lo"].get<std::uint64_t>() << ','
            << j["window_hi"].get<std::uint64_t>() << ',' << j["members"].size() << ','
            << (j["report"]["passed"].get<bool>() ? "true" : "false") << '\n';
      }
      break;
    case Format::kText:
      for (const auto& j : arr) {
        out << (j["report"]["passed"].get<bool>() ? "PASS" : "FAIL") << " n="
            << j["n"].get<unsigned>() << " window=(" << j["window_lo"].get<std::uint64_t>()
            << ',' << j["window_hi"].get<std::uint64_t>() << ") members="
            << j["members"].size() << '\n';
      }
      break;
  }
  return all_passed ? 0 : 1;
}

// ---- classify / pairs --------------------------------------------------------

struct ClassifyArgs {
  Common common;
  unsigned m = 0;
  bool with_elements = false;
};

int run_classify(const ClassifyArgs& a, std::ostream& out) {
  BlockClassification bc = classify_block(a.m, a.common.sieve(), a.common.budget());
  switch (a.common.fmt()) {
    case Format::kJson:
      emit_json(out, classification_json(bc, a.with_elements));
      break;
    case Format::kCsv:
      if (!a.common.no_header) out << "value,least_factor\n";
      for (const auto& e : bc.elements) out << e.value << ',' << e.least_factor << '\n';
      break;
    case Format::kText: {
      out << "m=" << bc.m << " X=" << bc.x << " sqrt(X/2)=" << bc.sqrt_half_x
          << " k=" << bc.k;
      if (bc.p_m_plus_k) out << " p_{m+k}=" << *bc.p_m_plus_k;
      out << " K=" << bc.big_k << " p_{m+K}=" << bc.p_m_plus_big_k << '\n';
      out << "primes=" << bc.big_k << " composites=" << bc.elements.size() - bc.big_k
          << '\n';
      if (a.with_elements) {
        for (const auto& e : bc.elements) {
          out << e.value;
          if (!e.is_prime()) out << " (lpf " << e.least_factor << ')';
          out << '\n';
        }
      }
      break;
    }
  }
  return 0;
}

struct PairsArgs {
  Common common;
  unsigned m = 0;
};

int run_pairs(const PairsArgs& a, std::ostream& out) {
  PairCensus pc = composite_pair_census(a.m, a.common.sieve(), a.common.budget());
  switch (a.common.fmt()) {
    case Format::kJson:
      emit_json(out, pair_census_json(pc));
      break;
    case Format::kCsv:
      if (!a.common.no_header) {
        out << "m,pair_count_total,composite_pairs,threshold,eq_main_value,N_value\n";
      }
      out << pc.m << ',' << pc.pair_count_total << ',' << pc.composite_pairs << ','
          << format_double(pc.threshold) << ',' << pc.eq_main_value << ',' << pc.n_value
          << '\n';
      break;
    case Format::kText:
      out << "m=" << pc.m << " gap-2 pairs=" << pc.pair_count_total
          << " composite pairs=" << pc.composite_pairs << " threshold="
          << format_double(pc.threshold) << " eq_main=" << pc.eq_main_value
          << " N=" << pc.n_value << '\n';
      break;
  }
  return 0;
}

// ---- estimate ----------------------------------------------------------------

struct EstimateArgs {
  Common common;
  std::string x_spec;
  std::string m_spec;
  std::string n_spec;
  std::string pm_spec;
  unsigned n2 = 0;  // --n for ineq2
};

void emit_bounds(const Common& common, const std::vector<BoundReport>& reports,
                 std::ostream& out) {
  switch (common.fmt()) {
    case Format::kJson:
      if (reports.size() == 1) {
        emit_json(out, bound_json(reports[0]));
      } else {
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(bound_json(r));
        emit_json(out, arr);
      }
      break;
    case Format::kCsv:
      if (!common.no_header) out << bound_csv_header();
      for (const auto& r : reports) out << bound_csv_row(r);
      break;
    case Format::kText:
      for (const auto& r : reports) {
        bool reference_only = false;
        for (const auto& f : r.flags) reference_only = reference_only || f == "reference-only";
        if (reference_only) {
          out << "INFO " << r.check << " at " << r.x_or_m << ": value="
              << format_double(r.value) << " reference=" << format_double(r.lower)
              << " rel_error=" << format_double(r.rel_error) << '\n';
          continue;
        }
        out << (r.holds ? "PASS " : "FAIL ") << r.check << " at " << r.x_or_m << ": "
            << format_double(r.lower) << " | " << format_double(r.value) << " | "
            << format_double(r.upper);
        for (const auto& f : r.flags) out << " [" << f << ']';
        out << '\n';
      }
      break;
  }
}

int run_estimate_ratio(const std::string& which, const EstimateArgs& a, std::ostream& out) {
  auto spans = parse_spans(a.x_spec);
  bool scalar = spans.size() == 1 && spans[0].first == spans[0].second;
  if (scalar) {
    BoundReport r = which == "erdos" ? erdos_bounds(spans[0].first, a.common.sieve())
                                     : chebyshev_bounds(spans[0].first, a.common.sieve());
    emit_bounds(a.common, {r}, out);
    return r.holds ? 0 : 1;
  }

  // Range mode: one pass, report the violations.
  std::uint64_t scanned = 0;
  json violations = json::array();
  for (auto [lo, hi] : spans) {
    for (const auto& v : scan_bounds(which, lo, hi, a.common.sieve())) {
      violations.push_back(json{
          {"x", v.x}, {"lower", v.lower}, {"pi", v.pi}, {"upper", v.upper}});
    }
    std::uint64_t lo2 = std::max(lo, which == "erdos" ? std::uint64_t{3} : std::uint64_t{2});
    if (hi >= lo2) scanned += hi - lo2 + 1;
  }
  switch (a.common.fmt()) {
    case Format::kJson:
      emit_json(out, json{{"check", which},
                          {"scanned", scanned},
                          {"violation_count", violations.size()},
                          {"violations", violations}});
      break;
    case Format::kCsv:
      if (!a.common.no_header) out << "x,lower,pi,upper\n";
      for (const auto& v : violations) {
        out << v["x"].get<std::uint64_t>() << ',' << format_double(v["lower"].get<double>())
            << ',' << v["pi"].get<std::uint64_t>() << ','
            << format_double(v["upper"].get<double>()) << '\n';
      }
      break;
    case Format::kText:
      out << which << ": scanned " << scanned << " integers, " << violations.size()
          << " violations\n";
      for (const auto& v : violations) {
        out << "FAIL x=" << v["x"].get<std::uint64_t>() << " lower="
            << format_double(v["lower"].get<double>()) << " pi="
            << v["pi"].get<std::uint64_t>() << '\n';
      }
      break;
  }
  return violations.empty() ? 0 : 1;
}

int run_estimate_mertens(const EstimateArgs& a, std::ostream& out) {
  std::vector<BoundReport> reports;
  for (std::uint64_t x : expand_spans(a.x_spec, 1 << 10)) {
    reports.push_back(mertens_product(x, a.common.sieve()));
  }
  emit_bounds(a.common, reports, out);
  return 0;
}

int run_estimate_harmonic(const EstimateArgs& a, std::ostream& out) {
  std::vector<BoundReport> reports;
  bool all_hold = true;
  for (std::uint64_t n : expand_spans(a.n_spec, 1 << 16)) {
    reports.push_back(harmonic_bounds(n));
    all_hold = all_hold && reports.back().holds;
  }
  emit_bounds(a.common, reports, out);
  return all_hold ? 0 : 1;
}

int run_estimate_sandwich(const EstimateArgs& a, std::ostream& out) {
  std::vector<BoundReport> reports;
  for (std::uint64_t m : expand_spans(a.m_spec, 16)) {
    reports.push_back(primorial_pi_sandwich(static_cast<unsigned>(m), a.common.sieve()));
  }
  emit_bounds(a.common, reports, out);
  return 0;  // heuristic sandwich: recorded, not gated
}

void emit_inequalities(const Common& common, const std::vector<InequalityReport>& reports,
                       std::ostream& out) {
  switch (common.fmt()) {
    case Format::kJson:
      if (reports.size() == 1) {
        emit_json(out, inequality_json(reports[0]));
      } else {
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(inequality_json(r));
        emit_json(out, arr);
      }
      break;
    case Format::kCsv:
      if (!common.no_header) out << "check,m,n,lhs,rhs,satisfied\n";
      for (const auto& r : reports) {
        out << r.check << ',' << r.m << ',' << r.n << ',' << format_double(r.lhs) << ','
            << format_double(r.rhs) << ',' << (r.satisfied ? "true" : "false") << '\n';
      }
      break;
    case Format::kText:
      for (const auto& r : reports) {
        out << r.check << " m=" << r.m << " n=" << r.n << ": lhs="
            << format_double(r.lhs) << " rhs=" << format_double(r.rhs) << " satisfied="
            << (r.satisfied ? "true" : "false") << '\n';
      }
      break;
  }
}

int run_estimate_ineq(const EstimateArgs& a, bool general, std::ostream& out) {
  std::vector<InequalityReport> reports;
  for (std::uint64_t m : expand_spans(a.m_spec, 16)) {
    reports.push_back(general ? main_inequality2_report(static_cast<unsigned>(m), a.n2,
                                                        a.common.sieve())
                              : main_inequality_report(static_cast<unsigned>(m),
                                                       a.common.sieve()));
  }
  emit_inequalities(a.common, reports, out);
  return 0;  // the contradiction arithmetic is reported, never asserted
}

int run_estimate_claim(const EstimateArgs& a, std::ostream& out) {
  std::vector<InequalityReport> reports;
  bool all_found = true;
  auto spans = parse_spans(a.pm_spec);
  for (auto [lo, hi] : spans) {
    if (lo == hi) {
      reports.push_back(alpha_claim_scan(lo));
      all_found = all_found && reports.back().found;
      continue;
    }
    for (std::uint64_t p : small_primes(hi)) {
      if (p < lo || static_cast<double>(p) <= consts::e_59_threshold()) continue;
      reports.push_back(alpha_claim_scan(p));
      all_found = all_found && reports.back().found;
    }
  }
  switch (a.common.fmt()) {
    case Format::kJson:
      if (reports.size() == 1) {
        emit_json(out, inequality_json(reports[0]));
      } else {
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(inequality_json(r));
        emit_json(out, arr);
      }
      break;
    case Format::kCsv:
      if (!a.common.no_header) out << "p_m,found,n,alpha\n";
      for (const auto& r : reports) {
        out << r.p_m << ',' << (r.found ? "true" : "false") << ',' << r.n << ','
            << format_double(r.alpha) << '\n';
      }
      break;
    case Format::kText:
      for (const auto& r : reports) {
        if (r.found) {
          out << "PASS p_m=" << r.p_m << " n=" << r.n << " alpha="
              << format_double(r.alpha) << " > 2log2\n";
        } else {
          out << "FAIL p_m=" << r.p_m << " no basis size reaches 2log2\n";
        }
      }
      break;
  }
  return all_found ? 0 : 1;
}

// ---- ap ------------------------------------------------------------------------

struct ApArgs {
  Common common;
  unsigned n = 0;
  std::uint64_t d = 0;
  std::uint64_t a = 0;
  std::uint64_t k0 = 0;
  std::uint64_t limit = 0;
};

int run_ap_column(const ApArgs& a, std::ostream& out) {
  if ((a.n == 0) == (a.d == 0)) throw DomainError("give exactly one of --n or --d");
  APCensus census = a.n > 0
                        ? column_census(a.n, a.limit, a.common.sieve(), a.common.budget())
                        : residue_census(a.d, a.limit, a.common.sieve(), a.common.budget());
  switch (a.common.fmt()) {
    case Format::kJson:
      emit_json(out, ap_census_json(census));
      break;
    case Format::kCsv:
    case Format::kText:
      out << census_csv(census, !a.common.no_header && a.common.fmt() == Format::kCsv);
      break;
  }
  return 0;
}

int run_ap_row(const ApArgs& a, std::ostream& out) {
  PrimeCount pc = row_progression(a.n, a.a, a.k0, a.limit, a.common.sieve());
  std::uint64_t step = (a.k0 - 1) * primorial(a.n);
  switch (a.common.fmt()) {
    case Format::kJson:
      emit_json(out, json{{"n", a.n},
                          {"a", a.a},
                          {"k0", a.k0},
                          {"step", step},
                          {"limit", pc.limit},
                          {"count", pc.count}});
      break;
    case Format::kCsv:
      if (!a.common.no_header) out << "a,k0,step,limit,count\n";
      out << a.a << ',' << a.k0 << ',' << step << ',' << pc.limit << ',' << pc.count
          << '\n';
      break;
    case Format::kText:
      out << "primes in " << a.a << " + j*" << step << " (j >= 1) up to " << pc.limit
          << ": " << pc.count << '\n';
      break;
  }
  return 0;
}

int run_ap_general(const ApArgs& a, std::ostream& out) {
  ProgressionReport r = general_progression(a.a, a.d, a.limit, a.common.sieve());
  switch (a.common.fmt()) {
    case Format::kJson:
      emit_json(out, progression_json(r));
      break;
    case Format::kCsv:
      if (!a.common.no_header) out << "a,d,limit,count,coprime\n";
      out << r.a << ',' << r.d << ',' << r.limit << ',' << r.count << ','
          << (r.coprime ? "true" : "false") << '\n';
      break;
    case Format::kText:
      out << "primes in " << r.a << " + n*" << r.d << " up to " << r.limit << ": "
          << r.count << (r.coprime ? "" : " [non-coprime]") << '\n';
      if (r.embedding) {
        out << "embedding: basis n=" << r.embedding->n << " h=" << r.embedding->h
            << " residue=" << r.embedding->residue << '\n';
      }
      break;
  }
  return 0;
}

int run_ap_twins(const ApArgs& a, std::ostream& out) {
  TwinColumnReport r = twin_column_pairs(a.n, a.limit, a.common.sieve(), a.common.budget());
  switch (a.common.fmt()) {
    case Format::kJson:
      emit_json(out, twin_json(r));
      break;
    case Format::kCsv:
      if (!a.common.no_header) out << "u,v,aligned_count\n";
      for (const auto& p : r.pairs) {
        out << p.u << ',' << p.v << ',' << p.aligned_count << '\n';
      }
      break;
    case Format::kText:
      out << "n=" << r.n << " modulus=" << r.modulus << " pairs=" << r.pairs.size()
          << " limit=" << r.limit << '\n';
      for (const auto& p : r.pairs) {
        out << '(' << p.u << ',' << p.v << "): " << p.aligned_count << '\n';
      }
      break;
  }
  return 0;
}

// ---- cache -----------------------------------------------------------------------

struct CacheArgs {
  Common common;
  unsigned n = 0;
  std::string path;
};

int run_cache_save(const CacheArgs& a, std::ostream& out) {
  WheelCache cache(a.common.resolved_cache_dir());
  std::filesystem::path p = cache.put(build_wheel(a.n, a.common.budget()));
  if (a.common.fmt() == Format::kJson) {
    emit_json(out, json{{"n", a.n}, {"path", p.string()}});
  } else {
    out << p.string() << '\n';
  }
  return 0;
}

int run_cache_load(const CacheArgs& a, std::ostream& out) {
  WheelPattern w;
  if (!a.path.empty()) {
    w = load_wheel(a.path);
  } else {
    if (a.n == 0) throw DomainError("give --n or --path");
    WheelCache cache(a.common.resolved_cache_dir());
    w = cache.load(a.n);
  }
  if (a.common.fmt() == Format::kJson) {
    emit_json(out, wheel_json(w));
  } else {
    out << "n=" << w.basis_size() << " length=" << w.length << " period=" << w.period
        << " (validated)\n";
  }
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"primorial wheel patterns, prime censuses and analytic bound reports"};
  app.require_subcommand(1);
  int exit_code = 0;

  WheelArgs wheel_args;
  auto* wheel_cmd = app.add_subcommand("wheel", "Build a wheel, extend it, or list a block");
  wheel_cmd->add_option("--n", wheel_args.n, "Basis size (first n primes)")->required();
  wheel_cmd->add_flag("--extend", wheel_args.extend, "Extend to basis n+1 by replication");
  wheel_cmd->add_option("--block", wheel_args.block, "Print block j instead of the summary");
  wheel_cmd->add_flag("--gaps", wheel_args.with_gaps, "Include the gap sequence");
  wheel_cmd->add_flag("--residues", wheel_args.with_residues, "Include the residues");
  add_common(wheel_cmd, wheel_args.common);
  wheel_cmd->callback([&] { exit_code = run_wheel(wheel_args, out); });

  GapsArgs gaps_args;
  auto* gaps_cmd = app.add_subcommand("gaps", "Gap histogram of a wheel");
  gaps_cmd->add_option("--n", gaps_args.n, "Basis size")->required();
  add_common(gaps_cmd, gaps_args.common);
  gaps_cmd->callback([&] { exit_code = run_gaps(gaps_args, out); });

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Check the gap-pattern theorems");
  verify_cmd->add_option("--n", verify_args.n_spec, "Basis sizes, e.g. 2..8");
  verify_cmd->add_option("--checks", verify_args.checks,
                         "Comma list of mirror,multiplicity,central,last");
  add_common(verify_cmd, verify_args.common);
  verify_cmd->callback([&] { exit_code = run_verify(verify_args, out); });

  PrimesArgs primes_args;
  auto* primes_cmd = app.add_subcommand("primes", "List primes, newline-delimited");
  primes_cmd->add_option("--limit", primes_args.limit, "Upper bound (from 2)");
  primes_cmd->add_option("--x", primes_args.x_spec, "Range a..b");
  add_common(primes_cmd, primes_args.common);
  primes_cmd->callback([&] { exit_code = run_primes(primes_args, out); });

  PiArgs pi_args;
  auto* pi_cmd = app.add_subcommand("pi", "Prime counting function");
  pi_cmd->add_option("--x", pi_args.x_spec, "Values, e.g. 100 or 10,100 or 2..50")
      ->required();
  add_common(pi_cmd, pi_args.common);
  pi_cmd->callback([&] { exit_code = run_pi(pi_args, out); });

  Prop2Args prop2_args;
  auto* prop2_cmd =
      app.add_subcommand("prop2", "Consecutive-primes windows (p_n, p_n*p_{n+1})");
  prop2_cmd->add_option("--n", prop2_args.n_spec, "Indices, e.g. 2..8");
  add_common(prop2_cmd, prop2_args.common);
  prop2_cmd->callback([&] { exit_code = run_prop2(prop2_args, out); });

  ClassifyArgs classify_args;
  auto* classify_cmd =
      app.add_subcommand("classify", "Label block 0 elements prime/composite");
  classify_cmd->add_option("--m", classify_args.m, "Basis size")->required();
  classify_cmd->add_flag("--elements", classify_args.with_elements, "List every element");
  add_common(classify_cmd, classify_args.common);
  classify_cmd->callback([&] { exit_code = run_classify(classify_args, out); });

  PairsArgs pairs_args;
  auto* pairs_cmd = app.add_subcommand("pairs", "Gap-2 composite pair census of block 0");
  pairs_cmd->add_option("--m", pairs_args.m, "Basis size")->required();
  add_common(pairs_cmd, pairs_args.common);
  pairs_cmd->callback([&] { exit_code = run_pairs(pairs_args, out); });

  EstimateArgs est_args;
  auto* est_cmd = app.add_subcommand("estimate", "Analytic bounds and inequalities");
  est_cmd->require_subcommand(1);

  auto* cheb = est_cmd->add_subcommand("chebyshev", "pi(x) vs (log2/3, 6log2) x/log x");
  cheb->add_option("--x", est_args.x_spec, "Value or range to scan")->required();
  add_common(cheb, est_args.common);
  cheb->callback([&] { exit_code = run_estimate_ratio("chebyshev", est_args, out); });

  auto* erd = est_cmd->add_subcommand("erdos", "pi(x) vs (log2, 2log2) x/log x");
  erd->add_option("--x", est_args.x_spec, "Value or range to scan")->required();
  add_common(erd, est_args.common);
  erd->callback([&] { exit_code = run_estimate_ratio("erdos", est_args, out); });

  auto* mert = est_cmd->add_subcommand("mertens", "prod (1-1/p) vs e^{-gamma}/log x");
  mert->add_option("--x", est_args.x_spec, "Values, e.g. 10 or 1000,1000000")->required();
  add_common(mert, est_args.common);
  mert->callback([&] { exit_code = run_estimate_mertens(est_args, out); });

  auto* harm = est_cmd->add_subcommand("harmonic", "log(1+N) < H_N < 1 + log N");
  harm->add_option("--n", est_args.n_spec, "Values of N (>= 2)")->required();
  add_common(harm, est_args.common);
  harm->callback([&] { exit_code = run_estimate_harmonic(est_args, out); });

  auto* sand = est_cmd->add_subcommand("sandwich", "pi(1 + primorial(m)) two-sided bound");
  sand->add_option("--m", est_args.m_spec, "Basis sizes, e.g. 4 or 4..9")->required();
  add_common(sand, est_args.common);
  sand->callback([&] { exit_code = run_estimate_sandwich(est_args, out); });

  auto* ineq = est_cmd->add_subcommand("ineq", "14 (p_2-2)...(p_m-2) tail vs pi(X) - m");
  ineq->add_option("--m", est_args.m_spec, "Basis sizes")->required();
  add_common(ineq, est_args.common);
  ineq->callback([&] { exit_code = run_estimate_ineq(est_args, false, out); });

  auto* ineq2 = est_cmd->add_subcommand("ineq2", "Generalized coefficient inequality");
  ineq2->add_option("--m", est_args.m_spec, "Basis sizes")->required();
  ineq2->add_option("--n", est_args.n2, "Coefficient basis size (>= 2)")->required();
  add_common(ineq2, est_args.common);
  ineq2->callback([&] { exit_code = run_estimate_ineq(est_args, true, out); });

  auto* claim = est_cmd->add_subcommand("claim", "Minimal n with alpha > 2log2");
  claim->add_option("--pm", est_args.pm_spec, "Prime p_m > e^{5.9}, or a range of primes")
      ->required();
  add_common(claim, est_args.common);
  claim->callback([&] { exit_code = run_estimate_claim(est_args, out); });

  ApArgs ap_args;
  auto* ap_cmd = app.add_subcommand("ap", "Arithmetic progression censuses");
  ap_cmd->require_subcommand(1);

  auto* col = ap_cmd->add_subcommand("column", "Prime counts per unit residue class");
  col->add_option("--n", ap_args.n, "Basis size (modulus = primorial)");
  col->add_option("--d", ap_args.d, "Explicit modulus");
  col->add_option("--limit", ap_args.limit, "Count primes up to this bound")->required();
  add_common(col, ap_args.common);
  col->callback([&] { exit_code = run_ap_column(ap_args, out); });

  auto* row = ap_cmd->add_subcommand("row", "Primes along a + j(k0-1)L, j >= 1");
  row->add_option("--n", ap_args.n, "Basis size")->required();
  row->add_option("--a", ap_args.a, "Unit residue start")->required();
  row->add_option("--k0", ap_args.k0, "Row selector (step = (k0-1)L)")->required();
  row->add_option("--limit", ap_args.limit, "Upper bound")->required();
  add_common(row, ap_args.common);
  row->callback([&] { exit_code = run_ap_row(ap_args, out); });

  auto* gen = ap_cmd->add_subcommand("general", "Primes of the form a + nd");
  gen->add_option("--a", ap_args.a, "Offset")->required();
  gen->add_option("--d", ap_args.d, "Step")->required();
  gen->add_option("--limit", ap_args.limit, "Upper bound")->required();
  add_common(gen, ap_args.common);
  gen->callback([&] { exit_code = run_ap_general(ap_args, out); });

  auto* twins = ap_cmd->add_subcommand("twins", "Aligned prime pairs in gap-2 columns");
  twins->add_option("--n", ap_args.n, "Basis size (>= 2)")->required();
  twins->add_option("--limit", ap_args.limit, "Upper bound")->required();
  add_common(twins, ap_args.common);
  twins->callback([&] { exit_code = run_ap_twins(ap_args, out); });

  CacheArgs cache_args;
  auto* cache_cmd = app.add_subcommand("cache", "Persist and reload wheels");
  cache_cmd->require_subcommand(1);

  auto* save = cache_cmd->add_subcommand("save", "Build a wheel and store it");
  save->add_option("--n", cache_args.n, "Basis size")->required();
  add_common(save, cache_args.common);
  save->callback([&] { exit_code = run_cache_save(cache_args, out); });

  auto* load = cache_cmd->add_subcommand("load", "Load and validate a stored wheel");
  load->add_option("--n", cache_args.n, "Basis size (looked up in the cache dir)");
  load->add_option("--path", cache_args.path, "Explicit .whl file path");
  add_common(load, cache_args.common);
  load->callback([&] { exit_code = run_cache_load(cache_args, out); });

  try {
    consts::verify_constants();
    app.parse(argc, const_cast<char**>(argv));
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return exit_code;
}

}  // namespace wheellab::cli
