#include "wheellab/report_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace wheellab {

using nlohmann::json;

std::string format_double(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

json wheel_json(const WheelPattern& w, bool include_gaps, bool include_residues) {
  json j{
      {"n", w.basis_size()},
      {"basis", w.basis},
      {"length", w.length},
      {"period", w.period},
  };
  if (include_gaps) j["gaps"] = w.gaps;
  if (include_residues) j["residues"] = w.residues;
  return j;
}

json block_json(const Block& b) {
  return json{
      {"index", b.index},
      {"count", b.elements.size()},
      {"first", b.elements.front()},
      {"last", b.elements.back()},
      {"elements", b.elements},
  };
}

json histogram_json(const WheelPattern& w, const GapHistogram& h) {
  json entries = json::object();
  for (const auto& [gap, mult] : h.entries) entries[std::to_string(gap)] = mult;
  return json{
      {"n", w.basis_size()},
      {"length", w.length},
      {"period", w.period},
      {"entries", entries},
  };
}

json verification_json(const VerificationReport& r) {
  json j{
      {"check", r.check_name},
      {"passed", r.passed},
  };
  if (r.witness) {
    j["witness"] = json{
        {"index", r.witness->index},
        {"index2", r.witness->index2},
        {"expected", r.witness->expected},
        {"actual", r.witness->actual},
        {"note", r.witness->note},
    };
  }
  return j;
}

json prime_count_json(const PrimeCount& c) {
  return json{{"limit", c.limit}, {"count", c.count}};
}

json window_json(const WindowReport& w) {
  json j{
      {"n", w.n},
      {"window_lo", w.window_lo},
      {"window_hi", w.window_hi},
      {"members", w.members},
  };
  j["report"] = verification_json(w.report);
  return j;
}

json classification_json(const BlockClassification& c, bool include_elements) {
  json j{
      {"m", c.m},
      {"x", c.x},
      {"sqrt_half_x", c.sqrt_half_x},
      {"k", c.k},
      {"big_k", c.big_k},
      {"p_m_plus_big_k", c.p_m_plus_big_k},
      {"prime_count", c.big_k},
      {"composite_count", c.elements.size() - c.big_k},
  };
  j["p_m_plus_k"] = c.p_m_plus_k ? json(*c.p_m_plus_k) : json(nullptr);
  if (include_elements) {
    json elems = json::array();
    for (const auto& e : c.elements) {
      elems.push_back(json{{"value", e.value}, {"least_factor", e.least_factor}});
    }
    j["elements"] = std::move(elems);
  }
  return j;
}

json pair_census_json(const PairCensus& p) {
  return json{
      {"m", p.m},
      {"pair_count_total", p.pair_count_total},
      {"composite_pairs", p.composite_pairs},
      {"threshold", p.threshold},
      {"eq_main_value", p.eq_main_value},
      {"N_value", p.n_value},
  };
}

json bound_json(const BoundReport& r) {
  json j{
      {"check", r.check},
      {"x_or_m", r.x_or_m},
      {"value", r.value},
      {"lower", r.lower},
      {"upper", r.upper},
      {"holds", r.holds},
      {"margin_low", r.margin_low},
      {"margin_high", r.margin_high},
      {"flags", r.flags},
  };
  if (std::isfinite(r.rel_error)) j["rel_error"] = r.rel_error;
  if (std::isfinite(r.value_err)) j["value_err"] = r.value_err;
  if (r.x_value) j["x"] = *r.x_value;
  return j;
}

json inequality_json(const InequalityReport& r) {
  json j{
      {"check", r.check},
      {"lhs", r.lhs},
      {"rhs", r.rhs},
      {"satisfied", r.satisfied},
  };
  if (r.check == "alpha-claim") {
    j["p_m"] = r.p_m;
    j["found"] = r.found;
    j["n"] = r.n;
    if (std::isfinite(r.alpha)) j["alpha"] = r.alpha;
  } else {
    j["m"] = r.m;
    j["n"] = r.n;
    j["k"] = r.k;
    j["x"] = r.x;
  }
  return j;
}

json ap_census_json(const APCensus& c) {
  json counts = json::object();
  std::uint64_t total = 0;
  std::uint64_t max_count = 0;
  std::uint64_t min_count = UINT64_MAX;
  for (const auto& [residue, count] : c.counts) {
    counts[std::to_string(residue)] = count;
    total += count;
    max_count = std::max(max_count, count);
    min_count = std::min(min_count, count);
  }
  json j{
      {"modulus", c.modulus},
      {"limit", c.limit},
      {"pi_limit", c.pi_limit},
      {"excluded_basis_primes", c.excluded_basis_primes},
      {"counts", counts},
  };
  // Equidistribution is reported, never asserted.
  if (!c.counts.empty() && total > 0) {
    double mean = static_cast<double>(total) / static_cast<double>(c.counts.size());
    j["stats"] = json{
        {"mean", mean},
        {"max_over_mean", static_cast<double>(max_count) / mean},
        {"min_over_mean", static_cast<double>(min_count) / mean},
    };
  }
  return j;
}

json progression_json(const ProgressionReport& r) {
  json j{
      {"a", r.a},
      {"d", r.d},
      {"limit", r.limit},
      {"count", r.count},
      {"coprime", r.coprime},
  };
  if (!r.coprime) j["flags"] = json::array({"non-coprime"});
  if (r.embedding) {
    j["embedding"] = json{
        {"n", r.embedding->n},
        {"h", r.embedding->h},
        {"residue", r.embedding->residue},
    };
  }
  return j;
}

json twin_json(const TwinColumnReport& r) {
  json pairs = json::array();
  for (const auto& p : r.pairs) {
    pairs.push_back(json{{"u", p.u}, {"v", p.v}, {"aligned_count", p.aligned_count}});
  }
  return json{
      {"n", r.n},
      {"modulus", r.modulus},
      {"limit", r.limit},
      {"pair_count", r.pairs.size()},
      {"pairs", pairs},
  };
}

std::string bound_csv_header() { return "check,x_or_m,value,lower,upper,holds,flags\n"; }

std::string bound_csv_row(const BoundReport& r) {
  std::string flags;
  for (const auto& f : r.flags) {
    if (!flags.empty()) flags += ';';
    flags += f;
  }
  std::string row = r.check;
  row += ',';
  row += std::to_string(r.x_or_m);
  row += ',';
  row += format_double(r.value);
  row += ',';
  row += format_double(r.lower);
  row += ',';
  row += format_double(r.upper);
  row += ',';
  row += r.holds ? "true" : "false";
  row += ',';
  row += flags;
  row += '\n';
  return row;
}

}  // namespace wheellab
