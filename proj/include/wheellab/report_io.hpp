#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "wheellab/census.hpp"
#include "wheellab/estimates.hpp"
#include "wheellab/pattern.hpp"
#include "wheellab/sieve.hpp"
#include "wheellab/storage.hpp"

namespace wheellab {

// JSON shapes for the machine-readable output formats. Doubles serialize in
// shortest round-trip form, object keys sort lexicographically, so identical
// inputs produce identical bytes.

nlohmann::json wheel_json(const WheelPattern& w, bool include_gaps = false,
                          bool include_residues = false);
nlohmann::json block_json(const Block& b);
nlohmann::json histogram_json(const WheelPattern& w, const GapHistogram& h);
nlohmann::json verification_json(const VerificationReport& r);
nlohmann::json prime_count_json(const PrimeCount& c);
nlohmann::json window_json(const WindowReport& w);
nlohmann::json classification_json(const BlockClassification& c, bool include_elements);
nlohmann::json pair_census_json(const PairCensus& p);
nlohmann::json bound_json(const BoundReport& r);
nlohmann::json inequality_json(const InequalityReport& r);
nlohmann::json ap_census_json(const APCensus& c);
nlohmann::json progression_json(const ProgressionReport& r);
nlohmann::json twin_json(const TwinColumnReport& r);

// CSV rows matching the JSON report columns:
// check,x_or_m,value,lower,upper,holds,flags
std::string bound_csv_header();
std::string bound_csv_row(const BoundReport& r);

// Shortest round-trip decimal form of a double (matches JSON output).
std::string format_double(double v);

}  // namespace wheellab
