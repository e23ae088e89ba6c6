#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wheellab/wheel.hpp"

namespace wheellab {

// Multiset census of a wheel's gap sequence.
struct GapHistogram {
  std::map<std::uint32_t, std::uint64_t> entries;  // gap value -> multiplicity

  std::uint64_t multiplicity(std::uint32_t gap) const {
    auto it = entries.find(gap);
    return it == entries.end() ? 0 : it->second;
  }
};

// Index/value detail demonstrating why a check failed.
struct Witness {
  std::uint64_t index = 0;
  std::uint64_t index2 = 0;
  std::uint64_t expected = 0;
  std::uint64_t actual = 0;
  std::string note;
};

struct VerificationReport {
  std::string check_name;
  bool passed = false;
  std::optional<Witness> witness;  // present iff passed == false

  static VerificationReport pass(std::string name) {
    return {std::move(name), true, std::nullopt};
  }
  static VerificationReport fail(std::string name, Witness w) {
    return {std::move(name), false, std::move(w)};
  }
};

GapHistogram gap_histogram(const WheelPattern& w);

// The gap sequence minus its final entry reads the same reversed.
VerificationReport check_mirror_symmetry(const WheelPattern& w);

// Four structural checks on the gap multiset, for bases of size >= 2:
//   skip-multiplicity: hist[2] == hist[4] == (p_2-2)*...*(p_n-2), both odd
//   even-multiplicities: every gap other than 2 and 4 has even multiplicity
//   central-gap: gaps[(T-2)/2] == 4
//   last-gap: gaps[T-1] == 2
// Throws DomainError for a size-1 basis, where gap 4 does not occur.
std::vector<VerificationReport> check_gap_multiplicities(const WheelPattern& w);

// Rows "gap,multiplicity" ascending by gap.
std::string histogram_csv(const GapHistogram& h, bool header = true);

}  // namespace wheellab
