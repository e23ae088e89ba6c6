#include "wheellab/pattern.hpp"

#include <sstream>

namespace wheellab {

GapHistogram gap_histogram(const WheelPattern& w) {
  GapHistogram h;
  for (std::uint32_t g : w.gaps) ++h.entries[g];
  return h;
}

VerificationReport check_mirror_symmetry(const WheelPattern& w) {
  const std::string name = "mirror-symmetry";
  std::size_t t = w.gaps.size();
  // Palindromic prefix is gaps[0..T-2]; compare i against T-2-i.
  for (std::size_t i = 0; i + 1 < t - i; ++i) {
    std::size_t j = t - 2 - i;
    if (w.gaps[i] != w.gaps[j]) {
      Witness wit;
      wit.index = i;
      wit.index2 = j;
      wit.expected = w.gaps[i];
      wit.actual = w.gaps[j];
      wit.note = "gap mismatch across the mirror";
      return VerificationReport::fail(name, wit);
    }
  }
  return VerificationReport::pass(name);
}

std::vector<VerificationReport> check_gap_multiplicities(const WheelPattern& w) {
  unsigned n = w.basis_size();
  if (n < 2) {
    throw DomainError("gap multiplicity checks need a basis of at least {2, 3}: "
                      "gap 4 does not occur in the single-prime wheel");
  }
  GapHistogram h = gap_histogram(w);
  std::uint64_t expected = skip_product(n);
  std::vector<VerificationReport> out;

  {
    const std::string name = "skip-multiplicity";
    std::uint64_t m2 = h.multiplicity(2);
    std::uint64_t m4 = h.multiplicity(4);
    if (m2 != expected || m4 != expected) {
      Witness wit;
      wit.expected = expected;
      wit.actual = m2 != expected ? m2 : m4;
      wit.index = m2 != expected ? 2 : 4;
      wit.note = "multiplicity of the indexed gap differs from (p_2-2)...(p_n-2)";
      out.push_back(VerificationReport::fail(name, wit));
    } else if (m2 % 2 == 0) {
      Witness wit;
      wit.expected = 1;
      wit.actual = m2 % 2;
      wit.note = "shared multiplicity of gaps 2 and 4 is even";
      out.push_back(VerificationReport::fail(name, wit));
    } else {
      out.push_back(VerificationReport::pass(name));
    }
  }

  {
    const std::string name = "even-multiplicities";
    VerificationReport r = VerificationReport::pass(name);
    for (const auto& [gap, mult] : h.entries) {
      if (gap != 2 && gap != 4 && mult % 2 != 0) {
        Witness wit;
        wit.index = gap;
        wit.actual = mult;
        wit.note = "odd multiplicity for a gap other than 2 and 4";
        r = VerificationReport::fail(name, wit);
        break;
      }
    }
    out.push_back(std::move(r));
  }

  {
    const std::string name = "central-gap";
    // T is even for n >= 2, so the middle of the length-(T-1) prefix is exact.
    std::size_t mid = (w.gaps.size() - 2) / 2;
    if (w.gaps[mid] == 4) {
      out.push_back(VerificationReport::pass(name));
    } else {
      Witness wit;
      wit.index = mid;
      wit.expected = 4;
      wit.actual = w.gaps[mid];
      out.push_back(VerificationReport::fail(name, wit));
    }
  }

  {
    const std::string name = "last-gap";
    if (w.gaps.back() == 2) {
      out.push_back(VerificationReport::pass(name));
    } else {
      Witness wit;
      wit.index = w.gaps.size() - 1;
      wit.expected = 2;
      wit.actual = w.gaps.back();
      out.push_back(VerificationReport::fail(name, wit));
    }
  }

  return out;
}

std::string histogram_csv(const GapHistogram& h, bool header) {
  std::ostringstream os;
  if (header) os << "gap,multiplicity\n";
  for (const auto& [gap, mult] : h.entries) {
    os << gap << ',' << mult << '\n';
  }
  return os.str();
}

}  // namespace wheellab
