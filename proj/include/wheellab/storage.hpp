#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "wheellab/census.hpp"
#include "wheellab/wheel.hpp"

namespace wheellab {

// Binary wheel cache format: magic "WHL1", little-endian u64 n, L, T, then
// T little-endian u32 gap values. Residues are rebuilt from the gaps on load
// and every WheelPattern invariant is re-checked before the wheel is handed out.

// Writes {dir}/wheel_{n}.whl via a temp file and atomic rename; returns the path.
std::filesystem::path save_wheel(const WheelPattern& w, const std::filesystem::path& dir);

// Loads and validates a WHL1 file. Distinct errors: BadMagicError,
// TruncatedError, InvariantError (see errors.hpp).
WheelPattern load_wheel(const std::filesystem::path& path);

// Census results persist as JSON ({dir}/census_{modulus}_{limit}.json) and
// are re-checked for internal conservation on load.
std::filesystem::path save_census(const APCensus& census, const std::filesystem::path& dir);
APCensus load_census(const std::filesystem::path& path);

// Load-or-compute cache over a directory. An index file (index.json) maps
// each entry to the CRC-32 of its payload; an entry whose payload no longer
// matches is evicted and recomputed rather than trusted.
class WheelCache {
 public:
  explicit WheelCache(std::filesystem::path dir);

  // Cached wheel if present and intact, otherwise builds, stores and returns it.
  WheelPattern get(unsigned n, const WheelBudget& budget = {});

  // Strict load: throws ChecksumError on CRC mismatch (and evicts the entry),
  // StorageError subtypes on anything else wrong with the payload.
  WheelPattern load(unsigned n);

  std::filesystem::path put(const WheelPattern& w);

  std::filesystem::path put_census(const APCensus& census);
  APCensus load_census(std::uint64_t modulus, std::uint64_t limit);

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

// CRC-32 (IEEE) of a byte buffer; the checksum stored in cache indexes.
std::uint32_t crc32_of(const void* data, std::size_t size);

}  // namespace wheellab
