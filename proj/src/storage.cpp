#include "wheellab/storage.hpp"

#include <zlib.h>

#include <cstring>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

namespace wheellab {

namespace {

constexpr char kMagic[4] = {'W', 'H', 'L', '1'};
constexpr std::size_t kHeaderSize = 4 + 3 * 8;

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint64_t get_u64(const char* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(p[i]);
  return v;
}

std::uint32_t get_u32(const char* p) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(p[i]);
  return v;
}

std::string encode_wheel(const WheelPattern& w) {
  std::string bytes;
  bytes.reserve(kHeaderSize + 4 * w.gaps.size());
  bytes.append(kMagic, 4);
  put_u64(bytes, w.basis_size());
  put_u64(bytes, w.length);
  put_u64(bytes, w.period);
  for (std::uint32_t g : w.gaps) put_u32(bytes, g);
  return bytes;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (!in.good()) throw IoError("cannot read " + path.string());
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& data) {
  std::random_device rd;
  std::filesystem::path tmp =
      path.parent_path() / (path.filename().string() + ".tmp" + std::to_string(rd()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out.good()) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out.good()) throw IoError("cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename into " + path.string());
  }
}

WheelPattern decode_wheel(const std::string& bytes, const std::string& origin) {
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw BadMagicError(origin + ": not a WHL1 file");
  }
  if (bytes.size() < kHeaderSize) {
    throw TruncatedError(origin + ": shorter than the WHL1 header");
  }
  std::uint64_t n = get_u64(bytes.data() + 4);
  std::uint64_t length = get_u64(bytes.data() + 12);
  std::uint64_t period = get_u64(bytes.data() + 20);
  if (n == 0 || n > 15) throw InvariantError(origin + ": basis size out of range");
  if (period > (bytes.max_size() - kHeaderSize) / 4 ||
      bytes.size() != kHeaderSize + 4 * period) {
    throw TruncatedError(origin + ": payload size does not match the stored period");
  }

  WheelPattern w;
  for (unsigned i = 1; i <= n; ++i) w.basis.push_back(static_cast<std::uint32_t>(nth_prime(i)));
  w.length = length;
  w.period = period;
  w.gaps.reserve(period);
  w.residues.reserve(period);
  std::uint64_t value = 1;
  for (std::uint64_t i = 0; i < period; ++i) {
    w.residues.push_back(value);
    std::uint32_t g = get_u32(bytes.data() + kHeaderSize + 4 * i);
    w.gaps.push_back(g);
    value += g;
  }
  validate_wheel(w);  // throws InvariantError on tampered payloads
  return w;
}

std::filesystem::path wheel_file_name(unsigned n) {
  return "wheel_" + std::to_string(n) + ".whl";
}

}  // namespace

std::uint32_t crc32_of(const void* data, std::size_t size) {
  return static_cast<std::uint32_t>(
      ::crc32(0L, static_cast<const Bytef*>(data), static_cast<uInt>(size)));
}

std::filesystem::path save_wheel(const WheelPattern& w, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::filesystem::path path = dir / wheel_file_name(w.basis_size());
  write_file_atomic(path, encode_wheel(w));
  return path;
}

WheelPattern load_wheel(const std::filesystem::path& path) {
  return decode_wheel(read_file(path), path.string());
}

WheelCache::WheelCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

namespace {

using nlohmann::json;

std::filesystem::path index_path(const std::filesystem::path& dir) {
  return dir / "index.json";
}

json load_index(const std::filesystem::path& dir) {
  std::filesystem::path p = index_path(dir);
  if (!std::filesystem::exists(p)) return json::object();
  try {
    return json::parse(read_file(p));
  } catch (const json::exception&) {
    return json::object();  // unreadable index: treat as empty, entries get rebuilt
  }
}

void store_index(const std::filesystem::path& dir, const json& idx) {
  write_file_atomic(index_path(dir), idx.dump(2) + "\n");
}

}  // namespace

std::filesystem::path WheelCache::put(const WheelPattern& w) {
  std::string bytes = encode_wheel(w);
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  std::filesystem::path path = dir_ / wheel_file_name(w.basis_size());
  write_file_atomic(path, bytes);

  json idx = load_index(dir_);
  idx["wheel_" + std::to_string(w.basis_size())] = {
      {"path", path.filename().string()},
      {"crc32", crc32_of(bytes.data(), bytes.size())},
  };
  store_index(dir_, idx);
  return path;
}

namespace {

struct IndexEntry {
  std::filesystem::path path;
  std::uint32_t crc32 = 0;
};

IndexEntry read_entry(const json& idx, const std::string& key) {
  try {
    return {idx.at(key).at("path").get<std::string>(),
            idx.at(key).at("crc32").get<std::uint32_t>()};
  } catch (const json::exception&) {
    throw InvariantError("malformed cache index entry for " + key);
  }
}

}  // namespace

WheelPattern WheelCache::load(unsigned n) {
  json idx = load_index(dir_);
  std::string key = "wheel_" + std::to_string(n);
  if (!idx.contains(key)) throw IoError("no cache entry for " + key);
  IndexEntry entry = read_entry(idx, key);
  std::filesystem::path path = dir_ / entry.path;
  std::string bytes = read_file(path);
  std::uint32_t expected = entry.crc32;
  std::uint32_t actual = crc32_of(bytes.data(), bytes.size());
  if (actual != expected) {
    // Evict: a corrupt entry must never be partially trusted.
    std::error_code ec;
    std::filesystem::remove(path, ec);
    idx.erase(key);
    store_index(dir_, idx);
    throw ChecksumError(path.string() + ": crc mismatch (entry evicted)");
  }
  return decode_wheel(bytes, path.string());
}

WheelPattern WheelCache::get(unsigned n, const WheelBudget& budget) {
  try {
    return load(n);
  } catch (const StorageError&) {
    WheelPattern w = build_wheel(n, budget);
    put(w);
    return w;
  }
}

namespace {

std::string census_key(std::uint64_t modulus, std::uint64_t limit) {
  return "census_" + std::to_string(modulus) + "_" + std::to_string(limit);
}

std::string encode_census(const APCensus& census) {
  json counts = json::object();
  for (const auto& [residue, count] : census.counts) {
    counts[std::to_string(residue)] = count;
  }
  json j{
      {"modulus", census.modulus},
      {"limit", census.limit},
      {"pi_limit", census.pi_limit},
      {"excluded_basis_primes", census.excluded_basis_primes},
      {"counts", counts},
  };
  return j.dump(2) + "\n";
}

APCensus decode_census(const std::string& bytes, const std::string& origin) {
  json j;
  try {
    j = json::parse(bytes);
  } catch (const json::exception& e) {
    throw InvariantError(origin + ": unparsable census payload: " + e.what());
  }
  APCensus census;
  try {
    census.modulus = j.at("modulus").get<std::uint64_t>();
    census.limit = j.at("limit").get<std::uint64_t>();
    census.pi_limit = j.at("pi_limit").get<std::uint64_t>();
    census.excluded_basis_primes =
        j.at("excluded_basis_primes").get<std::vector<std::uint64_t>>();
    for (const auto& [key, value] : j.at("counts").items()) {
      census.counts[std::stoull(key)] = value.get<std::uint64_t>();
    }
  } catch (const json::exception& e) {
    throw InvariantError(origin + ": malformed census payload: " + e.what());
  }

  // Conservation against the stored totals, so a tampered file cannot slip in.
  std::uint64_t total = 0;
  for (const auto& [residue, count] : census.counts) {
    if (census.modulus != 1 && std::gcd(residue, census.modulus) != 1) {
      throw InvariantError(origin + ": residue " + std::to_string(residue) +
                           " is not a unit");
    }
    total += count;
  }
  for (std::uint64_t p : census.excluded_basis_primes) {
    if (census.modulus % p != 0 || p > census.limit) {
      throw InvariantError(origin + ": excluded prime does not divide the modulus");
    }
  }
  if (total + census.excluded_basis_primes.size() != census.pi_limit) {
    throw InvariantError(origin + ": counts do not add up to pi(limit)");
  }
  return census;
}

}  // namespace

std::filesystem::path save_census(const APCensus& census, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::filesystem::path path = dir / (census_key(census.modulus, census.limit) + ".json");
  write_file_atomic(path, encode_census(census));
  return path;
}

APCensus load_census(const std::filesystem::path& path) {
  return decode_census(read_file(path), path.string());
}

std::filesystem::path WheelCache::put_census(const APCensus& census) {
  std::string bytes = encode_census(census);
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  std::string key = census_key(census.modulus, census.limit);
  std::filesystem::path path = dir_ / (key + ".json");
  write_file_atomic(path, bytes);

  json idx = load_index(dir_);
  idx[key] = {
      {"path", path.filename().string()},
      {"crc32", crc32_of(bytes.data(), bytes.size())},
  };
  store_index(dir_, idx);
  return path;
}

APCensus WheelCache::load_census(std::uint64_t modulus, std::uint64_t limit) {
  json idx = load_index(dir_);
  std::string key = census_key(modulus, limit);
  if (!idx.contains(key)) throw IoError("no cache entry for " + key);
  IndexEntry entry = read_entry(idx, key);
  std::filesystem::path path = dir_ / entry.path;
  std::string bytes = read_file(path);
  if (crc32_of(bytes.data(), bytes.size()) != entry.crc32) {
    std::error_code ec;
    std::filesystem::remove(path, ec);
    idx.erase(key);
    store_index(dir_, idx);
    throw ChecksumError(path.string() + ": crc mismatch (entry evicted)");
  }
  return decode_census(bytes, path.string());
}

}  // namespace wheellab
