#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <random>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "wheellab/cli.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult invoke(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("wheellab");
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  int code = wheellab::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("wheel summary json") {
  CliResult r = invoke({"wheel", "--n", "4", "--format", "json"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["length"] == 210);
  CHECK(j["period"] == 48);
  CHECK(j["basis"] == json::array({2, 3, 5, 7}));
}

TEST_CASE("wheel extension route") {
  CliResult r = invoke({"wheel", "--n", "4", "--extend", "--format", "json"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["period"] == 480);
  CHECK(j["route"] == "extend");
}

TEST_CASE("wheel block listing") {
  CliResult r = invoke({"wheel", "--n", "1", "--block", "5"});
  CHECK(r.code == 0);
  CHECK(r.out == "13\n");
}

TEST_CASE("gaps csv") {
  CliResult r = invoke({"gaps", "--n", "3", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out == "gap,multiplicity\n2,3\n4,3\n6,2\n");
  CliResult bare = invoke({"gaps", "--n", "3", "--format", "csv", "--no-header"});
  CHECK(bare.out == "2,3\n4,3\n6,2\n");
}

TEST_CASE("verify passes for supported bases") {
  CliResult r = invoke({"verify", "--n", "2..6",
                        "--checks", "mirror,multiplicity,central,last"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("PASS n=2 mirror-symmetry") != std::string::npos);
}

TEST_CASE("verify rejects unknown check lists") {
  CliResult r = invoke({"verify", "--n", "2..4", "--checks", "nonsense"});
  CHECK(r.code == 2);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("primes stream is newline-delimited decimal") {
  CliResult r = invoke({"primes", "--limit", "30"});
  CHECK(r.code == 0);
  CHECK(r.out == "2\n3\n5\n7\n11\n13\n17\n19\n23\n29\n");
}

TEST_CASE("pi over a list") {
  CliResult r = invoke({"pi", "--x", "10,100,211", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out == "x,pi\n10,4\n100,25\n211,47\n");
}

TEST_CASE("pi over a range") {
  CliResult r = invoke({"pi", "--x", "2..6", "--format", "csv", "--no-header"});
  CHECK(r.out == "2,1\n3,2\n4,2\n5,3\n6,3\n");
}

TEST_CASE("prop2 text output") {
  CliResult r = invoke({"prop2", "--n", "2..5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS n=2 window=(3,15) members=4") != std::string::npos);
}

TEST_CASE("pairs json carries the census fields") {
  CliResult r = invoke({"pairs", "--m", "4", "--format", "json"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["m"] == 4);
  CHECK(j["pair_count_total"] == 15);
  CHECK(j["composite_pairs"] == 0);
  CHECK(j["eq_main_value"] == 210);
  CHECK(j["N_value"] == 1);
}

TEST_CASE("classify summary") {
  CliResult r = invoke({"classify", "--m", "4", "--format", "json"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["x"] == 211);
  CHECK(j["k"] == 0);
  CHECK(j["p_m_plus_k"].is_null());
  CHECK(j["composite_count"] == 5);
  CHECK_FALSE(j.contains("elements"));
}

TEST_CASE("estimate single point") {
  CliResult r = invoke({"estimate", "erdos", "--x", "10", "--format", "json"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["check"] == "erdos");
  CHECK(j["holds"] == true);
  CHECK(j["value"] == 4.0);
}

TEST_CASE("estimate reports the x=4 equality as a violation") {
  CliResult single = invoke({"estimate", "erdos", "--x", "4", "--format", "json"});
  CHECK(single.code == 1);

  CliResult scan = invoke({"estimate", "erdos", "--x", "3..1000", "--format", "json"});
  CHECK(scan.code == 1);
  json j = json::parse(scan.out);
  CHECK(j["violation_count"] == 1);
  CHECK(j["violations"][0]["x"] == 4);
}

TEST_CASE("chebyshev scan is clean") {
  CliResult r = invoke({"estimate", "chebyshev", "--x", "2..2000", "--format", "json"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["violation_count"] == 0);
  CHECK(j["scanned"] == 1999);
}

TEST_CASE("estimate sandwich never gates") {
  CliResult r = invoke({"estimate", "sandwich", "--m", "2..5", "--format", "json"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  REQUIRE(j.is_array());
  CHECK(j.size() == 4);
}

TEST_CASE("estimate ineq json") {
  CliResult r = invoke({"estimate", "ineq", "--m", "4", "--format", "json"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["lhs"] == 210.0);
  CHECK(j["rhs"] == 43.0);
  CHECK(j["satisfied"] == false);
}

TEST_CASE("estimate claim") {
  CliResult r = invoke({"estimate", "claim", "--pm", "367", "--format", "json"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["found"] == true);
  CHECK(j["n"] == 4);

  CliResult bad = invoke({"estimate", "claim", "--pm", "368"});
  CHECK(bad.code == 2);
}

TEST_CASE("ap column over an explicit modulus") {
  CliResult r = invoke({"ap", "column", "--d", "4", "--limit", "100", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out == "residue,count\n1,11\n3,13\n");
}

TEST_CASE("ap column wants exactly one modulus spec") {
  CHECK(invoke({"ap", "column", "--limit", "100"}).code == 2);
  CHECK(invoke({"ap", "column", "--n", "2", "--d", "6", "--limit", "100"}).code == 2);
}

TEST_CASE("ap general json") {
  CliResult r = invoke({"ap", "general", "--a", "3", "--d", "4", "--limit", "100",
                        "--format", "json"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["count"] == 13);
  CHECK(j["coprime"] == true);
}

TEST_CASE("ap twins") {
  CliResult r = invoke({"ap", "twins", "--n", "2", "--limit", "100", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out == "u,v,aligned_count\n5,7,7\n");
}

TEST_CASE("cache save and load through the cli") {
  std::random_device rd;
  fs::path dir = fs::temp_directory_path() / ("wheellab_cli_" + std::to_string(rd()));
  fs::create_directories(dir);

  CliResult saved = invoke({"cache", "save", "--n", "4", "--cache-dir", dir.string()});
  CHECK(saved.code == 0);
  CHECK(saved.out.find("wheel_4.whl") != std::string::npos);

  CliResult loaded = invoke({"cache", "load", "--n", "4", "--cache-dir", dir.string(),
                             "--format", "json"});
  CHECK(loaded.code == 0);
  json j = json::parse(loaded.out);
  CHECK(j["length"] == 210);

  CliResult direct = invoke({"cache", "load", "--path", (dir / "wheel_4.whl").string()});
  CHECK(direct.code == 0);

  CliResult missing = invoke({"cache", "load", "--path", (dir / "nope.whl").string()});
  CHECK(missing.code == 2);

  std::error_code ec;
  fs::remove_all(dir, ec);
}

TEST_CASE("cache dir falls back to the environment variable") {
  std::random_device rd;
  fs::path dir = fs::temp_directory_path() / ("wheellab_env_" + std::to_string(rd()));
  fs::create_directories(dir);
  setenv("WHEELLAB_CACHE_DIR", dir.string().c_str(), 1);

  CHECK(invoke({"cache", "save", "--n", "3"}).code == 0);
  CHECK(fs::exists(dir / "wheel_3.whl"));
  CHECK(invoke({"cache", "load", "--n", "3"}).code == 0);

  unsetenv("WHEELLAB_CACHE_DIR");
  std::error_code ec;
  fs::remove_all(dir, ec);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"wheel"}).code == 2);                       // missing --n
  CHECK(invoke({"wheel", "--n", "4", "--format", "yaml"}).code == 2);
  CHECK(invoke({"pi", "--x", "abc"}).code == 2);
  CHECK(invoke({"pi", "--x", "10abc"}).code == 2);
  CHECK(invoke({"pi", "--x", "9..3"}).code == 2);
  CHECK(invoke({"pi", "--x", "1,,3"}).code == 2);
  CHECK(invoke({}).code == 2);                              // a subcommand is required
}

TEST_CASE("domain errors exit with 2") {
  CHECK(invoke({"wheel", "--n", "16"}).code == 2);          // primorial overflow
  CHECK(invoke({"wheel", "--n", "10"}).code == 2);          // budget
  CHECK(invoke({"estimate", "harmonic", "--n", "1"}).code == 2);
}

TEST_CASE("memory budget flag is enforced") {
  CHECK(invoke({"wheel", "--n", "9", "--memory-budget", "100"}).code == 2);
  CHECK(invoke({"wheel", "--n", "9", "--memory-budget", "0"}).code == 2);  // below 1 MiB
  CHECK(invoke({"wheel", "--n", "5", "--memory-budget", "100"}).code == 0);
}

TEST_CASE("help exits cleanly") {
  CliResult r = invoke({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("wheel") != std::string::npos);
}

TEST_CASE("identical queries print identical bytes whatever the sieve knobs") {
  std::vector<std::string> base = {"pi", "--x", "100000", "--format", "json"};
  CliResult reference = invoke(base);
  for (std::string threads : {"1", "4"}) {
    for (std::string seg : {"1024", "65536", "1048576"}) {
      std::vector<std::string> args = base;
      args.insert(args.end(), {"--threads", threads, "--segment-size", seg});
      CliResult r = invoke(args);
      CAPTURE(threads);
      CAPTURE(seg);
      CHECK(r.code == reference.code);
      CHECK(r.out == reference.out);
    }
  }
}
