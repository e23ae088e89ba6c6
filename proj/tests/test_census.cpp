#include <doctest.h>

#include "oracles.hpp"
#include "wheellab/census.hpp"

using namespace wheellab;

TEST_CASE("column census of the odd wheel to 10") {
  APCensus c = column_census(1, 10);
  CHECK(c.modulus == 2);
  CHECK(c.counts == std::map<std::uint64_t, std::uint64_t>{{1, 3}});  // 3, 5, 7
  CHECK(c.pi_limit == 4);
  CHECK(c.excluded_basis_primes == std::vector<std::uint64_t>{2});
}

TEST_CASE("column census mod 210 to 211") {
  APCensus c = column_census(4, 211);
  CHECK(c.counts.size() == 48);
  CHECK(c.counts.at(11) == 1);
  CHECK(c.counts.at(13) == 1);
  CHECK(c.counts.at(1) == 1);  // 211 = 1 + 210 sits in the column of 1
  std::uint64_t total = 0;
  for (const auto& [r, n] : c.counts) total += n;
  CHECK(total == 43);  // pi(211) - 4 basis primes
  CHECK(c.excluded_basis_primes == std::vector<std::uint64_t>{2, 3, 5, 7});
}

TEST_CASE("census conservation across moduli") {
  std::vector<std::uint64_t> primes = oracle::primes_to(100000);
  for (auto [d, limit] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{
           {210, 100000}, {30, 100000}, {4, 10000}, {1, 1000}, {7, 5000}, {9, 4000}}) {
    CAPTURE(d);
    CAPTURE(limit);
    APCensus c = residue_census(d, limit);
    std::uint64_t total = 0;
    for (const auto& [r, n] : c.counts) total += n;
    std::uint64_t dividing = 0;
    for (std::uint64_t p : primes) {
      if (p > limit) break;
      if (d % p == 0) ++dividing;
    }
    CHECK(total + dividing == oracle::pi_of(primes, limit));
    CHECK(c.pi_limit == oracle::pi_of(primes, limit));
    CHECK(c.excluded_basis_primes.size() == dividing);
  }
}

TEST_CASE("every censused residue is a unit") {
  APCensus c = residue_census(12, 1000);
  CHECK(c.counts.size() == 4);  // phi(12)
  for (const auto& [r, n] : c.counts) {
    CHECK(std::gcd(r, std::uint64_t{12}) == 1);
  }
}

TEST_CASE("census refinement is consistent one basis size up") {
  for (unsigned n = 1; n <= 3; ++n) {
    CAPTURE(n);
    std::uint64_t limit = 10000;
    APCensus coarse = column_census(n, limit);
    APCensus fine = column_census(n + 1, limit);
    std::uint64_t p_next = nth_prime(n + 1);
    std::uint64_t len = primorial(n);
    for (const auto& [r, count] : coarse.counts) {
      std::uint64_t aggregated = 0;
      for (const auto& [rf, cf] : fine.counts) {
        if (rf % len == r % len) aggregated += cf;
      }
      // p_{n+1} itself is in the coarse census but divides the fine modulus.
      if (p_next % len == r % len && p_next <= limit) ++aggregated;
      CHECK(aggregated == count);
    }
  }
}

TEST_CASE("row progression excludes the starting element") {
  PrimeCount full = row_progression(4, 11, 2, 10000);
  APCensus census = column_census(4, 10000);
  CHECK(full.count == census.counts.at(11) - 1);  // 11 itself is prime but j >= 1
}

TEST_CASE("row progression with a wider step") {
  // Candidates 431, 851, 1271, 1691: only 431 is prime (1691 = 19*89).
  PrimeCount pc = row_progression(4, 11, 3, 2000);
  CHECK(pc.count == 1);

  std::uint64_t brute = 0;
  for (std::uint64_t v = 11 + 420; v <= 2000; v += 420) {
    if (oracle::is_prime(v)) ++brute;
  }
  CHECK(pc.count == brute);
}

TEST_CASE("row progression edge cases") {
  CHECK(row_progression(4, 11, 2, 10).count == 0);  // limit below the start
  CHECK_THROWS_AS(row_progression(4, 11, 1, 1000), DomainError);  // zero step
  CHECK_THROWS_AS(row_progression(4, 14, 2, 1000), DomainError);  // not a unit
  CHECK_THROWS_AS(row_progression(4, 215, 2, 1000), DomainError); // outside [1, L]
}

TEST_CASE("general progression 3 mod 4") {
  ProgressionReport r = general_progression(3, 4, 100);
  CHECK(r.count == 13);
  CHECK(r.coprime);
  REQUIRE(r.embedding.has_value());
  CHECK(r.embedding->n == 2);       // 3 divides neither: smallest basis prime not dividing 4
  CHECK(r.embedding->h == 1);       // 3 + 4 = 7 is coprime to 6
  CHECK(r.embedding->residue == 1);
}

TEST_CASE("general progression with shared factor") {
  ProgressionReport r = general_progression(2, 4, 100);
  CHECK(r.count == 1);  // only 2
  CHECK_FALSE(r.coprime);
  CHECK_FALSE(r.embedding.has_value());

  CHECK(general_progression(25, 5, 1000).count == 0);
  CHECK(general_progression(0, 5, 100).count == 1);  // 5 itself at n = 1
}

TEST_CASE("general progression degenerate cases") {
  CHECK(general_progression(1, 1, 10).count == 4);
  CHECK(general_progression(0, 1, 10).count == 4);
  CHECK(general_progression(1000, 7, 100).count == 0);  // a beyond limit
  CHECK_THROWS_AS(general_progression(1, 0, 10), DomainError);
}

TEST_CASE("general progression embedding skips basis primes dividing d") {
  ProgressionReport r = general_progression(11, 210, 2000);
  REQUIRE(r.embedding.has_value());
  CHECK(r.embedding->n == 5);    // 2,3,5,7 all divide 210
  CHECK(r.embedding->h == 1);    // 11 shares a factor with 2310; 221 does not
  CHECK(r.embedding->residue == 221);
}

TEST_CASE("general progression matches brute force on small instances") {
  for (std::uint64_t d = 1; d <= 50; ++d) {
    for (std::uint64_t a = 0; a <= d; ++a) {
      ProgressionReport r = general_progression(a, d, 10000);
      std::uint64_t expected = oracle::count_ap_primes(a, d, 10000);
      if (r.count != expected) {
        CAPTURE(a);
        CAPTURE(d);
        CHECK(r.count == expected);
      }
    }
  }
}

TEST_CASE("twin columns of the {2,3,5,7} wheel") {
  TwinColumnReport r = twin_column_pairs(4, 1000);
  CHECK(r.pairs.size() == 15);
  CHECK(r.pairs.front().u == 11);
  CHECK(r.pairs.front().v == 13);
  CHECK(r.pairs.back().u == 209);  // wrap pair reaching 211 = 1 + L
  CHECK(r.pairs.back().v == 211);
}

TEST_CASE("twin column counts mod 6 to 100") {
  TwinColumnReport r = twin_column_pairs(2, 100);
  REQUIRE(r.pairs.size() == 1);
  CHECK(r.pairs[0].u == 5);
  CHECK(r.pairs[0].v == 7);
  CHECK(r.pairs[0].aligned_count == 7);  // (5,7) ... (71,73)
}

TEST_CASE("twin column counts mod 30 to 31") {
  TwinColumnReport r = twin_column_pairs(3, 31);
  REQUIRE(r.pairs.size() == 3);
  for (const auto& p : r.pairs) {
    CAPTURE(p.u);
    CHECK(p.aligned_count == 1);  // (11,13), (17,19), (29,31) each once
  }
}

TEST_CASE("twin pair enumeration equals the gap-2 multiplicity") {
  for (unsigned n = 2; n <= 8; ++n) {
    CAPTURE(n);
    TwinColumnReport r = twin_column_pairs(n, 100);
    CHECK(r.pairs.size() == gap_histogram(build_wheel(n)).multiplicity(2));
  }
}

TEST_CASE("twin column mod 6 counts every twin pair above (3,5)") {
  // 8169 twin prime pairs lie below 1e6; all but (3,5) align in the (5,7) columns.
  TwinColumnReport r = twin_column_pairs(2, 1000000);
  REQUIRE(r.pairs.size() == 1);
  CHECK(r.pairs[0].aligned_count == 8168);
}

TEST_CASE("twin counts match brute force") {
  TwinColumnReport r = twin_column_pairs(3, 10000);
  for (const auto& pair : r.pairs) {
    std::uint64_t brute = 0;
    for (std::uint64_t k = 0; pair.v + 30 * k <= 10000; ++k) {
      if (oracle::is_prime(pair.u + 30 * k) && oracle::is_prime(pair.v + 30 * k)) ++brute;
    }
    CAPTURE(pair.u);
    CHECK(pair.aligned_count == brute);
  }
}

TEST_CASE("twin columns need a composite basis") {
  CHECK_THROWS_AS(twin_column_pairs(1, 100), DomainError);
}

TEST_CASE("census class materialization respects the budget") {
  CHECK_THROWS_AS(residue_census(2310, 100, SieveConfig{}, WheelBudget{100}), BudgetError);
  CHECK_NOTHROW(residue_census(30, 100, SieveConfig{}, WheelBudget{100}));
}

TEST_CASE("census csv shape") {
  APCensus c = residue_census(4, 100);
  CHECK(census_csv(c) == "residue,count\n1,11\n3,13\n");
  CHECK(census_csv(c, false) == "1,11\n3,13\n");
}
