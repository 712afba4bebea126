#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>
#include <unistd.h>

#include "d3/arith.hpp"
#include "d3/sieve.hpp"
#include "oracles.hpp"

using namespace d3;
using namespace d3::sieve;

TEST_CASE("dk_segment small intervals") {
  SieveSegment s = dk_segment(3, 10, 14);
  REQUIRE(s.values.size() == 4);
  CHECK(s.values[0] == 3);   // d3(11)
  CHECK(s.values[1] == 18);  // d3(12)
  CHECK(s.values[2] == 3);   // d3(13)
  CHECK(s.values[3] == 9);   // d3(14)

  SieveSegment ones = dk_segment(1, 100, 110);
  for (u64 v : ones.values) CHECK(v == 1);

  SieveSegment d2 = dk_segment(2, 1, 6);
  CHECK(d2.values == std::vector<u64>{2, 2, 3, 2, 4});
}

TEST_CASE("dk_segment matches brute force") {
  SieveSegment s = dk_segment(3, 0, 400);
  for (u64 n = 1; n <= 400; ++n) CHECK(s.values[n - 1] == oracle::d3_brute(n));
  SieveSegment s2 = dk_segment(2, 0, 400);
  for (u64 n = 1; n <= 400; ++n) CHECK(s2.values[n - 1] == oracle::dk_brute(2, n));
}

TEST_CASE("segment boundary independence") {
  SieveSegment whole = dk_segment(3, 1000, 3000);
  SieveSegment left = dk_segment(3, 1000, 1700);
  SieveSegment right = dk_segment(3, 1700, 3000);
  std::vector<u64> concat = left.values;
  concat.insert(concat.end(), right.values.begin(), right.values.end());
  CHECK(whole.values == concat);
  // and across the internal block size
  SieveConfig tiny;
  tiny.segment_size = 512;
  SieveSegment blocked = dk_segment(3, 1000, 3000, tiny);
  CHECK(whole.values == blocked.values);
}

TEST_CASE("sieve values agree with factorization route on random n") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<u64> d(1, 1'000'000'000);
  for (int i = 0; i < 200; ++i) {
    u64 n = d(rng);
    SieveSegment s = dk_segment(3, n - 1, n);
    CHECK(s.values[0] == arith::dk_of(3, arith::factorize(n)));
  }
}

TEST_CASE("d3 = d2 * 1 as Dirichlet convolution, spot checks") {
  std::mt19937_64 rng(5150);
  std::uniform_int_distribution<u64> d(1, 1'000'000);
  for (int i = 0; i < 40; ++i) {
    u64 n = d(rng);
    u64 lhs = dk_segment(3, n - 1, n).values[0];
    u64 rhs = 0;
    for (u64 div = 1; div * div <= n; ++div) {
      if (n % div) continue;
      rhs += dk_segment(2, n / div - 1, n / div).values[0];
      if (div != n / div) rhs += dk_segment(2, div - 1, div).values[0];
    }
    CHECK(lhs == rhs);
  }
}

TEST_CASE("d3 partial sums") {
  CHECK(d3_partial_sum(1) == 1);
  CHECK(d3_partial_sum(10) == 53);
  CHECK(d3_partial_sum(1'000'000) == oracle::d3_partial_sum_hyperbola(1'000'000));
  // monotone growth
  std::vector<u64> sums = d3_partial_sums({100, 200, 300, 1000, 5000});
  for (std::size_t i = 1; i < sums.size(); ++i) CHECK(sums[i] > sums[i - 1]);
}

TEST_CASE("voronoi coefficients and basic values") {
  VoronoiCoefficients c = voronoi_coefficients();
  CHECK(abs(c.a2 - Real(0.5)) < Real("1e-30"));
  // a1 = 3 gamma_0 - 1
  CHECK(abs(c.a1 - Real("0.73164699470459858181953627024720729313")) < Real("1e-25"));
  // t = 1: log term vanishes, main = a0
  CHECK(abs(voronoi_main(Real(1L)) - c.a0) < Real("1e-30"));
}

TEST_CASE("voronoi approximates the partial sum at 1e6") {
  u64 s = d3_partial_sum(1'000'000);
  Real main = voronoi_main(Real(1'000'000.0));
  Real err = abs(Real(static_cast<unsigned long>(s)) - main);
  Real envelope = Real(10L) * pow(Real(1'000'000.0), Real(2L) / Real(3L));
  CHECK(err <= envelope);
}

TEST_CASE("segment cache round trip and corruption handling") {
  std::string dir = "/tmp/d3seg-test-" + std::to_string(::getpid());
  std::filesystem::remove_all(dir);
  SieveConfig cfg;
  cfg.cache_dir = dir;
  SieveSegment s1 = dk_segment(3, 5000, 6000, cfg);
  // hit: identical values
  SieveSegment s2 = dk_segment(3, 5000, 6000, cfg);
  CHECK(s1.values == s2.values);
  auto loaded = cache_load(dir, 3, 5000, 6000);
  REQUIRE(loaded.has_value());
  CHECK(loaded->size() == 1000);
  for (std::size_t i = 0; i < 1000; ++i) CHECK((*loaded)[i] == s1.values[i]);
  // wrong key: miss
  CHECK(!cache_load(dir, 2, 5000, 6000).has_value());
  CHECK(!cache_load(dir, 3, 5000, 6001).has_value());
  // corrupt the payload: checksum must reject
  std::string path;
  for (const auto& e : std::filesystem::directory_iterator(dir)) path = e.path();
  {
    std::FILE* f = std::fopen(path.c_str(), "r+b");
    REQUIRE(f);
    std::fseek(f, 40, SEEK_SET);
    std::fputc(0x5a, f);
    std::fclose(f);
  }
  CHECK(!cache_load(dir, 3, 5000, 6000).has_value());
  // corrupt file is a silent miss: recompute still works
  SieveSegment s3 = dk_segment(3, 5000, 6000, cfg);
  CHECK(s3.values == s1.values);
  std::filesystem::remove_all(dir);
}

TEST_CASE("fnv1a64 reference vector") {
  // FNV-1a 64-bit of "a" is the published 0xaf63dc4c8601ec8c.
  CHECK(fnv1a64("a", 1) == 0xaf63dc4c8601ec8cull);
}

TEST_CASE("resource budget") {
  SieveConfig cfg;
  cfg.max_bytes = 1 << 20;
  CHECK_THROWS_AS(dk_segment(3, 0, 10'000'000, cfg), ResourceError);
  CHECK_THROWS_AS(dk_segment(3, 5, 5), std::invalid_argument);
  CHECK_THROWS_AS(dk_segment(3, 0, u64(2) * 10'000'000'000ull), std::invalid_argument);
}

TEST_CASE("entries for primes equal k") {
  SieveSegment s = dk_segment(3, 100, 200);
  for (u64 n = 101; n <= 199; n += 2) {
    bool prime = arith::is_prime_u64(n);
    if (prime) CHECK(s.values[n - 101] == 3);
  }
}
