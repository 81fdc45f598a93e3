#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "flylsh/rng.hpp"

using namespace flylsh;

TEST_CASE("equal seeds give identical streams") {
  Rng a = Rng::stream(RngSeed{123}, StreamDomain::sparse_row, 5);
  Rng b = Rng::stream(RngSeed{123}, StreamDomain::sparse_row, 5);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different stream indices are independent of generation order") {
  // Draw stream 3 without touching streams 0..2, then after touching them.
  Rng direct = Rng::stream(RngSeed{9}, StreamDomain::sparse_row, 3);
  const std::uint64_t first = direct.next_u64();
  for (std::uint64_t j = 0; j < 3; ++j) {
    Rng other = Rng::stream(RngSeed{9}, StreamDomain::sparse_row, j);
    (void)other.next_u64();
  }
  Rng again = Rng::stream(RngSeed{9}, StreamDomain::sparse_row, 3);
  CHECK(again.next_u64() == first);
}

TEST_CASE("different domains and seeds give different streams") {
  Rng a = Rng::stream(RngSeed{1}, StreamDomain::sparse_row, 0);
  Rng b = Rng::stream(RngSeed{1}, StreamDomain::dense_row, 0);
  Rng c = Rng::stream(RngSeed{2}, StreamDomain::sparse_row, 0);
  const auto va = a.next_u64();
  CHECK(va != b.next_u64());
  CHECK(va != c.next_u64());
}

TEST_CASE("uniform01 stays in [0, 1)") {
  Rng rng = Rng::stream(RngSeed{11}, StreamDomain::misc);
  double min = 1.0, max = 0.0, sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double v = rng.uniform01();
    min = std::min(min, v);
    max = std::max(max, v);
    sum += v;
  }
  CHECK(min >= 0.0);
  CHECK(max < 1.0);
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("bounded draws cover the whole range without bias") {
  Rng rng = Rng::stream(RngSeed{13}, StreamDomain::misc);
  std::vector<int> counts(10, 0);
  for (int i = 0; i < 50000; ++i) ++counts[rng.bounded(10)];
  for (int c : counts) CHECK(c > 4500);
  CHECK_THROWS_AS(rng.bounded(0), ParameterError);
}

TEST_CASE("normal has the right first two moments") {
  Rng rng = Rng::stream(RngSeed{17}, StreamDomain::misc);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = rng.normal();
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / n;
  CHECK(mean == doctest::Approx(0.0).epsilon(0.02));
  CHECK(sum2 / n - mean * mean == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("shuffle permutes") {
  Rng rng = Rng::stream(RngSeed{19}, StreamDomain::misc);
  std::vector<std::uint32_t> v(100);
  std::iota(v.begin(), v.end(), 0u);
  auto shuffled = v;
  rng.shuffle(shuffled);
  CHECK(shuffled != v);
  std::sort(shuffled.begin(), shuffled.end());
  CHECK(shuffled == v);
}

TEST_CASE("sample_without_replacement yields distinct sorted indices") {
  Rng rng = Rng::stream(RngSeed{23}, StreamDomain::misc);
  for (int trial = 0; trial < 50; ++trial) {
    const auto sample = rng.sample_without_replacement(100, 12);
    CHECK(sample.size() == 12);
    CHECK(std::is_sorted(sample.begin(), sample.end()));
    CHECK(std::adjacent_find(sample.begin(), sample.end()) == sample.end());
    CHECK(sample.back() < 100);
  }
  CHECK(rng.sample_without_replacement(5, 5).size() == 5);
  CHECK_THROWS_AS(rng.sample_without_replacement(3, 4), ParameterError);
}
