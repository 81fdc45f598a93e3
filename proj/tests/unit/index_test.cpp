#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "flylsh/data.hpp"
#include "flylsh/index.hpp"

using namespace flylsh;

namespace {

Dataset centered_random(std::size_t n, std::size_t d, std::uint64_t seed) {
  Dataset ds = data::gen_random(n, d, RngSeed{seed});
  center_dataset(ds, CenterMode::per_vector);
  return ds;
}

std::string serialized(const HashIndex& index) {
  std::ostringstream os;
  index.save(os);
  return os.str();
}

/// Brute-force probe oracle: enumerate occupied bins, keep those within the
/// radius, pool their ids.
std::vector<std::uint32_t> probe_oracle(const HashIndex& index, const BinKey& key,
                                        std::uint32_t radius, std::size_t table) {
  std::vector<std::uint32_t> ids;
  for (const BinKey& occupied : index.occupied_bins(table)) {
    if (hamming(occupied, key) <= radius) {
      const auto& bin = index.bin_contents(occupied, table);
      ids.insert(ids.end(), bin.begin(), bin.end());
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace

TEST_CASE("identical vectors collide into one bin") {
  Dataset ds;
  ds.dim = 8;
  Vector v{{1.0, -2.0, 0.5, 0.0, 3.0, -1.0, 0.25, -1.75}};
  for (int i = 0; i < 10; ++i) ds.items.push_back(v);
  center_dataset(ds, CenterMode::per_vector);
  const auto index = HashIndex::build(ds, IndexConfig{Algorithm::densefly, 4, 2, 0.25, RngSeed{1}});
  CHECK(index.table_count() == 1);
  CHECK(index.occupied_bins().size() == 1);
  CHECK(index.bin_contents(index.occupied_bins()[0]).size() == 10);
}

TEST_CASE("build validation") {
  Dataset empty;
  empty.dim = 4;
  CHECK_THROWS_AS(HashIndex::build(empty, IndexConfig{}), ParameterError);

  Dataset uncentered = data::gen_random(4, 8, RngSeed{2});
  CHECK_THROWS_AS(HashIndex::build(uncentered, IndexConfig{}), ParameterError);
}

TEST_CASE("index build is deterministic under a fixed seed") {
  const auto ds = centered_random(200, 16, 3);
  const IndexConfig config{Algorithm::densefly, 8, 4, 0.2, RngSeed{44}};
  const auto a = HashIndex::build(ds, config);
  const auto b = HashIndex::build(ds, config);
  CHECK(serialized(a) == serialized(b));
}

TEST_CASE("probe matches exhaustive bin-distance enumeration") {
  const auto ds = centered_random(300, 24, 5);
  for (Algorithm algo : {Algorithm::densefly, Algorithm::flyhash_mp, Algorithm::simhash}) {
    const auto index = HashIndex::build(ds, IndexConfig{algo, 6, 3, 0.2, RngSeed{7}});
    for (std::size_t t = 0; t < index.table_count(); ++t) {
      const auto keys = index.hasher().bin_keys(ds.items[11]);
      for (std::uint32_t r = 0; r <= 6; ++r) {
        CHECK(index.probe(keys[t], r, t) == probe_oracle(index, keys[t], r, t));
      }
    }
  }
}

TEST_CASE("probe radius edge cases") {
  const auto ds = centered_random(100, 16, 6);
  const auto index = HashIndex::build(ds, IndexConfig{Algorithm::densefly, 5, 2, 0.2, RngSeed{8}});

  SUBCASE("radius m reaches every indexed id") {
    const auto all = index.probe(index.hasher().bin_keys(ds.items[0])[0], 5);
    CHECK(all.size() == 100);
  }

  SUBCASE("radius 0 on an unoccupied bin is empty") {
    // find a key that is not occupied by flipping bits until unseen
    std::set<std::string> occupied;
    for (const auto& key : index.occupied_bins()) occupied.insert(key.to_string());
    BinKey probe_key(5);
    std::size_t flip = 0;
    while (occupied.count(probe_key.to_string()) && flip < 5) probe_key.set(flip++);
    if (!occupied.count(probe_key.to_string())) {
      CHECK(index.probe(probe_key, 0).empty());
    }
  }

  SUBCASE("key length is validated") {
    CHECK_THROWS_AS(index.probe(BinKey(4), 1), DimensionError);
  }
}

TEST_CASE("larger radii give superset candidate sets") {
  const auto ds = centered_random(250, 20, 9);
  const auto index = HashIndex::build(ds, IndexConfig{Algorithm::flyhash_mp, 6, 4, 0.2, RngSeed{10}});
  const auto key = index.hasher().bin_keys(ds.items[42])[0];
  std::vector<std::uint32_t> previous;
  for (std::uint32_t r = 0; r <= 6; ++r) {
    const auto ids = index.probe(key, r);
    CHECK(std::includes(ids.begin(), ids.end(), previous.begin(), previous.end()));
    previous = ids;
  }
}

TEST_CASE("query_ranked basics") {
  const auto ds = centered_random(120, 16, 11);
  const auto index = HashIndex::build(ds, IndexConfig{Algorithm::densefly, 6, 3, 0.2, RngSeed{12}});

  SUBCASE("an indexed query ranks itself first at radius 0") {
    const auto result = index.query_ranked(ds.items[17], 0);
    REQUIRE(!result.ranked.empty());
    CHECK(result.ranked.front().first == 17);
    CHECK(result.ranked.front().second == 0);
    CHECK(result.bins_touched <= 1);
  }

  SUBCASE("ranking is sorted by distance with id tie-breaks") {
    const auto result = index.query_ranked(ds.items[3], 6);
    for (std::size_t i = 1; i < result.ranked.size(); ++i) {
      const auto& prev = result.ranked[i - 1];
      const auto& cur = result.ranked[i];
      CHECK((prev.second < cur.second ||
             (prev.second == cur.second && prev.first < cur.first)));
    }
  }

  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(index.query_ranked(Vector{{1.0}}, 0), DimensionError);
  }

  SUBCASE("bins_touched never exceeds the occupied count") {
    for (std::uint32_t r = 0; r <= 6; ++r) {
      const auto result = index.query_ranked(ds.items[5], r);
      CHECK(result.bins_touched <= index.occupied_bins().size());
    }
  }
}

TEST_CASE("radius-m ranking equals a brute-force hamming sort") {
  const auto ds = centered_random(400, 24, 13);
  for (Algorithm algo :
       {Algorithm::densefly, Algorithm::flyhash_mp, Algorithm::simhash, Algorithm::flyhash}) {
    const auto index = HashIndex::build(ds, IndexConfig{algo, 8, 2, 0.2, RngSeed{14}});
    const auto query_hash = index.hasher().h1(ds.items[77]);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> expected;
    for (std::uint32_t i = 0; i < ds.size(); ++i) {
      expected.emplace_back(static_cast<std::uint32_t>(hamming(query_hash, index.stored_hash(i))),
                            i);
    }
    std::sort(expected.begin(), expected.end());
    const auto result = index.query_ranked(ds.items[77], 8);
    REQUIRE(result.ranked.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      CHECK(result.ranked[i].first == expected[i].second);
      CHECK(result.ranked[i].second == expected[i].first);
    }
  }
}

TEST_CASE("query_at_least escalates until enough candidates") {
  SUBCASE("small index returns everything with radius m") {
    const auto ds = centered_random(50, 16, 15);
    const auto index = HashIndex::build(ds, IndexConfig{Algorithm::densefly, 6, 2, 0.2, RngSeed{16}});
    const auto result = index.query_at_least(ds.items[0], 100);
    CHECK(result.candidate_ids.size() == 50);
    CHECK(result.radius_used == 6);
  }

  SUBCASE("target 1 stops at radius 0 for an indexed query") {
    const auto ds = centered_random(100, 16, 17);
    const auto index = HashIndex::build(ds, IndexConfig{Algorithm::densefly, 6, 2, 0.2, RngSeed{18}});
    const auto result = index.query_at_least(ds.items[9], 1);
    CHECK(result.radius_used == 0);
    CHECK(!result.candidate_ids.empty());
  }

  SUBCASE("target must be positive") {
    const auto ds = centered_random(20, 16, 19);
    const auto index = HashIndex::build(ds, IndexConfig{Algorithm::densefly, 4, 2, 0.2, RngSeed{20}});
    CHECK_THROWS_AS(index.query_at_least(ds.items[0], 0), ParameterError);
  }
}

TEST_CASE("every id lands in exactly one bin per table") {
  const auto ds = centered_random(150, 16, 21);
  for (Algorithm algo : {Algorithm::densefly, Algorithm::simhash}) {
    const auto index = HashIndex::build(ds, IndexConfig{algo, 5, 3, 0.2, RngSeed{22}});
    for (std::size_t t = 0; t < index.table_count(); ++t) {
      std::vector<std::uint32_t> seen;
      for (const auto& key : index.occupied_bins(t)) {
        const auto& bin = index.bin_contents(key, t);
        seen.insert(seen.end(), bin.begin(), bin.end());
      }
      std::sort(seen.begin(), seen.end());
      CHECK(seen.size() == ds.size());
      CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
    }
    // occupied keys are unique
    std::set<std::string> keys;
    for (const auto& key : index.occupied_bins(0)) keys.insert(key.to_string());
    CHECK(keys.size() == index.occupied_bins(0).size());
  }
}

TEST_CASE("pooled simhash tables") {
  const auto ds = centered_random(200, 24, 23);

  SUBCASE("k tables are built and pooled") {
    const auto index = HashIndex::build(ds, IndexConfig{Algorithm::simhash, 6, 4, 0.2, RngSeed{24}});
    CHECK(index.table_count() == 4);
    CHECK(index.hasher().h1_bits() == 24);
  }

  SUBCASE("k=1 behaves as a single simhash table") {
    const auto index = HashIndex::build(ds, IndexConfig{Algorithm::simhash, 6, 1, 0.2, RngSeed{25}});
    CHECK(index.table_count() == 1);
    CHECK(index.hasher().h1_bits() == 6);
  }

  SUBCASE("identical table seeds deduplicate to the single-table candidate set") {
    const std::vector<RngSeed> same_seeds(4, RngSeed{77});
    auto pooled = Hasher::make_simhash_tables(24, 6, 4, 0.2, RngSeed{77}, same_seeds);
    auto single = Hasher::make_simhash_tables(24, 6, 4, 0.2, RngSeed{77}, {RngSeed{77}});
    const auto pooled_index = HashIndex::build(ds, std::move(pooled));
    const auto single_index = HashIndex::build(ds, std::move(single));
    for (std::uint32_t r = 0; r <= 3; ++r) {
      const auto a = pooled_index.query_ranked(ds.items[8], r);
      const auto b = single_index.query_ranked(ds.items[8], r);
      CHECK(a.candidate_ids == b.candidate_ids);
    }
  }

  SUBCASE("four simhash tables cost more memory than one densefly table") {
    const auto simhash_index =
        HashIndex::build(ds, IndexConfig{Algorithm::simhash, 16, 4, 0.2, RngSeed{26}});
    const auto densefly_index =
        HashIndex::build(ds, IndexConfig{Algorithm::densefly, 16, 4, 0.2, RngSeed{26}});
    CHECK(simhash_index.stats().total_bytes() > densefly_index.stats().total_bytes());
  }
}

TEST_CASE("simhash binning leaves fewer occupied bins than items") {
  const auto ds = centered_random(10000, 64, 27);
  const auto index = HashIndex::build(ds, IndexConfig{Algorithm::simhash, 16, 1, 0.2, RngSeed{28}});
  CHECK(index.occupied_bins(0).size() < ds.size());
}

TEST_CASE("scan-only algorithms rank the whole corpus") {
  const auto ds = centered_random(80, 16, 29);
  for (Algorithm algo : {Algorithm::flyhash, Algorithm::wtahash}) {
    const auto index = HashIndex::build(ds, IndexConfig{algo, 4, 4, 0.2, RngSeed{30}});
    CHECK(index.table_count() == 0);
    const auto result = index.query_ranked(ds.items[0], 0);
    CHECK(result.candidate_ids.size() == 80);
    CHECK(result.bins_touched == 0);
  }
}

TEST_CASE("snapshot round trip is bit exact") {
  const auto ds = centered_random(150, 24, 31);
  for (Algorithm algo : {Algorithm::densefly, Algorithm::flyhash_mp, Algorithm::simhash,
                         Algorithm::flyhash, Algorithm::wtahash}) {
    const auto index = HashIndex::build(ds, IndexConfig{algo, 6, 3, 0.2, RngSeed{32}});
    const std::string bytes = serialized(index);
    std::istringstream is(bytes);
    const auto loaded = HashIndex::load(is);
    CHECK(serialized(loaded) == bytes);
    CHECK(loaded.size() == index.size());
    // loaded index answers queries identically
    const auto a = index.query_ranked(ds.items[5], 3);
    const auto b = loaded.query_ranked(ds.items[5], 3);
    CHECK(a.ranked == b.ranked);
  }

  SUBCASE("corrupted header is rejected") {
    std::istringstream bad("XXXX");
    CHECK_THROWS_AS(HashIndex::load(bad), FormatError);
  }

  SUBCASE("truncated payload is rejected") {
    const auto index = HashIndex::build(ds, IndexConfig{Algorithm::densefly, 6, 3, 0.2, RngSeed{33}});
    std::string bytes = serialized(index);
    bytes.resize(bytes.size() / 2);
    std::istringstream is(bytes);
    CHECK_THROWS_AS(HashIndex::load(is), FormatError);
  }
}
