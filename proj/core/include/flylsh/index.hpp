#pragma once

#include <cstdint>
#include <iosfwd>
#include <unordered_map>
#include <utility>
#include <vector>

#include "flylsh/scheme.hpp"

namespace flylsh {

struct IndexConfig {
  Algorithm algo = Algorithm::densefly;
  std::uint32_t m = 16;
  std::uint32_t k = 4;
  double alpha = 0.1;
  RngSeed seed;
  std::size_t threads = 0;  ///< 0 = hardware concurrency (hashing only; binning is sequential)
};

struct ProbeResult {
  std::vector<std::uint32_t> candidate_ids;               // deduplicated, ascending
  std::uint32_t radius_used = 0;
  std::size_t bins_touched = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> ranked;  // (id, hamming), ascending
  double query_seconds = 0.0;
};

/// Immutable multi-probe index. Items are bucketed by their m-bit keys (h2)
/// and ranked by Hamming distance on the stored high-dimensional hashes (h1).
/// SimHash keeps k independent tables and pools candidates across them;
/// flyhash (without multi-probe) and wtahash store hashes only and rank the
/// whole corpus per query.
class HashIndex {
 public:
  static HashIndex build(const Dataset& dataset, const IndexConfig& config);
  static HashIndex build(const Dataset& dataset, Hasher hasher, std::size_t threads = 0);

  std::size_t size() const { return hashes_.size(); }
  std::size_t table_count() const { return tables_.size(); }
  const Hasher& hasher() const { return hasher_; }

  /// Ids in every occupied bin of `table` within Hamming radius of `key`,
  /// found by a linear scan over that table's occupied bins. Ascending ids.
  std::vector<std::uint32_t> probe(const BinKey& key, std::uint32_t radius,
                                   std::size_t table = 0) const;

  /// Hashes the query, pools probe results across tables at `radius`,
  /// deduplicates and ranks by h1 Hamming distance (ties by ascending id).
  ProbeResult query_ranked(const Vector& query, std::uint32_t radius) const;

  /// Escalates the radius from 0 until at least `target` candidates are
  /// pooled (or radius reaches m), then ranks the pooled candidates.
  ProbeResult query_at_least(const Vector& query, std::size_t target = 100) const;

  const std::vector<BinKey>& occupied_bins(std::size_t table = 0) const;
  const std::vector<std::uint32_t>& bin_contents(const BinKey& key, std::size_t table = 0) const;
  const BitHash& stored_hash(std::uint32_t id) const { return hashes_[id]; }

  struct Stats {
    double build_seconds = 0.0;
    std::size_t hash_bytes = 0;  ///< packed h1 storage
    std::size_t bin_bytes = 0;   ///< bin keys plus id lists
    std::size_t total_bytes() const { return hash_bytes + bin_bytes; }
  };
  const Stats& stats() const { return stats_; }

  /// Little-endian snapshot: "FLSH" magic, version, parameters, packed h1
  /// hashes, then each table's bins. Round-trips bit-exactly.
  void save(std::ostream& out) const;
  static HashIndex load(std::istream& in);

 private:
  HashIndex() = default;

  struct Table {
    std::unordered_map<BinKey, std::vector<std::uint32_t>, BitVectorHash> bins;
    std::vector<BinKey> occupied;  // first-insertion order
  };

  void insert_key(std::size_t table, const BinKey& key, std::uint32_t id);
  void finalize_stats();
  std::vector<std::uint32_t> pooled_candidates(const std::vector<BinKey>& keys,
                                               std::uint32_t radius,
                                               std::size_t* bins_touched) const;
  ProbeResult rank_candidates(const BitHash& query_hash,
                              std::vector<std::uint32_t> candidates) const;

  Hasher hasher_;
  std::vector<BitHash> hashes_;
  std::vector<Table> tables_;
  Stats stats_;
};

}  // namespace flylsh
