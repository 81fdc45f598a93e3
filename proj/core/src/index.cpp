#include "flylsh/index.hpp"

#include <algorithm>
#include <chrono>
#include <cstring>
#include <istream>
#include <ostream>

#include "flylsh/parallel.hpp"

namespace flylsh {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void write_bytes(std::ostream& out, const void* data, std::size_t n) {
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
}

template <typename T>
void write_le(std::ostream& out, T value) {
  std::uint8_t buf[sizeof(T)];
  using U = std::make_unsigned_t<T>;
  U u;
  std::memcpy(&u, &value, sizeof(T));
  for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<std::uint8_t>(u >> (8 * i));
  write_bytes(out, buf, sizeof(T));
}

void write_le_f64(std::ostream& out, double value) {
  std::uint64_t u;
  std::memcpy(&u, &value, 8);
  write_le<std::uint64_t>(out, u);
}

void read_bytes(std::istream& in, void* data, std::size_t n, const char* what) {
  in.read(static_cast<char*>(data), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n) {
    throw FormatError(std::string("index snapshot: truncated ") + what);
  }
}

template <typename T>
T read_le(std::istream& in, const char* what) {
  std::uint8_t buf[sizeof(T)];
  read_bytes(in, buf, sizeof(T), what);
  using U = std::make_unsigned_t<T>;
  U u = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) u |= static_cast<U>(buf[i]) << (8 * i);
  T value;
  std::memcpy(&value, &u, sizeof(T));
  return value;
}

double read_le_f64(std::istream& in, const char* what) {
  const std::uint64_t u = read_le<std::uint64_t>(in, what);
  double value;
  std::memcpy(&value, &u, 8);
  return value;
}

constexpr char kMagic[4] = {'F', 'L', 'S', 'H'};
constexpr std::uint16_t kVersion = 1;

}  // namespace

HashIndex HashIndex::build(const Dataset& dataset, const IndexConfig& config) {
  // SimHash always gets its k pooled tables in index context (k=1 -> single).
  const std::uint32_t tables = config.algo == Algorithm::simhash ? config.k : 1;
  Hasher hasher = Hasher::make(config.algo, static_cast<std::uint32_t>(dataset.dim), config.m,
                               config.k, config.alpha, config.seed, tables);
  return build(dataset, std::move(hasher), config.threads);
}

HashIndex HashIndex::build(const Dataset& dataset, Hasher hasher, std::size_t threads) {
  if (dataset.size() == 0) throw ParameterError("HashIndex::build: empty dataset");
  if (!dataset.centered) throw ParameterError("HashIndex::build: dataset must be centered");
  if (dataset.dim != hasher.input_dim()) {
    throw DimensionError("HashIndex::build: dataset dimension does not match hasher");
  }

  const auto start = Clock::now();
  HashIndex index;
  index.hasher_ = std::move(hasher);
  const std::size_t n = dataset.size();
  index.hashes_.resize(n);
  std::vector<std::vector<BinKey>> keys(n);
  parallel_for(n, threads, [&](std::size_t i) {
    index.hashes_[i] = index.hasher_.h1(dataset.items[i]);
    keys[i] = index.hasher_.bin_keys(dataset.items[i]);
  });

  index.tables_.resize(index.hasher_.table_count());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t t = 0; t < index.tables_.size(); ++t) {
      index.insert_key(t, keys[i][t], static_cast<std::uint32_t>(i));
    }
  }
  index.finalize_stats();
  index.stats_.build_seconds = seconds_since(start);
  return index;
}

void HashIndex::insert_key(std::size_t table, const BinKey& key, std::uint32_t id) {
  auto& t = tables_[table];
  auto [it, inserted] = t.bins.try_emplace(key);
  if (inserted) t.occupied.push_back(key);
  it->second.push_back(id);
}

void HashIndex::finalize_stats() {
  stats_.hash_bytes = hashes_.size() * ((hasher_.h1_bits() + 7) / 8);
  stats_.bin_bytes = 0;
  const std::size_t key_bytes = (hasher_.key_bits() + 7) / 8;
  for (const auto& table : tables_) {
    for (const auto& [key, ids] : table.bins) {
      stats_.bin_bytes += key_bytes + 4 * ids.size();
    }
  }
}

std::vector<std::uint32_t> HashIndex::probe(const BinKey& key, std::uint32_t radius,
                                            std::size_t table) const {
  if (table >= tables_.size()) throw ParameterError("probe: table out of range");
  if (key.size() != hasher_.key_bits()) {
    throw DimensionError("probe: key length does not match index");
  }
  std::vector<std::uint32_t> ids;
  for (const BinKey& occupied : tables_[table].occupied) {
    if (hamming(occupied, key) <= radius) {
      const auto& bin = tables_[table].bins.at(occupied);
      ids.insert(ids.end(), bin.begin(), bin.end());
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::vector<std::uint32_t> HashIndex::pooled_candidates(const std::vector<BinKey>& keys,
                                                        std::uint32_t radius,
                                                        std::size_t* bins_touched) const {
  std::vector<std::uint32_t> ids;
  std::size_t touched = 0;
  for (std::size_t t = 0; t < tables_.size(); ++t) {
    for (const BinKey& occupied : tables_[t].occupied) {
      if (hamming(occupied, keys[t]) <= radius) {
        ++touched;
        const auto& bin = tables_[t].bins.at(occupied);
        ids.insert(ids.end(), bin.begin(), bin.end());
      }
    }
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (bins_touched) *bins_touched = touched;
  return ids;
}

ProbeResult HashIndex::rank_candidates(const BitHash& query_hash,
                                       std::vector<std::uint32_t> candidates) const {
  ProbeResult result;
  result.ranked.reserve(candidates.size());
  for (std::uint32_t id : candidates) {
    result.ranked.emplace_back(id, static_cast<std::uint32_t>(hamming(query_hash, hashes_[id])));
  }
  std::sort(result.ranked.begin(), result.ranked.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second < b.second;
              return a.first < b.first;
            });
  result.candidate_ids = std::move(candidates);
  return result;
}

ProbeResult HashIndex::query_ranked(const Vector& query, std::uint32_t radius) const {
  if (query.dim() != hasher_.input_dim()) {
    throw DimensionError("query_ranked: query dimension does not match index");
  }
  const auto start = Clock::now();
  const BitHash query_hash = hasher_.h1(query);
  std::vector<std::uint32_t> candidates;
  std::size_t touched = 0;
  if (tables_.empty()) {
    candidates.resize(hashes_.size());
    for (std::uint32_t i = 0; i < candidates.size(); ++i) candidates[i] = i;
  } else {
    candidates = pooled_candidates(hasher_.bin_keys(query), radius, &touched);
  }
  ProbeResult result = rank_candidates(query_hash, std::move(candidates));
  result.radius_used = radius;
  result.bins_touched = touched;
  result.query_seconds = seconds_since(start);
  return result;
}

ProbeResult HashIndex::query_at_least(const Vector& query, std::size_t target) const {
  if (target < 1) throw ParameterError("query_at_least: target must be at least 1");
  if (query.dim() != hasher_.input_dim()) {
    throw DimensionError("query_at_least: query dimension does not match index");
  }
  const auto start = Clock::now();
  const BitHash query_hash = hasher_.h1(query);
  std::vector<std::uint32_t> candidates;
  std::uint32_t radius = 0;
  std::size_t touched = 0;
  if (tables_.empty()) {
    candidates.resize(hashes_.size());
    for (std::uint32_t i = 0; i < candidates.size(); ++i) candidates[i] = i;
  } else {
    const auto keys = hasher_.bin_keys(query);
    for (radius = 0;; ++radius) {
      candidates = pooled_candidates(keys, radius, &touched);
      if (candidates.size() >= target || radius >= hasher_.m()) break;
    }
  }
  ProbeResult result = rank_candidates(query_hash, std::move(candidates));
  result.radius_used = radius;
  result.bins_touched = touched;
  result.query_seconds = seconds_since(start);
  return result;
}

const std::vector<BinKey>& HashIndex::occupied_bins(std::size_t table) const {
  if (table >= tables_.size()) throw ParameterError("occupied_bins: table out of range");
  return tables_[table].occupied;
}

const std::vector<std::uint32_t>& HashIndex::bin_contents(const BinKey& key,
                                                          std::size_t table) const {
  static const std::vector<std::uint32_t> empty;
  if (table >= tables_.size()) throw ParameterError("bin_contents: table out of range");
  auto it = tables_[table].bins.find(key);
  return it == tables_[table].bins.end() ? empty : it->second;
}

void HashIndex::save(std::ostream& out) const {
  write_bytes(out, kMagic, 4);
  write_le<std::uint16_t>(out, kVersion);
  write_le<std::uint8_t>(out, static_cast<std::uint8_t>(hasher_.algorithm()));
  write_le<std::uint32_t>(out, hasher_.input_dim());
  write_le<std::uint32_t>(out, hasher_.m());
  write_le<std::uint32_t>(out, hasher_.k());
  write_le_f64(out, hasher_.alpha());
  write_le<std::uint64_t>(out, hasher_.seed().value);
  write_le<std::uint64_t>(out, hashes_.size());
  for (const BitHash& h : hashes_) {
    const auto bytes = h.to_bytes();
    write_bytes(out, bytes.data(), bytes.size());
  }
  for (const auto& table : tables_) {
    write_le<std::uint64_t>(out, table.occupied.size());
    for (const BinKey& key : table.occupied) {
      const auto key_bytes = key.to_bytes();
      write_bytes(out, key_bytes.data(), key_bytes.size());
      const auto& ids = table.bins.at(key);
      write_le<std::uint32_t>(out, static_cast<std::uint32_t>(ids.size()));
      for (std::uint32_t id : ids) write_le<std::uint32_t>(out, id);
    }
  }
  if (!out) throw FormatError("index snapshot: write failed");
}

HashIndex HashIndex::load(std::istream& in) {
  char magic[4];
  read_bytes(in, magic, 4, "magic");
  if (std::memcmp(magic, kMagic, 4) != 0) throw FormatError("index snapshot: bad magic");
  const auto version = read_le<std::uint16_t>(in, "version");
  if (version != kVersion) {
    throw FormatError("index snapshot: unsupported version " + std::to_string(version));
  }
  const auto algo_tag = read_le<std::uint8_t>(in, "algorithm");
  if (algo_tag > static_cast<std::uint8_t>(Algorithm::densefly)) {
    throw FormatError("index snapshot: unknown algorithm tag");
  }
  const auto algo = static_cast<Algorithm>(algo_tag);
  const auto d = read_le<std::uint32_t>(in, "d");
  const auto m = read_le<std::uint32_t>(in, "m");
  const auto k = read_le<std::uint32_t>(in, "k");
  const double alpha = read_le_f64(in, "alpha");
  const RngSeed seed{read_le<std::uint64_t>(in, "seed")};
  const auto n = read_le<std::uint64_t>(in, "n");

  HashIndex index;
  const std::uint32_t tables = algo == Algorithm::simhash ? k : 1;
  index.hasher_ = Hasher::make(algo, d, m, k, alpha, seed, tables);

  const std::size_t h1_bytes = (index.hasher_.h1_bits() + 7) / 8;
  std::vector<std::uint8_t> buf(h1_bytes);
  index.hashes_.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    read_bytes(in, buf.data(), buf.size(), "hash data");
    index.hashes_.push_back(BitHash::from_bytes(buf, index.hasher_.h1_bits()));
  }

  index.tables_.resize(index.hasher_.table_count());
  const std::size_t key_bytes = (index.hasher_.key_bits() + 7) / 8;
  std::vector<std::uint8_t> key_buf(key_bytes);
  for (auto& table : index.tables_) {
    const auto bin_count = read_le<std::uint64_t>(in, "bin count");
    table.occupied.reserve(bin_count);
    for (std::uint64_t b = 0; b < bin_count; ++b) {
      read_bytes(in, key_buf.data(), key_buf.size(), "bin key");
      BinKey key = BinKey::from_bytes(key_buf, index.hasher_.key_bits());
      const auto count = read_le<std::uint32_t>(in, "id count");
      std::vector<std::uint32_t> ids;
      ids.reserve(count);
      for (std::uint32_t c = 0; c < count; ++c) {
        const auto id = read_le<std::uint32_t>(in, "id");
        if (id >= n) throw FormatError("index snapshot: id out of range");
        ids.push_back(id);
      }
      if (table.bins.count(key)) throw FormatError("index snapshot: duplicate bin key");
      table.occupied.push_back(key);
      table.bins.emplace(std::move(key), std::move(ids));
    }
  }
  index.finalize_stats();
  return index;
}

}  // namespace flylsh
