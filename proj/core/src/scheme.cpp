#include "flylsh/scheme.hpp"

#include <cmath>

namespace flylsh {

std::string to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::simhash: return "simhash";
    case Algorithm::wtahash: return "wtahash";
    case Algorithm::flyhash: return "flyhash";
    case Algorithm::flyhash_mp: return "flyhash-mp";
    case Algorithm::densefly: return "densefly";
  }
  throw ParameterError("to_string: unknown algorithm");
}

Algorithm algorithm_from_string(const std::string& name) {
  if (name == "simhash") return Algorithm::simhash;
  if (name == "wtahash") return Algorithm::wtahash;
  if (name == "flyhash") return Algorithm::flyhash;
  if (name == "flyhash-mp" || name == "flyhash_mp") return Algorithm::flyhash_mp;
  if (name == "densefly") return Algorithm::densefly;
  throw ConfigError("unknown algorithm: " + name);
}

Hasher Hasher::make(Algorithm algo, std::uint32_t d, std::uint32_t m, std::uint32_t k,
                    double alpha, RngSeed seed, std::uint32_t simhash_tables) {
  if (m == 0 || k == 0) throw ParameterError("Hasher: m and k must be positive");
  Hasher h;
  h.algo_ = algo;
  h.d_ = d;
  h.m_ = m;
  h.k_ = k;
  h.alpha_ = alpha;
  h.seed_ = seed;
  switch (algo) {
    case Algorithm::simhash: {
      if (simhash_tables == 0) throw ParameterError("Hasher: simhash needs at least one table");
      std::vector<RngSeed> table_seeds;
      table_seeds.reserve(simhash_tables);
      for (std::uint32_t t = 0; t < simhash_tables; ++t) {
        table_seeds.push_back(RngSeed{mix64(seed.value ^ mix64(0x7ab1e5 + t))});
      }
      return make_simhash_tables(d, m, k, alpha, seed, table_seeds);
    }
    case Algorithm::wtahash:
      h.perms_ = make_permutations(d, m, k, seed);
      break;
    case Algorithm::flyhash:
    case Algorithm::flyhash_mp:
    case Algorithm::densefly:
      h.sparse_ = make_sparse_projection(d, m, k, alpha, SparseMode::fixed_count, seed);
      break;
  }
  return h;
}

Hasher Hasher::make_simhash_tables(std::uint32_t d, std::uint32_t m, std::uint32_t k,
                                   double alpha, RngSeed seed,
                                   const std::vector<RngSeed>& table_seeds) {
  if (table_seeds.empty()) throw ParameterError("Hasher: simhash needs at least one table");
  Hasher h;
  h.algo_ = Algorithm::simhash;
  h.d_ = d;
  h.m_ = m;
  h.k_ = k;
  h.alpha_ = alpha;
  h.seed_ = seed;
  h.dense_tables_.reserve(table_seeds.size());
  for (RngSeed ts : table_seeds) {
    h.dense_tables_.push_back(make_dense_projection(d, m, ts));
  }
  return h;
}

std::size_t Hasher::h1_bits() const {
  if (algo_ == Algorithm::simhash) return static_cast<std::size_t>(m_) * dense_tables_.size();
  return static_cast<std::size_t>(m_) * k_;
}

std::size_t Hasher::table_count() const {
  switch (algo_) {
    case Algorithm::simhash: return dense_tables_.size();
    case Algorithm::flyhash_mp:
    case Algorithm::densefly: return 1;
    case Algorithm::flyhash:
    case Algorithm::wtahash: return 0;
  }
  return 0;
}

std::size_t Hasher::key_bits() const { return table_count() == 0 ? 0 : m_; }

BitHash Hasher::h1(const Vector& x) const {
  switch (algo_) {
    case Algorithm::simhash: {
      BitHash h(h1_bits());
      std::size_t offset = 0;
      for (const auto& table : dense_tables_) {
        const BitHash part = simhash(table, x);
        for (std::size_t i = 0; i < part.size(); ++i) {
          if (part.test(i)) h.set(offset + i);
        }
        offset += part.size();
      }
      return h;
    }
    case Algorithm::wtahash:
      return wtahash(*perms_, x);
    case Algorithm::flyhash:
    case Algorithm::flyhash_mp:
      return flyhash(activations(*sparse_, x), m_);
    case Algorithm::densefly:
      return densefly(activations(*sparse_, x));
  }
  throw ParameterError("Hasher::h1: unknown algorithm");
}

std::vector<BinKey> Hasher::bin_keys(const Vector& x) const {
  switch (algo_) {
    case Algorithm::simhash: {
      std::vector<BinKey> keys;
      keys.reserve(dense_tables_.size());
      for (const auto& table : dense_tables_) keys.push_back(simhash(table, x));
      return keys;
    }
    case Algorithm::flyhash_mp:
    case Algorithm::densefly:
      return {pseudo_hash(activations(*sparse_, x), m_, k_)};
    case Algorithm::flyhash:
    case Algorithm::wtahash:
      return {};
  }
  throw ParameterError("Hasher::bin_keys: unknown algorithm");
}

double Hasher::add_ops_per_hash() const {
  switch (algo_) {
    case Algorithm::simhash:
      return static_cast<double>(d_) * static_cast<double>(m_) * dense_tables_.size();
    case Algorithm::wtahash:
      return 0.0;  // permutations and comparisons only
    case Algorithm::flyhash:
    case Algorithm::flyhash_mp:
    case Algorithm::densefly:
      return std::floor(alpha_ * d_) * static_cast<double>(m_) * k_;
  }
  return 0.0;
}

double Hasher::mul_ops_per_hash() const {
  if (algo_ == Algorithm::simhash) {
    return static_cast<double>(d_) * static_cast<double>(m_) * dense_tables_.size();
  }
  return 0.0;
}

const SparseProjection& Hasher::sparse_projection() const {
  if (!sparse_) throw ParameterError("Hasher: no sparse projection for this algorithm");
  return *sparse_;
}

}  // namespace flylsh
