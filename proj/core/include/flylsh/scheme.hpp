#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flylsh/hashers.hpp"

namespace flylsh {

enum class Algorithm : std::uint8_t {
  simhash = 0,
  wtahash = 1,
  flyhash = 2,
  flyhash_mp = 3,
  densefly = 4,
};

std::string to_string(Algorithm algo);
Algorithm algorithm_from_string(const std::string& name);

/// One configured hash pipeline: produces the ranking hash h1 and, for the
/// multi-probe schemes, the per-table bucket keys h2.
///
/// Hash dimensions per the comparison rules:
///   - fly schemes use mk projections; SimHash uses m per table.
///   - budget-equated SimHash is a single table (h1 has m bits);
///     pooled / equal-dimension SimHash uses `tables` tables and its h1 is
///     the concatenation of the per-table hashes (m * tables bits).
///   - WTAHash uses m blocks of length k (mk bits, no bucket keys).
///   - flyhash_mp shares FlyHash's h1 and bins by the pseudo-hash;
///     plain flyhash and wtahash have no bucket keys (candidates are scanned).
class Hasher {
 public:
  Hasher() = default;  ///< inert placeholder; use make()

  static Hasher make(Algorithm algo, std::uint32_t d, std::uint32_t m, std::uint32_t k,
                     double alpha, RngSeed seed, std::uint32_t simhash_tables = 1);

  /// SimHash with explicitly seeded tables (m bits each).
  static Hasher make_simhash_tables(std::uint32_t d, std::uint32_t m, std::uint32_t k,
                                    double alpha, RngSeed seed,
                                    const std::vector<RngSeed>& table_seeds);

  Algorithm algorithm() const { return algo_; }
  std::uint32_t input_dim() const { return d_; }
  std::uint32_t m() const { return m_; }
  std::uint32_t k() const { return k_; }
  double alpha() const { return alpha_; }
  RngSeed seed() const { return seed_; }

  /// Bit length of the ranking hash.
  std::size_t h1_bits() const;
  /// Number of bucket tables (0 for scan-only schemes: flyhash, wtahash).
  std::size_t table_count() const;
  /// Bit length of a bucket key (m), or 0 for scan-only schemes.
  std::size_t key_bits() const;

  BitHash h1(const Vector& x) const;
  std::vector<BinKey> bin_keys(const Vector& x) const;

  /// Scalar additions / multiplications needed to hash one vector, counted
  /// analytically from the parameters.
  double add_ops_per_hash() const;
  double mul_ops_per_hash() const;

  const SparseProjection& sparse_projection() const;

 private:
  Algorithm algo_ = Algorithm::densefly;
  std::uint32_t d_ = 0, m_ = 0, k_ = 0;
  double alpha_ = 0.0;
  RngSeed seed_;
  std::optional<SparseProjection> sparse_;
  std::vector<DenseProjection> dense_tables_;
  std::optional<PermutationSet> perms_;
};

}  // namespace flylsh
