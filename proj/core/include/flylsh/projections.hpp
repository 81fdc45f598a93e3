#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "flylsh/rng.hpp"

namespace flylsh {

enum class SparseMode {
  fixed_count,  ///< every row has exactly floor(alpha*d) distinct indices
  bernoulli,    ///< each (row, index) membership is an independent alpha-trial
};

std::string to_string(SparseMode mode);

/// Sparse binary projection: row j holds the sorted input indices summed by
/// output dimension j. This is the fly-style expansion matrix.
struct SparseProjection {
  std::uint32_t input_dim = 0;
  std::uint32_t row_count = 0;
  double alpha = 0.0;
  SparseMode mode = SparseMode::fixed_count;
  RngSeed seed;
  std::vector<std::uint32_t> offsets;  // row_count + 1
  std::vector<std::uint32_t> indices;  // ascending within each row

  std::span<const std::uint32_t> row(std::size_t j) const {
    return {indices.data() + offsets[j], indices.data() + offsets[j + 1]};
  }

  /// Builds a projection from explicit rows; validates ranges and uniqueness.
  static SparseProjection from_rows(std::uint32_t d,
                                    const std::vector<std::vector<std::uint32_t>>& rows,
                                    double alpha = 0.0);
};

/// Dense Gaussian projection (SimHash); row-major weights.
struct DenseProjection {
  std::uint32_t input_dim = 0;
  std::uint32_t row_count = 0;
  RngSeed seed;
  std::vector<double> weights;

  std::span<const double> row(std::size_t j) const {
    return {weights.data() + static_cast<std::size_t>(j) * input_dim, input_dim};
  }

  static DenseProjection from_rows(std::uint32_t d, const std::vector<std::vector<double>>& rows);
};

/// m permutations of 0..d-1 with a WTA window of k.
struct PermutationSet {
  std::uint32_t input_dim = 0;
  std::uint32_t m = 0;
  std::uint32_t k = 0;
  RngSeed seed;
  std::vector<std::uint32_t> perms;  // m * input_dim

  std::span<const std::uint32_t> perm(std::size_t i) const {
    return {perms.data() + static_cast<std::size_t>(i) * input_dim, input_dim};
  }

  static PermutationSet from_perms(std::uint32_t d, std::uint32_t k,
                                   const std::vector<std::vector<std::uint32_t>>& perms);
};

/// mk rows, each sampling floor(alpha*d) of d input indices (fixed_count) or
/// Bernoulli(alpha) memberships. Row j is generated from its own stream, so
/// it does not depend on generation order.
SparseProjection make_sparse_projection(std::uint32_t d, std::uint32_t m, std::uint32_t k,
                                        double alpha, SparseMode mode, RngSeed seed);

/// `rows` Gaussian N(0,1) rows of dimension d.
DenseProjection make_dense_projection(std::uint32_t d, std::uint32_t rows, RngSeed seed);

/// m seeded permutations of 0..d-1; requires k <= d.
PermutationSet make_permutations(std::uint32_t d, std::uint32_t m, std::uint32_t k, RngSeed seed);

}  // namespace flylsh
