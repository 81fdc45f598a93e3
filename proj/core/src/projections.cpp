#include "flylsh/projections.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace flylsh {

namespace {

void check_common(std::uint32_t d, std::uint32_t m, std::uint32_t k) {
  if (d == 0) throw ParameterError("projection: input dimension must be positive");
  if (m == 0 || k == 0) throw ParameterError("projection: m and k must be positive");
}

}  // namespace

std::string to_string(SparseMode mode) {
  return mode == SparseMode::fixed_count ? "fixed-count" : "bernoulli";
}

SparseProjection SparseProjection::from_rows(std::uint32_t d,
                                             const std::vector<std::vector<std::uint32_t>>& rows,
                                             double alpha) {
  SparseProjection p;
  p.input_dim = d;
  p.row_count = static_cast<std::uint32_t>(rows.size());
  p.alpha = alpha;
  p.offsets.reserve(rows.size() + 1);
  p.offsets.push_back(0);
  for (const auto& r : rows) {
    std::vector<std::uint32_t> sorted = r;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ParameterError("SparseProjection: duplicate index within a row");
    }
    for (std::uint32_t i : sorted) {
      if (i >= d) throw ParameterError("SparseProjection: index out of range");
      p.indices.push_back(i);
    }
    p.offsets.push_back(static_cast<std::uint32_t>(p.indices.size()));
  }
  return p;
}

DenseProjection DenseProjection::from_rows(std::uint32_t d,
                                           const std::vector<std::vector<double>>& rows) {
  DenseProjection p;
  p.input_dim = d;
  p.row_count = static_cast<std::uint32_t>(rows.size());
  p.weights.reserve(static_cast<std::size_t>(d) * rows.size());
  for (const auto& r : rows) {
    if (r.size() != d) throw ParameterError("DenseProjection: row dimension mismatch");
    p.weights.insert(p.weights.end(), r.begin(), r.end());
  }
  return p;
}

PermutationSet PermutationSet::from_perms(std::uint32_t d, std::uint32_t k,
                                          const std::vector<std::vector<std::uint32_t>>& perms) {
  if (k > d) throw ParameterError("PermutationSet: k exceeds input dimension");
  PermutationSet s;
  s.input_dim = d;
  s.m = static_cast<std::uint32_t>(perms.size());
  s.k = k;
  for (const auto& perm : perms) {
    if (perm.size() != d) throw ParameterError("PermutationSet: wrong permutation length");
    std::vector<bool> seen(d, false);
    for (std::uint32_t v : perm) {
      if (v >= d || seen[v]) throw ParameterError("PermutationSet: not a bijection");
      seen[v] = true;
    }
    s.perms.insert(s.perms.end(), perm.begin(), perm.end());
  }
  return s;
}

SparseProjection make_sparse_projection(std::uint32_t d, std::uint32_t m, std::uint32_t k,
                                        double alpha, SparseMode mode, RngSeed seed) {
  check_common(d, m, k);
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ParameterError("make_sparse_projection: alpha must lie in (0, 1)");
  }
  const auto per_row = static_cast<std::uint32_t>(std::floor(alpha * d));
  if (per_row == 0) {
    throw ParameterError("make_sparse_projection: floor(alpha * d) must be at least 1");
  }
  SparseProjection p;
  p.input_dim = d;
  p.row_count = m * k;
  p.alpha = alpha;
  p.mode = mode;
  p.seed = seed;
  p.offsets.reserve(p.row_count + 1);
  p.offsets.push_back(0);
  if (mode == SparseMode::fixed_count) {
    p.indices.reserve(static_cast<std::size_t>(p.row_count) * per_row);
  }
  for (std::uint32_t j = 0; j < p.row_count; ++j) {
    Rng rng = Rng::stream(seed, StreamDomain::sparse_row, j);
    if (mode == SparseMode::fixed_count) {
      auto row = rng.sample_without_replacement(d, per_row);
      p.indices.insert(p.indices.end(), row.begin(), row.end());
    } else {
      for (std::uint32_t i = 0; i < d; ++i) {
        if (rng.uniform01() < alpha) p.indices.push_back(i);
      }
    }
    p.offsets.push_back(static_cast<std::uint32_t>(p.indices.size()));
  }
  return p;
}

DenseProjection make_dense_projection(std::uint32_t d, std::uint32_t rows, RngSeed seed) {
  if (d == 0 || rows == 0) throw ParameterError("make_dense_projection: d and rows must be positive");
  DenseProjection p;
  p.input_dim = d;
  p.row_count = rows;
  p.seed = seed;
  p.weights.resize(static_cast<std::size_t>(d) * rows);
  for (std::uint32_t j = 0; j < rows; ++j) {
    Rng rng = Rng::stream(seed, StreamDomain::dense_row, j);
    double* w = p.weights.data() + static_cast<std::size_t>(j) * d;
    for (std::uint32_t i = 0; i < d; ++i) w[i] = rng.normal();
  }
  return p;
}

PermutationSet make_permutations(std::uint32_t d, std::uint32_t m, std::uint32_t k, RngSeed seed) {
  check_common(d, m, k);
  if (k > d) throw ParameterError("make_permutations: k exceeds input dimension");
  PermutationSet s;
  s.input_dim = d;
  s.m = m;
  s.k = k;
  s.seed = seed;
  s.perms.resize(static_cast<std::size_t>(m) * d);
  for (std::uint32_t i = 0; i < m; ++i) {
    std::vector<std::uint32_t> perm(d);
    std::iota(perm.begin(), perm.end(), 0u);
    Rng rng = Rng::stream(seed, StreamDomain::permutation, i);
    rng.shuffle(perm);
    std::copy(perm.begin(), perm.end(), s.perms.begin() + static_cast<std::size_t>(i) * d);
  }
  return s;
}

}  // namespace flylsh
