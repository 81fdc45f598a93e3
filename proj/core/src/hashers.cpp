#include "flylsh/hashers.hpp"

#include <algorithm>
#include <numeric>

namespace flylsh {

Activations activations(const SparseProjection& projection, const Vector& x) {
  if (x.dim() != projection.input_dim) {
    throw DimensionError("activations: vector dimension " + std::to_string(x.dim()) +
                         " does not match projection dimension " +
                         std::to_string(projection.input_dim));
  }
  Activations a;
  a.source = ActivationSource::sparse;
  a.values.resize(projection.row_count);
  for (std::uint32_t j = 0; j < projection.row_count; ++j) {
    double sum = 0.0;
    for (std::uint32_t i : projection.row(j)) sum += x.values[i];
    a.values[j] = sum;
  }
  return a;
}

BitHash flyhash(const Activations& a, std::size_t m) {
  const std::size_t n = a.size();
  if (m == 0) throw ParameterError("flyhash: m must be positive");
  if (m > n) {
    throw ParameterError("flyhash: m (" + std::to_string(m) +
                         ") exceeds activation length (" + std::to_string(n) + ")");
  }
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  const auto larger = [&](std::uint32_t lhs, std::uint32_t rhs) {
    if (a.values[lhs] != a.values[rhs]) return a.values[lhs] > a.values[rhs];
    return lhs < rhs;
  };
  if (m < n) {
    std::nth_element(order.begin(), order.begin() + (m - 1), order.end(), larger);
  }
  BitHash h(n);
  for (std::size_t i = 0; i < m; ++i) h.set(order[i]);
  return h;
}

BitHash densefly(const Activations& a) {
  if (a.size() == 0) throw ParameterError("densefly: empty activations");
  BitHash h(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a.values[j] >= 0.0) h.set(j);
  }
  return h;
}

BitHash simhash(const DenseProjection& projection, const Vector& x) {
  if (x.dim() != projection.input_dim) {
    throw DimensionError("simhash: vector dimension " + std::to_string(x.dim()) +
                         " does not match projection dimension " +
                         std::to_string(projection.input_dim));
  }
  BitHash h(projection.row_count);
  for (std::uint32_t i = 0; i < projection.row_count; ++i) {
    const auto row = projection.row(i);
    double dot = 0.0;
    for (std::uint32_t c = 0; c < projection.input_dim; ++c) dot += row[c] * x.values[c];
    if (dot >= 0.0) h.set(i);
  }
  return h;
}

BitHash wtahash(const PermutationSet& perms, const Vector& x) {
  if (x.dim() != perms.input_dim) {
    throw DimensionError("wtahash: vector dimension " + std::to_string(x.dim()) +
                         " does not match permutation dimension " +
                         std::to_string(perms.input_dim));
  }
  BitHash h(static_cast<std::size_t>(perms.m) * perms.k);
  for (std::uint32_t i = 0; i < perms.m; ++i) {
    const auto perm = perms.perm(i);
    std::uint32_t best = 0;
    double best_value = x.values[perm[0]];
    for (std::uint32_t j = 1; j < perms.k; ++j) {
      const double v = x.values[perm[j]];
      if (v > best_value) {
        best_value = v;
        best = j;
      }
    }
    h.set(static_cast<std::size_t>(i) * perms.k + best);
  }
  return h;
}

BinKey pseudo_hash(const Activations& a, std::size_t m, std::size_t k) {
  if (m == 0 || k == 0) throw ParameterError("pseudo_hash: m and k must be positive");
  if (a.size() != m * k) {
    throw ParameterError("pseudo_hash: activation length " + std::to_string(a.size()) +
                         " is not m*k = " + std::to_string(m * k));
  }
  BinKey key(m);
  for (std::size_t j = 0; j < m; ++j) {
    double sum = 0.0;
    for (std::size_t u = j * k; u < (j + 1) * k; ++u) sum += a.values[u];
    if (sum > 0.0) key.set(j);
  }
  return key;
}

}  // namespace flylsh
