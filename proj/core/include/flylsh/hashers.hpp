#pragma once

#include <cstddef>
#include <vector>

#include "flylsh/bitvec.hpp"
#include "flylsh/projections.hpp"
#include "flylsh/types.hpp"

namespace flylsh {

enum class ActivationSource { sparse, dense };

/// Kenyon-cell activations a(x): one real value per projection row.
struct Activations {
  std::vector<double> values;
  ActivationSource source = ActivationSource::sparse;

  std::size_t size() const { return values.size(); }
};

/// a(x)_j = sum of x over row j's indices, accumulated in ascending index
/// order so equal inputs give bit-identical activations.
Activations activations(const SparseProjection& projection, const Vector& x);

/// Global winner-take-all: exactly m ones at the m largest activations.
/// Ties at the cutoff go to the lowest index.
BitHash flyhash(const Activations& a, std::size_t m);

/// Sign threshold: bit j is 1 iff a_j >= 0. The ones count is unconstrained.
BitHash densefly(const Activations& a);

/// Random hyperplane bits: bit i is 1 iff row_i . x >= 0.
BitHash simhash(const DenseProjection& projection, const Vector& x);

/// m blocks of length k; block i has a single 1 at the argmax of the first k
/// components of permutation i applied to x (ties to the lowest position).
BitHash wtahash(const PermutationSet& perms, const Vector& x);

/// m-bit bucket key: bit j is 1 iff the sum of activation block j is
/// strictly positive. Requires a.size() == m * k.
BinKey pseudo_hash(const Activations& a, std::size_t m, std::size_t k);

}  // namespace flylsh
