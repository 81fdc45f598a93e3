#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "flylsh/errors.hpp"

namespace flylsh {

/// Real-valued input point.
struct Vector {
  std::vector<double> values;

  std::size_t dim() const { return values.size(); }
};

enum class CenterMode {
  per_vector,  ///< subtract each vector's own component mean (default)
  dataset,     ///< subtract the per-dimension mean over the whole dataset
};

std::string to_string(CenterMode mode);
CenterMode center_mode_from_string(const std::string& s);

/// Corpus of n same-dimension vectors; item ids are the positions 0..n-1.
struct Dataset {
  std::string name;
  std::size_t dim = 0;
  std::vector<Vector> items;
  bool centered = false;
  CenterMode center_mode = CenterMode::per_vector;

  std::size_t size() const { return items.size(); }
};

/// x - mean(x), componentwise. Throws DimensionError on an empty vector.
Vector center(const Vector& x);

/// Centers every item according to `mode` and marks the dataset centered.
void center_dataset(Dataset& dataset, CenterMode mode);

/// True when the components sum to zero within 1e-6 * dim.
bool is_zero_sum(const Vector& x);

/// Throws FormatError if any component is NaN or infinite.
void validate_finite(const Vector& x, const std::string& context);

}  // namespace flylsh
