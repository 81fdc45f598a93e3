#include "flylsh/types.hpp"

#include <cmath>

namespace flylsh {

std::string to_string(CenterMode mode) {
  return mode == CenterMode::per_vector ? "per-vector" : "dataset";
}

CenterMode center_mode_from_string(const std::string& s) {
  if (s == "per-vector") return CenterMode::per_vector;
  if (s == "dataset") return CenterMode::dataset;
  throw ConfigError("unknown center mode: " + s);
}

Vector center(const Vector& x) {
  if (x.dim() == 0) throw DimensionError("center: empty vector");
  double sum = 0.0;
  for (double v : x.values) sum += v;
  const double mean = sum / static_cast<double>(x.dim());
  Vector out;
  out.values.reserve(x.dim());
  for (double v : x.values) out.values.push_back(v - mean);
  return out;
}

void center_dataset(Dataset& dataset, CenterMode mode) {
  if (mode == CenterMode::per_vector) {
    for (auto& item : dataset.items) item = center(item);
  } else {
    if (dataset.items.empty()) throw ParameterError("center_dataset: empty dataset");
    std::vector<double> mean(dataset.dim, 0.0);
    for (const auto& item : dataset.items) {
      for (std::size_t i = 0; i < dataset.dim; ++i) mean[i] += item.values[i];
    }
    for (double& v : mean) v /= static_cast<double>(dataset.size());
    for (auto& item : dataset.items) {
      for (std::size_t i = 0; i < dataset.dim; ++i) item.values[i] -= mean[i];
    }
  }
  dataset.centered = true;
  dataset.center_mode = mode;
}

bool is_zero_sum(const Vector& x) {
  double sum = 0.0;
  for (double v : x.values) sum += v;
  return std::abs(sum) <= 1e-6 * static_cast<double>(x.dim());
}

void validate_finite(const Vector& x, const std::string& context) {
  for (double v : x.values) {
    if (!std::isfinite(v)) {
      throw FormatError(context + ": non-finite component");
    }
  }
}

}  // namespace flylsh
