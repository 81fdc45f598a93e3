#include "flylsh/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_set>

#include "flylsh/hashers.hpp"

namespace flylsh::eval {

namespace {

GroundTruth neighbors_impl(const Dataset& dataset, std::uint32_t query_id, std::size_t count) {
  const std::size_t n = dataset.size();
  if (n < 2) throw ParameterError("true_neighbors: need at least two items");
  if (query_id >= n) throw ParameterError("true_neighbors: query id out of range");
  if (count == 0 || count > n - 1) {
    throw ParameterError("true_neighbors: neighbor count out of range");
  }
  const Vector& q = dataset.items[query_id];
  std::vector<std::pair<double, std::uint32_t>> dist;
  dist.reserve(n - 1);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (i == query_id) continue;
    double sum = 0.0;
    const auto& v = dataset.items[i].values;
    for (std::size_t c = 0; c < q.dim(); ++c) {
      const double diff = v[c] - q.values[c];
      sum += diff * diff;
    }
    dist.emplace_back(sum, i);
  }
  std::nth_element(dist.begin(), dist.begin() + (count - 1), dist.end());
  std::sort(dist.begin(), dist.begin() + count);
  GroundTruth truth;
  truth.query_id = query_id;
  truth.neighbor_ids.reserve(count);
  truth.distances.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    truth.neighbor_ids.push_back(dist[i].second);
    truth.distances.push_back(std::sqrt(dist[i].first));
  }
  return truth;
}

}  // namespace

GroundTruth true_neighbors(const Dataset& dataset, std::uint32_t query_id, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw ParameterError("true_neighbors: fraction must lie in (0, 1]");
  }
  const auto count = static_cast<std::size_t>(
      std::ceil(fraction * static_cast<double>(dataset.size() - 1)));
  return neighbors_impl(dataset, query_id, count);
}

GroundTruth true_neighbors_topk(const Dataset& dataset, std::uint32_t query_id,
                                std::size_t count) {
  return neighbors_impl(dataset, query_id, count);
}

double average_precision(std::span<const std::uint32_t> ranked_pred, const GroundTruth& truth) {
  if (ranked_pred.empty()) throw ParameterError("average_precision: empty ranked list");
  if (truth.neighbor_ids.empty()) throw ParameterError("average_precision: empty truth");
  std::unordered_set<std::uint32_t> truth_set(truth.neighbor_ids.begin(),
                                              truth.neighbor_ids.end());
  std::size_t hits = 0;
  double sum_precision = 0.0;
  for (std::size_t rank = 0; rank < ranked_pred.size(); ++rank) {
    if (truth_set.count(ranked_pred[rank])) {
      ++hits;
      sum_precision += static_cast<double>(hits) / static_cast<double>(rank + 1);
    }
  }
  return sum_precision / static_cast<double>(truth.neighbor_ids.size());
}

double auprc(std::span<const std::uint32_t> ranked_pred, const GroundTruth& truth) {
  if (ranked_pred.empty()) throw ParameterError("auprc: empty ranked list");
  if (truth.neighbor_ids.empty()) throw ParameterError("auprc: empty truth");
  std::unordered_set<std::uint32_t> truth_set(truth.neighbor_ids.begin(),
                                              truth.neighbor_ids.end());
  const auto total = static_cast<double>(truth.neighbor_ids.size());
  std::size_t hits = 0;
  double area = 0.0;
  for (std::size_t rank = 0; rank < ranked_pred.size(); ++rank) {
    if (truth_set.count(ranked_pred[rank])) {
      ++hits;
      // recall step 1/total at precision hits/(rank+1)
      area += (static_cast<double>(hits) / static_cast<double>(rank + 1)) / total;
    }
  }
  const double recall_last = static_cast<double>(hits) / total;
  const double final_precision =
      static_cast<double>(hits) / static_cast<double>(ranked_pred.size());
  return area + (1.0 - recall_last) * final_precision;
}

double kendall_tau(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ParameterError("kendall_tau: length mismatch");
  if (a.size() < 2) throw ParameterError("kendall_tau: need at least two pairs");
  const std::size_t n = a.size();
  long long concordant = 0, discordant = 0, ties_a = 0, ties_b = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double da = a[i] - a[j];
      const double db = b[i] - b[j];
      if (da == 0.0 && db == 0.0) continue;  // joint tie: excluded from all counts
      if (da == 0.0) {
        ++ties_a;
      } else if (db == 0.0) {
        ++ties_b;
      } else if ((da > 0.0) == (db > 0.0)) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  const double denom_a = static_cast<double>(concordant + discordant + ties_a);
  const double denom_b = static_cast<double>(concordant + discordant + ties_b);
  if (denom_a == 0.0 || denom_b == 0.0) return 0.0;
  return static_cast<double>(concordant - discordant) / std::sqrt(denom_a * denom_b);
}

std::size_t pairwise_order_count(const BitHash& hash, OrderScheme scheme, std::size_t m,
                                 std::size_t k) {
  if (m == 0 || k == 0) throw ParameterError("pairwise_order_count: m and k must be positive");
  if (hash.size() != m * k) {
    throw StructuralError("pairwise_order_count: hash length is not m*k");
  }
  std::size_t count = 0;
  if (scheme == OrderScheme::wta) {
    for (std::size_t block = 0; block < m; ++block) {
      std::size_t winner = hash.size();
      std::size_t ones = 0;
      for (std::size_t j = block * k; j < (block + 1) * k; ++j) {
        if (hash.test(j)) {
          winner = j;
          ++ones;
        }
      }
      if (ones != 1) {
        throw StructuralError("pairwise_order_count: WTA block must contain exactly one 1");
      }
      for (std::size_t j = block * k; j < (block + 1) * k; ++j) {
        if (j != winner) ++count;  // winner >= loser within the block
      }
    }
  } else {
    if (hash.ones_count() != m) {
      throw StructuralError("pairwise_order_count: fly hash must contain exactly m ones");
    }
    // Global WTA: every winner index dominates every loser index.
    for (std::size_t winner = 0; winner < hash.size(); ++winner) {
      if (!hash.test(winner)) continue;
      for (std::size_t loser = 0; loser < hash.size(); ++loser) {
        if (!hash.test(loser)) ++count;
      }
    }
  }
  return count;
}

PerturbationReport lemma2_perturbation_check(const SparseProjection& projection, const Vector& x,
                                             const PerturbationParams& params) {
  if (params.norm_order < 1.0) throw ParameterError("perturbation: norm order must be >= 1");
  PerturbationReport report;
  const Activations base = activations(projection, x);
  const BitHash base_hash = flyhash(base, params.m);

  // beta: smallest winner activation minus largest loser activation.
  double min_winner = std::numeric_limits<double>::infinity();
  double max_loser = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < base.size(); ++j) {
    if (base_hash.test(j)) {
      min_winner = std::min(min_winner, base.values[j]);
    } else {
      max_loser = std::max(max_loser, base.values[j]);
    }
  }
  report.margin = base_hash.ones_count() == base.size() ? 0.0 : min_winner - max_loser;
  if (!(report.margin > 0.0)) {
    report.skipped = params.trials;
    return report;
  }

  const double p = params.norm_order;
  const double da = projection.alpha * static_cast<double>(projection.input_dim);
  report.bound = report.margin * std::pow(da, 1.0 / p) / (2.0 * da);
  report.epsilon = params.epsilon_scale * report.bound;

  const std::size_t d = x.dim();
  Vector perturbed;
  perturbed.values.resize(d);
  for (std::size_t trial = 0; trial < params.trials; ++trial) {
    Rng rng = Rng::stream(params.seed, StreamDomain::perturbation, trial);
    std::vector<double> delta(d);
    double norm = 0.0;
    for (double& v : delta) {
      v = rng.normal();
      norm += std::pow(std::abs(v), p);
    }
    norm = std::pow(norm, 1.0 / p);
    const double scale = report.epsilon / norm;
    for (std::size_t c = 0; c < d; ++c) perturbed.values[c] = x.values[c] + delta[c] * scale;
    ++report.trials;
    if (!(flyhash(activations(projection, perturbed), params.m) == base_hash)) {
      ++report.flips;
    }
  }
  return report;
}

}  // namespace flylsh::eval
