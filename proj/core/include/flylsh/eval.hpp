#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "flylsh/bitvec.hpp"
#include "flylsh/projections.hpp"
#include "flylsh/types.hpp"

namespace flylsh::eval {

/// Exact nearest neighbors of one query by Euclidean distance, query
/// excluded, ties broken by ascending id.
struct GroundTruth {
  std::uint32_t query_id = 0;
  std::vector<std::uint32_t> neighbor_ids;  // ascending by (distance, id)
  std::vector<double> distances;            // non-decreasing, matching ids
};

/// Top ceil(fraction * (n-1)) true neighbors by brute-force scan.
GroundTruth true_neighbors(const Dataset& dataset, std::uint32_t query_id,
                           double fraction = 0.02);

/// Exactly `count` true neighbors (mAP@K mode).
GroundTruth true_neighbors_topk(const Dataset& dataset, std::uint32_t query_id,
                                std::size_t count);

/// Standard IR average precision: mean over truth items found in the ranked
/// list of the precision at their ranks; absent truth items contribute zero
/// through the |truth| denominator.
double average_precision(std::span<const std::uint32_t> ranked_pred, const GroundTruth& truth);

/// Area under the stepwise precision-recall curve swept through ranked_pred.
/// Equals average precision over the retrieved prefix; truth items never
/// retrieved close the curve at the final precision.
double auprc(std::span<const std::uint32_t> ranked_pred, const GroundTruth& truth);

/// Kendall tau-b (tie-corrected) between two paired value lists. Returns 0
/// when either list is fully tied (the correlation is undefined there).
double kendall_tau(std::span<const double> a, std::span<const double> b);

enum class OrderScheme { wta, fly };

/// Counts the (winner, loser) activation inequalities a hash encodes, by
/// explicit enumeration: per-block winners against in-block losers for WTA,
/// global winners against all losers for the fly scheme. Validates the
/// scheme's structural invariant first.
std::size_t pairwise_order_count(const BitHash& hash, OrderScheme scheme, std::size_t m,
                                 std::size_t k);

struct PerturbationParams {
  std::size_t m = 16;           ///< winners kept by flyhash
  double norm_order = 2.0;      ///< p of the l_p perturbation norm
  std::size_t trials = 200;
  double epsilon_scale = 0.5;   ///< multiple of the margin bound; < 1 must never flip
  RngSeed seed;
};

struct PerturbationReport {
  std::size_t trials = 0;
  std::size_t flips = 0;
  std::size_t skipped = 0;   ///< trials skipped because the margin was zero
  double margin = 0.0;       ///< beta: smallest winner minus largest loser activation
  double epsilon = 0.0;      ///< perturbation norm used
  double bound = 0.0;        ///< margin * (alpha d)^(1/p) / (2 alpha d)

  double flip_rate() const { return trials == 0 ? 0.0 : static_cast<double>(flips) / trials; }
};

/// Rank-stability check: perturbs x by random directions of l_p norm
/// epsilon_scale * bound and reports how often the flyhash changes. Below
/// the bound the hash provably cannot change.
PerturbationReport lemma2_perturbation_check(const SparseProjection& projection, const Vector& x,
                                             const PerturbationParams& params);

}  // namespace flylsh::eval
