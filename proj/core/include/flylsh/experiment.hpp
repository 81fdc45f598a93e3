#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flylsh/data.hpp"
#include "flylsh/report.hpp"
#include "flylsh/scheme.hpp"

namespace flylsh::bench {

enum class Scenario { auprc, query_time, map100, kendall };

std::string to_string(Scenario scenario);
Scenario scenario_from_string(const std::string& name);

/// A full benchmark run: dataset, algorithm set, hash-length sweep and the
/// fair-comparison parameters. Hash dimensions are resolved per algorithm:
/// budget-equated SimHash hashes to m bits, the fly schemes and WTAHash to
/// mk bits; `equal_dim_simhash` switches SimHash to mk bits instead (the
/// equal-dimension comparison).
struct ExperimentConfig {
  data::DatasetSpec dataset;
  std::vector<Algorithm> algorithms = {Algorithm::densefly, Algorithm::flyhash,
                                       Algorithm::simhash, Algorithm::wtahash};
  std::vector<std::uint32_t> hash_lengths = {16, 32, 64, 128};
  std::uint32_t k = 20;
  double alpha = 0.1;
  std::size_t num_queries = 0;  ///< 0: scenario default (500; 100 for kendall)
  std::uint64_t seed = 1;
  Scenario scenario = Scenario::auprc;
  bool equal_dim_simhash = false;
  double truth_fraction = 0.02;
  std::size_t map_target = 100;
  std::size_t threads = 0;
};

nlohmann::json config_to_json(const ExperimentConfig& config);
/// Reads a config from JSON; keys present in `j` override `base`.
ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base = {});

/// Validates the configuration against a loaded dataset; throws ConfigError
/// before any hashing work happens.
void validate(const ExperimentConfig& config, const Dataset& dataset);

/// Runs the configured scenario and returns the populated report.
EvalReport run(const ExperimentConfig& config);

/// Scalar-operation accounting used by the cost-equivalence comparison:
/// additions for one fly-scheme hash and multiply+add operations for one
/// budget-equated SimHash hash.
double flyhash_add_ops(std::uint32_t d, std::uint32_t m, std::uint32_t k, double alpha);
double simhash_total_ops(std::uint32_t d, std::uint32_t m);

}  // namespace flylsh::bench
