#include "flylsh/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "flylsh/eval.hpp"
#include "flylsh/index.hpp"
#include "flylsh/parallel.hpp"
#include "flylsh/version.hpp"

namespace flylsh::bench {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double sum = 0.0;
  for (double x : v) sum += (x - mean) * (x - mean);
  return std::sqrt(sum / static_cast<double>(v.size() - 1));
}

/// Full corpus ranking by (hamming to query hash, id), query excluded.
std::vector<std::uint32_t> rank_all(const std::vector<BitHash>& hashes, const BitHash& query_hash,
                                    std::uint32_t exclude_id) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> order;
  order.reserve(hashes.size());
  for (std::uint32_t i = 0; i < hashes.size(); ++i) {
    if (i == exclude_id) continue;
    order.emplace_back(static_cast<std::uint32_t>(hamming(query_hash, hashes[i])), i);
  }
  std::sort(order.begin(), order.end());
  std::vector<std::uint32_t> ids;
  ids.reserve(order.size());
  for (const auto& [dist, id] : order) ids.push_back(id);
  return ids;
}

std::vector<std::uint32_t> ranked_without_query(const ProbeResult& result,
                                                std::uint32_t query_id) {
  std::vector<std::uint32_t> ids;
  ids.reserve(result.ranked.size());
  for (const auto& [id, dist] : result.ranked) {
    if (id != query_id) ids.push_back(id);
  }
  return ids;
}

std::size_t default_queries(Scenario scenario) {
  return scenario == Scenario::kendall ? 100 : 500;
}

RngSeed algorithm_seed(std::uint64_t seed, Algorithm algo) {
  return RngSeed{mix64(seed ^ mix64(0xa160u + static_cast<std::uint64_t>(algo)))};
}

}  // namespace

std::string to_string(Scenario scenario) {
  switch (scenario) {
    case Scenario::auprc: return "auprc";
    case Scenario::query_time: return "query-time";
    case Scenario::map100: return "map100";
    case Scenario::kendall: return "kendall";
  }
  throw ConfigError("to_string: unknown scenario");
}

Scenario scenario_from_string(const std::string& name) {
  if (name == "auprc") return Scenario::auprc;
  if (name == "query-time" || name == "query_time") return Scenario::query_time;
  if (name == "map100") return Scenario::map100;
  if (name == "kendall") return Scenario::kendall;
  throw ConfigError("unknown scenario: " + name);
}

nlohmann::json config_to_json(const ExperimentConfig& config) {
  nlohmann::json dataset;
  dataset["name"] = config.dataset.name;
  dataset["source"] = config.dataset.source;
  dataset["format"] = data::to_string(config.dataset.format);
  if (config.dataset.limit) dataset["limit"] = *config.dataset.limit;
  if (config.dataset.shuffle_seed) dataset["shuffle_seed"] = *config.dataset.shuffle_seed;
  if (config.dataset.expected_dim) dataset["expected_dim"] = *config.dataset.expected_dim;
  dataset["center"] = config.dataset.center;
  dataset["center_mode"] = to_string(config.dataset.center_mode);
  dataset["n"] = config.dataset.random_n;
  dataset["d"] = config.dataset.random_d;
  dataset["data_seed"] = config.dataset.random_seed;

  nlohmann::json j;
  j["dataset"] = dataset;
  std::vector<std::string> algos;
  for (Algorithm a : config.algorithms) algos.push_back(flylsh::to_string(a));
  j["algorithms"] = algos;
  j["m"] = config.hash_lengths;
  j["k"] = config.k;
  j["alpha"] = config.alpha;
  j["queries"] = config.num_queries;
  j["seed"] = config.seed;
  j["scenario"] = to_string(config.scenario);
  j["equal_dim_simhash"] = config.equal_dim_simhash;
  j["truth_fraction"] = config.truth_fraction;
  j["map_target"] = config.map_target;
  j["threads"] = config.threads;
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base) {
  try {
    if (j.contains("dataset")) {
      const auto& d = j.at("dataset");
      auto& spec = base.dataset;
      if (d.contains("name")) spec.name = d.at("name").get<std::string>();
      if (d.contains("source")) spec.source = d.at("source").get<std::string>();
      if (d.contains("format")) {
        spec.format = data::format_from_string(d.at("format").get<std::string>());
      }
      if (d.contains("limit")) spec.limit = d.at("limit").get<std::size_t>();
      if (d.contains("shuffle_seed")) spec.shuffle_seed = d.at("shuffle_seed").get<std::uint64_t>();
      if (d.contains("expected_dim")) spec.expected_dim = d.at("expected_dim").get<std::size_t>();
      if (d.contains("center")) spec.center = d.at("center").get<bool>();
      if (d.contains("center_mode")) {
        spec.center_mode = center_mode_from_string(d.at("center_mode").get<std::string>());
      }
      if (d.contains("n")) spec.random_n = d.at("n").get<std::size_t>();
      if (d.contains("d")) spec.random_d = d.at("d").get<std::size_t>();
      if (d.contains("data_seed")) spec.random_seed = d.at("data_seed").get<std::uint64_t>();
    }
    if (j.contains("algorithms")) {
      base.algorithms.clear();
      for (const auto& name : j.at("algorithms")) {
        base.algorithms.push_back(algorithm_from_string(name.get<std::string>()));
      }
    }
    if (j.contains("m")) {
      base.hash_lengths.clear();
      if (j.at("m").is_array()) {
        for (const auto& v : j.at("m")) base.hash_lengths.push_back(v.get<std::uint32_t>());
      } else {
        base.hash_lengths.push_back(j.at("m").get<std::uint32_t>());
      }
    }
    if (j.contains("k")) base.k = j.at("k").get<std::uint32_t>();
    if (j.contains("alpha")) base.alpha = j.at("alpha").get<double>();
    if (j.contains("queries")) base.num_queries = j.at("queries").get<std::size_t>();
    if (j.contains("seed")) base.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("scenario")) {
      base.scenario = scenario_from_string(j.at("scenario").get<std::string>());
    }
    if (j.contains("equal_dim_simhash")) {
      base.equal_dim_simhash = j.at("equal_dim_simhash").get<bool>();
    }
    if (j.contains("truth_fraction")) base.truth_fraction = j.at("truth_fraction").get<double>();
    if (j.contains("map_target")) base.map_target = j.at("map_target").get<std::size_t>();
    if (j.contains("threads")) base.threads = j.at("threads").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return base;
}

void validate(const ExperimentConfig& config, const Dataset& dataset) {
  if (config.algorithms.empty()) throw ConfigError("config: no algorithms selected");
  if (config.hash_lengths.empty()) throw ConfigError("config: no hash lengths selected");
  if (config.k == 0) throw ConfigError("config: k must be positive");
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw ConfigError("config: alpha must lie in (0, 1)");
  }
  if (!(config.truth_fraction > 0.0 && config.truth_fraction <= 1.0)) {
    throw ConfigError("config: truth_fraction must lie in (0, 1]");
  }
  if (config.map_target == 0) throw ConfigError("config: map_target must be positive");
  if (dataset.size() < 2) throw ConfigError("config: dataset needs at least two items");
  const auto d = static_cast<std::uint32_t>(dataset.dim);
  for (Algorithm algo : config.algorithms) {
    if (algo == Algorithm::wtahash && config.k > d) {
      throw ConfigError("config: WTAHash requires k <= dataset dimension (k=" +
                        std::to_string(config.k) + ", d=" + std::to_string(d) + ")");
    }
    const bool fly = algo == Algorithm::flyhash || algo == Algorithm::flyhash_mp ||
                     algo == Algorithm::densefly;
    if (fly && std::floor(config.alpha * d) < 1.0) {
      throw ConfigError("config: floor(alpha*d) must be at least 1");
    }
  }
}

double flyhash_add_ops(std::uint32_t d, std::uint32_t m, std::uint32_t k, double alpha) {
  return std::floor(alpha * d) * static_cast<double>(m) * static_cast<double>(k);
}

double simhash_total_ops(std::uint32_t d, std::uint32_t m) {
  return 2.0 * static_cast<double>(d) * static_cast<double>(m);
}

namespace {

struct QueryContext {
  const Dataset& dataset;
  const std::vector<std::uint32_t>& query_ids;
  const std::vector<eval::GroundTruth>& truths;
  std::size_t threads;
};

EvalRow ranking_cell(const ExperimentConfig& config, const QueryContext& ctx, Algorithm algo,
                     std::uint32_t m) {
  const auto d = static_cast<std::uint32_t>(ctx.dataset.dim);
  const std::uint32_t tables =
      algo == Algorithm::simhash ? (config.equal_dim_simhash ? config.k : 1) : 1;
  const Hasher hasher = Hasher::make(algo, d, m, config.k, config.alpha,
                                     algorithm_seed(config.seed, algo), tables);

  const std::size_t n = ctx.dataset.size();
  std::vector<BitHash> hashes(n);
  const auto index_start = Clock::now();
  parallel_for(n, ctx.threads, [&](std::size_t i) { hashes[i] = hasher.h1(ctx.dataset.items[i]); });
  const double indexing_seconds = seconds_since(index_start);

  const std::size_t nq = ctx.query_ids.size();
  std::vector<double> ap(nq), au(nq), tau(nq), qt(nq);
  parallel_for(nq, ctx.threads, [&](std::size_t qi) {
    const std::uint32_t qid = ctx.query_ids[qi];
    const auto start = Clock::now();
    const BitHash query_hash = hasher.h1(ctx.dataset.items[qid]);
    if (config.scenario == Scenario::kendall) {
      const auto& truth = ctx.truths[qi];
      std::vector<double> hams;
      hams.reserve(truth.neighbor_ids.size());
      for (std::uint32_t id : truth.neighbor_ids) {
        hams.push_back(static_cast<double>(hamming(query_hash, hashes[id])));
      }
      tau[qi] = eval::kendall_tau(truth.distances, hams);
    } else {
      const auto ranked = rank_all(hashes, query_hash, qid);
      ap[qi] = eval::average_precision(ranked, ctx.truths[qi]);
      au[qi] = eval::auprc(ranked, ctx.truths[qi]);
    }
    qt[qi] = seconds_since(start);
  });

  EvalRow row;
  row.dataset = ctx.dataset.name;
  row.algorithm = flylsh::to_string(algo);
  row.m = m;
  row.k = config.k;
  if (config.scenario == Scenario::kendall) {
    const double tmean = mean_of(tau);
    row.kendall_tau_mean = tmean;
    row.kendall_tau_std = sample_std(tau, tmean);
  } else {
    const double apm = mean_of(ap), aum = mean_of(au);
    row.map_mean = apm;
    row.map_std = sample_std(ap, apm);
    row.auprc_mean = aum;
    row.auprc_std = sample_std(au, aum);
  }
  row.query_time_s = mean_of(qt);
  row.indexing_time_s = indexing_seconds;
  row.hash_bytes = n * ((hasher.h1_bits() + 7) / 8);
  row.memory_bytes = row.hash_bytes;
  row.h1_bits = hasher.h1_bits();
  row.num_queries = nq;
  row.seed = config.seed;
  return row;
}

EvalRow map100_cell(const ExperimentConfig& config, const QueryContext& ctx, Algorithm algo,
                    std::uint32_t m) {
  IndexConfig index_config{algo, m, config.k, config.alpha, algorithm_seed(config.seed, algo),
                           ctx.threads};
  const HashIndex index = HashIndex::build(ctx.dataset, index_config);

  const std::size_t nq = ctx.query_ids.size();
  std::vector<double> ap(nq), qt(nq);
  parallel_for(nq, ctx.threads, [&](std::size_t qi) {
    const std::uint32_t qid = ctx.query_ids[qi];
    const ProbeResult result =
        index.query_at_least(ctx.dataset.items[qid], config.map_target);
    const auto ranked = ranked_without_query(result, qid);
    ap[qi] = ranked.empty() ? 0.0 : eval::average_precision(ranked, ctx.truths[qi]);
    qt[qi] = result.query_seconds;
  });

  EvalRow row;
  row.dataset = ctx.dataset.name;
  row.algorithm = flylsh::to_string(algo);
  row.m = m;
  row.k = config.k;
  row.map_at_100 = mean_of(ap);
  row.query_time_s = mean_of(qt);
  row.indexing_time_s = index.stats().build_seconds;
  row.hash_bytes = index.stats().hash_bytes;
  row.bin_bytes = index.stats().bin_bytes;
  row.memory_bytes = index.stats().total_bytes();
  row.h1_bits = index.hasher().h1_bits();
  row.num_queries = nq;
  row.seed = config.seed;
  return row;
}

EvalRow query_time_cell(const ExperimentConfig& config, const QueryContext& ctx, Algorithm algo,
                        std::uint32_t m, std::vector<PlotPoint>& plot) {
  IndexConfig index_config{algo, m, config.k, config.alpha, algorithm_seed(config.seed, algo),
                           ctx.threads};
  const HashIndex index = HashIndex::build(ctx.dataset, index_config);

  const std::size_t nq = ctx.query_ids.size();
  const std::uint32_t max_radius = index.table_count() == 0 ? 0 : m;
  double last_map = 0.0, last_qt = 0.0;
  std::uint32_t last_radius = 0;
  for (std::uint32_t radius = 0; radius <= max_radius; ++radius) {
    std::vector<double> ap(nq), qt(nq), cand(nq);
    parallel_for(nq, ctx.threads, [&](std::size_t qi) {
      const std::uint32_t qid = ctx.query_ids[qi];
      const ProbeResult result = index.query_ranked(ctx.dataset.items[qid], radius);
      const auto ranked = ranked_without_query(result, qid);
      ap[qi] = ranked.empty() ? 0.0 : eval::average_precision(ranked, ctx.truths[qi]);
      qt[qi] = result.query_seconds;
      cand[qi] = static_cast<double>(result.candidate_ids.size());
    });
    PlotPoint point;
    point.dataset = ctx.dataset.name;
    point.algorithm = flylsh::to_string(algo);
    point.m = m;
    point.k = config.k;
    point.radius = radius;
    point.map = mean_of(ap);
    point.query_time_s = mean_of(qt);
    point.mean_candidates = mean_of(cand);
    plot.push_back(point);
    last_map = point.map;
    last_qt = point.query_time_s;
    last_radius = radius;
    // Once every query already reaches the whole corpus, larger radii repeat it.
    if (point.mean_candidates >= static_cast<double>(ctx.dataset.size())) break;
  }
  (void)last_radius;

  EvalRow row;
  row.dataset = ctx.dataset.name;
  row.algorithm = flylsh::to_string(algo);
  row.m = m;
  row.k = config.k;
  row.map_mean = last_map;
  row.query_time_s = last_qt;
  row.indexing_time_s = index.stats().build_seconds;
  row.hash_bytes = index.stats().hash_bytes;
  row.bin_bytes = index.stats().bin_bytes;
  row.memory_bytes = index.stats().total_bytes();
  row.h1_bits = index.hasher().h1_bits();
  row.num_queries = nq;
  row.seed = config.seed;
  return row;
}

}  // namespace

EvalReport run(const ExperimentConfig& config) {
  const Dataset dataset = data::load(config.dataset);
  validate(config, dataset);

  const std::size_t n = dataset.size();
  std::size_t nq = config.num_queries == 0 ? default_queries(config.scenario) : config.num_queries;
  nq = std::min(nq, n);

  Rng sampler = Rng::stream(RngSeed{config.seed}, StreamDomain::query_sample);
  const std::vector<std::uint32_t> query_ids = sampler.sample_without_replacement(n, nq);

  std::vector<eval::GroundTruth> truths(nq);
  parallel_for(nq, config.threads, [&](std::size_t qi) {
    if (config.scenario == Scenario::map100) {
      truths[qi] = eval::true_neighbors_topk(dataset, query_ids[qi], config.map_target);
    } else {
      truths[qi] = eval::true_neighbors(dataset, query_ids[qi], config.truth_fraction);
    }
  });

  const QueryContext ctx{dataset, query_ids, truths, config.threads};
  EvalReport report;
  report.library_version = kVersion;
  report.scenario = to_string(config.scenario);
  report.center_mode = to_string(dataset.center_mode);
  report.config = config_to_json(config);
  for (Algorithm algo : config.algorithms) {
    for (std::uint32_t m : config.hash_lengths) {
      switch (config.scenario) {
        case Scenario::auprc:
        case Scenario::kendall:
          report.rows.push_back(ranking_cell(config, ctx, algo, m));
          break;
        case Scenario::map100:
          report.rows.push_back(map100_cell(config, ctx, algo, m));
          break;
        case Scenario::query_time:
          report.rows.push_back(query_time_cell(config, ctx, algo, m, report.plot));
          break;
      }
    }
  }
  return report;
}

}  // namespace flylsh::bench
