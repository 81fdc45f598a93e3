// flylsh command-line benchmark harness.
//
// Subcommands:
//   bench     run an evaluation scenario and write CSV/JSON reports
//   index     build a hash index and save its snapshot
//   query     load a snapshot and run ranked queries against it
//   gen-data  write a synthetic U(0,1) dataset as fvecs
//   report    pretty-print a JSON report (optionally re-emit CSV)
//
// Exit codes: 0 success, 1 configuration error, 2 data/format error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "flylsh/experiment.hpp"
#include "flylsh/index.hpp"
#include "flylsh/version.hpp"

namespace {

using namespace flylsh;

struct DatasetFlags {
  std::string name;
  std::string source;
  std::string format = "random";
  std::string center_mode = "per-vector";
  bool no_center = false;
  std::size_t limit = 0;
  std::uint64_t shuffle_seed = 0;
  bool has_shuffle = false;
  std::size_t expected_dim = 0;
  std::size_t n = 10000;
  std::size_t d = 128;
  std::uint64_t data_seed = 1;
};

void add_dataset_flags(CLI::App* cmd, DatasetFlags& flags) {
  cmd->add_option("--dataset", flags.source, "Dataset file path (omit for --format random)");
  cmd->add_option("--format", flags.format, "Dataset format: fvecs|idx|text|csv|random")
      ->check(CLI::IsMember({"fvecs", "idx", "text", "csv", "random"}));
  cmd->add_option("--name", flags.name, "Dataset label used in reports");
  cmd->add_option("--limit", flags.limit, "Keep only the first N records");
  cmd->add_option("--shuffle-seed", flags.shuffle_seed,
                  "Shuffle records with this seed before truncation")
      ->each([&](const std::string&) { flags.has_shuffle = true; });
  cmd->add_option("--expected-dim", flags.expected_dim, "Fail unless the dimension matches");
  cmd->add_option("--center-mode", flags.center_mode, "per-vector|dataset")
      ->check(CLI::IsMember({"per-vector", "dataset"}));
  cmd->add_flag("--no-center", flags.no_center, "Skip mean-centering");
  cmd->add_option("--n", flags.n, "Synthetic dataset size (format random)");
  cmd->add_option("--d", flags.d, "Synthetic dataset dimension (format random)");
  cmd->add_option("--data-seed", flags.data_seed, "Synthetic dataset seed (format random)");
}

data::DatasetSpec to_spec(const DatasetFlags& flags) {
  data::DatasetSpec spec;
  spec.name = flags.name;
  spec.source = flags.source;
  spec.format = data::format_from_string(flags.format);
  if (flags.limit > 0) spec.limit = flags.limit;
  if (flags.has_shuffle) spec.shuffle_seed = flags.shuffle_seed;
  if (flags.expected_dim > 0) spec.expected_dim = flags.expected_dim;
  spec.center = !flags.no_center;
  spec.center_mode = center_mode_from_string(flags.center_mode);
  spec.random_n = flags.n;
  spec.random_d = flags.d;
  spec.random_seed = flags.data_seed;
  if (spec.format != data::Format::random && spec.source.empty()) {
    throw ConfigError("--dataset is required for format " + flags.format);
  }
  return spec;
}

std::string strip_extension(std::string path) {
  for (const char* ext : {".csv", ".json"}) {
    const std::string e(ext);
    if (path.size() > e.size() && path.substr(path.size() - e.size()) == e) {
      return path.substr(0, path.size() - e.size());
    }
  }
  return path;
}

int run_bench(const DatasetFlags& dataset_flags, const std::vector<std::string>& algos,
              const std::vector<std::uint32_t>& ms, std::uint32_t k, double alpha,
              std::size_t queries, std::uint64_t seed, const std::string& scenario,
              bool equal_dim, std::size_t threads, const std::string& config_path,
              const std::string& out, bool emit_plot_data) {
  bench::ExperimentConfig config;
  config.dataset = to_spec(dataset_flags);
  if (!algos.empty()) {
    config.algorithms.clear();
    for (const auto& name : algos) config.algorithms.push_back(algorithm_from_string(name));
  }
  if (!ms.empty()) config.hash_lengths = ms;
  config.k = k;
  config.alpha = alpha;
  config.num_queries = queries;
  config.seed = seed;
  config.scenario = bench::scenario_from_string(scenario);
  config.equal_dim_simhash = equal_dim;
  config.threads = threads;

  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw FormatError("cannot open config file: " + config_path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config file: " + std::string(e.what()));
    }
    config = bench::config_from_json(j, config);
  }

  const bench::EvalReport report = bench::run(config);
  std::cout << bench::format_table(report);

  if (!out.empty()) {
    const std::string base = strip_extension(out);
    {
      std::ofstream csv(base + ".csv");
      if (!csv) throw FormatError("cannot write " + base + ".csv");
      bench::write_csv(report, csv);
    }
    {
      std::ofstream json(base + ".json");
      if (!json) throw FormatError("cannot write " + base + ".json");
      bench::write_json(report, json);
    }
    std::cout << "wrote " << base << ".csv and " << base << ".json\n";
    if (emit_plot_data && !report.plot.empty()) {
      std::ofstream plot(base + "_plot.csv");
      if (!plot) throw FormatError("cannot write " + base + "_plot.csv");
      bench::write_plot_csv(report, plot);
      std::cout << "wrote " << base << "_plot.csv\n";
    }
  }
  return 0;
}

int run_index(const DatasetFlags& dataset_flags, const std::string& algo, std::uint32_t m,
              std::uint32_t k, double alpha, std::uint64_t seed, std::size_t threads,
              const std::string& out) {
  const Dataset dataset = data::load(to_spec(dataset_flags));
  IndexConfig config{algorithm_from_string(algo), m, k, alpha, RngSeed{seed}, threads};
  const HashIndex index = HashIndex::build(dataset, config);
  std::ofstream os(out, std::ios::binary | std::ios::trunc);
  if (!os) throw FormatError("cannot write " + out);
  index.save(os);
  std::cout << "indexed " << index.size() << " items (" << algo << ", m=" << m << ", k=" << k
            << ", tables=" << index.table_count() << ") in " << index.stats().build_seconds
            << " s\n"
            << "memory: " << index.stats().total_bytes() << " bytes (hashes "
            << index.stats().hash_bytes << ", bins " << index.stats().bin_bytes << ")\n"
            << "wrote " << out << '\n';
  return 0;
}

int run_query(const DatasetFlags& dataset_flags, const std::string& index_path,
              std::int64_t query_id, std::size_t queries, std::uint32_t radius, bool has_radius,
              std::size_t target, std::size_t top, std::uint64_t seed) {
  std::ifstream is(index_path, std::ios::binary);
  if (!is) throw FormatError("cannot open index: " + index_path);
  const HashIndex index = HashIndex::load(is);
  const Dataset dataset = data::load(to_spec(dataset_flags));

  std::vector<std::uint32_t> ids;
  if (query_id >= 0) {
    if (static_cast<std::size_t>(query_id) >= dataset.size()) {
      throw ConfigError("--id out of range");
    }
    ids.push_back(static_cast<std::uint32_t>(query_id));
  } else {
    Rng rng = Rng::stream(RngSeed{seed}, StreamDomain::query_sample);
    ids = rng.sample_without_replacement(dataset.size(), std::min(queries, dataset.size()));
  }

  for (std::uint32_t qid : ids) {
    const ProbeResult result = has_radius
                                   ? index.query_ranked(dataset.items[qid], radius)
                                   : index.query_at_least(dataset.items[qid], target);
    std::cout << "query " << qid << ": radius=" << result.radius_used
              << " candidates=" << result.candidate_ids.size()
              << " bins_touched=" << result.bins_touched << " time=" << result.query_seconds
              << "s\n";
    const std::size_t shown = std::min(top, result.ranked.size());
    for (std::size_t i = 0; i < shown; ++i) {
      std::cout << "  " << (i + 1) << ". id=" << result.ranked[i].first
                << " hamming=" << result.ranked[i].second << '\n';
    }
  }
  return 0;
}

int run_gen_data(std::size_t n, std::size_t d, std::uint64_t seed, const std::string& out) {
  const Dataset dataset = data::gen_random(n, d, RngSeed{seed});
  data::write_fvecs(dataset, out);
  std::cout << "wrote " << n << " x " << d << " U(0,1) vectors to " << out << '\n';
  return 0;
}

int run_report(const std::string& in_path, const std::string& csv_out) {
  std::ifstream is(in_path);
  if (!is) throw FormatError("cannot open report: " + in_path);
  const bench::EvalReport report = bench::read_json(is);
  std::cout << bench::format_table(report);
  if (!csv_out.empty()) {
    std::ofstream os(csv_out);
    if (!os) throw FormatError("cannot write " + csv_out);
    bench::write_csv(report, os);
    std::cout << "wrote " << csv_out << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fly-inspired high-dimensional locality-sensitive hashing benchmark"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Run an evaluation scenario");
  DatasetFlags bench_data;
  add_dataset_flags(bench_cmd, bench_data);
  std::vector<std::string> algos;
  std::vector<std::uint32_t> ms;
  std::uint32_t k = 20;
  double alpha = 0.1;
  std::size_t queries = 0, threads = 0;
  std::uint64_t seed = 1;
  std::string scenario = "auprc", config_path, out;
  bool equal_dim = false, emit_plot = false;
  bench_cmd->add_option("--algo", algos,
                        "Algorithms: simhash|wtahash|flyhash|flyhash-mp|densefly");
  bench_cmd->add_option("--m", ms, "Hash lengths to sweep (default 16 32 64 128)");
  bench_cmd->add_option("--k", k, "WTA factor / SimHash table count (default 20)");
  bench_cmd->add_option("--alpha", alpha, "Sparse sampling rate (default 0.1)");
  bench_cmd->add_option("--queries", queries, "Query count (default 500; 100 for kendall)");
  bench_cmd->add_option("--seed", seed, "Master seed");
  bench_cmd->add_option("--scenario", scenario, "auprc|query-time|map100|kendall")
      ->check(CLI::IsMember({"auprc", "query-time", "map100", "kendall"}));
  bench_cmd->add_flag("--equal-dim-simhash", equal_dim,
                      "Give SimHash mk dimensions instead of the m-bit budget");
  bench_cmd->add_option("--threads", threads, "Worker threads (0 = hardware)");
  bench_cmd->add_option("--config", config_path, "JSON config file; overrides flags");
  bench_cmd->add_option("--out", out, "Report base path (writes .csv and .json)");
  bench_cmd->add_flag("--emit-plot-data", emit_plot, "Also write per-figure plot CSV");

  // index
  auto* index_cmd = app.add_subcommand("index", "Build and save a hash index");
  DatasetFlags index_data;
  add_dataset_flags(index_cmd, index_data);
  std::string index_algo = "densefly", index_out = "index.flsh";
  std::uint32_t index_m = 16, index_k = 4;
  double index_alpha = 0.1;
  std::uint64_t index_seed = 1;
  std::size_t index_threads = 0;
  index_cmd->add_option("--algo", index_algo, "simhash|wtahash|flyhash|flyhash-mp|densefly");
  index_cmd->add_option("--m", index_m, "Bucket key bits / hash length");
  index_cmd->add_option("--k", index_k, "WTA factor / SimHash table count");
  index_cmd->add_option("--alpha", index_alpha, "Sparse sampling rate");
  index_cmd->add_option("--seed", index_seed, "Master seed");
  index_cmd->add_option("--threads", index_threads, "Worker threads (0 = hardware)");
  index_cmd->add_option("--out", index_out, "Snapshot output path")->required();

  // query
  auto* query_cmd = app.add_subcommand("query", "Query a saved index");
  DatasetFlags query_data;
  add_dataset_flags(query_cmd, query_data);
  std::string query_index;
  std::int64_t query_id = -1;
  std::size_t query_count = 5, query_target = 100, query_top = 10;
  std::uint32_t query_radius = 0;
  std::uint64_t query_seed = 1;
  query_cmd->add_option("--index", query_index, "Index snapshot path")->required();
  query_cmd->add_option("--id", query_id, "Query a single item id from the dataset");
  query_cmd->add_option("--queries", query_count, "Number of sampled queries (default 5)");
  auto* radius_opt =
      query_cmd->add_option("--radius", query_radius, "Fixed probe radius (default: escalate)");
  query_cmd->add_option("--target", query_target,
                        "Escalate the radius until this many candidates (default 100)");
  query_cmd->add_option("--top", query_top, "Ranked results to print per query");
  query_cmd->add_option("--seed", query_seed, "Query sampling seed");

  // gen-data
  auto* gen_cmd = app.add_subcommand("gen-data", "Write a synthetic U(0,1) fvecs dataset");
  std::size_t gen_n = 10000, gen_d = 128;
  std::uint64_t gen_seed = 1;
  std::string gen_out = "random.fvecs";
  gen_cmd->add_option("--n", gen_n, "Number of vectors");
  gen_cmd->add_option("--d", gen_d, "Dimension");
  gen_cmd->add_option("--seed", gen_seed, "Generator seed");
  gen_cmd->add_option("--out", gen_out, "Output path (.gz compresses)")->required();

  // report
  auto* report_cmd = app.add_subcommand("report", "Render a JSON report");
  std::string report_in, report_csv;
  report_cmd->add_option("--in", report_in, "JSON report path")->required();
  report_cmd->add_option("--csv", report_csv, "Also write the CSV form here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (bench_cmd->parsed()) {
      return run_bench(bench_data, algos, ms, k, alpha, queries, seed, scenario, equal_dim,
                       threads, config_path, out, emit_plot);
    }
    if (index_cmd->parsed()) {
      return run_index(index_data, index_algo, index_m, index_k, index_alpha, index_seed,
                       index_threads, index_out);
    }
    if (query_cmd->parsed()) {
      return run_query(query_data, query_index, query_id, query_count, query_radius,
                       radius_opt->count() > 0, query_target, query_top, query_seed);
    }
    if (gen_cmd->parsed()) return run_gen_data(gen_n, gen_d, gen_seed, gen_out);
    if (report_cmd->parsed()) return run_report(report_in, report_csv);
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
