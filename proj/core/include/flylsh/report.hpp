#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace flylsh::bench {

/// One (dataset, algorithm, m, k) result cell. Metrics a scenario does not
/// compute stay unset and serialize as empty CSV cells / absent JSON keys.
struct EvalRow {
  std::string dataset;
  std::string algorithm;
  std::uint32_t m = 0;
  std::uint32_t k = 0;
  std::optional<double> auprc_mean, auprc_std;
  std::optional<double> map_mean, map_std;
  std::optional<double> map_at_100;
  std::optional<double> kendall_tau_mean, kendall_tau_std;
  double query_time_s = 0.0;
  double indexing_time_s = 0.0;
  std::size_t memory_bytes = 0;
  std::size_t num_queries = 0;
  std::uint64_t seed = 0;
  // memory split and resolved dimensions (JSON only)
  std::size_t hash_bytes = 0;
  std::size_t bin_bytes = 0;
  std::size_t h1_bits = 0;
};

/// One point of a query-time sweep (Figure-4 style plot data).
struct PlotPoint {
  std::string dataset;
  std::string algorithm;
  std::uint32_t m = 0;
  std::uint32_t k = 0;
  std::uint32_t radius = 0;
  double query_time_s = 0.0;
  double map = 0.0;
  double mean_candidates = 0.0;
};

struct EvalReport {
  std::string library_version;
  std::string scenario;
  std::string center_mode;
  nlohmann::json config;  // the resolved experiment configuration
  std::vector<EvalRow> rows;
  std::vector<PlotPoint> plot;
};

/// Stable column order; pass include_timing=false to drop the two wall-clock
/// columns (used for byte-identical determinism comparisons).
void write_csv(const EvalReport& report, std::ostream& out, bool include_timing = true);
std::string to_csv(const EvalReport& report, bool include_timing = true);

/// JSON nested by dataset -> algorithm -> list of per-(m,k) cells.
void write_json(const EvalReport& report, std::ostream& out);
EvalReport read_json(std::istream& in);

/// radius / query_time / map columns for external plotting.
void write_plot_csv(const EvalReport& report, std::ostream& out);

/// Human-readable console table.
std::string format_table(const EvalReport& report);

}  // namespace flylsh::bench
