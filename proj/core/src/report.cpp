#include "flylsh/report.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

#include "flylsh/errors.hpp"

namespace flylsh::bench {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string format_opt(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

void set_if(nlohmann::json& j, const char* key, const std::optional<double>& v) {
  if (v) j[key] = *v;
}

std::optional<double> get_opt(const nlohmann::json& j, const char* key) {
  if (j.contains(key)) return j.at(key).get<double>();
  return std::nullopt;
}

}  // namespace

void write_csv(const EvalReport& report, std::ostream& out, bool include_timing) {
  out << "dataset,algorithm,m,k,auprc_mean,auprc_std,map_mean,map_std,map_at_100,"
         "kendall_tau_mean,kendall_tau_std";
  if (include_timing) out << ",query_time_s,indexing_time_s";
  out << ",memory_bytes,num_queries,seed\n";
  for (const EvalRow& r : report.rows) {
    out << r.dataset << ',' << r.algorithm << ',' << r.m << ',' << r.k << ','
        << format_opt(r.auprc_mean) << ',' << format_opt(r.auprc_std) << ','
        << format_opt(r.map_mean) << ',' << format_opt(r.map_std) << ','
        << format_opt(r.map_at_100) << ',' << format_opt(r.kendall_tau_mean) << ','
        << format_opt(r.kendall_tau_std);
    if (include_timing) {
      out << ',' << format_double(r.query_time_s) << ',' << format_double(r.indexing_time_s);
    }
    out << ',' << r.memory_bytes << ',' << r.num_queries << ',' << r.seed << '\n';
  }
}

std::string to_csv(const EvalReport& report, bool include_timing) {
  std::ostringstream os;
  write_csv(report, os, include_timing);
  return os.str();
}

void write_json(const EvalReport& report, std::ostream& out) {
  nlohmann::json j;
  j["library_version"] = report.library_version;
  j["scenario"] = report.scenario;
  j["center_mode"] = report.center_mode;
  j["config"] = report.config;
  nlohmann::json results = nlohmann::json::object();
  for (const EvalRow& r : report.rows) {
    nlohmann::json cell;
    cell["m"] = r.m;
    cell["k"] = r.k;
    set_if(cell, "auprc_mean", r.auprc_mean);
    set_if(cell, "auprc_std", r.auprc_std);
    set_if(cell, "map_mean", r.map_mean);
    set_if(cell, "map_std", r.map_std);
    set_if(cell, "map_at_100", r.map_at_100);
    set_if(cell, "kendall_tau_mean", r.kendall_tau_mean);
    set_if(cell, "kendall_tau_std", r.kendall_tau_std);
    cell["query_time_s"] = r.query_time_s;
    cell["indexing_time_s"] = r.indexing_time_s;
    cell["memory_bytes"] = r.memory_bytes;
    cell["hash_bytes"] = r.hash_bytes;
    cell["bin_bytes"] = r.bin_bytes;
    cell["h1_bits"] = r.h1_bits;
    cell["num_queries"] = r.num_queries;
    cell["seed"] = r.seed;
    results[r.dataset][r.algorithm].push_back(cell);
  }
  j["results"] = results;
  if (!report.plot.empty()) {
    nlohmann::json plot = nlohmann::json::array();
    for (const PlotPoint& p : report.plot) {
      plot.push_back({{"dataset", p.dataset},
                      {"algorithm", p.algorithm},
                      {"m", p.m},
                      {"k", p.k},
                      {"radius", p.radius},
                      {"query_time_s", p.query_time_s},
                      {"map", p.map},
                      {"mean_candidates", p.mean_candidates}});
    }
    j["plot"] = plot;
  }
  out << j.dump(2) << '\n';
}

EvalReport read_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("report: invalid JSON: ") + e.what());
  }
  EvalReport report;
  report.library_version = j.value("library_version", "");
  report.scenario = j.value("scenario", "");
  report.center_mode = j.value("center_mode", "");
  if (j.contains("config")) report.config = j.at("config");
  if (j.contains("results")) {
    for (const auto& [dataset, algos] : j.at("results").items()) {
      for (const auto& [algorithm, cells] : algos.items()) {
        for (const auto& cell : cells) {
          EvalRow r;
          r.dataset = dataset;
          r.algorithm = algorithm;
          r.m = cell.at("m").get<std::uint32_t>();
          r.k = cell.at("k").get<std::uint32_t>();
          r.auprc_mean = get_opt(cell, "auprc_mean");
          r.auprc_std = get_opt(cell, "auprc_std");
          r.map_mean = get_opt(cell, "map_mean");
          r.map_std = get_opt(cell, "map_std");
          r.map_at_100 = get_opt(cell, "map_at_100");
          r.kendall_tau_mean = get_opt(cell, "kendall_tau_mean");
          r.kendall_tau_std = get_opt(cell, "kendall_tau_std");
          r.query_time_s = cell.value("query_time_s", 0.0);
          r.indexing_time_s = cell.value("indexing_time_s", 0.0);
          r.memory_bytes = cell.value("memory_bytes", std::size_t{0});
          r.hash_bytes = cell.value("hash_bytes", std::size_t{0});
          r.bin_bytes = cell.value("bin_bytes", std::size_t{0});
          r.h1_bits = cell.value("h1_bits", std::size_t{0});
          r.num_queries = cell.value("num_queries", std::size_t{0});
          r.seed = cell.value("seed", std::uint64_t{0});
          report.rows.push_back(std::move(r));
        }
      }
    }
  }
  if (j.contains("plot")) {
    for (const auto& p : j.at("plot")) {
      PlotPoint point;
      point.dataset = p.value("dataset", "");
      point.algorithm = p.value("algorithm", "");
      point.m = p.value("m", 0u);
      point.k = p.value("k", 0u);
      point.radius = p.value("radius", 0u);
      point.query_time_s = p.value("query_time_s", 0.0);
      point.map = p.value("map", 0.0);
      point.mean_candidates = p.value("mean_candidates", 0.0);
      report.plot.push_back(point);
    }
  }
  return report;
}

void write_plot_csv(const EvalReport& report, std::ostream& out) {
  out << "dataset,algorithm,m,k,radius,query_time_s,map,mean_candidates\n";
  for (const PlotPoint& p : report.plot) {
    out << p.dataset << ',' << p.algorithm << ',' << p.m << ',' << p.k << ',' << p.radius << ','
        << format_double(p.query_time_s) << ',' << format_double(p.map) << ','
        << format_double(p.mean_candidates) << '\n';
  }
}

std::string format_table(const EvalReport& report) {
  std::ostringstream os;
  os << "scenario: " << report.scenario << "  (library " << report.library_version << ")\n";
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-12s %-11s %5s %4s %10s %10s %10s %10s %12s %12s\n",
                "dataset", "algorithm", "m", "k", "auprc", "map", "map@100", "kendall",
                "query[s]", "index[s]");
  os << buf;
  for (const EvalRow& r : report.rows) {
    auto opt = [](const std::optional<double>& v) {
      if (!v) return std::string("-");
      char b[32];
      std::snprintf(b, sizeof(b), "%.4f", *v);
      return std::string(b);
    };
    std::snprintf(buf, sizeof(buf), "%-12s %-11s %5u %4u %10s %10s %10s %10s %12.3e %12.3e\n",
                  r.dataset.c_str(), r.algorithm.c_str(), r.m, r.k, opt(r.auprc_mean).c_str(),
                  opt(r.map_mean).c_str(), opt(r.map_at_100).c_str(),
                  opt(r.kendall_tau_mean).c_str(), r.query_time_s, r.indexing_time_s);
    os << buf;
  }
  return os.str();
}

}  // namespace flylsh::bench
