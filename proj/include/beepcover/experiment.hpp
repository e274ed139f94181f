#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "beepcover/baselines.hpp"
#include "beepcover/beep_and_sleep.hpp"
#include "beepcover/errors.hpp"
#include "beepcover/graph.hpp"
#include "beepcover/instance.hpp"
#include "beepcover/kt0_setcover.hpp"

namespace beepcover {

enum class Algo { Beep, Kt0, Dominating, Greedy, Exact };

inline const char* algo_name(Algo a) {
  switch (a) {
    case Algo::Beep: return "beep";
    case Algo::Kt0: return "kt0";
    case Algo::Dominating: return "dominating";
    case Algo::Greedy: return "greedy";
    case Algo::Exact: return "exact";
  }
  return "?";
}

inline Algo parse_algo(const std::string& name) {
  if (name == "beep") return Algo::Beep;
  if (name == "kt0") return Algo::Kt0;
  if (name == "dominating") return Algo::Dominating;
  if (name == "greedy") return Algo::Greedy;
  if (name == "exact") return Algo::Exact;
  throw ConfigError("unknown algorithm '" + name + "'");
}

// Declarative description of one experiment. The instance comes from a file
// or from a generator spec; `dominating` runs on a generated connected graph
// instead of a bipartite instance.
struct ExperimentConfig {
  Algo algo = Algo::Beep;
  std::optional<std::string> instance_path;
  std::optional<int> gen_n;
  std::optional<int> gen_m;
  std::optional<double> gen_edge_prob;
  std::optional<int> gen_delta;  // selects the scaling-family generator
  std::optional<int> k;          // beep / dominating
  std::optional<double> c;       // kt0
  int trials = 1;
  std::uint64_t base_seed = 0;
  std::string format = "csv";  // csv | jsonl
};

struct ResultRow {
  std::uint64_t seed = 0;
  long long solution_size = 0;
  long long opt_or_greedy_size = 0;
  double ratio = 0.0;
  long long slots_or_rounds = 0;
  long long beeps = 0;
  long long messages_total = 0;
  long long messages_stage1 = 0;
  long long messages_stage2 = 0;
  long long max_mu = 0;
  double mean_mu = 0.0;
  double mean_eta = 0.0;
  long long boundary_max_uncovered = 0;
};

inline const char* result_row_header() {
  return "seed,solution_size,opt_or_greedy_size,ratio,slots_or_rounds,beeps,messages_total,"
         "messages_stage1,messages_stage2,max_mu,mean_mu,mean_eta,boundary_max_uncovered";
}

namespace detail {

inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace detail

inline std::string to_csv(const ResultRow& r) {
  std::string out;
  out += std::to_string(r.seed);
  out += ',' + std::to_string(r.solution_size);
  out += ',' + std::to_string(r.opt_or_greedy_size);
  out += ',' + detail::fmt_double(r.ratio);
  out += ',' + std::to_string(r.slots_or_rounds);
  out += ',' + std::to_string(r.beeps);
  out += ',' + std::to_string(r.messages_total);
  out += ',' + std::to_string(r.messages_stage1);
  out += ',' + std::to_string(r.messages_stage2);
  out += ',' + std::to_string(r.max_mu);
  out += ',' + detail::fmt_double(r.mean_mu);
  out += ',' + detail::fmt_double(r.mean_eta);
  out += ',' + std::to_string(r.boundary_max_uncovered);
  return out;
}

inline std::string to_jsonl(const ResultRow& r) {
  std::string out = "{";
  out += "\"seed\":" + std::to_string(r.seed);
  out += ",\"solution_size\":" + std::to_string(r.solution_size);
  out += ",\"opt_or_greedy_size\":" + std::to_string(r.opt_or_greedy_size);
  out += ",\"ratio\":" + detail::fmt_double(r.ratio);
  out += ",\"slots_or_rounds\":" + std::to_string(r.slots_or_rounds);
  out += ",\"beeps\":" + std::to_string(r.beeps);
  out += ",\"messages_total\":" + std::to_string(r.messages_total);
  out += ",\"messages_stage1\":" + std::to_string(r.messages_stage1);
  out += ",\"messages_stage2\":" + std::to_string(r.messages_stage2);
  out += ",\"max_mu\":" + std::to_string(r.max_mu);
  out += ",\"mean_mu\":" + detail::fmt_double(r.mean_mu);
  out += ",\"mean_eta\":" + detail::fmt_double(r.mean_eta);
  out += ",\"boundary_max_uncovered\":" + std::to_string(r.boundary_max_uncovered);
  out += "}";
  return out;
}

inline void validate_config(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
  if ((cfg.algo == Algo::Beep || cfg.algo == Algo::Dominating) && !cfg.k)
    throw ConfigError("--k is required for beep and dominating runs");
  if (cfg.algo == Algo::Kt0 && !cfg.c) throw ConfigError("--c is required for kt0 runs");
  if (cfg.format != "csv" && cfg.format != "jsonl")
    throw ConfigError("format must be csv or jsonl");
  if (cfg.algo == Algo::Dominating) {
    if (!cfg.gen_n || !cfg.gen_edge_prob)
      throw ConfigError("dominating runs need --n and --edge-prob (graph generator)");
    return;
  }
  if (!cfg.instance_path) {
    if (cfg.gen_delta) {
      if (!cfg.gen_n) throw ConfigError("scaling generator needs --n");
    } else if (!cfg.gen_n || !cfg.gen_m || !cfg.gen_edge_prob) {
      throw ConfigError("no --in file: generator needs --n, --m and --edge-prob");
    }
  }
}

inline Instance config_instance(const ExperimentConfig& cfg, std::uint64_t seed) {
  if (cfg.instance_path) return read_instance(*cfg.instance_path);
  if (cfg.gen_delta) return generate_scaling_family(*cfg.gen_delta, *cfg.gen_n, seed);
  return generate_random(*cfg.gen_n, *cfg.gen_m, *cfg.gen_edge_prob, seed);
}

// reference solution size for ratios: exact optimum when the oracle is
// cheap, greedy otherwise
inline long long reference_size(const Instance& inst) {
  if (inst.num_sets() <= 20) return exact(inst).size();
  return greedy(inst).size();
}

inline ResultRow run_single(const ExperimentConfig& cfg, std::uint64_t seed) {
  ResultRow row;
  row.seed = seed;

  if (cfg.algo == Algo::Dominating) {
    const Adjacency adj = random_connected_graph(*cfg.gen_n, *cfg.gen_edge_prob, seed);
    auto ds = run_dominating_set(adj, *cfg.k, seed);
    row.solution_size = ds.solution.size();
    row.slots_or_rounds = ds.metrics.slots;
    row.beeps = ds.metrics.beeps;
    const Instance as_cover = closed_neighborhood_instance(adj);
    row.opt_or_greedy_size = reference_size(as_cover);
    row.ratio = approximation_ratio(ds.solution, row.opt_or_greedy_size);
    return row;
  }

  const Instance inst = config_instance(cfg, seed);
  switch (cfg.algo) {
    case Algo::Greedy: {
      auto sol = greedy(inst);
      row.solution_size = sol.size();
      row.opt_or_greedy_size = sol.size();
      row.ratio = 1.0;
      break;
    }
    case Algo::Exact: {
      auto sol = exact(inst);
      row.solution_size = sol.size();
      row.opt_or_greedy_size = sol.size();
      row.ratio = 1.0;
      break;
    }
    case Algo::Beep: {
      auto res = run_beep_and_sleep(inst, *cfg.k, seed);
      row.solution_size = res.solution.size();
      row.slots_or_rounds = res.metrics.slots;
      row.beeps = res.metrics.beeps;
      row.max_mu = res.stats.max_mu();
      row.mean_mu = res.stats.mean_mu();
      row.mean_eta = res.stats.mean_eta();
      row.opt_or_greedy_size = reference_size(inst);
      row.ratio = approximation_ratio(res.solution, row.opt_or_greedy_size);
      break;
    }
    case Algo::Kt0: {
      auto res = run_kt0_setcover(inst, Kt0Params::make(inst, *cfg.c), seed);
      row.solution_size = res.solution.size();
      row.slots_or_rounds = res.rounds;
      row.messages_total = res.stats.total;
      row.messages_stage1 = res.stats.stage("stage1") + res.stats.stage("boundary");
      row.messages_stage2 = res.stats.stage("stage2") + res.stats.stage("cleanup");
      row.max_mu = res.cover_stats.max_mu();
      row.mean_mu = res.cover_stats.mean_mu();
      row.mean_eta = res.cover_stats.mean_eta();
      row.boundary_max_uncovered = res.boundary_max_uncovered;
      row.opt_or_greedy_size = reference_size(inst);
      row.ratio = approximation_ratio(res.solution, row.opt_or_greedy_size);
      break;
    }
    default: break;
  }
  return row;
}

struct Aggregate {
  double ratio_mean = 0, ratio_median = 0, ratio_max = 0;
  double messages_mean = 0, messages_median = 0, messages_max = 0;
};

inline Aggregate aggregate_rows(const std::vector<ResultRow>& rows) {
  Aggregate agg;
  if (rows.empty()) return agg;
  std::vector<double> ratios, msgs;
  for (const auto& r : rows) {
    ratios.push_back(r.ratio);
    msgs.push_back(static_cast<double>(r.messages_total));
    agg.ratio_mean += r.ratio;
    agg.messages_mean += static_cast<double>(r.messages_total);
  }
  agg.ratio_mean /= rows.size();
  agg.messages_mean /= rows.size();
  std::sort(ratios.begin(), ratios.end());
  std::sort(msgs.begin(), msgs.end());
  const auto median = [](const std::vector<double>& v) {
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  };
  agg.ratio_median = median(ratios);
  agg.messages_median = median(msgs);
  agg.ratio_max = ratios.back();
  agg.messages_max = msgs.back();
  return agg;
}

inline std::string aggregate_csv_line(const Aggregate& a) {
  using detail::fmt_double;
  return "# aggregate ratio_mean=" + fmt_double(a.ratio_mean) +
         " ratio_median=" + fmt_double(a.ratio_median) + " ratio_max=" + fmt_double(a.ratio_max) +
         " messages_mean=" + fmt_double(a.messages_mean) +
         " messages_median=" + fmt_double(a.messages_median) +
         " messages_max=" + fmt_double(a.messages_max);
}

struct ExperimentOutput {
  std::vector<ResultRow> rows;
  Aggregate aggregate;
  std::string text;  // rows in the configured format plus the aggregate line
};

// Trial t uses seed base_seed + t; rows come out sorted by seed.
inline ExperimentOutput run_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);
  ExperimentOutput out;
  for (int t = 0; t < cfg.trials; ++t)
    out.rows.push_back(run_single(cfg, cfg.base_seed + static_cast<std::uint64_t>(t)));
  out.aggregate = aggregate_rows(out.rows);
  if (cfg.format == "csv") {
    out.text = std::string(result_row_header()) + "\n";
    for (const auto& r : out.rows) out.text += to_csv(r) + "\n";
    out.text += aggregate_csv_line(out.aggregate) + "\n";
  } else {
    for (const auto& r : out.rows) out.text += to_jsonl(r) + "\n";
    using detail::fmt_double;
    out.text += "{\"aggregate\":{\"ratio_mean\":" + fmt_double(out.aggregate.ratio_mean) +
                ",\"ratio_median\":" + fmt_double(out.aggregate.ratio_median) +
                ",\"ratio_max\":" + fmt_double(out.aggregate.ratio_max) +
                ",\"messages_mean\":" + fmt_double(out.aggregate.messages_mean) +
                ",\"messages_median\":" + fmt_double(out.aggregate.messages_median) +
                ",\"messages_max\":" + fmt_double(out.aggregate.messages_max) + "}}\n";
  }
  return out;
}

// ---- scaling study ---------------------------------------------------------

struct ScalingPoint {
  int delta = 0;
  double mean_messages = 0.0;
};

struct ScalingResult {
  std::vector<ScalingPoint> points;
  double alpha = 0.0;  // least-squares slope of log(messages) vs log(delta)
};

inline double fit_loglog_slope(const std::vector<ScalingPoint>& pts) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(pts.size());
  for (const auto& p : pts) {
    const double x = std::log(static_cast<double>(p.delta));
    const double y = std::log(p.mean_messages);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Runs the kt0 algorithm over the delta family at fixed n+m (the generator
// keeps m = n) and fits the message-count exponent.
inline ScalingResult run_scaling(const std::vector<int>& deltas, int n, double c, int trials,
                                 std::uint64_t base_seed) {
  if (deltas.size() < 2) throw ConfigError("scaling needs at least two delta values");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  ScalingResult result;
  for (int delta : deltas) {
    double acc = 0;
    for (int t = 0; t < trials; ++t) {
      const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(t);
      const Instance inst = generate_scaling_family(delta, n, seed);
      const auto res = run_kt0_setcover(inst, Kt0Params::make(inst, c), seed);
      acc += static_cast<double>(res.stats.total);
    }
    result.points.push_back({delta, acc / trials});
  }
  result.alpha = fit_loglog_slope(result.points);
  return result;
}

}  // namespace beepcover
