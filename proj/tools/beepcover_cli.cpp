// Command-line front end: instance generation, single runs, batch
// experiments, and message-scaling studies. Exit codes: 0 success, 1 config
// error, 2 runtime error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "beepcover/baselines.hpp"
#include "beepcover/beep_and_sleep.hpp"
#include "beepcover/experiment.hpp"
#include "beepcover/graph.hpp"
#include "beepcover/instance.hpp"
#include "beepcover/kt0_setcover.hpp"

namespace {

using namespace beepcover;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw IoError("write failed for '" + path + "'");
}

std::vector<int> parse_delta_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  if (out.empty()) throw ConfigError("--deltas list is empty");
  return out;
}

void print_row(const ResultRow& row, const std::string& format) {
  if (format == "csv") {
    std::cout << result_row_header() << "\n" << to_csv(row) << "\n";
  } else if (format == "jsonl") {
    std::cout << to_jsonl(row) << "\n";
  } else {
    std::cout << "seed=" << row.seed << " solution_size=" << row.solution_size
              << " opt_or_greedy_size=" << row.opt_or_greedy_size << " ratio=" << row.ratio
              << " slots_or_rounds=" << row.slots_or_rounds << " beeps=" << row.beeps
              << " messages_total=" << row.messages_total
              << " messages_stage1=" << row.messages_stage1
              << " messages_stage2=" << row.messages_stage2 << " max_mu=" << row.max_mu
              << " mean_mu=" << row.mean_mu << " mean_eta=" << row.mean_eta
              << " boundary_max_uncovered=" << row.boundary_max_uncovered << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"beepcover: distributed SetCover simulation lab"};
  app.require_subcommand(1);

  // shared option storage
  std::string algo_name_ = "beep";
  std::optional<int> opt_k;
  std::optional<double> opt_c;
  std::optional<int> opt_n, opt_m, opt_delta;
  std::optional<double> opt_edge_prob;
  std::uint64_t seed = 0, base_seed = 0;
  int trials = 1;
  std::string in_path, out_path, format = "csv", transcript_path, deltas_csv = "16,64,256";

  auto add_instance_flags = [&](CLI::App* cmd) {
    cmd->add_option("--n", opt_n, "universe size (generator)");
    cmd->add_option("--m", opt_m, "number of sets (generator)");
    cmd->add_option("--edge-prob", opt_edge_prob, "independent edge probability (generator)");
    cmd->add_option("--delta", opt_delta, "target max set cardinality (scaling-family generator)");
    cmd->add_option("--in", in_path, "instance file");
  };

  auto* gen = app.add_subcommand("gen", "generate an instance file");
  add_instance_flags(gen);
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--out", out_path, "output path")->required();

  auto* run = app.add_subcommand("run", "run one algorithm once and print a result row");
  run->add_option("--algo", algo_name_, "beep|kt0|dominating|greedy|exact")->required();
  add_instance_flags(run);
  run->add_option("--k", opt_k, "phase parameter (beep, dominating)");
  run->add_option("--c", opt_c, "threshold multiplier (kt0)");
  run->add_option("--seed", seed, "trial seed");
  std::string run_format = "plain";
  run->add_option("--format", run_format, "csv|jsonl|plain");
  run->add_option("--transcript", transcript_path, "write slot transcript / message log here");

  auto* greedy_cmd = app.add_subcommand("greedy", "sequential greedy oracle on an instance file");
  greedy_cmd->add_option("--in", in_path, "instance file")->required();

  auto* exact_cmd = app.add_subcommand("exact", "exact minimum cover (m <= 25)");
  exact_cmd->add_option("--in", in_path, "instance file")->required();

  auto* exp = app.add_subcommand("experiment", "run seeds base..base+trials-1, write rows");
  exp->add_option("--algo", algo_name_, "beep|kt0|dominating|greedy|exact")->required();
  add_instance_flags(exp);
  exp->add_option("--k", opt_k, "phase parameter (beep, dominating)");
  exp->add_option("--c", opt_c, "threshold multiplier (kt0)");
  exp->add_option("--trials", trials, "number of trials");
  exp->add_option("--base-seed", base_seed, "first seed");
  exp->add_option("--out", out_path, "output file (default stdout)");
  exp->add_option("--format", format, "csv|jsonl");

  auto* scaling = app.add_subcommand("scaling", "message-scaling study over a delta family");
  std::string scaling_algo = "kt0";
  scaling->add_option("--algo", scaling_algo, "kt0 (message counts are a kt0 notion)");
  scaling->add_option("--deltas", deltas_csv, "comma-separated delta list");
  scaling->add_option("--n", opt_n, "elements per instance (m = n)");
  // the join threshold c*4*ln(n+m) only bites at desk scale with a small c;
  // 2.0 would put it above the smallest family deltas
  double scaling_c = 0.5;
  scaling->add_option("--c", scaling_c, "threshold multiplier");
  int scaling_trials = 10;
  scaling->add_option("--trials", scaling_trials, "seeds per delta point");
  scaling->add_option("--base-seed", base_seed, "first seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) {
      Instance inst;
      if (opt_delta) {
        if (!opt_n) throw ConfigError("gen --delta needs --n");
        inst = generate_scaling_family(*opt_delta, *opt_n, seed);
      } else {
        if (!opt_n || !opt_m || !opt_edge_prob)
          throw ConfigError("gen needs --n, --m and --edge-prob (or --delta and --n)");
        inst = generate_random(*opt_n, *opt_m, *opt_edge_prob, seed);
      }
      write_instance(inst, out_path);
      std::cout << "wrote " << out_path << " (n=" << inst.n_elements << " m=" << inst.num_sets()
                << " delta=" << inst.delta << ")\n";
      return 0;
    }

    if (greedy_cmd->parsed() || exact_cmd->parsed()) {
      const Instance inst = read_instance(in_path);
      const Solution sol = greedy_cmd->parsed() ? greedy(inst) : exact(inst);
      std::cout << "size=" << sol.size() << " sets=";
      for (std::size_t i = 0; i < sol.chosen.size(); ++i)
        std::cout << (i ? "," : "") << sol.chosen[i];
      std::cout << "\n";
      return 0;
    }

    if (run->parsed()) {
      ExperimentConfig cfg;
      cfg.algo = parse_algo(algo_name_);
      if (!in_path.empty()) cfg.instance_path = in_path;
      cfg.gen_n = opt_n;
      cfg.gen_m = opt_m;
      cfg.gen_edge_prob = opt_edge_prob;
      cfg.gen_delta = opt_delta;
      cfg.k = opt_k;
      cfg.c = opt_c;
      cfg.trials = 1;
      cfg.base_seed = seed;
      cfg.format = run_format == "plain" ? "csv" : run_format;  // validation only
      validate_config(cfg);

      if (!transcript_path.empty() && cfg.algo == Algo::Beep) {
        const Instance inst = config_instance(cfg, seed);
        auto res = run_beep_and_sleep(inst, *cfg.k, seed, /*record_transcript=*/true);
        write_text(transcript_path, res.transcript.dump());
      } else if (!transcript_path.empty() && cfg.algo == Algo::Kt0) {
        const Instance inst = config_instance(cfg, seed);
        MessageLog log;
        run_kt0_setcover(inst, Kt0Params::make(inst, *cfg.c), seed, &log);
        write_text(transcript_path, log.dump());
      }
      print_row(run_single(cfg, seed), run_format);
      return 0;
    }

    if (exp->parsed()) {
      ExperimentConfig cfg;
      cfg.algo = parse_algo(algo_name_);
      if (!in_path.empty()) cfg.instance_path = in_path;
      cfg.gen_n = opt_n;
      cfg.gen_m = opt_m;
      cfg.gen_edge_prob = opt_edge_prob;
      cfg.gen_delta = opt_delta;
      cfg.k = opt_k;
      cfg.c = opt_c;
      cfg.trials = trials;
      cfg.base_seed = base_seed;
      cfg.format = format;
      const ExperimentOutput out = run_experiment(cfg);
      if (out_path.empty())
        std::cout << out.text;
      else
        write_text(out_path, out.text);
      return 0;
    }

    if (scaling->parsed()) {
      if (scaling_algo != "kt0") throw ConfigError("scaling supports --algo kt0 only");
      const std::vector<int> deltas = parse_delta_list(deltas_csv);
      const int n = opt_n.value_or(512);
      const ScalingResult res = run_scaling(deltas, n, scaling_c, scaling_trials, base_seed);
      for (const auto& p : res.points)
        std::cout << "delta=" << p.delta << " mean_messages=" << p.mean_messages << "\n";
      std::printf("alpha=%.4f\n", res.alpha);
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const TooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
