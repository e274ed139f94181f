// Acceptance suite: one line per criterion, exit code = number of failures.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "beepcover/baselines.hpp"
#include "beepcover/beep_and_sleep.hpp"
#include "beepcover/experiment.hpp"
#include "beepcover/graph.hpp"
#include "beepcover/instance.hpp"
#include "beepcover/kt0_setcover.hpp"

using namespace beepcover;

namespace {

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] C%d %s: %s\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
  if (!pass) ++failures;
}

int ceil_log2(int delta) {
  int k = 0;
  while ((1 << k) < delta) ++k;
  return k;
}

// ---------------------------------------------------------------------------
// C1 correctness + C2 deterministic time share one sweep: 1000 random
// instances (n, m <= 100, edge_prob in {0.05, 0.2, 0.8}, seeds 0..999), each
// run with Beep-and-Sleep at k = 4 and k = log delta and with the KT0
// algorithm at c = 2.
void criteria_1_and_2() {
  long long cover_ok = 0, cover_total = 0;
  long long time_ok = 0, time_total = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const int n = 10 + static_cast<int>((seed * 7) % 91);
    const int m = 5 + static_cast<int>((seed * 13) % 96);
    const double p = seed % 3 == 0 ? 0.05 : seed % 3 == 1 ? 0.2 : 0.8;
    const Instance inst = generate_random(n, m, p, seed);
    const int k_log = std::max(1, ceil_log2(inst.delta));
    for (int k : {4, k_log}) {
      const auto res = run_beep_and_sleep(inst, k, seed);
      ++cover_total;
      cover_ok += verify_cover(inst, res.solution).empty();
      ++time_total;
      const long long expected = static_cast<long long>(k) * (4 * k) * (4 * k + 1) + 2;
      time_ok += res.metrics.slots == expected;
    }
    const auto kt0 = run_kt0_setcover(inst, 2.0, seed);
    ++cover_total;
    cover_ok += verify_cover(inst, kt0.solution).empty();
  }
  report(1, "correctness (full covers, 1000 instances x {beep k=4, beep k=logD, kt0})",
         cover_ok == cover_total,
         std::to_string(cover_ok) + "/" + std::to_string(cover_total) + " full covers");
  report(2, "deterministic time (slots == k*4k*(4k+1) + cleanup pair)", time_ok == time_total,
         std::to_string(time_ok) + "/" + std::to_string(time_total) + " exact");
}

// ---------------------------------------------------------------------------
// C3: on 200 exact-solvable instances (m <= 20), mean Beep-and-Sleep ratio
// stays under 25 * log2^2(delta) * delta^(3/k) (k = log delta), mean KT0
// ratio stays under 2 * H_delta, and greedy <= H_delta * OPT holds with zero
// tolerance on every single instance. The mean ratios are compared against
// the strictest (smallest) per-instance bound in the batch.
void criterion_3() {
  double beep_ratio_sum = 0, kt0_ratio_sum = 0;
  double beep_bound_min = 1e300, kt0_bound_min = 1e300;
  int greedy_ok = 0;
  const int trials = 200;
  for (std::uint64_t seed = 0; seed < trials; ++seed) {
    const int n = 20 + static_cast<int>(seed % 16);
    const int m = 8 + static_cast<int>((seed * 3) % 13);  // 8..20
    const Instance inst = generate_random(n, m, 0.35, seed * 31 + 1);
    const Solution opt = exact(inst);
    const Solution grd = greedy(inst);
    greedy_ok += static_cast<double>(grd.size()) <=
                 h_delta(inst.delta) * static_cast<double>(opt.size()) + 1e-9;

    const int k = std::max(1, ceil_log2(inst.delta));
    const auto beep = run_beep_and_sleep(inst, k, seed);
    beep_ratio_sum += approximation_ratio(beep.solution, opt.size());
    const double log2d = std::log2(static_cast<double>(inst.delta));
    beep_bound_min = std::min(
        beep_bound_min, 25.0 * log2d * log2d *
                            std::pow(static_cast<double>(inst.delta), 3.0 / k));

    const auto kt0 = run_kt0_setcover(inst, 2.0, seed);
    kt0_ratio_sum += approximation_ratio(kt0.solution, opt.size());
    kt0_bound_min = std::min(kt0_bound_min, 2.0 * h_delta(inst.delta));
  }
  const double beep_mean = beep_ratio_sum / trials;
  const double kt0_mean = kt0_ratio_sum / trials;
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "beep mean %.3f <= %.1f; kt0 mean %.3f <= %.3f; greedy bound %d/%d",
                beep_mean, beep_bound_min, kt0_mean, kt0_bound_min, greedy_ok, trials);
  report(3, "approximation vs oracle (200 exact-solvable instances)",
         beep_mean <= beep_bound_min && kt0_mean <= kt0_bound_min && greedy_ok == trials, buf);
}

// ---------------------------------------------------------------------------
// C4: mu tail. Instances are element-degree-light and set-heavy so delta is
// driven by set cardinalities (delta >= 16); samples pool across 30 seeds.
void criterion_4() {
  std::vector<int> mus;
  double strict_p = 1.0;       // smallest wake success probability in the pool
  double strict_delta_k = 2.0; // smallest delta^(1/k)
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Instance inst = generate_random(400, 25, 0.12, seed * 13 + 5);
    if (inst.delta < 16) continue;
    const int k = std::max(1, ceil_log2(inst.delta));
    const double delta_k = std::pow(static_cast<double>(inst.delta), 1.0 / k);
    strict_p = std::min(strict_p, 1.0 - 1.0 / delta_k);
    strict_delta_k = std::min(strict_delta_k, delta_k);
    const auto res = run_beep_and_sleep(inst, k, seed);
    for (const auto& s : res.stats.samples) mus.push_back(s.mu);
  }
  const double n_samples = static_cast<double>(mus.size());
  bool pass = n_samples >= 10000;
  std::string detail = std::to_string(mus.size()) + " samples";
  for (int t : {1, 2, 4, 8}) {
    long long over = 0;
    for (int mu : mus) over += mu > t;
    const double frequency = static_cast<double>(over) / n_samples;
    const double base = std::pow(1.0 - strict_p, t);  // (1 - delta^{-1/k})^t
    const double sigma = std::sqrt(base * (1.0 - base) / n_samples);
    const double bound = base + 3.0 * sigma;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "; P[mu>%d]=%.4f<=%.4f", t, frequency, bound);
    detail += buf;
    pass = pass && frequency <= bound;
  }
  double mean_mu = 0;
  for (int mu : mus) mean_mu += mu;
  mean_mu /= n_samples;
  const double mean_bound = 1.5 * strict_delta_k;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "; mean mu %.3f <= %.3f", mean_mu, mean_bound);
  detail += buf;
  pass = pass && mean_mu <= mean_bound;
  report(4, "mu tail property (geometric bound at t in {1,2,4,8})", pass, detail);
}

// ---------------------------------------------------------------------------
// C5: message scaling over delta in {16, 64, 256} at fixed n+m (m = n = 512),
// 30 seeds per point; the fitted log-log exponent must land in [0.3, 0.7].
// c = 0.5 keeps the join threshold below the smallest family delta, which is
// what makes the family's join dynamics representative at desk scale.
void criterion_5() {
  const auto res = run_scaling({16, 64, 256}, 512, 0.5, 30, 0);
  std::string detail = "alpha=" + std::to_string(res.alpha) + " (";
  for (const auto& p : res.points)
    detail += "d" + std::to_string(p.delta) + ":" + std::to_string((long long)p.mean_messages) + " ";
  detail += ")";
  report(5, "message scaling exponent in [0.3, 0.7]", res.alpha >= 0.3 && res.alpha <= 0.7,
         detail);
}

// ---------------------------------------------------------------------------
// C6: stage-boundary degree, 50 seeded runs at delta = 256, c = 2: the max
// uncovered members per set at the boundary stays under 8*sqrt(delta)*ln(n)
// in every run.
void criterion_6() {
  const int delta = 256, n = 512;
  const double bound = 8.0 * std::sqrt(static_cast<double>(delta)) * std::log(static_cast<double>(n));
  long long worst = 0;
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance inst = generate_scaling_family(delta, n, seed);
    const auto res = run_kt0_setcover(inst, 2.0, seed);
    const long long measured = stage_boundary_degrees(res);
    worst = std::max(worst, measured);
    ok += static_cast<double>(measured) <= bound;
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "max observed %lld <= %.1f in %d/50 runs", worst, bound, ok);
  report(6, "stage-boundary degree (delta=256, c=2)", ok == 50, buf);
}

// ---------------------------------------------------------------------------
// C7: query-adapter equivalence on 100 (instance, seed) pairs.
void criterion_7() {
  int equal = 0, query_ok = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 8 + static_cast<int>(seed % 33);
    const int m = 4 + static_cast<int>((seed * 5) % 27);
    const double p = seed % 2 ? 0.35 : 0.12;
    const Instance inst = generate_random(n, m, p, seed * 17 + 3);
    const Kt0Params params = Kt0Params::make(inst, 2.0);
    const auto native = run_kt0_setcover(inst, params, seed);
    const auto queried = run_kt0_setcover_via_queries(inst, params, seed);
    equal += native.solution.chosen == queried.result.solution.chosen &&
             native.stats.total == queried.result.stats.total;
    query_ok += queried.queries.total() <= native.stats.total;
  }
  report(7, "query-adapter equivalence (100 pairs)", equal == 100 && query_ok == 100,
         std::to_string(equal) + "/100 identical, " + std::to_string(query_ok) +
             "/100 query counts within message counts");
}

// ---------------------------------------------------------------------------
// C8: beeping semantics micro-suite, exhaustive over bipartite shapes with at
// most 4 nodes and all 3^nodes action combinations.
void criterion_8() {
  long long checked = 0, good = 0;
  std::vector<std::pair<int, int>> shapes = {{1, 1}, {1, 2}, {2, 1}, {1, 3}, {3, 1}, {2, 2}};
  for (auto [m, n] : shapes) {
    const int edges = m * n;
    for (int mask = 0; mask < (1 << edges); ++mask) {
      std::vector<std::vector<int>> sets(m);
      std::vector<char> covered(n, 0);
      for (int s = 0; s < m; ++s)
        for (int e = 0; e < n; ++e)
          if (mask & (1 << (s * n + e))) {
            sets[s].push_back(e);
            covered[e] = 1;
          }
      if (std::find(covered.begin(), covered.end(), 0) != covered.end()) continue;
      const Instance inst = new_instance(n, sets);
      const int nodes = inst.num_nodes();
      std::vector<SlotAction> actions(nodes, SlotAction::Idle);
      long long combos = 1;
      for (int i = 0; i < nodes; ++i) combos *= 3;
      for (long long code = 0; code < combos; ++code) {
        long long c = code;
        for (int v = 0; v < nodes; ++v) {
          const int a = static_cast<int>(c % 3);
          c /= 3;
          actions[v] = a == 0 ? SlotAction::Beep : a == 1 ? SlotAction::Listen : SlotAction::Idle;
        }
        const SlotOutcome out = step_slot(inst, actions);
        const Adjacency adj = bipartite_adjacency(inst);
        bool ok = true;
        for (int v = 0; v < nodes; ++v) {
          bool neighbor_beeped = false;
          for (int w : adj[v]) neighbor_beeped = neighbor_beeped || actions[w] == SlotAction::Beep;
          if (actions[v] == SlotAction::Listen) {
            ok = ok && (out.heard[v] != 0) == neighbor_beeped;
          } else {
            ok = ok && out.heard[v] == 0;  // beepers and idlers learn nothing
          }
        }
        ++checked;
        good += ok;
      }
    }
  }
  report(8, "beeping semantics micro-suite (exhaustive, <= 4 nodes)", checked == good,
         std::to_string(good) + "/" + std::to_string(checked) + " action combinations exact");
}

// ---------------------------------------------------------------------------
// C9: DominatingSet: always dominating on 100 random connected graphs
// (<= 50 nodes); on cycles the mean solution size stays under 0.75 n.
void criterion_9() {
  int dominating = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 2 + static_cast<int>(seed % 49);
    const double p = seed % 2 ? 0.08 : 0.25;
    const Adjacency adj = random_connected_graph(n, p, seed);
    const int k = 2 + static_cast<int>(seed % 3);
    const auto res = run_dominating_set(adj, k, seed * 3 + 1);
    dominating += is_dominating(adj, res.solution.chosen);
  }
  bool cycles_ok = true;
  std::string cycle_detail;
  for (int n : {8, 20}) {
    const Adjacency cyc = cycle_graph(n);
    double mean = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto res = run_dominating_set(cyc, 2, seed);
      cycles_ok = cycles_ok && is_dominating(cyc, res.solution.chosen);
      mean += static_cast<double>(res.solution.size());
    }
    mean /= 100.0;
    cycles_ok = cycles_ok && mean <= 0.75 * n;
    char buf[64];
    std::snprintf(buf, sizeof(buf), " C%d mean %.2f<=%.1f", n, mean, 0.75 * n);
    cycle_detail += buf;
  }
  report(9, "dominating-set variant", dominating == 100 && cycles_ok,
         std::to_string(dominating) + "/100 dominating;" + cycle_detail);
}

}  // namespace

int main() {
  criteria_1_and_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (failures == 0)
    std::printf("acceptance: all criteria passed\n");
  else
    std::printf("acceptance: %d criteria FAILED\n", failures);
  return failures;
}
