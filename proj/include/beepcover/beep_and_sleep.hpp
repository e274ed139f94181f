#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "beepcover/beeping.hpp"
#include "beepcover/errors.hpp"
#include "beepcover/graph.hpp"
#include "beepcover/instance.hpp"
#include "beepcover/rng.hpp"

namespace beepcover {

// Time hierarchy of the protocol: k phases, 4k rounds per phase, 4k listen
// slots plus one announcement slot per round. In phase j roughly the sets
// spanning delta_j = ceil(delta / delta^(j/k)) uncovered elements are meant
// to join. A set's wake round is 4k - X with X capped-geometric; X = 0 parks
// the wake at round index 4k, one past the last round, so the set sleeps
// through the phase and retries in the next one.
struct PhaseSchedule {
  int k = 1;
  int delta = 1;
  std::vector<int> deltas;  // delta_0 .. delta_k, non-increasing, ends at 1
  int rounds_per_phase = 4;
  int slots_per_round = 5;
  int join_threshold = 3;  // distinct heard slots needed in the wake round
  int geo_cap = 4;         // wake sample support is [0, 4k]
  double wake_success_prob = 0.0;

  double activation_prob(int phase) const {
    return std::min(1.0, 4.0 * k / deltas[phase]);
  }
  long long main_slots() const {
    return static_cast<long long>(k) * rounds_per_phase * slots_per_round;
  }
  // the appended cleanup takes two slots: uncovered elements beep, then every
  // unjoined set that heard anything joins and announces
  long long total_slots() const { return main_slots() + 2; }
};

inline PhaseSchedule phase_schedule(int delta, int k) {
  if (delta < 1 || k < 1) throw InfeasibleParams("need delta >= 1 and k >= 1");
  PhaseSchedule sched;
  sched.k = k;
  sched.delta = delta;
  sched.rounds_per_phase = 4 * k;
  sched.slots_per_round = 4 * k + 1;
  sched.join_threshold = 3 * k;
  sched.geo_cap = 4 * k;
  sched.deltas.resize(k + 1);
  sched.deltas[0] = delta;
  sched.deltas[k] = 1;
  const double log_delta = std::log(static_cast<double>(delta));
  for (int j = 1; j < k; ++j) {
    const double v = std::exp(log_delta * (1.0 - static_cast<double>(j) / k));
    sched.deltas[j] = std::max(1, static_cast<int>(std::ceil(v - 1e-9)));
  }
  for (int j = 1; j <= k; ++j) sched.deltas[j] = std::min(sched.deltas[j], sched.deltas[j - 1]);
  sched.wake_success_prob = 1.0 - std::pow(static_cast<double>(delta), -1.0 / k);
  return sched;
}

// position of a slot inside the schedule
struct SlotClock {
  bool cleanup_a = false;
  bool cleanup_b = false;
  int phase = 0;
  int round = 0;
  int slot_in_round = 0;  // 0..4k-1 are listen slots, 4k is the announcement
  bool announce_flag = false;
  bool phase_start() const { return !cleanup_a && !cleanup_b && round == 0 && slot_in_round == 0; }
  int listen_slot() const { return slot_in_round + 1; }  // 1..4k within a round
};

inline SlotClock decode_slot(const PhaseSchedule& sched, long long slot) {
  SlotClock c;
  const long long main = sched.main_slots();
  if (slot >= main) {
    c.cleanup_a = (slot == main);
    c.cleanup_b = (slot == main + 1);
    return c;
  }
  const long long per_phase =
      static_cast<long long>(sched.rounds_per_phase) * sched.slots_per_round;
  c.phase = static_cast<int>(slot / per_phase);
  const long long in_phase = slot % per_phase;
  c.round = static_cast<int>(in_phase / sched.slots_per_round);
  c.slot_in_round = static_cast<int>(in_phase % sched.slots_per_round);
  c.announce_flag = (c.slot_in_round == sched.slots_per_round - 1);
  return c;
}

// Per-node random draws happen in a fixed order at each phase start (sets: X;
// elements: activation then beep slot), which lets independent replays of the
// same seed reproduce a run draw for draw.
class BeepAndSleepProtocol {
 public:
  struct State {
    bool is_set = false;
    // set role
    bool joined = false;
    int wake_round = -1;
    int heard_slots = 0;
    bool cleanup_heard = false;
    // element role
    bool covered = false;
    bool active = false;
    int beep_slot = 0;
  };

  BeepAndSleepProtocol(const PhaseSchedule& sched, int num_sets)
      : sched_(sched), num_sets_(num_sets) {}

  State make_state(int node, Rng&) const {
    State st;
    st.is_set = node < num_sets_;
    return st;
  }

  SlotAction act(State& st, long long slot, Rng& rng) const {
    const SlotClock c = decode_slot(sched_, slot);
    if (c.cleanup_a) {
      if (st.is_set) return st.joined ? SlotAction::Idle : SlotAction::Listen;
      return st.covered ? SlotAction::Idle : SlotAction::Beep;
    }
    if (c.cleanup_b) {
      if (st.is_set) {
        if (!st.joined && st.cleanup_heard) {
          st.joined = true;
          return SlotAction::Beep;
        }
        return SlotAction::Idle;
      }
      return st.covered ? SlotAction::Idle : SlotAction::Listen;
    }

    if (st.is_set) {
      if (st.joined) return SlotAction::Idle;
      if (c.phase_start()) {
        const int x = sample_capped_geometric(sched_.wake_success_prob, sched_.geo_cap, rng);
        st.wake_round = sched_.geo_cap - x;  // == rounds_per_phase when x = 0: sleep
        st.heard_slots = 0;
      }
      if (c.round != st.wake_round) return SlotAction::Idle;
      if (c.announce_flag) {
        if (st.heard_slots >= sched_.join_threshold) {
          st.joined = true;
          return SlotAction::Beep;
        }
        return SlotAction::Idle;
      }
      return SlotAction::Listen;
    }

    // element role
    if (st.covered) return SlotAction::Idle;
    if (c.phase_start()) {
      st.active = rng.bernoulli(sched_.activation_prob(c.phase));
      st.beep_slot = rng.uniform_int(1, 4 * sched_.k);
    }
    if (c.announce_flag) return SlotAction::Listen;
    if (st.active && st.beep_slot == c.listen_slot()) return SlotAction::Beep;
    return SlotAction::Idle;
  }

  void observe(State& st, long long slot, SlotAction own, bool heard) const {
    if (own != SlotAction::Listen) return;
    const SlotClock c = decode_slot(sched_, slot);
    if (st.is_set) {
      if (c.cleanup_a) {
        st.cleanup_heard = heard;
      } else if (heard) {
        ++st.heard_slots;
      }
      return;
    }
    if (heard) st.covered = true;  // announcement or cleanup-B carrier sense
  }

  bool finished(long long slot) const { return slot >= sched_.total_slots(); }

 private:
  PhaseSchedule sched_;
  int num_sets_;
};

// Observer-side cover statistics. mu counts the neighbor sets that joined in
// the exact time step an element was first covered; eta compares the best
// span in its whole neighborhood against the worst span among its
// simultaneous coverers, spans taken the instant before that step's coverage
// lands. Computed omnisciently by the harness; nothing is sent for it.
struct CoverSample {
  int element = -1;
  long long time = -1;
  int mu = 0;
  double eta = 1.0;
};

struct CoverStats {
  std::vector<CoverSample> samples;

  long long max_mu() const {
    long long m = 0;
    for (const auto& s : samples) m = std::max<long long>(m, s.mu);
    return m;
  }
  double mean_mu() const {
    if (samples.empty()) return 0.0;
    double acc = 0;
    for (const auto& s : samples) acc += s.mu;
    return acc / samples.size();
  }
  double mean_eta() const {
    if (samples.empty()) return 0.0;
    double acc = 0;
    for (const auto& s : samples) acc += s.eta;
    return acc / samples.size();
  }
};

namespace detail {

// Shared by the beeping and KT0 runners: watches join events, maintains spans
// (uncovered member counts), and produces Solution + CoverStats.
struct CoverTracker {
  const Instance* inst;
  std::vector<char> uncovered;
  std::vector<int> span;
  std::vector<char> joined;
  Solution solution;
  CoverStats stats;

  explicit CoverTracker(const Instance& instance) : inst(&instance) {
    uncovered.assign(inst->n_elements, 1);
    span.resize(inst->num_sets());
    for (int s = 0; s < inst->num_sets(); ++s)
      span[s] = static_cast<int>(inst->sets[s].size());
    joined.assign(inst->num_sets(), 0);
    solution.per_element_coverer.assign(inst->n_elements, {});
  }

  // `joiners[s]` true for every set that joined at this time step; `notified`
  // decides whether a given uncovered element learns about it this step.
  template <class Notified>
  void apply_joins(const std::vector<char>& joiners, long long time, Notified&& notified) {
    bool any = false;
    for (int s = 0; s < inst->num_sets(); ++s)
      if (joiners[s] && !joined[s]) {
        joined[s] = 1;
        solution.chosen.push_back(s);
        any = true;
      }
    if (!any) return;
    std::vector<int> newly;
    for (int s = 0; s < inst->num_sets(); ++s) {
      if (!joiners[s]) continue;
      for (int e : inst->sets[s])
        if (uncovered[e] == 1 && notified(e)) {
          uncovered[e] = 2;  // covered this very step; spans not yet updated
          newly.push_back(e);
        }
    }
    for (int e : newly) {
      CoverSample sample;
      sample.element = e;
      sample.time = time;
      int neighborhood_max_span = 0;
      int coverer_min_span = 0;
      int first_coverer = -1;
      for (const auto& ref : inst->element_ports[e]) {
        neighborhood_max_span = std::max(neighborhood_max_span, span[ref.set]);
        if (joiners[ref.set]) {
          ++sample.mu;
          if (first_coverer < 0) first_coverer = ref.set;
          coverer_min_span =
              coverer_min_span == 0 ? span[ref.set] : std::min(coverer_min_span, span[ref.set]);
        }
      }
      sample.eta = static_cast<double>(neighborhood_max_span) / coverer_min_span;
      stats.samples.push_back(sample);
      solution.per_element_coverer[e] = {first_coverer, time};
    }
    for (int e : newly) {
      uncovered[e] = 0;
      for (const auto& ref : inst->element_ports[e]) --span[ref.set];
    }
  }

  void finalize() { std::sort(solution.chosen.begin(), solution.chosen.end()); }
};

}  // namespace detail

struct BeepSleepResult {
  Solution solution;
  BeepMetrics metrics;
  CoverStats stats;
  PhaseSchedule schedule;
  BeepTranscript transcript;
};

inline BeepSleepResult run_beep_and_sleep(const Instance& inst, int k, std::uint64_t seed,
                                          bool record_transcript = false) {
  const PhaseSchedule sched = phase_schedule(inst.delta, k);
  BeepAndSleepProtocol proto(sched, inst.num_sets());
  detail::CoverTracker tracker(inst);

  auto observer = [&](long long slot, const std::vector<SlotAction>& actions,
                      const SlotOutcome& outcome) {
    const SlotClock c = decode_slot(sched, slot);
    if (!c.announce_flag && !c.cleanup_b) return;
    std::vector<char> joiners(inst.num_sets(), 0);
    bool any = false;
    for (int s = 0; s < inst.num_sets(); ++s)
      if (actions[s] == SlotAction::Beep) {
        joiners[s] = 1;  // at announcement slots only joining sets beep
        any = true;
      }
    if (!any) return;
    // an element learns of the join iff it listened and carrier sense fired
    tracker.apply_joins(joiners, slot, [&](int e) {
      const int node = element_node(inst, e);
      return actions[node] == SlotAction::Listen && outcome.heard[node] != 0;
    });
  };

  auto run = run_beeping(inst, proto, seed, sched.total_slots(), record_transcript, observer);
  tracker.finalize();

  BeepSleepResult result;
  result.solution = std::move(tracker.solution);
  result.metrics = run.metrics;
  result.stats = std::move(tracker.stats);
  result.schedule = sched;
  result.transcript = std::move(run.transcript);
  return result;
}

// DominatingSet variant: every node plays both roles on the raw graph. A node
// cannot beep and listen at once, so an active node does not run the set-role
// listening; it adds itself instead. Self-adds are staggered across the
// phase's rounds by reusing the node's beep slot as a trigger round, and fire
// at that round's announcement slot only if the node is still uncovered.
// The ladder runs one phase further than the SetCover schedule, down to
// delta_k = 1 where the activation probability is 1: every leftover node adds
// itself there, so the returned set always dominates and no cleanup pair is
// needed.
class DominatingSetProtocol {
 public:
  struct State {
    bool joined = false;
    bool covered = false;
    bool active = false;
    int beep_slot = 0;
    int trigger_round = 0;
    int wake_round = -1;
    int heard_slots = 0;
  };

  explicit DominatingSetProtocol(const PhaseSchedule& sched) : sched_(sched) {}

  State make_state(int, Rng&) const { return {}; }

  SlotAction act(State& st, long long slot, Rng& rng) const {
    const SlotClock c = decode_phase_slot(slot);
    if (c.phase_start()) {
      if (!st.joined) {
        const int x = sample_capped_geometric(sched_.wake_success_prob, sched_.geo_cap, rng);
        st.wake_round = sched_.geo_cap - x;
        st.heard_slots = 0;
      }
      if (!st.covered) {
        // phase index k is the terminal delta_k = 1 phase, activation 1
        const double act_p = 4.0 * sched_.k / sched_.deltas[c.phase];
        st.active = rng.bernoulli(std::min(1.0, act_p));
        st.beep_slot = rng.uniform_int(1, 4 * sched_.k);
        st.trigger_round = st.beep_slot - 1;
      }
    }
    if (c.announce_flag) {
      if (!st.joined) {
        const bool set_role_join = (c.round == st.wake_round && st.heard_slots >= sched_.join_threshold);
        const bool self_add = (st.active && !st.covered && c.round == st.trigger_round);
        if (set_role_join || self_add) {
          st.joined = true;
          st.covered = true;  // a member of the solution dominates itself
          return SlotAction::Beep;
        }
      }
      return st.covered ? SlotAction::Idle : SlotAction::Listen;
    }
    // listen slots
    if (!st.covered && st.active && st.beep_slot == c.listen_slot()) return SlotAction::Beep;
    if (!st.joined && c.round == st.wake_round) return SlotAction::Listen;
    return SlotAction::Idle;
  }

  void observe(State& st, long long slot, SlotAction own, bool heard) const {
    if (own != SlotAction::Listen || !heard) return;
    const SlotClock c = decode_phase_slot(slot);
    if (c.announce_flag)
      st.covered = true;
    else
      ++st.heard_slots;
  }

  // k+1 phases, no cleanup pair: the terminal phase already closes every gap
  long long total_slots() const {
    return static_cast<long long>(sched_.k + 1) * sched_.rounds_per_phase *
           sched_.slots_per_round;
  }
  bool finished(long long slot) const { return slot >= total_slots(); }

 private:
  SlotClock decode_phase_slot(long long slot) const {
    SlotClock c;
    const long long per_phase =
        static_cast<long long>(sched_.rounds_per_phase) * sched_.slots_per_round;
    c.phase = static_cast<int>(slot / per_phase);
    const long long in_phase = slot % per_phase;
    c.round = static_cast<int>(in_phase / sched_.slots_per_round);
    c.slot_in_round = static_cast<int>(in_phase % sched_.slots_per_round);
    c.announce_flag = (c.slot_in_round == sched_.slots_per_round - 1);
    return c;
  }

  PhaseSchedule sched_;
};

struct DominatingSetResult {
  Solution solution;  // chosen node ids; per_element_coverer indexed by node
  BeepMetrics metrics;
  PhaseSchedule schedule;
};

inline DominatingSetResult run_dominating_set(const Adjacency& adj, int k, std::uint64_t seed) {
  int max_closed = 1;
  for (const auto& nbrs : adj) max_closed = std::max(max_closed, static_cast<int>(nbrs.size()) + 1);
  const PhaseSchedule sched = phase_schedule(max_closed, k);
  DominatingSetProtocol proto(sched);
  auto run = run_beeping(adj, proto, seed, proto.total_slots());

  DominatingSetResult result;
  result.schedule = sched;
  result.metrics = run.metrics;
  result.solution.per_element_coverer.assign(adj.size(), {});
  for (int v = 0; v < static_cast<int>(adj.size()); ++v)
    if (run.states[v].joined) result.solution.chosen.push_back(v);
  for (int v : result.solution.chosen) {
    result.solution.per_element_coverer[v] = {v, 0};
    for (int w : adj[v])
      if (result.solution.per_element_coverer[w].set < 0)
        result.solution.per_element_coverer[w] = {v, 0};
  }
  return result;
}

}  // namespace beepcover
