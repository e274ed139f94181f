#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "beepcover/errors.hpp"
#include "beepcover/graph.hpp"
#include "beepcover/instance.hpp"
#include "beepcover/rng.hpp"

namespace beepcover {

// Slot-synchronous Beeping model: per slot a node beeps, listens, or idles.
// A listener learns one bit, whether at least one neighbor beeped; it can
// distinguish neither which neighbors nor how many. Beeping and listening are
// mutually exclusive, and beeping or idle nodes receive nothing.

enum class SlotAction : std::uint8_t { Beep, Listen, Idle };

inline const char* action_name(SlotAction a) {
  switch (a) {
    case SlotAction::Beep: return "BEEP";
    case SlotAction::Listen: return "LISTEN";
    default: return "IDLE";
  }
}

struct SlotOutcome {
  // heard[v] is true only when v listened and >= 1 neighbor beeped
  std::vector<std::uint8_t> heard;
  long long beep_count = 0;
};

struct BeepMetrics {
  long long slots = 0;
  long long beeps = 0;
};

struct SlotRecord {
  std::vector<SlotAction> actions;
  std::vector<std::uint8_t> heard;
};

struct BeepTranscript {
  std::vector<SlotRecord> slots;

  // one line per (slot, node): `slot_idx node_id action heard`,
  // heard blank unless the node listened
  std::string dump() const {
    std::string out;
    for (std::size_t t = 0; t < slots.size(); ++t) {
      const auto& rec = slots[t];
      for (std::size_t v = 0; v < rec.actions.size(); ++v) {
        out += std::to_string(t);
        out += ' ';
        out += std::to_string(v);
        out += ' ';
        out += action_name(rec.actions[v]);
        if (rec.actions[v] == SlotAction::Listen) {
          out += ' ';
          out += rec.heard[v] ? '1' : '0';
        }
        out += '\n';
      }
    }
    return out;
  }
};

// One synchronous slot over an arbitrary communication graph.
inline SlotOutcome step_slot(const Adjacency& adj, const std::vector<SlotAction>& actions) {
  const int n = static_cast<int>(adj.size());
  SlotOutcome out;
  out.heard.assign(n, 0);
  for (int v = 0; v < n; ++v) {
    if (actions[v] != SlotAction::Beep) continue;
    ++out.beep_count;
    for (int w : adj[v])
      if (actions[w] == SlotAction::Listen) out.heard[w] = 1;
  }
  return out;
}

// Node numbering for bipartite problem graphs: sets first, then elements.
inline int set_node(const Instance&, int s) { return s; }
inline int element_node(const Instance& inst, int e) { return inst.num_sets() + e; }

inline Adjacency bipartite_adjacency(const Instance& inst) {
  Adjacency adj(inst.num_nodes());
  for (int s = 0; s < inst.num_sets(); ++s) {
    for (int e : inst.sets[s]) {
      adj[s].push_back(element_node(inst, e));
      adj[element_node(inst, e)].push_back(s);
    }
  }
  return adj;
}

inline SlotOutcome step_slot(const Instance& inst, const std::vector<SlotAction>& actions) {
  return step_slot(bipartite_adjacency(inst), actions);
}

// A beeping protocol provides, per node:
//   State make_state(int node, Rng&)                 -- initial local state
//   SlotAction act(State&, long long slot, Rng&)     -- choose this slot's action
//   void observe(State&, long long slot, SlotAction own, bool heard)
//   bool finished(long long slot)                    -- termination predicate
// act/observe together are the usual step function
// (state, previous outcome, slot) -> (action, state) split at the moment the
// carrier-sense result becomes available. A node's trajectory therefore
// depends only on its own state, its own action, the one heard bit when it
// listened, the slot index, and its own random stream.

template <class State>
struct BeepRunResult {
  std::vector<State> states;
  BeepMetrics metrics;
  BeepTranscript transcript;  // empty unless recording was requested
};

struct NoSlotObserver {
  void operator()(long long, const std::vector<SlotAction>&, const SlotOutcome&) {}
};

template <class Protocol, class Observer = NoSlotObserver>
BeepRunResult<typename Protocol::State> run_beeping(const Adjacency& adj, Protocol& proto,
                                                    std::uint64_t seed, long long max_slots,
                                                    bool record_transcript = false,
                                                    Observer&& observer = Observer{}) {
  const int n = static_cast<int>(adj.size());
  BeepRunResult<typename Protocol::State> result;
  std::vector<Rng> rngs;
  rngs.reserve(n);
  for (int v = 0; v < n; ++v) rngs.push_back(Rng::fork(seed, static_cast<std::uint64_t>(v)));
  result.states.reserve(n);
  for (int v = 0; v < n; ++v) result.states.push_back(proto.make_state(v, rngs[v]));

  std::vector<SlotAction> actions(n, SlotAction::Idle);
  for (long long slot = 0;; ++slot) {
    if (proto.finished(slot)) break;
    if (slot >= max_slots)
      throw HorizonExceeded("protocol still running after " + std::to_string(max_slots) +
                            " slots");
    for (int v = 0; v < n; ++v) actions[v] = proto.act(result.states[v], slot, rngs[v]);
    SlotOutcome outcome = step_slot(adj, actions);
    result.metrics.beeps += outcome.beep_count;
    ++result.metrics.slots;
    for (int v = 0; v < n; ++v)
      proto.observe(result.states[v], slot, actions[v], outcome.heard[v] != 0);
    observer(slot, actions, outcome);
    if (record_transcript) result.transcript.slots.push_back({actions, outcome.heard});
  }
  return result;
}

template <class Protocol, class Observer = NoSlotObserver>
BeepRunResult<typename Protocol::State> run_beeping(const Instance& inst, Protocol& proto,
                                                    std::uint64_t seed, long long max_slots,
                                                    bool record_transcript = false,
                                                    Observer&& observer = Observer{}) {
  return run_beeping(bipartite_adjacency(inst), proto, seed, max_slots, record_transcript,
                     std::forward<Observer>(observer));
}

}  // namespace beepcover
