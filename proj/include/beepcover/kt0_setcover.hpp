#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "beepcover/beep_and_sleep.hpp"
#include "beepcover/errors.hpp"
#include "beepcover/instance.hpp"
#include "beepcover/kt0.hpp"
#include "beepcover/rng.hpp"

namespace beepcover {

// Two-stage message-efficient SetCover in the KT0 model. k is fixed to
// ceil(log2 delta); each phase has 4k one-slot rounds. Uncovered elements
// activate each incident edge independently and beep on active edges every
// round; a set waking in round 4k - X joins iff its wake-round inbox holds at
// least c*4*ln(N) beeps. After phase ceil(k/2) every still-uncovered element
// notifies its sets (these elements form U'), and later join announcements
// travel only on the ports those notifications arrived on. One cleanup
// exchange (JOIN-REQUEST on port 0, JOINED back) covers any stragglers.
struct Kt0Params {
  double c = 2.0;
  int delta = 1;
  int total_nodes = 2;  // n_elements + m; all nodes know ln of this
  int k_fixed = 0;
  int phases_total = 0;
  int stage_boundary = 0;
  int rounds_per_phase = 0;
  int geo_cap = 0;
  double wakeup_success_prob = 0.0;
  double join_threshold = 0.0;

  static Kt0Params make(const Instance& inst, double c = 2.0) {
    if (c <= 0.0) throw InfeasibleParams("need c > 0");
    Kt0Params p;
    p.c = c;
    p.delta = inst.delta;
    p.total_nodes = inst.num_nodes();
    p.k_fixed = 0;
    while ((1 << p.k_fixed) < p.delta) ++p.k_fixed;
    p.phases_total = p.k_fixed;
    p.stage_boundary = (p.k_fixed + 1) / 2;
    p.rounds_per_phase = 4 * p.k_fixed;
    p.geo_cap = 4 * p.k_fixed;
    p.wakeup_success_prob =
        p.k_fixed > 0 ? 1.0 - std::pow(static_cast<double>(p.delta), -1.0 / p.k_fixed) : 0.0;
    p.join_threshold = c * 4.0 * std::log(static_cast<double>(p.total_nodes));
    return p;
  }

  // phases are 1-indexed
  double activation_prob(int phase) const {
    const double raw = c * 8.0 * std::log(static_cast<double>(total_nodes)) *
                       std::pow(2.0, phase) / delta;
    return std::min(1.0, raw);
  }

  // round layout: stage-1 phases, one boundary round, stage-2 phases, then a
  // three-round cleanup (request, join+reply, receive)
  long long boundary_round() const {
    return static_cast<long long>(stage_boundary) * rounds_per_phase;
  }
  long long cleanup_request_round() const {
    return static_cast<long long>(phases_total) * rounds_per_phase + 1;
  }
  long long total_rounds() const { return cleanup_request_round() + 3; }

  struct RoundInfo {
    enum Kind { Phase, Boundary, CleanupRequest, CleanupJoin, CleanupReceive } kind;
    int phase = 0;           // 1-indexed, valid when kind == Phase
    int round_in_phase = 0;  // 0 .. 4k-1
  };

  RoundInfo classify(long long round) const {
    RoundInfo info{RoundInfo::Phase, 0, 0};
    const long long b = boundary_round();
    const long long cr = cleanup_request_round();
    if (round == b && stage_boundary <= phases_total) {
      info.kind = RoundInfo::Boundary;
      return info;
    }
    if (round >= cr) {
      info.kind = round == cr              ? RoundInfo::CleanupRequest
                  : round == cr + 1        ? RoundInfo::CleanupJoin
                                           : RoundInfo::CleanupReceive;
      return info;
    }
    const long long adjusted = round < b ? round : round - 1;
    info.phase = static_cast<int>(adjusted / rounds_per_phase) + 1;
    info.round_in_phase = static_cast<int>(adjusted % rounds_per_phase);
    return info;
  }

  const char* stage_label(long long round) const {
    const long long b = boundary_round();
    if (round < b) return "stage1";
    if (round == b) return "boundary";
    if (round < cleanup_request_round()) return "stage2";
    return "cleanup";
  }
};

struct Kt0JoinRecord {
  int set = -1;
  long long round = -1;
  int beeps = 0;   // beep count that triggered a phase join; 0 for cleanup
  int phase = 0;   // 0 for cleanup joins
};

class Kt0SetCoverProtocol {
 public:
  struct State {
    bool is_set = false;
    int ports = 0;
    // set role
    bool joined = false;
    int wake_round = -1;
    bool has_view = false;
    std::vector<int> view;  // ports that reported UNCOVERED at the boundary
    long long join_round = -1;
    int join_beeps = 0;
    int join_phase = 0;
    // element role
    bool covered = false;
    std::vector<int> active_ports;
  };

  Kt0SetCoverProtocol(const Kt0Params& params, const std::vector<int>& port_counts, int num_sets)
      : params_(params), port_counts_(port_counts), num_sets_(num_sets) {}

  State make_state(int node, Rng&) const {
    State st;
    st.is_set = node < num_sets_;
    st.ports = port_counts_[node];
    return st;
  }

  Outbox step(State& st, const Inbox& inbox, long long round, Rng& rng) const {
    const auto info = params_.classify(round);
    if (st.is_set) return step_set(st, inbox, round, info, rng);
    return step_element(st, inbox, info, rng);
  }

  bool finished(long long round) const { return round >= params_.total_rounds(); }
  const char* stage_label(long long round) const { return params_.stage_label(round); }
  const Kt0Params& params() const { return params_; }

 private:
  Outbox step_set(State& st, const Inbox& inbox, long long round,
                  const Kt0Params::RoundInfo& info, Rng& rng) const {
    int beeps = 0;
    std::vector<int> request_ports;
    for (const PortMsg& msg : inbox) {
      switch (msg.tag) {
        case Tag::Beep: ++beeps; break;
        case Tag::Uncovered:
          if (!st.has_view) {
            st.has_view = true;
            st.view.clear();
          }
          st.view.push_back(msg.port);
          break;
        case Tag::JoinRequest: request_ports.push_back(msg.port); break;
        default: break;
      }
    }

    Outbox out;
    if (info.kind == Kt0Params::RoundInfo::CleanupJoin && !request_ports.empty()) {
      if (!st.joined) {
        st.joined = true;
        st.join_round = round;
      }
      for (int p : request_ports) out.push_back({p, Tag::Joined});
      return out;
    }
    if (info.kind != Kt0Params::RoundInfo::Phase) return out;

    if (info.round_in_phase == 0 && !st.joined) {
      const int x = sample_capped_geometric(params_.wakeup_success_prob, params_.geo_cap, rng);
      st.wake_round = params_.geo_cap - x;  // == 4k when x = 0: sleep this phase
    }
    if (!st.joined && info.round_in_phase == st.wake_round &&
        static_cast<double>(beeps) >= params_.join_threshold) {
      st.joined = true;
      st.join_round = round;
      st.join_beeps = beeps;
      st.join_phase = info.phase;
      if (info.phase > params_.stage_boundary) {
        // a stage-2 join can only be triggered by beeps from U' members, so
        // the view is never empty here
        for (int p : st.view) out.push_back({p, Tag::Joined});
      } else {
        for (int p = 0; p < st.ports; ++p) out.push_back({p, Tag::Joined});
      }
    }
    return out;
  }

  Outbox step_element(State& st, const Inbox& inbox, const Kt0Params::RoundInfo& info,
                      Rng& rng) const {
    for (const PortMsg& msg : inbox)
      if (msg.tag == Tag::Joined) st.covered = true;
    Outbox out;
    if (st.covered) return out;
    switch (info.kind) {
      case Kt0Params::RoundInfo::Phase:
        if (info.round_in_phase == 0) {
          st.active_ports.clear();
          const double p = params_.activation_prob(info.phase);
          for (int q = 0; q < st.ports; ++q)
            if (rng.bernoulli(p)) st.active_ports.push_back(q);
        }
        for (int q : st.active_ports) out.push_back({q, Tag::Beep});
        break;
      case Kt0Params::RoundInfo::Boundary:
        for (int q = 0; q < st.ports; ++q) out.push_back({q, Tag::Uncovered});
        break;
      case Kt0Params::RoundInfo::CleanupRequest:
        out.push_back({0, Tag::JoinRequest});
        break;
      default:
        break;
    }
    return out;
  }

  Kt0Params params_;
  std::vector<int> port_counts_;
  int num_sets_;
};

struct Kt0SetCoverResult {
  Solution solution;
  MessageStats stats;
  CoverStats cover_stats;
  Kt0Params params;
  long long rounds = 0;
  std::vector<Kt0JoinRecord> joins;
  std::vector<char> boundary_uncovered;  // U' indicator, indexed by element
  long long boundary_max_uncovered = 0;  // max uncovered members per set at the boundary
};

namespace detail {

inline std::vector<int> port_counts(const Instance& inst) {
  std::vector<int> counts(inst.num_nodes());
  for (int s = 0; s < inst.num_sets(); ++s)
    counts[s] = static_cast<int>(inst.sets[s].size());
  for (int e = 0; e < inst.n_elements; ++e)
    counts[inst.num_sets() + e] = static_cast<int>(inst.element_ports[e].size());
  return counts;
}

template <class Resolver>
Kt0SetCoverResult run_kt0_setcover_impl(const Instance& inst, const Kt0Params& params,
                                        std::uint64_t seed, const Resolver& resolver,
                                        MessageLog* log) {
  Kt0SetCoverProtocol proto(params, port_counts(inst), inst.num_sets());
  CoverTracker tracker(inst);

  Kt0SetCoverResult result;
  result.params = params;

  auto observer = [&](long long round, const std::vector<Outbox>& outboxes) {
    if (round == params.boundary_round()) {
      result.boundary_uncovered.assign(inst.n_elements, 0);
      for (int e = 0; e < inst.n_elements; ++e)
        result.boundary_uncovered[e] = tracker.uncovered[e] ? 1 : 0;
      for (int s = 0; s < inst.num_sets(); ++s)
        result.boundary_max_uncovered =
            std::max<long long>(result.boundary_max_uncovered, tracker.span[s]);
    }
    std::vector<char> joiners(inst.num_sets(), 0);
    bool any = false;
    for (int s = 0; s < inst.num_sets(); ++s) {
      if (tracker.joined[s]) continue;
      for (const PortMsg& msg : outboxes[s])
        if (msg.tag == Tag::Joined) {
          joiners[s] = 1;
          any = true;
          break;
        }
    }
    if (!any) return;
    // every uncovered element with a joining neighbor learns of it: stage-1
    // joins announce on all ports, stage-2 joins reach all of U' (a superset
    // of the still-uncovered), and a cleanup join answers its requester
    tracker.apply_joins(joiners, round, [](int) { return true; });
  };

  auto run = run_kt0_engine(inst, proto, resolver, seed, params.total_rounds(), log, observer);
  tracker.finalize();

  result.solution = std::move(tracker.solution);
  result.stats = std::move(run.stats);
  result.cover_stats = std::move(tracker.stats);
  result.rounds = static_cast<long long>(result.stats.per_round.size());
  for (int s = 0; s < inst.num_sets(); ++s) {
    const auto& st = run.states[s];
    if (st.joined) result.joins.push_back({s, st.join_round, st.join_beeps, st.join_phase});
  }
  if (result.boundary_uncovered.empty())
    result.boundary_uncovered.assign(inst.n_elements, 0);
  return result;
}

}  // namespace detail

inline Kt0SetCoverResult run_kt0_setcover(const Instance& inst, const Kt0Params& params,
                                          std::uint64_t seed, MessageLog* log = nullptr) {
  return detail::run_kt0_setcover_impl(inst, params, seed, DirectResolver{&inst}, log);
}

inline Kt0SetCoverResult run_kt0_setcover(const Instance& inst, double c, std::uint64_t seed,
                                          MessageLog* log = nullptr) {
  return run_kt0_setcover(inst, Kt0Params::make(inst, c), seed, log);
}

struct Kt0QueryResult {
  Kt0SetCoverResult result;
  QueryCounter queries;
};

inline Kt0QueryResult run_kt0_setcover_via_queries(const Instance& inst, const Kt0Params& params,
                                                   std::uint64_t seed,
                                                   MessageLog* log = nullptr) {
  Kt0QueryResult out;
  out.result = detail::run_kt0_setcover_impl(inst, params, seed,
                                             QueryResolver{&inst, &out.queries}, log);
  return out;
}

// Test predicate for the stage boundary: the largest number of uncovered
// members any set still had when U' was frozen.
inline long long stage_boundary_degrees(const Kt0SetCoverResult& result) {
  return result.boundary_max_uncovered;
}

}  // namespace beepcover
