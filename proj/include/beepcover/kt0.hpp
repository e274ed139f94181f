#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "beepcover/errors.hpp"
#include "beepcover/instance.hpp"
#include "beepcover/rng.hpp"

namespace beepcover {

// Round-synchronous KT0 clean network: nodes know only their port count, may
// send one distinct O(log n)-bit message per port per round, and receive in
// the next round tagged with the receiver-side port. The payload alphabet is
// the small closed set of protocol tags below.

enum class Tag : std::uint8_t { Beep, Joined, Uncovered, JoinRequest };

inline const char* tag_name(Tag t) {
  switch (t) {
    case Tag::Beep: return "BEEP";
    case Tag::Joined: return "JOINED";
    case Tag::Uncovered: return "UNCOVERED";
    default: return "JOIN-REQUEST";
  }
}

struct PortMsg {
  int port;  // sender-side in an outbox, receiver-side in an inbox
  Tag tag;
  bool operator==(const PortMsg&) const = default;
};

using Outbox = std::vector<PortMsg>;
using Inbox = std::vector<PortMsg>;

struct MessageStats {
  long long total = 0;
  std::vector<long long> per_round;
  std::map<std::string, long long> per_stage;

  long long stage(const std::string& label) const {
    auto it = per_stage.find(label);
    return it == per_stage.end() ? 0 : it->second;
  }
};

struct QueryCounter {
  long long elt_of = 0;
  long long set_of = 0;
  long long total() const { return elt_of + set_of; }
};

// `round sender_kind sender_id port tag`, one row per sent message
struct MsgLogRow {
  long long round;
  bool sender_is_set;
  int sender;
  int port;
  Tag tag;
};

struct MessageLog {
  std::vector<MsgLogRow> rows;

  std::string dump() const {
    std::string out;
    for (const auto& r : rows) {
      out += std::to_string(r.round);
      out += r.sender_is_set ? " set " : " elem ";
      out += std::to_string(r.sender);
      out += ' ';
      out += std::to_string(r.port);
      out += ' ';
      out += tag_name(r.tag);
      out += '\n';
    }
    return out;
  }
};

// Adjacency lookups behind the engine. The direct resolver reads the problem
// graph; the query resolver answers the same lookups through the sequential
// EltOf/SetOf primitives and counts every call, one query per delivered
// message. Local bookkeeping around the lookups costs no queries.
struct DirectResolver {
  const Instance* inst;

  // element e, port j -> (set id, receiver-side port)
  std::pair<int, int> from_element(int e, int j) const {
    const auto& ref = inst->element_ports[e][j];
    return {ref.set, ref.port_in_set};
  }
  // set s, port q -> (element id, receiver-side port)
  std::pair<int, int> from_set(int s, int q) const {
    return {inst->sets[s][q], inst->set_back_ports[s][q]};
  }
};

// SetOf(i, j): the j-th set containing element i. EltOf(i, j): the j-th
// element of set i. Both return the receiver together with the port on which
// the message lands.
struct QueryResolver {
  const Instance* inst;
  QueryCounter* counter;

  std::pair<int, int> from_element(int e, int j) const {
    ++counter->set_of;
    const auto& ref = inst->element_ports[e][j];
    return {ref.set, ref.port_in_set};
  }
  std::pair<int, int> from_set(int s, int q) const {
    ++counter->elt_of;
    return {inst->sets[s][q], inst->set_back_ports[s][q]};
  }
};

// One delivery step: outboxes are indexed by node (sets first, then
// elements); the result is every node's inbox for the next round.
template <class Resolver>
std::vector<Inbox> deliver_round(const Instance& inst, const std::vector<Outbox>& outboxes,
                                 const Resolver& resolver) {
  const int m = inst.num_sets();
  std::vector<Inbox> inboxes(inst.num_nodes());
  for (int v = 0; v < inst.num_nodes(); ++v) {
    const bool is_set = v < m;
    const int id = is_set ? v : v - m;
    const int ports = is_set ? static_cast<int>(inst.sets[id].size())
                             : static_cast<int>(inst.element_ports[id].size());
    for (const PortMsg& msg : outboxes[v]) {
      if (msg.port < 0 || msg.port >= ports)
        throw InvalidPort("node has " + std::to_string(ports) + " ports, got port " +
                          std::to_string(msg.port));
      if (is_set) {
        auto [e, back] = resolver.from_set(id, msg.port);
        inboxes[m + e].push_back({back, msg.tag});
      } else {
        auto [s, back] = resolver.from_element(id, msg.port);
        inboxes[s].push_back({back, msg.tag});
      }
    }
  }
  return inboxes;
}

inline std::vector<Inbox> step_round(const Instance& inst, const std::vector<Outbox>& outboxes,
                                     MessageStats* stats = nullptr) {
  auto inboxes = deliver_round(inst, outboxes, DirectResolver{&inst});
  if (stats) {
    long long sent = 0;
    for (const auto& ob : outboxes) sent += static_cast<long long>(ob.size());
    stats->total += sent;
    stats->per_round.push_back(sent);
  }
  return inboxes;
}

// A KT0 protocol provides, per node:
//   State make_state(int node, Rng&)
//   Outbox step(State&, const Inbox&, long long round, Rng&)
//   bool finished(long long round)
//   const char* stage_label(long long round)   -- bucket for message counts
// Node logic sees only its own state, its inbox, the round index, and its own
// randomness; identities never cross the interface, only ports.

template <class State>
struct Kt0RunResult {
  std::vector<State> states;
  MessageStats stats;
};

struct NoRoundObserver {
  void operator()(long long, const std::vector<Outbox>&) {}
};

template <class Protocol, class Resolver, class Observer = NoRoundObserver>
Kt0RunResult<typename Protocol::State> run_kt0_engine(const Instance& inst, Protocol& proto,
                                                      const Resolver& resolver,
                                                      std::uint64_t seed, long long max_rounds,
                                                      MessageLog* log = nullptr,
                                                      Observer&& observer = Observer{}) {
  const int n = inst.num_nodes();
  const int m = inst.num_sets();
  Kt0RunResult<typename Protocol::State> result;
  std::vector<Rng> rngs;
  rngs.reserve(n);
  for (int v = 0; v < n; ++v) rngs.push_back(Rng::fork(seed, static_cast<std::uint64_t>(v)));
  result.states.reserve(n);
  for (int v = 0; v < n; ++v) result.states.push_back(proto.make_state(v, rngs[v]));

  std::vector<Inbox> inboxes(n);
  std::vector<Outbox> outboxes(n);
  for (long long round = 0;; ++round) {
    if (proto.finished(round)) break;
    if (round >= max_rounds)
      throw HorizonExceeded("protocol still running after " + std::to_string(max_rounds) +
                            " rounds");
    long long sent = 0;
    for (int v = 0; v < n; ++v) {
      outboxes[v] = proto.step(result.states[v], inboxes[v], round, rngs[v]);
      sent += static_cast<long long>(outboxes[v].size());
      if (log)
        for (const PortMsg& msg : outboxes[v])
          log->rows.push_back({round, v < m, v < m ? v : v - m, msg.port, msg.tag});
    }
    result.stats.total += sent;
    result.stats.per_round.push_back(sent);
    result.stats.per_stage[proto.stage_label(round)] += sent;
    observer(round, outboxes);
    inboxes = deliver_round(inst, outboxes, resolver);
  }
  return result;
}

template <class Protocol>
Kt0RunResult<typename Protocol::State> run_kt0(const Instance& inst, Protocol& proto,
                                               std::uint64_t seed, long long max_rounds,
                                               MessageLog* log = nullptr) {
  return run_kt0_engine(inst, proto, DirectResolver{&inst}, seed, max_rounds, log);
}

template <class Protocol>
struct QueryRunResult {
  Kt0RunResult<typename Protocol::State> run;
  QueryCounter queries;
};

// Same protocol, same seed, but every message resolution goes through the
// query oracle; final states match run_kt0 exactly.
template <class Protocol>
QueryRunResult<Protocol> run_via_queries(const Instance& inst, Protocol& proto,
                                         std::uint64_t seed, long long max_rounds,
                                         MessageLog* log = nullptr) {
  QueryRunResult<Protocol> result;
  result.run = run_kt0_engine(inst, proto, QueryResolver{&inst, &result.queries}, seed,
                              max_rounds, log);
  return result;
}

}  // namespace beepcover
