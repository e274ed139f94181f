#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "beepcover/errors.hpp"
#include "beepcover/rng.hpp"

namespace beepcover {

// A SetCover instance viewed as a bipartite problem graph: one node per set,
// one node per element, one edge per membership. Membership lists are kept in
// ascending element-id order and list positions double as port numbers, which
// is all a node may use to address its neighbors (no global identifiers reach
// the protocols; ids exist only for the harness and the oracles).
struct Instance {
  struct SetRef {
    int set;          // id of the neighboring set
    int port_in_set;  // this element's port index on that set's list
    bool operator==(const SetRef&) const = default;
  };

  int n_elements = 0;
  std::vector<std::vector<int>> sets;            // sets[s] = element ids, ascending
  std::vector<std::vector<SetRef>> element_ports;  // reverse adjacency, per element
  std::vector<std::vector<int>> set_back_ports;  // port of set s on element sets[s][q]
  int delta = 0;  // max degree over ALL nodes of the problem graph

  int num_sets() const { return static_cast<int>(sets.size()); }
  int num_elements() const { return n_elements; }
  int num_nodes() const { return num_sets() + n_elements; }
  long long num_edges() const {
    long long e = 0;
    for (const auto& s : sets) e += static_cast<long long>(s.size());
    return e;
  }

  bool operator==(const Instance& o) const {
    return n_elements == o.n_elements && sets == o.sets;
  }
};

// Which set covered an element, and the time step (slot or round) it happened.
struct CoverRecord {
  int set = -1;
  long long time = -1;
};

struct Solution {
  std::vector<int> chosen;                        // set ids, ascending
  std::vector<CoverRecord> per_element_coverer;   // indexed by element id

  long long size() const { return static_cast<long long>(chosen.size()); }
};

// Validates membership lists, builds the reverse adjacency and both port maps,
// and computes delta. Lists are canonicalized to ascending order; ports are
// positions in the canonical lists.
inline Instance new_instance(int n, std::vector<std::vector<int>> sets) {
  if (n < 1) throw InfeasibleParams("universe must contain at least one element");
  Instance inst;
  inst.n_elements = n;
  inst.sets = std::move(sets);
  for (auto& members : inst.sets) {
    std::sort(members.begin(), members.end());
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (members[i] < 0 || members[i] >= n)
        throw OutOfRangeId("element id " + std::to_string(members[i]) +
                           " outside [0, " + std::to_string(n) + ")");
      if (i > 0 && members[i] == members[i - 1])
        throw DuplicateMembership("element " + std::to_string(members[i]) +
                                  " listed twice in one set");
    }
  }
  const int m = inst.num_sets();
  inst.element_ports.assign(n, {});
  inst.set_back_ports.assign(m, {});
  for (int s = 0; s < m; ++s) {
    inst.set_back_ports[s].resize(inst.sets[s].size());
    for (int q = 0; q < static_cast<int>(inst.sets[s].size()); ++q) {
      const int e = inst.sets[s][q];
      inst.set_back_ports[s][q] = static_cast<int>(inst.element_ports[e].size());
      inst.element_ports[e].push_back({s, q});
    }
  }
  inst.delta = 0;
  for (const auto& s : inst.sets)
    inst.delta = std::max(inst.delta, static_cast<int>(s.size()));
  for (int e = 0; e < n; ++e) {
    if (inst.element_ports[e].empty())
      throw UncoverableElement("element " + std::to_string(e) +
                               " belongs to no set; no cover exists");
    inst.delta = std::max(inst.delta, static_cast<int>(inst.element_ports[e].size()));
  }
  return inst;
}

// Empty result iff the union of the chosen sets is the whole universe.
inline std::vector<int> verify_cover(const Instance& inst, const Solution& sol) {
  std::vector<char> covered(inst.n_elements, 0);
  for (int s : sol.chosen) {
    if (s < 0 || s >= inst.num_sets())
      throw InvalidSetId("set id " + std::to_string(s) + " outside [0, " +
                         std::to_string(inst.num_sets()) + ")");
    for (int e : inst.sets[s]) covered[e] = 1;
  }
  std::vector<int> uncovered;
  for (int e = 0; e < inst.n_elements; ++e)
    if (!covered[e]) uncovered.push_back(e);
  return uncovered;
}

// Each (element, set) edge is drawn independently with probability edge_prob.
// Elements left uncovered are patched by attaching them to one uniformly
// random set, unless patching is disabled, in which case such instances are
// rejected.
inline Instance generate_random(int n, int m, double edge_prob, std::uint64_t seed,
                                bool patch_uncovered = true) {
  if (n < 1 || m < 1) throw InfeasibleParams("need n >= 1 and m >= 1");
  if (edge_prob < 0.0 || edge_prob > 1.0)
    throw InfeasibleParams("edge_prob outside [0, 1]");
  Rng rng = Rng::fork(seed, 0x9e3779b9ull);
  std::vector<std::vector<int>> sets(m);
  std::vector<char> covered(n, 0);
  for (int s = 0; s < m; ++s)
    for (int e = 0; e < n; ++e)
      if (rng.bernoulli(edge_prob)) {
        sets[s].push_back(e);
        covered[e] = 1;
      }
  for (int e = 0; e < n; ++e) {
    if (covered[e]) continue;
    if (!patch_uncovered)
      throw InfeasibleParams("element " + std::to_string(e) +
                             " uncovered and patching disabled");
    sets[static_cast<int>(rng.below(m))].push_back(e);
  }
  return new_instance(n, std::move(sets));
}

// Family used for message-scaling experiments, parameterized so that the
// maximum set cardinality is exactly delta at every family point while n and
// m stay fixed (m = n, so n+m is constant across a delta sweep).
//
// Construction: ceil(n/delta) "carrier" sets partition the universe into
// blocks of size delta (carrier 0 is always full, pinning the maximum), and
// the remaining sets each hold roughly sqrt(delta) elements sampled without
// replacement, capped so element degrees never exceed delta. Carriers give
// every element one large-span neighbor; the sqrt(delta)-sized tail spreads
// spans across scales.
inline Instance generate_scaling_family(int delta, int n, std::uint64_t seed) {
  if (delta < 1 || n < 1) throw InfeasibleParams("need delta >= 1 and n >= 1");
  if (delta > n) throw InfeasibleParams("need delta <= n");
  const int m = n;
  const int carriers = (n + delta - 1) / delta;
  if (carriers > m) throw InfeasibleParams("delta too small for m = n sets");
  Rng rng = Rng::fork(seed, 0x5ca11ull);
  std::vector<std::vector<int>> sets(m);
  std::vector<int> degree(n, 0);
  for (int j = 0; j < carriers; ++j) {
    // last block wraps backwards so every carrier has exactly delta members
    int lo = std::min(j * delta, n - delta);
    for (int t = 0; t < delta; ++t) {
      sets[j].push_back(lo + t);
      ++degree[lo + t];
    }
  }
  // degree-capped sampling keeps element degrees <= delta, so the instance
  // delta is pinned by the carrier cardinality
  int side = 1;
  while (side * side < delta) ++side;  // ceil(sqrt(delta))
  for (int s = carriers; s < m; ++s) {
    const int want = std::min(side, n);
    std::vector<char> in_set(n, 0);
    for (int tries = 0; tries < 8 * want; ++tries) {
      if (static_cast<int>(sets[s].size()) == want) break;
      const int e = static_cast<int>(rng.below(n));
      if (in_set[e] || degree[e] >= delta) continue;
      in_set[e] = 1;
      sets[s].push_back(e);
      ++degree[e];
    }
    if (sets[s].empty()) {
      // keep the set usable: adopt the lowest-degree element
      int best = 0;
      for (int e = 1; e < n; ++e)
        if (degree[e] < degree[best]) best = e;
      if (degree[best] < delta) {
        sets[s].push_back(best);
        ++degree[best];
      }
    }
  }
  return new_instance(n, std::move(sets));
}

// ---- instance file format -------------------------------------------------
// line 1:        n m
// lines 2..m+1:  c e_1 e_2 ... e_c      (cardinality, then ascending ids)
// ASCII decimal, single spaces, LF line endings.

inline std::string serialize_instance(const Instance& inst) {
  std::string out;
  out += std::to_string(inst.n_elements);
  out += ' ';
  out += std::to_string(inst.num_sets());
  out += '\n';
  for (const auto& members : inst.sets) {
    out += std::to_string(members.size());
    for (int e : members) {
      out += ' ';
      out += std::to_string(e);
    }
    out += '\n';
  }
  return out;
}

inline Instance parse_instance(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char ch : text) {
    if (ch == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) lines.push_back(cur);  // tolerate a missing final LF
  if (lines.empty()) throw ParseError("empty file", 1);

  auto parse_ints = [](const std::string& line, int line_no) {
    std::istringstream ss(line);
    std::vector<long long> vals;
    long long v;
    while (ss >> v) vals.push_back(v);
    std::string rest;
    if (!ss.eof() && ss.fail()) {
      ss.clear();
      ss >> rest;
      throw ParseError("unexpected token '" + rest + "'", line_no);
    }
    return vals;
  };

  const auto header = parse_ints(lines[0], 1);
  if (header.size() != 2) throw ParseError("expected 'n m'", 1);
  const long long n = header[0], m = header[1];
  if (n < 1 || m < 0 || n > 100000000 || m > 100000000)
    throw ParseError("implausible n or m", 1);
  if (static_cast<long long>(lines.size()) != m + 1)
    throw ParseError("expected " + std::to_string(m) + " set lines, found " +
                         std::to_string(lines.size() - 1),
                     static_cast<int>(lines.size()));

  std::vector<std::vector<int>> sets(m);
  for (long long i = 0; i < m; ++i) {
    const int line_no = static_cast<int>(i) + 2;
    const auto vals = parse_ints(lines[i + 1], line_no);
    if (vals.empty()) throw ParseError("expected set cardinality", line_no);
    const long long c = vals[0];
    if (c < 0) throw ParseError("negative cardinality", line_no);
    if (static_cast<long long>(vals.size()) != c + 1)
      throw ParseError("declared " + std::to_string(c) + " ids, found " +
                           std::to_string(vals.size() - 1),
                       line_no);
    for (long long t = 1; t <= c; ++t) {
      if (vals[t] < 0 || vals[t] >= n)
        throw ParseError("element id " + std::to_string(vals[t]) + " out of range",
                         line_no);
      sets[i].push_back(static_cast<int>(vals[t]));
    }
  }
  try {
    return new_instance(static_cast<int>(n), std::move(sets));
  } catch (const Error& e) {
    throw ParseError(e.what(), 1);
  }
}

inline void write_instance(const Instance& inst, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  const std::string text = serialize_instance(inst);
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw IoError("write failed for '" + path + "'");
}

inline Instance read_instance(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_instance(buf.str());
}

}  // namespace beepcover
