#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "beepcover/errors.hpp"
#include "beepcover/instance.hpp"
#include "beepcover/rng.hpp"

namespace beepcover {

using Adjacency = std::vector<std::vector<int>>;

inline Adjacency cycle_graph(int n) {
  Adjacency adj(n);
  if (n == 1) return adj;
  if (n == 2) {
    adj[0] = {1};
    adj[1] = {0};
    return adj;
  }
  for (int v = 0; v < n; ++v) {
    adj[v].push_back((v + n - 1) % n);
    adj[v].push_back((v + 1) % n);
    std::sort(adj[v].begin(), adj[v].end());
  }
  return adj;
}

inline Adjacency star_graph(int leaves) {
  Adjacency adj(leaves + 1);
  for (int v = 1; v <= leaves; ++v) {
    adj[0].push_back(v);
    adj[v].push_back(0);
  }
  return adj;
}

inline Adjacency path_graph(int n) {
  Adjacency adj(n);
  for (int v = 0; v + 1 < n; ++v) {
    adj[v].push_back(v + 1);
    adj[v + 1].push_back(v);
  }
  return adj;
}

// G(n, p) plus a random spanning tree so the result is always connected.
inline Adjacency random_connected_graph(int n, double p, std::uint64_t seed) {
  if (n < 1) throw InfeasibleParams("need n >= 1");
  Rng rng = Rng::fork(seed, 0x6a09e667ull);
  std::vector<std::vector<char>> edge(n, std::vector<char>(n, 0));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) edge[u][v] = edge[v][u] = 1;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int i = n - 1; i > 0; --i)
    std::swap(order[i], order[rng.below(i + 1)]);
  for (int i = 1; i < n; ++i) {
    const int u = order[i];
    const int v = order[static_cast<int>(rng.below(i))];
    edge[u][v] = edge[v][u] = 1;
  }
  Adjacency adj(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (edge[u][v]) adj[u].push_back(v);
  return adj;
}

inline bool is_dominating(const Adjacency& adj, const std::vector<int>& chosen) {
  const int n = static_cast<int>(adj.size());
  std::vector<char> dominated(n, 0);
  for (int v : chosen) {
    dominated[v] = 1;
    for (int w : adj[v]) dominated[w] = 1;
  }
  for (int v = 0; v < n; ++v)
    if (!dominated[v]) return false;
  return true;
}

// DominatingSet as SetCover: node v's set is its closed neighborhood. Lets the
// sequential oracles price dominating-set solutions.
inline Instance closed_neighborhood_instance(const Adjacency& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<std::vector<int>> sets(n);
  for (int v = 0; v < n; ++v) {
    sets[v] = adj[v];
    sets[v].push_back(v);
  }
  return new_instance(n, std::move(sets));
}

}  // namespace beepcover
