#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "beepcover/errors.hpp"
#include "beepcover/instance.hpp"

namespace beepcover {

// H_delta = sum_{i=1..delta} 1/i, the greedy approximation factor.
inline double h_delta(int delta) {
  double h = 0.0;
  for (int i = 1; i <= delta; ++i) h += 1.0 / i;
  return h;
}

// Sequential greedy: repeatedly pick the set covering the most still-uncovered
// elements, ties broken by lowest set id so runs are reproducible.
inline Solution greedy(const Instance& inst) {
  const int m = inst.num_sets();
  std::vector<char> covered(inst.n_elements, 0);
  Solution sol;
  sol.per_element_coverer.assign(inst.n_elements, {});
  int remaining = inst.n_elements;
  long long step = 0;
  while (remaining > 0) {
    int best = -1, best_gain = 0;
    for (int s = 0; s < m; ++s) {
      int gain = 0;
      for (int e : inst.sets[s]) gain += !covered[e];
      if (gain > best_gain) {
        best_gain = gain;
        best = s;
      }
    }
    // a valid instance always leaves a positive-gain set while uncovered
    // elements remain
    for (int e : inst.sets[best]) {
      if (!covered[e]) {
        covered[e] = 1;
        sol.per_element_coverer[e] = {best, step};
        --remaining;
      }
    }
    sol.chosen.push_back(best);
    ++step;
  }
  std::sort(sol.chosen.begin(), sol.chosen.end());
  return sol;
}

namespace detail {

struct ExactSearch {
  const Instance* inst;
  int m = 0;
  int words = 0;
  std::vector<std::uint64_t> full;                // universe bitmask
  std::vector<std::vector<std::uint64_t>> masks;  // per-set coverage bitmask
  std::vector<int> sizes_desc;                    // set sizes, sorted descending
  std::vector<int> pick;
  std::vector<int> best;

  bool covers_all(const std::vector<std::uint64_t>& acc) const {
    for (int w = 0; w < words; ++w)
      if (acc[w] != full[w]) return false;
    return true;
  }

  int uncovered_count(const std::vector<std::uint64_t>& acc) const {
    int cnt = 0;
    for (int w = 0; w < words; ++w)
      cnt += __builtin_popcountll(full[w] & ~acc[w]);
    return cnt;
  }

  // DFS over set ids in ascending order with a fixed target size: the first
  // full cover found is the lexicographically smallest one of that size.
  // Smaller covers were already ruled out by the outer target loop.
  bool dfs(int next, int left, std::vector<std::uint64_t>& acc) {
    if (covers_all(acc)) {
      best = pick;
      return true;
    }
    if (left == 0) return false;
    const int uncov = uncovered_count(acc);
    // even the largest sets cannot finish the job in `left` picks
    long long capacity = 0;
    for (int i = 0; i < left && i < static_cast<int>(sizes_desc.size()); ++i)
      capacity += sizes_desc[i];
    if (capacity < uncov) return false;
    for (int s = next; s <= m - left; ++s) {
      std::vector<std::uint64_t> acc2 = acc;
      bool gains = false;
      for (int w = 0; w < words; ++w) {
        const std::uint64_t nw = acc2[w] | masks[s][w];
        if (nw != acc2[w]) gains = true;
        acc2[w] = nw;
      }
      if (!gains) continue;  // a useless pick can never be part of a minimum cover
      pick.push_back(s);
      if (dfs(s + 1, left - 1, acc2)) return true;
      pick.pop_back();
    }
    return false;
  }
};

}  // namespace detail

// Minimum-cardinality cover by exhaustive search with pruning; among minimum
// covers it returns the lexicographically smallest id set. Limited to m <= 25.
inline Solution exact(const Instance& inst) {
  const int m = inst.num_sets();
  if (m > 25) throw TooLarge("exact oracle limited to m <= 25, got m = " + std::to_string(m));
  detail::ExactSearch search;
  search.inst = &inst;
  search.m = m;
  search.words = (inst.n_elements + 63) / 64;
  search.full.assign(search.words, 0);
  for (int e = 0; e < inst.n_elements; ++e)
    search.full[e / 64] |= 1ull << (e % 64);
  search.masks.assign(m, std::vector<std::uint64_t>(search.words, 0));
  for (int s = 0; s < m; ++s)
    for (int e : inst.sets[s]) search.masks[s][e / 64] |= 1ull << (e % 64);
  for (const auto& s : inst.sets) search.sizes_desc.push_back(static_cast<int>(s.size()));
  std::sort(search.sizes_desc.begin(), search.sizes_desc.end(), std::greater<int>());

  int max_size = 0;
  for (const auto& s : inst.sets) max_size = std::max<int>(max_size, s.size());
  const int lower = max_size > 0 ? (inst.n_elements + max_size - 1) / max_size : 1;

  for (int target = std::max(1, lower); target <= m; ++target) {
    std::vector<std::uint64_t> acc(search.words, 0);
    search.pick.clear();
    if (search.dfs(0, target, acc)) break;
  }

  Solution sol;
  sol.chosen = search.best;
  sol.per_element_coverer.assign(inst.n_elements, {});
  long long step = 0;
  for (int s : sol.chosen) {
    for (int e : inst.sets[s])
      if (sol.per_element_coverer[e].set < 0) sol.per_element_coverer[e] = {s, step};
    ++step;
  }
  return sol;
}

// |solution| / reference, the measured approximation quality.
inline double approximation_ratio(const Solution& sol, long long reference_size) {
  if (reference_size < 1) throw Error("reference solution size must be >= 1");
  return static_cast<double>(sol.chosen.size()) / static_cast<double>(reference_size);
}

}  // namespace beepcover
