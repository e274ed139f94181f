#include <algorithm>
#include <vector>

#include "beepcover/baselines.hpp"
#include "beepcover/instance.hpp"
#include "doctest.h"

using namespace beepcover;

namespace {

// unpruned reference: smallest cover by scanning all subsets in id-lex order
std::vector<int> enumerate_minimum_cover(const Instance& inst) {
  const int m = inst.num_sets();
  std::vector<int> best;
  for (int mask = 1; mask < (1 << m); ++mask) {
    std::vector<char> covered(inst.n_elements, 0);
    std::vector<int> pick;
    for (int s = 0; s < m; ++s)
      if (mask & (1 << s)) {
        pick.push_back(s);
        for (int e : inst.sets[s]) covered[e] = 1;
      }
    if (std::find(covered.begin(), covered.end(), 0) != covered.end()) continue;
    if (best.empty() || pick.size() < best.size() ||
        (pick.size() == best.size() && pick < best))
      best = pick;
  }
  return best;
}

}  // namespace

TEST_CASE("greedy picks max uncovered gain, ties to lowest id") {
  const Instance inst = new_instance(4, {{0, 1, 2}, {0, 1}, {2, 3}});
  const Solution sol = greedy(inst);
  CHECK(sol.chosen == std::vector<int>{0, 2});
  CHECK(verify_cover(inst, sol).empty());
  CHECK(sol.per_element_coverer[0].set == 0);
  CHECK(sol.per_element_coverer[3].set == 2);

  const Instance singles = new_instance(5, {{0}, {1}, {2}, {3}, {4}});
  CHECK(greedy(singles).chosen == std::vector<int>{0, 1, 2, 3, 4});

  const Instance universal = new_instance(3, {{0}, {0, 1, 2}, {2}});
  CHECK(greedy(universal).chosen == std::vector<int>{1});
}

TEST_CASE("exact oracle") {
  CHECK(exact(new_instance(2, {{0}, {1}, {0, 1}})).chosen == std::vector<int>{2});
  CHECK(exact(new_instance(5, {{0}, {1}, {2}, {3}, {4}})).size() == 5);
  CHECK_THROWS_AS(exact(generate_random(5, 26, 0.9, 0)), TooLarge);
}

TEST_CASE("exact matches unpruned enumeration and dominates greedy") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Instance inst = generate_random(12, 8, 0.25, seed);
    const Solution opt = exact(inst);
    CHECK(verify_cover(inst, opt).empty());
    CHECK(opt.chosen == enumerate_minimum_cover(inst));
    CHECK(opt.size() <= greedy(inst).size());
  }
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    const Instance inst = generate_random(20, 12, 0.3, seed);
    CHECK(exact(inst).size() <= greedy(inst).size());
  }
}

TEST_CASE("greedy guarantee: |greedy| <= H_delta * |opt|") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Instance inst = generate_random(18, 3 + static_cast<int>(seed % 13), 0.3, seed);
    const double bound = h_delta(inst.delta) * static_cast<double>(exact(inst).size());
    CHECK(static_cast<double>(greedy(inst).size()) <= bound + 1e-9);
  }
}

TEST_CASE("harmonic numbers") {
  CHECK(h_delta(1) == doctest::Approx(1.0));
  CHECK(h_delta(2) == doctest::Approx(1.5));
  CHECK(h_delta(4) == doctest::Approx(25.0 / 12.0));
}

TEST_CASE("approximation_ratio") {
  Solution sol;
  sol.chosen = {1, 2, 3, 4};
  CHECK(approximation_ratio(sol, 2) == doctest::Approx(2.0));
  CHECK(approximation_ratio(sol, 4) == doctest::Approx(1.0));
  CHECK_THROWS_AS(approximation_ratio(sol, 0), Error);
}
