#pragma once

#include <cstdint>
#include <random>

namespace beepcover {

// splitmix64 step, used to whiten (seed, stream) pairs into engine seeds.
inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministic random stream. One Rng per node, forked from the trial seed,
// so a trial replays exactly and nodes cannot share randomness.
// Sampling helpers are hand-rolled: std:: distributions are not guaranteed to
// produce identical streams across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  static Rng fork(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t x = seed;
    std::uint64_t a = splitmix64(x);
    x ^= 0x6a09e667f3bcc909ull + stream * 0x9e3779b97f4a7c15ull;
    std::uint64_t b = splitmix64(x);
    return Rng(a ^ b);
  }

  std::uint64_t next_u64() { return eng_(); }

  // uniform in [0, n); rejection keeps it exactly uniform
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~0ull - ~0ull % n;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % n;
  }

  // uniform integer in [lo, hi], both inclusive
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // uniform in [0, 1) with 53 random bits
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return uniform01() < p;
  }

 private:
  std::mt19937_64 eng_;
};

// Geometric(p) counting failures before the first success, truncated at cap:
//   Pr[X = x]   = p (1-p)^x   for 0 <= x < cap
//   Pr[X = cap] = (1-p)^cap
// p == 0 is the degenerate case (delta = 1): X = cap always, which makes every
// set wake in round 0. Harmless, since such instances are trivially covered.
inline int sample_capped_geometric(double p, int cap, Rng& rng) {
  if (p >= 1.0) return 0;
  if (p <= 0.0) return cap;
  int x = 0;
  while (x < cap && !rng.bernoulli(p)) ++x;
  return x;
}

}  // namespace beepcover
