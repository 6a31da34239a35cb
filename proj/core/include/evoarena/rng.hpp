#pragma once

#include <cstdint>
#include <random>

namespace evoarena {

// splitmix64 finalizer over a seed/salt pair. Used everywhere a stream has to
// be derived from another one (per-game streams, per-run seeds, per-genome
// evaluation streams), so derivation never depends on how much of the parent
// stream was consumed.
constexpr std::uint64_t mix64(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seeded deterministic stream. Draw helpers avoid std::uniform_*_distribution
// on purpose: their output is implementation-defined, and traces must be
// reproducible from a seed alone.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  // Independent stream keyed by (seed, salt); a pure function of both, so the
  // same child can be re-derived at any time.
  SplitRng child(std::uint64_t salt) const { return SplitRng(mix64(seed_, salt)); }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, bound), bound >= 1. Unbiased via rejection.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t cutoff = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t v = next_u64();
      if (v >= cutoff) return v % bound;
    }
  }

  // Uniform integer in [lo, hi], inclusive.
  int range(int lo, int hi) {
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return unit() < p; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace evoarena
