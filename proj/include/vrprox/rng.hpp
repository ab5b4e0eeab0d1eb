#pragma once

#include <cstdint>

namespace vrprox {

// Counter-based generator: the j-th output is a pure function of
// (master_seed, stream, j), so runs keyed by (master_seed, run_index)
// are reproducible regardless of scheduling.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t master_seed, std::uint64_t stream = 0)
      : key_(mix(mix(master_seed + kGamma) ^ mix(stream + 2 * kGamma))) {}

  std::uint64_t next() { return mix(key_ + (++counter_) * kGamma); }

  // Uniform in [0, 1), 53 bits.
  double uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Unbiased integer in [0, bound) by rejection.
  std::uint64_t uniform_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  bool bernoulli(double p) { return uniform01() < p; }

  // Standard normal via Marsaglia's polar method.
  double normal();

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Identifies one run's random stream.
struct RunSeed {
  std::uint64_t master = 0;
  std::uint64_t stream = 0;
};

}  // namespace vrprox
