#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "arcane/error.hpp"

// Deterministic randomness. All draws flow from one root seed through
// derive_seed(root, stream), so independent pipeline stages (dataset
// generation, pair sampling, sweep trials) can be rerun in isolation
// without disturbing each other. The uniform/normal mappings are
// hand-rolled on top of mt19937_64 because std::*_distribution output
// is implementation-defined and would break cross-platform determinism.

namespace arcane {

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// splitmix64-style derivation: one root seed, many decorrelated streams.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
  return mix64(root + 0x9E3779B97F4A7C15ULL * (stream + 1));
}

// Stream ids used by the pipeline.
constexpr std::uint64_t kStreamDataset = 1;
constexpr std::uint64_t kStreamPairSampling = 2;
constexpr std::uint64_t kStreamSweepBase = 1000;   // + level_index * stride + trial
constexpr std::uint64_t kStreamSweepStride = 100;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [lo, hi], inclusive, via rejection (no modulo bias).
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw InputError("uniform_int: lo > hi");
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    if (range == 0) return static_cast<std::int64_t>(eng_());  // full 64-bit span
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t v;
    do {
      v = eng_();
    } while (v >= limit);
    return lo + static_cast<std::int64_t>(v % range);
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Standard normal via Box-Muller; two fresh uniforms per call.
  double normal() {
    double u1 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  template <typename T>
  const T& pick(const std::vector<T>& items) {
    if (items.empty()) throw InputError("pick: empty choice set");
    return items[static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(items.size()) - 1))];
  }

  // Index drawn proportionally to the given non-negative weights.
  std::size_t weighted_index(const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (total <= 0.0) throw InputError("weighted_index: weights sum to zero");
    double u = uniform() * total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      u -= weights[i];
      if (u < 0.0) return i;
    }
    return weights.size() - 1;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace arcane
