#pragma once

#include <cstdint>

namespace perc {

// splitmix64 finalizer; the counter-based primitive behind all sampling.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed of the sample_index-th configuration drawn from a master seed.
/// Depends only on (master, index), so workers can sample any index
/// independently and reproducibly.
inline std::uint64_t sample_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(mix64(master) ^ (0xD1B54A32D192ED03ULL * (index + 1)));
}

/// Small sequential generator for test utilities (bootstrap, synthetic data).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double uniform() { return double(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace perc
