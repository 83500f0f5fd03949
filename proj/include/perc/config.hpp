#pragma once

#include <cstdint>
#include <vector>

#include "perc/geometry.hpp"
#include "perc/rng.hpp"

namespace perc {

/// Immutable open/closed assignment on the edges of a box. All detectors are
/// pure functions of a Config, so sharing across threads is safe.
struct Config {
  BoxGeometry geom;
  double p = 0.5;
  std::uint64_t seed = 0;
  std::vector<std::uint8_t> states;  // 1 = open

  bool open(long long e) const { return states[size_t(e)] != 0; }
  bool closed(long long e) const { return states[size_t(e)] == 0; }
};

/// Product measure: each edge open independently with probability p.
/// Identical (geom, p, seed) gives a bit-identical state vector; the per-edge
/// bit is a pure hash of (seed, edge index).
Config sample_config(const BoxGeometry& geom, double p, std::uint64_t seed);

}  // namespace perc
