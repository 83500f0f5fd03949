#include "perc/config.hpp"

#include <stdexcept>

namespace perc {

Config sample_config(const BoxGeometry& geom, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("sample_config: p must lie in [0,1]");
  Config c{geom, p, seed, {}};
  const long long m = geom.edge_count();
  c.states.resize(size_t(m));
  // Threshold in units of 2^-53; exact for p in {0, 1/2, 1} and reproducible
  // for any p since (h >> 11) ranges over [0, 2^53).
  const double threshold = p * 9007199254740992.0;  // p * 2^53
  for (long long e = 0; e < m; ++e) {
    std::uint64_t h = mix64(seed ^ (0xBF58476D1CE4E5B9ULL * std::uint64_t(e + 1)));
    c.states[size_t(e)] = (double(h >> 11) < threshold) ? 1 : 0;
  }
  return c;
}

}  // namespace perc
