#pragma once

#include <vector>

#include "perc/config.hpp"
#include "perc/geometry.hpp"

namespace perc {

enum class LatticeKind { Primal, Dual };

/// Ordered vertex/edge walk on the primal or dual lattice. Dual paths store
/// dual keys in `vertices` and the primal partners of their edges in `edges`.
struct LatticePath {
  LatticeKind lattice = LatticeKind::Primal;
  std::vector<Pt> vertices;
  std::vector<long long> edges;
  bool self_avoiding = false;

  long long length() const { return (long long)edges.size(); }
  bool empty() const { return vertices.empty(); }
  Pt front() const { return vertices.front(); }
  Pt back() const { return vertices.back(); }
};

/// Structural validity: consecutive vertices at l1 distance 1, edges matching
/// consecutive pairs, and (when flagged) no repeated vertex.
bool check_path(const BoxGeometry& g, const LatticePath& p);

/// All edges open (primal) resp. closed (dual path of the closed dual graph).
bool path_color_ok(const Config& c, const LatticePath& p);

}  // namespace perc
