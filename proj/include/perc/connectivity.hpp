#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "perc/config.hpp"
#include "perc/geometry.hpp"
#include "perc/path.hpp"

namespace perc {

/// Color of a connection: Open walks the primal open subgraph, ClosedDual the
/// dual graph restricted to duals of closed edges (w*(e*) = w(e)).
enum class EdgeColor { Open, ClosedDual };

inline LatticeKind lattice_for(EdgeColor c) {
  return c == EdgeColor::Open ? LatticeKind::Primal : LatticeKind::Dual;
}

/// A step may cross `line` only where its transverse coordinate lies in
/// [lo,hi]. Lines are rational, so with non-integer lines no lattice point
/// sits on them and strict sign changes detect crossings exactly.
struct LineGate {
  bool horizontal_line = true;  // gate on a line y = line (else x = line)
  Frac line, lo, hi;
};

struct TransitFilter {
  std::vector<LineGate> gates;
  // Coordinates in half-units.
  bool allows(long long ax2, long long ay2, long long bx2, long long by2) const;
};

struct ComponentLabels {
  LatticeKind lattice = LatticeKind::Primal;
  std::vector<int> label;  // -1 outside mask
  int components = 0;
  bool same(int id_a, int id_b) const {
    return label[id_a] >= 0 && label[id_a] == label[id_b];
  }
};

/// Connected components of the color subgraph restricted to mask.
/// Throws std::invalid_argument on an empty mask.
ComponentLabels components(const Config& c, EdgeColor color, const RegionMask& mask);

/// BFS reachability between vertex-id sets (ids of the lattice matching the
/// color). `banned` vertices are impassable; `filter` restricts line crossings.
bool connected(const Config& c, EdgeColor color, const RegionMask& mask,
               const std::vector<int>& from, const std::vector<int>& to,
               const TransitFilter* filter = nullptr,
               const std::vector<int>* banned = nullptr);

/// Shortest path (edge count) between the sets, or nullopt. Ties are broken by
/// scanning neighbors in a fixed order, so results are deterministic.
std::optional<LatticePath> shortest_path(const Config& c, EdgeColor color,
                                         const RegionMask& mask,
                                         const std::vector<int>& from,
                                         const std::vector<int>& to,
                                         const TransitFilter* filter = nullptr,
                                         const std::vector<int>* banned = nullptr);

/// k vertex-disjoint paths, one unit out of every source set and one unit into
/// every target set (unit vertex capacities via splitting, augmenting-path
/// max-flow). Arm counts in this project never exceed six.
struct DisjointSpec {
  EdgeColor color = EdgeColor::Open;
  RegionMask region;
  std::vector<std::vector<int>> sources;
  std::vector<std::vector<int>> targets;
  std::vector<int> banned;
  const TransitFilter* filter = nullptr;
};
bool disjoint_connections(const Config& c, const DisjointSpec& spec);

/// Vertex-disjoint open paths from the two endpoints of `edge` to the two
/// targets (one path per target). The edge must be open.
bool disjoint_open_paths(const Config& c, long long edge, const RegionMask& target_a,
                         const RegionMask& target_b, const RegionMask& region);

/// Circuit in an annulus winding once around the hole, together with the edges
/// whose state disagrees with the circuit color.
struct DefectedCircuit {
  LatticePath circuit;                // first vertex repeated at the end
  std::vector<long long> defects;     // primal edge ids
  EdgeColor kind = EdgeColor::ClosedDual;
  int winding = 0;                    // +1 or -1
};

bool circuit_valid(const Config& c, const DefectedCircuit& d);

struct MinDefectResult {
  int defects = 0;
  DefectedCircuit witness;
};

/// Minimum number of defects over circuits of the given kind winding once
/// around the hole of annulus(inner,outer), with a witness attaining it.
/// Implemented by a cut ray from the hole and a parity-layered 0-1 BFS whose
/// start/end are the two copies of a cut vertex.
MinDefectResult min_defect_circuit(const Config& c, int inner, int outer, EdgeColor kind);

/// Same search on an arbitrary annular mask whose hole contains the origin and
/// extends to x <= hole_right_x on the positive axis.
MinDefectResult min_defect_circuit_region(const Config& c, const RegionMask& annulus_mask,
                                          Frac hole_right_x, EdgeColor kind);

/// Circuit of the given kind with exactly two defects, one inside each window.
/// Found constructively: for every pair of candidate defect edges the two
/// remaining arcs are searched as vertex-disjoint paths, one confined to the
/// upper band of the annulus and one to the lower band, which forces winding
/// number one. Bands must cover the annulus and overlap only in the windows.
std::optional<DefectedCircuit> two_defect_circuit(const Config& c,
                                                  const RegionMask& annulus_mask,
                                                  Frac hole_right_x, EdgeColor kind,
                                                  const RegionMask& window1,
                                                  const RegionMask& window2,
                                                  const RegionMask& upper_band,
                                                  const RegionMask& lower_band);

/// True iff at most `limit` edge-disjoint open paths join the inner ring to
/// the outer ring of annulus(inner,outer). By planar duality this says some
/// closed dual circuit winding the hole has at most `limit` defects, which is
/// how the circuit-stack detector evaluates large annuli.
bool annulus_open_crossings_at_most(const Config& c, int inner, int outer, int limit);
/// Closed-dual counterpart: bounds the defect count of open primal circuits.
bool annulus_closed_dual_crossings_at_most(const Config& c, int inner, int outer, int limit);

/// Vertex ids (of the lattice for `kind`) inside the mask.
std::vector<int> mask_vertex_ids(const BoxGeometry& g, LatticeKind kind, const RegionMask& mask);

}  // namespace perc
