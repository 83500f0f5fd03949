#pragma once

#include <optional>
#include <vector>

#include "perc/connectivity.hpp"
#include "perc/path.hpp"

namespace perc {

/// True iff an open path joins the left side (x = -n) to the right side
/// (x = n) inside the box.
bool has_horizontal_crossing(const Config& c);

/// The open crossing whose closed below-region is minimal, found by a
/// wall-follower walk from the lowest left-side landing with the closed sea
/// kept on the right. Requires has_horizontal_crossing.
LatticePath lowest_crossing(const Config& c);

/// Minimum-edge-count open crossing via multi-source BFS from the whole left
/// side; ties broken by lexicographic vertex order. Only the length is part of
/// the contract. Requires has_horizontal_crossing.
LatticePath shortest_crossing(const Config& c);

/// Edgewise membership test for the lowest crossing: e is open, its endpoints
/// reach the left and right sides by vertex-disjoint open paths, and a closed
/// dual path joins e* to the dual bottom row (y = -n-1/2), staying in the
/// dual strip |x| <= n-1/2 so it cannot slip around a crossing endpoint.
bool three_arm_characterization(const Config& c, long long edge);

/// All edges passing three_arm_characterization, computed with shared
/// component/dual-cluster passes (same predicate as the single-edge form).
std::vector<long long> three_arm_edge_set(const Config& c);

/// The N_K statistic: edges in rect with two vertex-disjoint open connections
/// to the stated targets inside rect and a closed dual connection to the
/// stated dual target inside rect.
long long count_three_arm_edges(const Config& c, const RegionMask& rect,
                                const RegionMask& left_target,
                                const RegionMask& right_target,
                                const RegionMask& dual_bottom_target);

struct CrossingRecord {
  bool crossed = false;
  std::optional<LatticePath> lowest;
  std::optional<LatticePath> shortest;
  long long L = 0;  // edge count of lowest
  long long S = 0;  // edge count of shortest
};

CrossingRecord analyze_crossing(const Config& c);

/// Left/right box side masks (x = -n resp. x = n).
RegionMask left_side(int n);
RegionMask right_side(int n);

}  // namespace perc
