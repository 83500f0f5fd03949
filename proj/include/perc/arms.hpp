#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "perc/connectivity.hpp"
#include "perc/stats.hpp"
#include "perc/uregion.hpp"

namespace perc {

/// Landing window: a segment on the line {y = line} (horizontal = true) or
/// {x = line}, with transverse span [lo,hi]. Lattice landing sites are taken
/// in the outward-snapped band around the segment, so windows stay nonempty
/// at small scales.
struct SegmentQ {
  bool horizontal = true;
  Frac line, lo, hi;
};

struct ArmSpec {
  enum class Center { EdgeC, VertexC, InnerBox };
  Center center = Center::EdgeC;
  long long center_edge = -1;
  Pt center_vertex{};
  int inner_radius = 0;  // InnerBox: arms cross annulus(inner_radius, outer_radius)
  int outer_radius = 0;

  struct Arm {
    EdgeColor color = EdgeColor::Open;
    std::optional<SegmentQ> window;  // absent: land anywhere on the outer ring
    std::optional<Pt> first_step;    // VertexC only: forced first edge direction
  };
  std::vector<Arm> arms;  // cyclic order; windows must respect it angularly
  std::optional<RegionMask> region;  // containment override (default B(outer))
};

/// Disjoint arms of the specified colors from the center (or inner boundary)
/// to the outer boundary, each landing in its window and honoring its
/// first-edge constraint. Open arms are vertex-disjoint among themselves via
/// max-flow, closed-dual arms likewise in the dual; cyclic order is enforced
/// through the angular order of the landing windows.
bool detect_arm_event(const Config& c, const ArmSpec& spec);

/// A3(n) at the edge {0,e1}: two vertex-disjoint open arms from the endpoints
/// to the box boundary plus a closed dual arm from (1/2,-1/2) to the dual
/// boundary ring.
ArmSpec three_arm_spec(const BoxGeometry& g, long long center_edge, int outer_radius);
bool detect_three_arm(const Config& c, long long center_edge, int outer_radius);

/// Five-arm point orientation; Mirrored is the reflection through the
/// vertical axis (used at the right-hand box B2).
enum class FiveArmOrientation { Standard, Mirrored };

struct FiveArmSpec {
  FiveArmOrientation orientation = FiveArmOrientation::Standard;
  RegionMask region;  // arms live here
  std::optional<SegmentQ> w_closed_upper;
  std::optional<SegmentQ> w_open_north;
  std::optional<SegmentQ> w_open_east;
  std::optional<SegmentQ> w_open_west;
  std::optional<SegmentQ> w_closed_lower;
  int outer_radius = 0;  // used when a window is absent
};

bool is_five_arm_point(const Config& c, Pt v, const FiveArmSpec& spec);
/// First qualifying vertex in scan order, if any.
std::optional<Pt> detect_five_arm_point(const Config& c, const RegionMask& search_box,
                                        const FiveArmSpec& spec);
/// Every qualifying vertex (uniqueness checks).
std::vector<Pt> five_arm_scan(const Config& c, const RegionMask& search_box,
                              const FiveArmSpec& spec);

/// Inner event at scale k (items on the 3*2^k box): side-rectangle crossings,
/// both five-arm points, the two-defect dual circuit with defect windows, the
/// shield in V~(k) and the shortcut arc in U~(k). Returns the five-arm points.
struct EkInnerResult {
  Pt star1, star2;
};
std::optional<EkInnerResult> detect_Ek_prime_inner(const Config& c, int k);
/// Diagnostic variant: on failure, *fail_item receives the first failing item.
std::optional<EkInnerResult> detect_Ek_prime_inner(const Config& c, int k, int* fail_item);

/// Monte Carlo estimate of pi_3(n) = P(A3(n)).
EstimateRecord estimate_pi3(int n, long long samples, std::uint64_t master_seed,
                            double p = 0.5, int workers = 0);

/// Circuit events in the dyadic annuli A(2^{mN}, 2^{(m+1)N}): C needs a
/// closed dual circuit with at most two defects, D an open circuit with at
/// most one. hatC[j] stacks C at offsets {1,3,4,6,8,9} and D at offset 0 of
/// block j; B[j] additionally requires the caller's event at block j.
struct CircuitEventRecord {
  int k = 0;
  int N = 1;
  std::vector<bool> occurred_C;     // per annulus index m
  std::vector<bool> occurred_D;
  std::vector<bool> occurred_hatC;  // per block j = 0..k
  std::vector<bool> occurred_B;
  long long I_count = 0;
  long long J_count = 0;
};

CircuitEventRecord detect_circuit_stack(const Config& c, int k, int N,
                                        const std::function<bool(int)>& block_event = {});

/// Rejection-sampled conditional frequency P(event | conditioning) over a
/// budget of `samples` attempts. Pure detectors only.
EstimateRecord measure_conditional_frequency(const std::function<bool(const Config&)>& event,
                                             const std::function<bool(const Config&)>& conditioning,
                                             int n, long long samples, std::uint64_t master_seed,
                                             double p = 0.5);

}  // namespace perc
