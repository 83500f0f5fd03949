#pragma once

#include "perc/geometry.hpp"

namespace perc {

/// The U-shaped region at scale k and its companions, all with exact rational
/// bounds (scaled by 2^k):
///   U  = [-3,3] x [-1/3,3]        minus the open square (-7/3, 7/3)^2
///   U~ = [-8/3,8/3] x [-1/6,8/3]  minus the open square (-15/6, 15/6)^2
///   V~ = [-17/6,17/6] x [-1/6,17/6] minus the open square (-8/3, 8/3)^2
/// B1, B2 are the five-arm search boxes and Q1, Q2 the side pockets hosting
/// the five arms and their landing windows.
struct URegion {
  int k = 0;
  long long scale = 1;  // 2^k
  RegionMask U, U_tilde, V_tilde;
  RegionMask B1, B2;
  RegionMask Q1, Q2;
};

URegion u_region(int k);

/// l-infinity distance from a vertex to the boundary of U(k), exact in units
/// of 1/6 (used to check the 2^k/6 clearance of U~ and V~).
Frac dist_to_U_boundary(const URegion& u, Pt v);

}  // namespace perc
