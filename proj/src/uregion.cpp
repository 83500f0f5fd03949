#include "perc/uregion.hpp"

#include <stdexcept>

namespace perc {

URegion u_region(int k) {
  if (k < 1) throw std::invalid_argument("u_region: k must be >= 1");
  if (k > 40) throw std::invalid_argument("u_region: scale overflow");
  URegion u;
  u.k = k;
  u.scale = 1LL << k;
  const long long s = u.scale;
  auto f = [&](long long num, long long den) { return Frac(num * s, den); };

  u.U = RegionMask::rect(f(-3, 1), f(3, 1), f(-1, 3), f(3, 1));
  u.U.subtract_open(f(-7, 3), f(7, 3), f(-7, 3), f(7, 3));

  u.U_tilde = RegionMask::rect(f(-8, 3), f(8, 3), f(-1, 6), f(8, 3));
  u.U_tilde.subtract_open(f(-15, 6), f(15, 6), f(-15, 6), f(15, 6));

  u.V_tilde = RegionMask::rect(f(-17, 6), f(17, 6), f(-1, 6), f(17, 6));
  u.V_tilde.subtract_open(f(-8, 3), f(8, 3), f(-8, 3), f(8, 3));

  u.B1 = RegionMask::rect(f(-17, 6), f(-15, 6), f(-1, 6), f(1, 6));
  u.B2 = RegionMask::rect(f(15, 6), f(17, 6), f(-1, 6), f(1, 6));

  u.Q1 = RegionMask::rect(f(-3, 1), f(-7, 3), f(-1, 3), f(1, 3));
  u.Q2 = RegionMask::rect(f(7, 3), f(3, 1), f(-1, 3), f(1, 3));
  return u;
}

Frac dist_to_U_boundary(const URegion& u, Pt v) {
  // U(k) is an outer rectangle minus an open inner square; for points of U
  // the l-infinity distance to the boundary is the smaller of the distances
  // to the two rectangle boundaries.
  const long long s = u.scale;
  auto sub = [&](Frac a, Frac b) { return Frac(a.num * b.den - b.num * a.den, a.den * b.den); };
  Frac x(v.x), y(v.y);
  // outer rectangle [-3s,3s] x [-s/3, 3s]
  Frac douter = sub(x, Frac(-3 * s));
  auto keep_min = [&](Frac cand) {
    if (cand < douter) douter = cand;
  };
  keep_min(sub(Frac(3 * s), x));
  keep_min(sub(y, Frac(-s, 3)));
  keep_min(sub(Frac(3 * s), y));
  // inner open square (-7s/3, 7s/3)^2: distance is max(|x|,|y|) - 7s/3 when
  // outside it (points of U always are)
  Frac ax = v.x >= 0 ? x : Frac(-v.x);
  Frac ay = v.y >= 0 ? y : Frac(-v.y);
  Frac m = ax < ay ? ay : ax;
  Frac dinner = sub(m, Frac(7 * s, 3));
  return dinner < douter ? dinner : douter;
}

}  // namespace perc
