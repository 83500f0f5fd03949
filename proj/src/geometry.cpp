#include "perc/geometry.hpp"

namespace perc {

RegionMask annulus(int inner, int outer) {
  if (inner < 0 || inner >= outer)
    throw std::invalid_argument("annulus: need 0 <= inner < outer");
  RegionMask r = RegionMask::box(outer);
  if (inner > 0) r.subtract_closed(Frac(-inner), Frac(inner), Frac(-inner), Frac(inner));
  return r;
}

DualEdge dual_of(const BoxGeometry& g, long long edge) {
  BoxGeometry::Edge e = g.edge_at(edge);
  if (e.o == Orientation::Horizontal) {
    // midpoint (x+1/2, y); dual endpoints (x+1/2, y-1/2), (x+1/2, y+1/2)
    return {edge, Pt{e.a.x, e.a.y - 1}, Pt{e.a.x, e.a.y}};
  }
  // midpoint (x, y+1/2); dual endpoints (x-1/2, y+1/2), (x+1/2, y+1/2)
  return {edge, Pt{e.a.x - 1, e.a.y}, Pt{e.a.x, e.a.y}};
}

long long primal_of(const BoxGeometry& g, Pt a, Pt b) {
  if (b < a) std::swap(a, b);
  if (a.x == b.x && a.y + 1 == b.y)  // vertical dual edge -> horizontal primal
    return g.edge_id(Pt{a.x, a.y + 1}, Orientation::Horizontal);
  if (a.y == b.y && a.x + 1 == b.x)  // horizontal dual edge -> vertical primal
    return g.edge_id(Pt{a.x + 1, a.y}, Orientation::Vertical);
  throw std::invalid_argument("primal_of: keys are not dual neighbors");
}

std::pair<long long, long long> snap_outward_half(Frac lo, Frac hi, int parity) {
  if (hi < lo) throw std::invalid_argument("snap_outward_half: empty interval");
  // Largest coordinate c/2 (with 2|c <=> parity 0) such that c/2 <= lo.
  auto down = [&](Frac f) {
    long long c = Frac(f.num * 2, f.den).floor();  // floor of 2f
    if (((c % 2) + 2) % 2 != parity) --c;
    return c;
  };
  auto up = [&](Frac f) {
    long long c = Frac(f.num * 2, f.den).ceil();
    if (((c % 2) + 2) % 2 != parity) ++c;
    return c;
  };
  return {down(lo), up(hi)};
}

}  // namespace perc
