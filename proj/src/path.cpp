#include "perc/path.hpp"

#include <cstdlib>
#include <set>

namespace perc {

bool check_path(const BoxGeometry& g, const LatticePath& p) {
  if (p.vertices.empty()) return p.edges.empty();
  if (p.edges.size() + 1 != p.vertices.size()) return false;
  for (size_t i = 0; i + 1 < p.vertices.size(); ++i) {
    Pt a = p.vertices[i], b = p.vertices[i + 1];
    if (std::abs(a.x - b.x) + std::abs(a.y - b.y) != 1) return false;
    long long expect;
    if (p.lattice == LatticeKind::Primal) {
      Pt lo = (b < a) ? b : a;
      expect = g.edge_id(lo, a.x != b.x ? Orientation::Horizontal : Orientation::Vertical);
    } else {
      expect = primal_of(g, a, b);
    }
    if (expect != p.edges[i]) return false;
  }
  if (p.self_avoiding) {
    std::set<std::pair<int, int>> seen;
    size_t limit = p.vertices.size();
    // circuits repeat the first vertex at the end
    bool circuit = p.vertices.size() > 1 && p.vertices.front() == p.vertices.back();
    if (circuit) --limit;
    for (size_t i = 0; i < limit; ++i)
      if (!seen.insert({p.vertices[i].x, p.vertices[i].y}).second) return false;
  }
  return true;
}

bool path_color_ok(const Config& c, const LatticePath& p) {
  for (long long e : p.edges) {
    bool want_open = p.lattice == LatticeKind::Primal;
    if (want_open != c.open(e)) return false;
  }
  return true;
}

}  // namespace perc
