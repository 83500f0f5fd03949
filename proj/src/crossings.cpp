#include "perc/crossings.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace perc {

namespace {

// direction ring: E, N, W, S (counterclockwise)
constexpr int kDirX[4] = {1, 0, -1, 0};
constexpr int kDirY[4] = {0, 1, 0, -1};

long long edge_between(const BoxGeometry& g, Pt a, Pt b) {
  Pt lo = (b < a) ? b : a;
  Orientation o = (a.x != b.x) ? Orientation::Horizontal : Orientation::Vertical;
  if (!g.valid_edge(lo, o)) return -1;
  return g.edge_id(lo, o);
}

// Open-cluster labels over the whole box plus side-contact flags.
struct Clusters {
  std::vector<int> label;
  std::vector<std::uint8_t> touches_left, touches_right;
};

Clusters open_clusters(const Config& c) {
  const BoxGeometry& g = c.geom;
  Clusters cl;
  cl.label.assign(size_t(g.vertex_count()), -1);
  std::vector<int> stack;
  int next = 0;
  for (int id = 0; id < g.vertex_count(); ++id) {
    if (cl.label[size_t(id)] >= 0) continue;
    int comp = next++;
    cl.label[size_t(id)] = comp;
    cl.touches_left.push_back(0);
    cl.touches_right.push_back(0);
    stack.assign(1, id);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      Pt p = g.vertex_at(u);
      if (p.x == -g.n) cl.touches_left[size_t(comp)] = 1;
      if (p.x == g.n) cl.touches_right[size_t(comp)] = 1;
      for (int d = 0; d < 4; ++d) {
        Pt q{p.x + kDirX[d], p.y + kDirY[d]};
        if (!g.contains(q)) continue;
        long long e = edge_between(g, p, q);
        if (!c.open(e)) continue;
        int v = g.vertex_id(q);
        if (cl.label[size_t(v)] < 0) {
          cl.label[size_t(v)] = comp;
          stack.push_back(v);
        }
      }
    }
  }
  return cl;
}

// Closed dual cluster attached to the dual bottom row y = -n-1/2, restricted
// to the strip |x| <= n-1/2 so paths cannot slip around a crossing endpoint.
std::vector<std::uint8_t> bottom_dual_cluster(const Config& c) {
  const BoxGeometry& g = c.geom;
  const int n = g.n;
  std::vector<std::uint8_t> in(size_t(g.dual_count()), 0);
  auto member = [&](Pt d) {
    return d.x >= -n && d.x <= n - 1 && d.y >= -n - 1 && d.y <= n - 1;
  };
  std::vector<int> stack;
  for (int i = -n; i <= n - 1; ++i) {
    int id = g.dual_id(Pt{i, -n - 1});
    in[size_t(id)] = 1;
    stack.push_back(id);
  }
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    Pt p = g.dual_at(u);
    for (int d = 0; d < 4; ++d) {
      Pt q{p.x + kDirX[d], p.y + kDirY[d]};
      if (!member(q)) continue;
      long long e;
      Pt a = p, b = q;
      if (b < a) std::swap(a, b);
      if (a.x == b.x)
        e = g.valid_edge(Pt{a.x, a.y + 1}, Orientation::Horizontal)
                ? g.edge_id(Pt{a.x, a.y + 1}, Orientation::Horizontal)
                : -1;
      else
        e = g.valid_edge(Pt{a.x + 1, a.y}, Orientation::Vertical)
                ? g.edge_id(Pt{a.x + 1, a.y}, Orientation::Vertical)
                : -1;
      if (e < 0 || c.open(e)) continue;
      int v = g.dual_id(q);
      if (!in[size_t(v)]) {
        in[size_t(v)] = 1;
        stack.push_back(v);
      }
    }
  }
  return in;
}

}  // namespace

RegionMask left_side(int n) { return RegionMask::rect(Frac(-n), Frac(-n), Frac(-n), Frac(n)); }
RegionMask right_side(int n) { return RegionMask::rect(Frac(n), Frac(n), Frac(-n), Frac(n)); }

bool has_horizontal_crossing(const Config& c) {
  const BoxGeometry& g = c.geom;
  std::vector<std::uint8_t> seen(size_t(g.vertex_count()), 0);
  std::vector<int> stack;
  for (int y = -g.n; y <= g.n; ++y) {
    int id = g.vertex_id(Pt{-g.n, y});
    seen[size_t(id)] = 1;
    stack.push_back(id);
  }
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    Pt p = g.vertex_at(u);
    if (p.x == g.n) return true;
    for (int d = 0; d < 4; ++d) {
      Pt q{p.x + kDirX[d], p.y + kDirY[d]};
      if (!g.contains(q)) continue;
      long long e = edge_between(g, p, q);
      if (!c.open(e)) continue;
      int v = g.vertex_id(q);
      if (!seen[size_t(v)]) {
        seen[size_t(v)] = 1;
        if (q.x == g.n) return true;
        stack.push_back(v);
      }
    }
  }
  return false;
}

LatticePath lowest_crossing(const Config& c) {
  const BoxGeometry& g = c.geom;
  const int n = g.n;
  Clusters cl = open_clusters(c);

  // lowest left-side landing of a crossing cluster, and the lowest right-side
  // vertex of that same cluster (the crossing may run down the right wall, so
  // its endpoint is the lowest wall contact rather than the first one)
  int y0 = n + 1;
  for (int y = -n; y <= n; ++y) {
    int comp = cl.label[size_t(g.vertex_id(Pt{-n, y}))];
    if (cl.touches_left[size_t(comp)] && cl.touches_right[size_t(comp)]) {
      y0 = y;
      break;
    }
  }
  if (y0 > n) throw std::logic_error("lowest_crossing: no horizontal crossing");
  const int cluster = cl.label[size_t(g.vertex_id(Pt{-n, y0}))];
  int y_end = n + 1;
  for (int y = -n; y <= n; ++y)
    if (cl.label[size_t(g.vertex_id(Pt{n, y}))] == cluster) {
      y_end = y;
      break;
    }
  const Pt target{n, y_end};

  // Wall-follower keeping the closed sea on the right: from the incoming
  // direction try right turn, straight, left turn, back, taking the first
  // open in-box edge. Revisits truncate the recorded walk (loop erasure).
  std::vector<Pt> path{Pt{-n, y0}};
  std::vector<int> pos(size_t(g.vertex_count()), -1);
  pos[size_t(g.vertex_id(path[0]))] = 0;
  int dir = 0;  // incoming east
  const long long step_cap = 16 * g.edge_count() + 16;
  long long steps = 0;
  Pt cur = path[0];
  while (!(cur == target)) {
    if (++steps > step_cap) throw std::logic_error("lowest_crossing: walk failed to terminate");
    int chosen = -1;
    for (int turn : {3, 0, 1, 2}) {  // right, straight, left, back
      int d = (dir + turn) & 3;
      Pt q{cur.x + kDirX[d], cur.y + kDirY[d]};
      if (!g.contains(q)) continue;
      long long e = edge_between(g, cur, q);
      if (!c.open(e)) continue;
      chosen = d;
      break;
    }
    if (chosen < 0) throw std::logic_error("lowest_crossing: walk stuck");
    dir = chosen;
    Pt next{cur.x + kDirX[dir], cur.y + kDirY[dir]};
    int nid = g.vertex_id(next);
    if (pos[size_t(nid)] >= 0) {
      for (size_t i = size_t(pos[size_t(nid)]) + 1; i < path.size(); ++i)
        pos[size_t(g.vertex_id(path[i]))] = -1;
      path.resize(size_t(pos[size_t(nid)]) + 1);
    } else {
      pos[size_t(nid)] = int(path.size());
      path.push_back(next);
    }
    cur = next;
  }

  LatticePath out;
  out.lattice = LatticeKind::Primal;
  out.self_avoiding = true;
  out.vertices = path;
  for (size_t i = 0; i + 1 < path.size(); ++i)
    out.edges.push_back(edge_between(g, path[i], path[i + 1]));
  return out;
}

LatticePath shortest_crossing(const Config& c) {
  const BoxGeometry& g = c.geom;
  const int n = g.n;
  std::vector<int> parent(size_t(g.vertex_count()), -2);
  std::vector<int> dist(size_t(g.vertex_count()), -1);
  std::deque<int> queue;
  for (int y = -n; y <= n; ++y) {
    int id = g.vertex_id(Pt{-n, y});
    parent[size_t(id)] = -1;
    dist[size_t(id)] = 0;
    queue.push_back(id);
  }
  int hit = -1;
  // neighbor order S,W,E,N = ascending target id (lexicographic tie-break)
  constexpr int kSx[4] = {0, -1, 1, 0};
  constexpr int kSy[4] = {-1, 0, 0, 1};
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    Pt p = g.vertex_at(u);
    if (p.x == n) {
      hit = u;
      break;
    }
    for (int d = 0; d < 4; ++d) {
      Pt q{p.x + kSx[d], p.y + kSy[d]};
      if (!g.contains(q)) continue;
      long long e = edge_between(g, p, q);
      if (!c.open(e)) continue;
      int v = g.vertex_id(q);
      if (parent[size_t(v)] == -2) {
        parent[size_t(v)] = u;
        dist[size_t(v)] = dist[size_t(u)] + 1;
        queue.push_back(v);
      }
    }
  }
  if (hit < 0) throw std::logic_error("shortest_crossing: no horizontal crossing");
  LatticePath out;
  out.lattice = LatticeKind::Primal;
  out.self_avoiding = true;
  std::vector<int> rev;
  for (int u = hit; u != -1; u = parent[size_t(u)]) rev.push_back(u);
  std::reverse(rev.begin(), rev.end());
  for (int id : rev) out.vertices.push_back(g.vertex_at(id));
  for (size_t i = 0; i + 1 < rev.size(); ++i)
    out.edges.push_back(edge_between(g, out.vertices[i], out.vertices[i + 1]));
  return out;
}

namespace {

bool dual_endpoint_in_bottom_cluster(const Config& c, long long edge,
                                     const std::vector<std::uint8_t>& dual_in) {
  DualEdge de = dual_of(c.geom, edge);
  return dual_in[size_t(c.geom.dual_id(de.a))] || dual_in[size_t(c.geom.dual_id(de.b))];
}

}  // namespace

bool three_arm_characterization(const Config& c, long long edge) {
  if (!c.open(edge)) return false;
  std::vector<std::uint8_t> dual_in = bottom_dual_cluster(c);
  if (!dual_endpoint_in_bottom_cluster(c, edge, dual_in)) return false;
  return disjoint_open_paths(c, edge, left_side(c.geom.n), right_side(c.geom.n),
                             RegionMask::box(c.geom.n));
}

std::vector<long long> three_arm_edge_set(const Config& c) {
  const BoxGeometry& g = c.geom;
  Clusters cl = open_clusters(c);
  std::vector<std::uint8_t> dual_in = bottom_dual_cluster(c);
  RegionMask box = RegionMask::box(g.n);
  RegionMask left = left_side(g.n), right = right_side(g.n);
  std::vector<long long> out;
  for (long long e = 0; e < g.edge_count(); ++e) {
    if (!c.open(e)) continue;
    BoxGeometry::Edge ed = g.edge_at(e);
    int comp = cl.label[size_t(g.vertex_id(ed.a))];
    if (!cl.touches_left[size_t(comp)] || !cl.touches_right[size_t(comp)]) continue;
    if (!dual_endpoint_in_bottom_cluster(c, e, dual_in)) continue;
    if (disjoint_open_paths(c, e, left, right, box)) out.push_back(e);
  }
  return out;
}

long long count_three_arm_edges(const Config& c, const RegionMask& rect,
                                const RegionMask& left_target, const RegionMask& right_target,
                                const RegionMask& dual_bottom_target) {
  const BoxGeometry& g = c.geom;
  std::vector<int> lt = mask_vertex_ids(g, LatticeKind::Primal, left_target);
  std::vector<int> rt = mask_vertex_ids(g, LatticeKind::Primal, right_target);
  std::vector<int> bt = mask_vertex_ids(g, LatticeKind::Dual, dual_bottom_target);
  auto in_rect = [&](int id) { return rect.contains_vertex(g.vertex_at(id)); };
  lt.erase(std::remove_if(lt.begin(), lt.end(), [&](int id) { return !in_rect(id); }), lt.end());
  rt.erase(std::remove_if(rt.begin(), rt.end(), [&](int id) { return !in_rect(id); }), rt.end());
  if (lt.empty() || rt.empty() || bt.empty())
    throw std::invalid_argument("count_three_arm_edges: malformed targets");

  // The dual arm starts at an e* endpoint interior to the rectangle and may
  // run through the rectangle's dual sites out into the stated target band.
  RegionMask dual_region = rect;
  for (const auto& layer : dual_bottom_target.layers) dual_region.layers.push_back(layer);

  long long count = 0;
  for (long long e = 0; e < g.edge_count(); ++e) {
    if (!c.open(e)) continue;
    BoxGeometry::Edge ed = g.edge_at(e);
    if (!rect.contains_vertex(ed.a) || !rect.contains_vertex(ed.b)) continue;
    DualEdge de = dual_of(g, e);
    std::vector<int> from;
    if (g.dual_contains(de.a) && rect.contains_dual(de.a)) from.push_back(g.dual_id(de.a));
    if (g.dual_contains(de.b) && rect.contains_dual(de.b)) from.push_back(g.dual_id(de.b));
    if (from.empty() || !connected(c, EdgeColor::ClosedDual, dual_region, from, bt)) continue;
    if (disjoint_open_paths(c, e, left_target, right_target, rect)) ++count;
  }
  return count;
}

CrossingRecord analyze_crossing(const Config& c) {
  CrossingRecord rec;
  rec.crossed = has_horizontal_crossing(c);
  if (!rec.crossed) return rec;
  rec.lowest = lowest_crossing(c);
  rec.shortest = shortest_crossing(c);
  rec.L = rec.lowest->length();
  rec.S = rec.shortest->length();
  return rec;
}

}  // namespace perc
