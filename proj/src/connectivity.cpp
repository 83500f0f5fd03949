#include "perc/connectivity.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <stdexcept>

namespace perc {

bool TransitFilter::allows(long long ax2, long long ay2, long long bx2, long long by2) const {
  for (const LineGate& gate : gates) {
    long long a_line = gate.horizontal_line ? ay2 : ax2;
    long long b_line = gate.horizontal_line ? by2 : bx2;
    // signs of (coord - line), exact
    auto sign = [&](long long c2) {
      if (gate.line.lt_half(c2)) return 1;
      if (gate.line.gt_half(c2)) return -1;
      return 0;
    };
    int sa = sign(a_line), sb = sign(b_line);
    bool crosses = (sa == 0 || sb == 0 || sa != sb);
    if (!crosses) continue;
    long long a_tr = gate.horizontal_line ? ax2 : ay2;
    long long b_tr = gate.horizontal_line ? bx2 : by2;
    bool a_ok = gate.lo.le_half(a_tr) && gate.hi.ge_half(a_tr);
    bool b_ok = gate.lo.le_half(b_tr) && gate.hi.ge_half(b_tr);
    if (!(a_ok && b_ok)) return false;
  }
  return true;
}

namespace {

// Neighbor scan order (target id ascending): S, W, E, N.
constexpr int kDx[4] = {0, -1, 1, 0};
constexpr int kDy[4] = {-1, 0, 0, 1};

struct Walker {
  const Config& c;
  EdgeColor color;
  const RegionMask& mask;
  const TransitFilter* filter;
  std::vector<std::uint8_t> banned_map;
  LatticeKind kind;

  Walker(const Config& cfg, EdgeColor col, const RegionMask& m, const TransitFilter* f,
         const std::vector<int>* banned)
      : c(cfg), color(col), mask(m), filter(f), kind(lattice_for(col)) {
    banned_map.assign(size_t(id_space()), 0);
    if (banned)
      for (int b : *banned)
        if (b >= 0 && b < id_space()) banned_map[size_t(b)] = 1;
  }

  int id_space() const {
    return kind == LatticeKind::Primal ? int(c.geom.vertex_count()) : int(c.geom.dual_count());
  }
  Pt at(int id) const {
    return kind == LatticeKind::Primal ? c.geom.vertex_at(id) : c.geom.dual_at(id);
  }
  int id_of(Pt p) const {
    return kind == LatticeKind::Primal ? c.geom.vertex_id(p) : c.geom.dual_id(p);
  }
  bool member(Pt p) const {
    if (kind == LatticeKind::Primal)
      return c.geom.contains(p) && mask.contains_vertex(p);
    return c.geom.dual_contains(p) && mask.contains_dual(p);
  }
  bool member_id(int id) const { return member(at(id)) && !banned_map[size_t(id)]; }

  // Primal edge id realizing the step p -> q on this lattice, or -1.
  long long step_edge(Pt p, Pt q) const {
    const BoxGeometry& g = c.geom;
    if (kind == LatticeKind::Primal) {
      Pt lo = (q < p) ? q : p;
      Orientation o = (p.x != q.x) ? Orientation::Horizontal : Orientation::Vertical;
      if (!g.valid_edge(lo, o)) return -1;
      return g.edge_id(lo, o);
    }
    // dual step between keys; partner must exist in the box
    Pt a = p, b = q;
    if (b < a) std::swap(a, b);
    if (a.x == b.x) {
      if (!g.valid_edge(Pt{a.x, a.y + 1}, Orientation::Horizontal)) return -1;
      return g.edge_id(Pt{a.x, a.y + 1}, Orientation::Horizontal);
    }
    if (!g.valid_edge(Pt{a.x + 1, a.y}, Orientation::Vertical)) return -1;
    return g.edge_id(Pt{a.x + 1, a.y}, Orientation::Vertical);
  }

  bool state_ok(long long e) const {
    return color == EdgeColor::Open ? c.open(e) : c.closed(e);
  }

  void half_coords(Pt p, long long& x2, long long& y2) const {
    if (kind == LatticeKind::Primal) {
      x2 = 2LL * p.x;
      y2 = 2LL * p.y;
    } else {
      x2 = 2LL * p.x + 1;
      y2 = 2LL * p.y + 1;
    }
  }

  template <class F>
  void for_neighbors(int id, F&& f) const {
    Pt p = at(id);
    for (int d = 0; d < 4; ++d) {
      Pt q{p.x + kDx[d], p.y + kDy[d]};
      if (!member(q)) continue;
      int qid = id_of(q);
      if (banned_map[size_t(qid)]) continue;
      long long e = step_edge(p, q);
      if (e < 0 || !state_ok(e)) continue;
      if (filter) {
        long long ax2, ay2, bx2, by2;
        half_coords(p, ax2, ay2);
        half_coords(q, bx2, by2);
        if (!filter->allows(ax2, ay2, bx2, by2)) continue;
      }
      f(qid, e);
    }
  }
};

}  // namespace

std::vector<int> mask_vertex_ids(const BoxGeometry& g, LatticeKind kind, const RegionMask& mask) {
  std::vector<int> out;
  if (kind == LatticeKind::Primal) {
    for (int id = 0; id < g.vertex_count(); ++id)
      if (mask.contains_vertex(g.vertex_at(id))) out.push_back(id);
  } else {
    for (int id = 0; id < g.dual_count(); ++id)
      if (mask.contains_dual(g.dual_at(id))) out.push_back(id);
  }
  return out;
}

ComponentLabels components(const Config& c, EdgeColor color, const RegionMask& mask) {
  Walker w(c, color, mask, nullptr, nullptr);
  ComponentLabels out;
  out.lattice = w.kind;
  out.label.assign(size_t(w.id_space()), -1);
  bool any = false;
  std::vector<int> stack;
  for (int id = 0; id < w.id_space(); ++id) {
    if (!w.member_id(id)) continue;
    any = true;
    if (out.label[size_t(id)] >= 0) continue;
    int comp = out.components++;
    out.label[size_t(id)] = comp;
    stack.assign(1, id);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      w.for_neighbors(u, [&](int v, long long) {
        if (out.label[size_t(v)] < 0) {
          out.label[size_t(v)] = comp;
          stack.push_back(v);
        }
      });
    }
  }
  if (!any) throw std::invalid_argument("components: empty mask");
  return out;
}

bool connected(const Config& c, EdgeColor color, const RegionMask& mask,
               const std::vector<int>& from, const std::vector<int>& to,
               const TransitFilter* filter, const std::vector<int>* banned) {
  return shortest_path(c, color, mask, from, to, filter, banned).has_value();
}

std::optional<LatticePath> shortest_path(const Config& c, EdgeColor color,
                                         const RegionMask& mask, const std::vector<int>& from,
                                         const std::vector<int>& to, const TransitFilter* filter,
                                         const std::vector<int>* banned) {
  Walker w(c, color, mask, filter, banned);
  std::vector<std::uint8_t> is_target(size_t(w.id_space()), 0);
  for (int t : to)
    if (t >= 0 && t < w.id_space() && w.member_id(t)) is_target[size_t(t)] = 1;
  std::vector<int> parent(size_t(w.id_space()), -2);
  std::deque<int> queue;
  std::vector<int> sorted_from = from;
  std::sort(sorted_from.begin(), sorted_from.end());
  for (int s : sorted_from) {
    if (s < 0 || s >= w.id_space() || !w.member_id(s)) continue;
    if (parent[size_t(s)] != -2) continue;
    parent[size_t(s)] = -1;
    queue.push_back(s);
  }
  int hit = -1;
  for (int s : queue)
    if (is_target[size_t(s)]) { hit = s; break; }
  while (hit < 0 && !queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    w.for_neighbors(u, [&](int v, long long) {
      if (hit >= 0 || parent[size_t(v)] != -2) return;
      parent[size_t(v)] = u;
      if (is_target[size_t(v)]) {
        hit = v;
        return;
      }
      queue.push_back(v);
    });
  }
  if (hit < 0) return std::nullopt;
  LatticePath path;
  path.lattice = w.kind;
  path.self_avoiding = true;
  std::vector<int> rev;
  for (int u = hit; u != -1; u = parent[size_t(u)]) rev.push_back(u);
  std::reverse(rev.begin(), rev.end());
  for (int id : rev) path.vertices.push_back(w.at(id));
  for (size_t i = 0; i + 1 < rev.size(); ++i)
    path.edges.push_back(w.step_edge(w.at(rev[i]), w.at(rev[i + 1])));
  return path;
}

namespace {

struct FlowGraph {
  struct Arc {
    int to, rev, cap;
  };
  std::vector<std::vector<Arc>> adj;

  explicit FlowGraph(int n) : adj(size_t(n)) {}

  void add(int u, int v, int cap) {
    adj[size_t(u)].push_back({v, int(adj[size_t(v)].size()), cap});
    adj[size_t(v)].push_back({u, int(adj[size_t(u)].size()) - 1, 0});
  }

  // One augmenting unit along a shortest path, or false.
  bool augment(int s, int t) {
    std::vector<std::pair<int, int>> pre(adj.size(), {-2, -1});
    std::deque<int> q{s};
    pre[size_t(s)] = {-1, -1};
    while (!q.empty() && pre[size_t(t)].first == -2) {
      int u = q.front();
      q.pop_front();
      for (int i = 0; i < int(adj[size_t(u)].size()); ++i) {
        const Arc& a = adj[size_t(u)][size_t(i)];
        if (a.cap <= 0 || pre[size_t(a.to)].first != -2) continue;
        pre[size_t(a.to)] = {u, i};
        if (a.to == t) break;
        q.push_back(a.to);
      }
    }
    if (pre[size_t(t)].first == -2) return false;
    for (int v = t; v != s;) {
      auto [u, i] = pre[size_t(v)];
      Arc& a = adj[size_t(u)][size_t(i)];
      a.cap -= 1;
      adj[size_t(a.to)][size_t(a.rev)].cap += 1;
      v = u;
    }
    return true;
  }
};

}  // namespace

bool disjoint_connections(const Config& c, const DisjointSpec& spec) {
  if (spec.sources.size() != spec.targets.size())
    throw std::invalid_argument("disjoint_connections: one target set per source set");
  const int k = int(spec.sources.size());
  if (k == 0) return true;
  Walker w(c, spec.color, spec.region, spec.filter, &spec.banned);

  // dense ids for member vertices
  std::vector<int> dense(size_t(w.id_space()), -1);
  std::vector<int> members;
  for (int id = 0; id < w.id_space(); ++id)
    if (w.member_id(id)) {
      dense[size_t(id)] = int(members.size());
      members.push_back(id);
    }
  const int V = int(members.size());
  // nodes: in = 2d, out = 2d+1, then source aggregators, target aggregators, S, T
  const int base = 2 * V;
  const int S = base + 2 * k;
  const int T = S + 1;
  FlowGraph fg(T + 1);
  for (int d = 0; d < V; ++d) fg.add(2 * d, 2 * d + 1, 1);
  for (int d = 0; d < V; ++d) {
    int id = members[size_t(d)];
    w.for_neighbors(id, [&](int nid, long long) {
      int nd = dense[size_t(nid)];
      if (nd >= 0) fg.add(2 * d + 1, 2 * nd, 1);
    });
  }
  for (int i = 0; i < k; ++i) {
    int agg = base + i;
    fg.add(S, agg, 1);
    for (int v : spec.sources[size_t(i)]) {
      if (v < 0 || v >= w.id_space()) continue;
      int d = dense[size_t(v)];
      if (d >= 0) fg.add(agg, 2 * d, 1);
    }
  }
  for (int i = 0; i < k; ++i) {
    int agg = base + k + i;
    fg.add(agg, T, 1);
    for (int v : spec.targets[size_t(i)]) {
      if (v < 0 || v >= w.id_space()) continue;
      int d = dense[size_t(v)];
      if (d >= 0) fg.add(2 * d + 1, agg, 1);
    }
  }
  int flow = 0;
  while (flow < k && fg.augment(S, T)) ++flow;
  return flow == k;
}

bool disjoint_open_paths(const Config& c, long long edge, const RegionMask& target_a,
                         const RegionMask& target_b, const RegionMask& region) {
  if (!c.open(edge)) return false;
  BoxGeometry::Edge e = c.geom.edge_at(edge);
  DisjointSpec spec;
  spec.color = EdgeColor::Open;
  spec.region = region;
  spec.sources = {{c.geom.vertex_id(e.a)}, {c.geom.vertex_id(e.b)}};
  std::vector<int> ta = mask_vertex_ids(c.geom, LatticeKind::Primal, target_a);
  std::vector<int> tb = mask_vertex_ids(c.geom, LatticeKind::Primal, target_b);
  if (ta.empty() || tb.empty())
    throw std::invalid_argument("disjoint_open_paths: empty target");
  spec.targets = {ta, tb};
  return disjoint_connections(c, spec);
}

bool circuit_valid(const Config& c, const DefectedCircuit& d) {
  if (d.circuit.vertices.size() < 4) return false;
  if (!(d.circuit.vertices.front() == d.circuit.vertices.back())) return false;
  LatticePath p = d.circuit;
  p.self_avoiding = true;
  if (!check_path(c.geom, p)) return false;
  if (d.winding != 1 && d.winding != -1) return false;
  std::vector<long long> found;
  for (long long e : d.circuit.edges) {
    bool matches = d.kind == EdgeColor::Open ? c.open(e) : c.closed(e);
    if (!matches) found.push_back(e);
  }
  std::vector<long long> want = d.defects;
  std::sort(found.begin(), found.end());
  std::sort(want.begin(), want.end());
  return found == want;
}

}  // namespace perc
