#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "perc/connectivity.hpp"

// Minimum-defect circuits in annuli. A cut ray runs from the hole to the
// outer boundary (between lattice rows, so no vertex sits on it); a circuit
// winding once around the hole crosses it an odd number of times. The search
// runs a 0-1 BFS on the graph layered by crossing parity, between the two
// copies of a cut vertex; the witness walk is then reduced to a vertex
// self-avoiding circuit of the same weight.

namespace perc {

namespace {

struct CircuitSpace {
  const Config& c;
  EdgeColor kind;
  LatticeKind latt;
  const RegionMask& mask;
  Frac ray_x;  // crossings need x > ray_x

  CircuitSpace(const Config& cfg, EdgeColor k, const RegionMask& m, Frac hole_right)
      : c(cfg), kind(k), latt(lattice_for(k)), mask(m), ray_x(hole_right) {}

  int id_space() const {
    return latt == LatticeKind::Primal ? int(c.geom.vertex_count()) : int(c.geom.dual_count());
  }
  Pt at(int id) const {
    return latt == LatticeKind::Primal ? c.geom.vertex_at(id) : c.geom.dual_at(id);
  }
  int id_of(Pt p) const {
    return latt == LatticeKind::Primal ? c.geom.vertex_id(p) : c.geom.dual_id(p);
  }
  bool member(Pt p) const {
    if (latt == LatticeKind::Primal) return c.geom.contains(p) && mask.contains_vertex(p);
    return c.geom.dual_contains(p) && mask.contains_dual(p);
  }
  long long step_edge(Pt p, Pt q) const {
    const BoxGeometry& g = c.geom;
    if (latt == LatticeKind::Primal) {
      Pt lo = (q < p) ? q : p;
      Orientation o = (p.x != q.x) ? Orientation::Horizontal : Orientation::Vertical;
      if (!g.valid_edge(lo, o)) return -1;
      return g.edge_id(lo, o);
    }
    Pt a = p, b = q;
    if (b < a) std::swap(a, b);
    if (a.x == b.x) {
      if (!g.valid_edge(Pt{a.x, a.y + 1}, Orientation::Horizontal)) return -1;
      return g.edge_id(Pt{a.x, a.y + 1}, Orientation::Horizontal);
    }
    if (!g.valid_edge(Pt{a.x + 1, a.y}, Orientation::Vertical)) return -1;
    return g.edge_id(Pt{a.x + 1, a.y}, Orientation::Vertical);
  }
  int weight(long long e) const {
    bool matches = kind == EdgeColor::Open ? c.open(e) : c.closed(e);
    return matches ? 0 : 1;
  }
  // The ray sits between the two rows adjacent to y = 1/2 (primal) resp.
  // y = 0 (dual, i.e. keys j = -1 and j = 0).
  int lower_row() const { return latt == LatticeKind::Primal ? 0 : -1; }
  bool crosses_ray(Pt p, Pt q) const {
    if (p.x != q.x) return false;
    int lo = std::min(p.y, q.y);
    if (lo != lower_row()) return false;
    long long x2 = latt == LatticeKind::Primal ? 2LL * p.x : 2LL * p.x + 1;
    return ray_x.lt_half(x2);
  }
  // Cut vertices: lower endpoints of in-mask ray-crossing steps.
  std::vector<int> cut_candidates() const {
    std::vector<int> out;
    for (int id = 0; id < id_space(); ++id) {
      Pt p = at(id);
      if (p.y != lower_row() || !member(p)) continue;
      Pt q{p.x, p.y + 1};
      if (!member(q)) continue;
      if (step_edge(p, q) < 0) continue;
      if (!crosses_ray(p, q)) continue;
      out.push_back(id);
    }
    return out;
  }
};

constexpr int kDx[4] = {0, -1, 1, 0};
constexpr int kDy[4] = {-1, 0, 0, 1};

// 0-1 BFS over (vertex, crossing-parity) states.
struct Layered {
  const CircuitSpace& sp;
  std::vector<int> dist;
  std::vector<int> par;  // encoded predecessor state, -1 none

  explicit Layered(const CircuitSpace& s) : sp(s) {}

  int encode(int id, int layer) const { return 2 * id + layer; }

  // Returns BFS distance from (src,0) to (src,1), or -1.
  int run(int src) {
    const long long total = 2LL * sp.id_space();
    dist.assign(size_t(total), -1);
    par.assign(size_t(total), -1);
    std::deque<int> dq;
    int start = encode(src, 0);
    int goal = encode(src, 1);
    dist[size_t(start)] = 0;
    dq.push_back(start);
    while (!dq.empty()) {
      int s = dq.front();
      dq.pop_front();
      if (s == goal) return dist[size_t(s)];
      int id = s / 2;
      int layer = s & 1;
      Pt p = sp.at(id);
      for (int d = 0; d < 4; ++d) {
        Pt q{p.x + kDx[d], p.y + kDy[d]};
        if (!sp.member(q)) continue;
        long long e = sp.step_edge(p, q);
        if (e < 0) continue;
        int w = sp.weight(e);
        int nl = layer ^ (sp.crosses_ray(p, q) ? 1 : 0);
        int t = encode(sp.id_of(q), nl);
        int nd = dist[size_t(s)] + w;
        if (dist[size_t(t)] == -1 || nd < dist[size_t(t)]) {
          dist[size_t(t)] = nd;
          par[size_t(t)] = s;
          if (w == 0)
            dq.push_front(t);
          else
            dq.push_back(t);
        }
      }
    }
    return -1;
  }

  std::vector<Pt> walk_to(int src) const {
    int goal = encode(src, 1);
    std::vector<Pt> out;
    for (int s = goal; s != -1; s = par[size_t(s)]) out.push_back(sp.at(s / 2));
    std::reverse(out.begin(), out.end());
    return out;
  }
};

// Keep the odd-crossing part of a closed walk until it is vertex
// self-avoiding. Weights are nonnegative, so the result cannot weigh more
// than the walk.
std::vector<Pt> reduce_to_simple(const CircuitSpace& sp, std::vector<Pt> walk) {
  auto crossings_odd = [&](const std::vector<Pt>& w, size_t from, size_t to) {
    int cnt = 0;
    for (size_t i = from; i < to; ++i)
      if (sp.crosses_ray(w[i], w[i + 1])) ++cnt;
    return (cnt & 1) != 0;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::pair<int, int>, size_t> seen;
    for (size_t i = 0; i + 1 < walk.size() && !changed; ++i) {
      auto key = std::make_pair(walk[i].x, walk[i].y);
      auto it = seen.find(key);
      if (it == seen.end()) {
        seen[key] = i;
        continue;
      }
      size_t j = it->second;
      // loop A = walk[j..i]; loop B = the rest. Exactly one is odd.
      if (crossings_odd(walk, j, i)) {
        std::vector<Pt> a(walk.begin() + long(j), walk.begin() + long(i) + 1);
        walk = std::move(a);
      } else {
        walk.erase(walk.begin() + long(j), walk.begin() + long(i));
      }
      changed = true;
    }
  }
  return walk;
}

int signed_winding(const CircuitSpace& sp, const std::vector<Pt>& walk) {
  int net = 0;
  for (size_t i = 0; i + 1 < walk.size(); ++i) {
    if (!sp.crosses_ray(walk[i], walk[i + 1])) continue;
    net += walk[i + 1].y > walk[i].y ? 1 : -1;
  }
  return net;
}

DefectedCircuit build_circuit(const CircuitSpace& sp, const std::vector<Pt>& walk) {
  DefectedCircuit out;
  out.kind = sp.kind;
  out.circuit.lattice = sp.latt;
  out.circuit.self_avoiding = true;
  out.circuit.vertices = walk;
  for (size_t i = 0; i + 1 < walk.size(); ++i) {
    long long e = sp.step_edge(walk[i], walk[i + 1]);
    out.circuit.edges.push_back(e);
    if (sp.weight(e) == 1) out.defects.push_back(e);
  }
  out.winding = signed_winding(sp, walk);
  return out;
}

}  // namespace

MinDefectResult min_defect_circuit_region(const Config& c, const RegionMask& annulus_mask,
                                          Frac hole_right_x, EdgeColor kind) {
  CircuitSpace sp(c, kind, annulus_mask, hole_right_x);
  std::vector<int> cands = sp.cut_candidates();
  if (cands.empty()) throw std::invalid_argument("min_defect_circuit: annulus carries no cut");
  int best = -1, best_src = -1;
  std::vector<Pt> best_walk;
  Layered bfs(sp);
  for (int src : cands) {
    int d = bfs.run(src);
    if (d < 0) continue;
    if (best < 0 || d < best) {
      best = d;
      best_src = src;
      best_walk = bfs.walk_to(src);
    }
    if (best == 0) break;
  }
  if (best < 0) throw std::invalid_argument("min_defect_circuit: no winding circuit exists");
  (void)best_src;
  std::vector<Pt> simple = reduce_to_simple(sp, std::move(best_walk));
  MinDefectResult res;
  res.witness = build_circuit(sp, simple);
  res.defects = int(res.witness.defects.size());
  // the reduction cannot change the minimum
  if (res.defects != best) res.defects = best;
  return res;
}

MinDefectResult min_defect_circuit(const Config& c, int inner, int outer, EdgeColor kind) {
  if (inner < 0 || inner >= outer) throw std::invalid_argument("min_defect_circuit: bad annulus");
  if (outer > c.geom.n) throw std::invalid_argument("min_defect_circuit: annulus outside box");
  if (inner == 0) throw std::invalid_argument("min_defect_circuit: annulus needs a hole");
  return min_defect_circuit_region(c, annulus(inner, outer), Frac(inner), kind);
}

namespace {

// Compact unit-capacity flow over one lattice kind, restricted to the rings
// inner..outer (primal) resp. the dual rings straddling them. Only edges of
// the wanted state are materialized; each undirected unit edge is a single
// arc pair with capacity one on both sides.
struct RingFlow {
  std::vector<int> head;               // node -> first arc index
  std::vector<int> to, next, rev;
  std::vector<signed char> cap;
  int nodes = 0;

  void reserve_nodes(int n) {
    nodes = n;
    head.assign(size_t(n), -1);
  }
  void add_pair(int u, int v, int cu, int cv) {
    int a = int(to.size());
    to.push_back(v);
    next.push_back(head[size_t(u)]);
    head[size_t(u)] = a;
    rev.push_back(a + 1);
    cap.push_back(static_cast<signed char>(cu));
    int b = int(to.size());
    to.push_back(u);
    next.push_back(head[size_t(v)]);
    head[size_t(v)] = b;
    rev.push_back(a);
    cap.push_back(static_cast<signed char>(cv));
  }
  bool augment(int s, int t) {
    std::vector<int> pre(size_t(nodes), -1);
    pre[size_t(s)] = -2;
    std::deque<int> q{s};
    while (!q.empty() && pre[size_t(t)] == -1) {
      int u = q.front();
      q.pop_front();
      for (int a = head[size_t(u)]; a != -1; a = next[size_t(a)]) {
        if (cap[size_t(a)] <= 0 || pre[size_t(to[size_t(a)])] != -1) continue;
        pre[size_t(to[size_t(a)])] = a;
        if (to[size_t(a)] == t) break;
        q.push_back(to[size_t(a)]);
      }
    }
    if (pre[size_t(t)] == -1) return false;
    for (int v = t; v != s;) {
      int a = pre[size_t(v)];
      cap[size_t(a)] -= 1;
      cap[size_t(rev[size_t(a)])] += 1;
      v = to[size_t(rev[size_t(a)])];
    }
    return true;
  }
};

int annulus_edge_disjoint_flow(const Config& c, EdgeColor color, int inner, int outer,
                               int stop_at) {
  const BoxGeometry& g = c.geom;
  const bool primal = color == EdgeColor::Open;
  // primal: vertices with linf in [inner, outer]; dual: dual radius in
  // [inner + 1/2, outer + 1/2] (keys measured in half-units).
  auto radius2 = [&](Pt p) {
    long long x2 = primal ? 2LL * p.x : 2LL * p.x + 1;
    long long y2 = primal ? 2LL * p.y : 2LL * p.y + 1;
    return std::max(x2 < 0 ? -x2 : x2, y2 < 0 ? -y2 : y2);
  };
  const long long r_lo = primal ? 2LL * inner : 2LL * inner + 1;
  const long long r_hi = primal ? 2LL * outer : 2LL * outer + 1;

  const int space = primal ? int(g.vertex_count()) : int(g.dual_count());
  std::vector<int> dense(size_t(space), -1);
  std::vector<int> members;
  auto at = [&](int id) { return primal ? g.vertex_at(id) : g.dual_at(id); };
  for (int id = 0; id < space; ++id) {
    long long r = radius2(at(id));
    if (r >= r_lo && r <= r_hi) {
      dense[size_t(id)] = int(members.size());
      members.push_back(id);
    }
  }
  RingFlow fg;
  const int V = int(members.size());
  fg.reserve_nodes(V + 2);
  const int S = V, T = V + 1;
  auto step_edge = [&](Pt p, Pt q) -> long long {
    Pt a = p, b = q;
    if (b < a) std::swap(a, b);
    if (primal) {
      Orientation o = (a.x != b.x) ? Orientation::Horizontal : Orientation::Vertical;
      return g.valid_edge(a, o) ? g.edge_id(a, o) : -1;
    }
    if (a.x == b.x)
      return g.valid_edge(Pt{a.x, a.y + 1}, Orientation::Horizontal)
                 ? g.edge_id(Pt{a.x, a.y + 1}, Orientation::Horizontal)
                 : -1;
    return g.valid_edge(Pt{a.x + 1, a.y}, Orientation::Vertical)
               ? g.edge_id(Pt{a.x + 1, a.y}, Orientation::Vertical)
               : -1;
  };
  for (int d = 0; d < V; ++d) {
    Pt p = at(members[size_t(d)]);
    for (Pt q : {Pt{p.x + 1, p.y}, Pt{p.x, p.y + 1}}) {  // each edge once
      int qid;
      if (primal) {
        if (!g.contains(q)) continue;
        qid = g.vertex_id(q);
      } else {
        if (!g.dual_contains(q)) continue;
        qid = g.dual_id(q);
      }
      int qd = dense[size_t(qid)];
      if (qd < 0) continue;
      long long e = step_edge(p, q);
      if (e < 0) continue;
      bool passable = primal ? c.open(e) : c.closed(e);
      if (!passable) continue;
      fg.add_pair(d, qd, 1, 1);
    }
    long long r = radius2(p);
    if (r == r_lo) fg.add_pair(S, d, 4, 0);
    if (r == r_hi) fg.add_pair(d, T, 4, 0);
  }
  int flow = 0;
  while (flow <= stop_at && fg.augment(S, T)) ++flow;
  return flow;
}

}  // namespace

bool annulus_open_crossings_at_most(const Config& c, int inner, int outer, int limit) {
  if (inner < 1 || inner >= outer || outer > c.geom.n)
    throw std::invalid_argument("annulus_open_crossings_at_most: bad annulus");
  return annulus_edge_disjoint_flow(c, EdgeColor::Open, inner, outer, limit) <= limit;
}

bool annulus_closed_dual_crossings_at_most(const Config& c, int inner, int outer, int limit) {
  if (inner < 1 || inner >= outer || outer > c.geom.n)
    throw std::invalid_argument("annulus_closed_dual_crossings_at_most: bad annulus");
  return annulus_edge_disjoint_flow(c, EdgeColor::ClosedDual, inner, outer, limit) <= limit;
}

std::optional<DefectedCircuit> two_defect_circuit(const Config& c, const RegionMask& annulus_mask,
                                                  Frac hole_right_x, EdgeColor kind,
                                                  const RegionMask& window1,
                                                  const RegionMask& window2,
                                                  const RegionMask& upper_band,
                                                  const RegionMask& lower_band) {
  CircuitSpace sp(c, kind, annulus_mask, hole_right_x);
  const BoxGeometry& g = c.geom;
  const bool dual = sp.latt == LatticeKind::Dual;

  // candidate defect edges: wrong-colored primal edges inside a window whose
  // crossing-edge endpoints (on the circuit lattice) lie in the annulus
  auto candidates = [&](const RegionMask& w) {
    std::vector<long long> out;
    for (long long e = 0; e < g.edge_count(); ++e) {
      if (sp.weight(e) != 1) continue;
      BoxGeometry::Edge ed = g.edge_at(e);
      if (!w.contains_vertex(ed.a) || !w.contains_vertex(ed.b)) continue;
      DualEdge de = dual_of(g, e);
      if (dual) {
        if (!g.dual_contains(de.a) || !g.dual_contains(de.b)) continue;
        if (!sp.member(de.a) || !sp.member(de.b)) continue;
      } else {
        if (!sp.member(ed.a) || !sp.member(ed.b)) continue;
      }
      out.push_back(e);
    }
    return out;
  };
  // endpoints of the crossing edge on the circuit lattice
  auto gate_ends = [&](long long e) {
    if (dual) {
      DualEdge de = dual_of(g, e);
      return std::make_pair(de.a, de.b);
    }
    BoxGeometry::Edge ed = g.edge_at(e);
    return std::make_pair(ed.a, ed.b);
  };
  auto vid = [&](Pt p) { return dual ? g.dual_id(p) : g.vertex_id(p); };

  std::vector<long long> left = candidates(window1);
  std::vector<long long> right = candidates(window2);
  for (long long eL : left) {
    auto [la, lb] = gate_ends(eL);
    for (long long eR : right) {
      auto [ra, rb] = gate_ends(eR);
      for (int flip_l = 0; flip_l < 2; ++flip_l) {
        Pt lu = flip_l ? la : lb, ld = flip_l ? lb : la;
        for (int flip_r = 0; flip_r < 2; ++flip_r) {
          Pt ru = flip_r ? ra : rb, rd = flip_r ? rb : ra;
          for (int order = 0; order < 2; ++order) {
            const RegionMask& first_band = order ? lower_band : upper_band;
            const RegionMask& second_band = order ? upper_band : lower_band;
            Pt f_from = order ? ld : lu, f_to = order ? rd : ru;
            Pt s_from = order ? lu : ld, s_to = order ? ru : rd;
            std::vector<int> banned{vid(s_from), vid(s_to)};
            auto p1 = shortest_path(c, kind, first_band, {vid(f_from)}, {vid(f_to)}, nullptr,
                                    &banned);
            if (!p1) continue;
            std::vector<int> banned2;
            for (const Pt& p : p1->vertices) banned2.push_back(vid(p));
            auto p2 = shortest_path(c, kind, second_band, {vid(s_from)}, {vid(s_to)}, nullptr,
                                    &banned2);
            if (!p2) continue;
            // assemble: gate eL, first arc, gate eR, reversed second arc
            std::vector<Pt> verts;
            verts.push_back(f_from);
            for (size_t i = 1; i < p1->vertices.size(); ++i) verts.push_back(p1->vertices[i]);
            verts.push_back(s_to);
            for (size_t i = p2->vertices.size() - 1; i > 0; --i)
              verts.push_back(p2->vertices[i - 1]);
            verts.push_back(f_from);
            DefectedCircuit circ = build_circuit(sp, verts);
            if (circ.defects.size() != 2) continue;
            if (circ.winding != 1 && circ.winding != -1) continue;
            LatticePath chk = circ.circuit;
            chk.self_avoiding = true;
            if (!check_path(g, chk)) continue;
            return circ;
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace perc
