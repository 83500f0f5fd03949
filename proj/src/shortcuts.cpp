#include "perc/shortcuts.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace perc {

namespace {

constexpr int kDirX[4] = {1, 0, -1, 0};  // E N W S
constexpr int kDirY[4] = {0, 1, 0, -1};

long long edge_between(const BoxGeometry& g, Pt a, Pt b) {
  Pt lo = (b < a) ? b : a;
  Orientation o = (a.x != b.x) ? Orientation::Horizontal : Orientation::Vertical;
  if (!g.valid_edge(lo, o)) return -1;
  return g.edge_id(lo, o);
}

// face key (i,j) = face center (i+1/2, j+1/2); inside the box iff
// i,j in [-n, n-1]
bool face_in_box(const BoxGeometry& g, Pt key) {
  return key.x >= -g.n && key.x <= g.n - 1 && key.y >= -g.n && key.y <= g.n - 1;
}

// primal edge separating two adjacent faces
long long face_step_edge(const BoxGeometry& g, Pt a, Pt b) {
  if (b < a) std::swap(a, b);
  if (a.x == b.x)  // vertical move -> horizontal edge between
    return g.valid_edge(Pt{a.x, a.y + 1}, Orientation::Horizontal)
               ? g.edge_id(Pt{a.x, a.y + 1}, Orientation::Horizontal)
               : -1;
  return g.valid_edge(Pt{a.x + 1, a.y}, Orientation::Vertical)
             ? g.edge_id(Pt{a.x + 1, a.y}, Orientation::Vertical)
             : -1;
}

}  // namespace

HostContext::HostContext(const Config& c, LatticePath host_path)
    : config(&c), host(std::move(host_path)) {
  const BoxGeometry& g = c.geom;
  host_index.assign(size_t(g.vertex_count()), -1);
  for (size_t i = 0; i < host.vertices.size(); ++i)
    host_index[size_t(g.vertex_id(host.vertices[i]))] = int(i);
  host_edge.assign(size_t(g.edge_count()), 0);
  for (long long e : host.edges) host_edge[size_t(e)] = 1;

  // Faces strictly above the host, by column parity: a face lies below the
  // crossing curve iff an upward vertical ray from its center crosses an odd
  // number of host horizontal edges. This is exact even at vertex pinches
  // where flood fills would miss cave pockets behind overhangs.
  above_face.assign(size_t(g.dual_count()), 0);
  const int n = g.n;
  std::vector<std::vector<int>> host_rows(size_t(2 * n));  // column -> y list
  for (size_t i = 0; i + 1 < host.vertices.size(); ++i) {
    Pt a = host.vertices[i], b = host.vertices[i + 1];
    if (a.y != b.y) continue;
    host_rows[size_t(std::min(a.x, b.x) + n)].push_back(a.y);
  }
  for (int i = -n; i <= n - 1; ++i) {
    const std::vector<int>& rows = host_rows[size_t(i + n)];
    for (int j = -n; j <= n - 1; ++j) {
      int cnt = 0;
      for (int y : rows)
        if (y > j) ++cnt;
      if ((cnt & 1) == 0) above_face[size_t(g.dual_id(Pt{i, j}))] = 1;
    }
  }

  // A non-host vertex is strictly above iff any surrounding in-box face is.
  above_vertex.assign(size_t(g.vertex_count()), 0);
  for (int id = 0; id < g.vertex_count(); ++id) {
    if (host_index[size_t(id)] >= 0) continue;
    Pt v = g.vertex_at(id);
    for (Pt key : {Pt{v.x - 1, v.y - 1}, Pt{v.x, v.y - 1}, Pt{v.x - 1, v.y}, Pt{v.x, v.y}}) {
      if (!face_in_box(g, key)) continue;
      if (above_face[size_t(g.dual_id(key))]) {
        above_vertex[size_t(id)] = 1;
        break;
      }
    }
  }
}

namespace {

// Anchor vertices: host runs straight horizontally through them and an open
// vertical edge leads into the upper region.
std::vector<int> anchor_indices(const HostContext& ctx) {
  const Config& c = *ctx.config;
  const BoxGeometry& g = c.geom;
  std::vector<int> out;
  for (size_t i = 0; i < ctx.host.vertices.size(); ++i) {
    Pt w = ctx.host.vertices[i];
    long long west = edge_between(g, w - kE1, w);
    long long east = edge_between(g, w, w + kE1);
    if (west < 0 || east < 0) continue;
    if (!ctx.host_edge[size_t(west)] || !ctx.host_edge[size_t(east)]) continue;
    if (!g.contains(w + kE2)) continue;
    if (!ctx.above_vertex[size_t(g.vertex_id(w + kE2))]) continue;
    long long up = edge_between(g, w, w + kE2);
    if (up < 0 || !c.open(up)) continue;
    out.push_back(int(i));
  }
  return out;
}

struct BoxClip {
  int xlo, xhi, ylo, yhi;
  bool contains(Pt p) const { return p.x >= xlo && p.x <= xhi && p.y >= ylo && p.y <= yhi; }
};

// shortest open path through the strict upper region inside the clip box
std::optional<std::vector<Pt>> upper_bfs(const HostContext& ctx, Pt from, Pt to,
                                         const BoxClip& clip, long long max_len) {
  const Config& c = *ctx.config;
  const BoxGeometry& g = c.geom;
  auto ok = [&](Pt p) {
    return g.contains(p) && clip.contains(p) && ctx.above_vertex[size_t(g.vertex_id(p))];
  };
  if (!ok(from) || !ok(to)) return std::nullopt;
  std::vector<int> parent(size_t(g.vertex_count()), -2);
  std::vector<int> dist(size_t(g.vertex_count()), 0);
  std::deque<int> q;
  int s = g.vertex_id(from), t = g.vertex_id(to);
  parent[size_t(s)] = -1;
  q.push_back(s);
  while (!q.empty() && parent[size_t(t)] == -2) {
    int u = q.front();
    q.pop_front();
    if (max_len >= 0 && dist[size_t(u)] >= max_len) continue;
    Pt p = g.vertex_at(u);
    for (int d = 0; d < 4; ++d) {
      Pt w{p.x + kDirX[d], p.y + kDirY[d]};
      if (!ok(w)) continue;
      long long e = edge_between(g, p, w);
      if (e < 0 || !c.open(e)) continue;
      int v = g.vertex_id(w);
      if (parent[size_t(v)] != -2) continue;
      parent[size_t(v)] = u;
      dist[size_t(v)] = dist[size_t(u)] + 1;
      if (v == t) break;
      q.push_back(v);
    }
  }
  if (parent[size_t(t)] == -2) return std::nullopt;
  std::vector<Pt> rev;
  for (int u = t; u != -1; u = parent[size_t(u)]) rev.push_back(g.vertex_at(u));
  std::reverse(rev.begin(), rev.end());
  return rev;
}

// closed dual shield between the upper corners of (w0, wM), first and last
// steps vertical, through faces strictly above the host (whole box).
std::optional<std::vector<Pt>> shield_bfs(const HostContext& ctx, Pt w0, Pt wM) {
  const Config& c = *ctx.config;
  const BoxGeometry& g = c.geom;
  Pt c1{w0.x - 1, w0.y};  // (x-1/2, y+1/2)
  Pt c2{wM.x, wM.y};      // (x+1/2, y+1/2)
  auto above = [&](Pt key) {
    return face_in_box(g, key) && ctx.above_face[size_t(g.dual_id(key))];
  };
  if (!above(c1) || !above(c2)) return std::nullopt;
  Pt c1up{c1.x, c1.y + 1}, c2up{c2.x, c2.y + 1};
  long long e1 = face_step_edge(g, c1, c1up);
  long long e2 = face_step_edge(g, c2, c2up);
  if (e1 < 0 || e2 < 0 || c.open(e1) || c.open(e2)) return std::nullopt;
  if (!above(c1up) || !above(c2up)) return std::nullopt;
  if (c1 == c2) return std::nullopt;

  std::vector<int> parent(size_t(g.dual_count()), -2);
  parent[size_t(g.dual_id(c1))] = -3;  // banned mid-path
  parent[size_t(g.dual_id(c2))] = -3;
  std::deque<int> q;
  int s = g.dual_id(c1up), t = g.dual_id(c2up);
  if (s == t) {
    std::vector<Pt> out{c1, c1up, c2};
    return out;
  }
  parent[size_t(s)] = -1;
  q.push_back(s);
  while (!q.empty() && parent[size_t(t)] == -2) {
    int u = q.front();
    q.pop_front();
    Pt p = g.dual_at(u);
    for (int d = 0; d < 4; ++d) {
      Pt w{p.x + kDirX[d], p.y + kDirY[d]};
      if (!above(w)) continue;
      long long e = face_step_edge(g, p, w);
      if (e < 0 || c.open(e)) continue;
      int v = g.dual_id(w);
      if (parent[size_t(v)] != -2) continue;
      parent[size_t(v)] = u;
      if (v == t) break;
      q.push_back(v);
    }
  }
  if (parent[size_t(t)] == -2) return std::nullopt;
  std::vector<Pt> rev;
  for (int u = t; u != -1 && u != -3; u = parent[size_t(u)]) {
    rev.push_back(g.dual_at(u));
    if (parent[size_t(u)] == -1) break;
  }
  std::reverse(rev.begin(), rev.end());
  std::vector<Pt> out;
  out.push_back(c1);
  for (Pt p : rev) out.push_back(p);
  out.push_back(c2);
  return out;
}

LatticePath to_path(const BoxGeometry& g, LatticeKind kind, const std::vector<Pt>& verts) {
  LatticePath p;
  p.lattice = kind;
  p.self_avoiding = true;
  p.vertices = verts;
  for (size_t i = 0; i + 1 < verts.size(); ++i)
    p.edges.push_back(kind == LatticeKind::Primal ? edge_between(g, verts[i], verts[i + 1])
                                                  : face_step_edge(g, verts[i], verts[i + 1]));
  return p;
}

std::optional<ShortcutRecord> try_pair(const HostContext& ctx, int i0, int i1, double kappa,
                                       int scale, const BoxClip& clip) {
  const BoxGeometry& g = ctx.config->geom;
  Pt w0 = ctx.host.vertices[size_t(i0)];
  Pt wM = ctx.host.vertices[size_t(i1)];
  long long tau_len = i1 - i0;
  if (tau_len < 1) return std::nullopt;
  long long budget = (long long)(kappa * double(tau_len));  // #r <= kappa * #tau
  if (budget < 2) return std::nullopt;
  auto mid = upper_bfs(ctx, w0 + kE2, wM + kE2, clip, budget - 2);
  if (!mid) return std::nullopt;
  long long r_len = (long long)mid->size() + 1;  // edges: verticals + interior path
  if (double(r_len) > kappa * double(tau_len)) return std::nullopt;
  auto shield = shield_bfs(ctx, w0, wM);
  if (!shield) return std::nullopt;

  ShortcutRecord rec;
  rec.w0 = w0;
  rec.wM = wM;
  rec.tau_begin = i0;
  rec.tau_end = i1;
  rec.scale = scale;
  std::vector<Pt> rverts;
  rverts.push_back(w0);
  for (Pt p : *mid) rverts.push_back(p);
  rverts.push_back(wM);
  rec.r = to_path(g, LatticeKind::Primal, rverts);
  rec.shield = to_path(g, LatticeKind::Dual, *shield);
  rec.gain = double(rec.r.length()) / double(tau_len);
  if (rec.gain > kappa) return std::nullopt;
  return rec;
}

}  // namespace

std::vector<ShortcutRecord> find_all_shortcuts(const HostContext& ctx, double kappa, int scale) {
  const long long side = 3LL << scale;
  std::vector<int> anchors = anchor_indices(ctx);
  std::vector<ShortcutRecord> out;
  std::map<std::pair<int, int>, size_t> by_interval;
  for (size_t a = 0; a < anchors.size(); ++a) {
    for (size_t b = a + 1; b < anchors.size(); ++b) {
      int i0 = anchors[a], i1 = anchors[b];
      if (i1 - i0 < 2) continue;
      Pt u = ctx.host.vertices[size_t(i0)], v = ctx.host.vertices[size_t(i1)];
      if (std::abs(u.x - v.x) > side || std::abs(u.y - v.y) > side) continue;
      // search box: the side-length 3*2^scale box centered between the anchors
      BoxClip clip{int((u.x + v.x) / 2 - side / 2), 0, 0, 0};
      clip.xhi = int(clip.xlo + side);
      clip.ylo = int((u.y + v.y) / 2 - side / 2);
      clip.yhi = int(clip.ylo + side);
      auto rec = try_pair(ctx, i0, i1, kappa, scale, clip);
      if (!rec) continue;
      auto key = std::make_pair(i0, i1);
      auto it = by_interval.find(key);
      if (it == by_interval.end()) {
        by_interval[key] = out.size();
        out.push_back(std::move(*rec));
      } else if (rec->r.length() < out[it->second].r.length()) {
        out[it->second] = std::move(*rec);
      }
    }
  }
  return out;
}

std::vector<ShortcutRecord> find_shortcuts(const HostContext& ctx, long long e, double kappa,
                                           int scale) {
  const BoxGeometry& g = ctx.config->geom;
  if (!ctx.host_edge[size_t(e)])
    throw std::invalid_argument("find_shortcuts: edge not on host");
  BoxGeometry::Edge ed = g.edge_at(e);
  const long long side = 3LL << scale;
  // B(e, 3*2^k): the box of that side length centered at the lower-left
  // endpoint of e
  BoxClip clip{int(ed.a.x - side / 2), int(ed.a.x + side / 2), int(ed.a.y - side / 2),
               int(ed.a.y + side / 2)};
  // locate e on the host
  int epos = -1;
  for (size_t i = 0; i < ctx.host.edges.size(); ++i)
    if (ctx.host.edges[i] == e) {
      epos = int(i);
      break;
    }
  if (epos < 0) throw std::invalid_argument("find_shortcuts: edge not on host");

  std::vector<int> anchors = anchor_indices(ctx);
  std::vector<ShortcutRecord> out;
  for (size_t a = 0; a < anchors.size(); ++a) {
    int i0 = anchors[a];
    if (i0 > epos) break;
    if (!clip.contains(ctx.host.vertices[size_t(i0)])) continue;
    for (size_t b = a + 1; b < anchors.size(); ++b) {
      int i1 = anchors[b];
      if (i1 <= epos) continue;  // detour interval must contain e
      if (!clip.contains(ctx.host.vertices[size_t(i1)])) continue;
      auto rec = try_pair(ctx, i0, i1, kappa, scale, clip);
      if (rec) out.push_back(std::move(*rec));
    }
  }
  return out;
}

std::vector<ShortcutRecord> find_shortcuts(const Config& c, const LatticePath& host, long long e,
                                           double kappa, int scale) {
  HostContext ctx(c, host);
  return find_shortcuts(ctx, e, kappa, scale);
}

bool revalidate_shortcut(const HostContext& ctx, const ShortcutRecord& rec, double kappa) {
  const Config& c = *ctx.config;
  const BoxGeometry& g = c.geom;
  // interval endpoints match the host
  if (rec.tau_begin < 0 || rec.tau_end >= int(ctx.host.vertices.size())) return false;
  if (rec.tau_end - rec.tau_begin < 1) return false;
  if (!(ctx.host.vertices[size_t(rec.tau_begin)] == rec.w0)) return false;
  if (!(ctx.host.vertices[size_t(rec.tau_end)] == rec.wM)) return false;
  // item 2: the four host edges around the endpoints, vertical first steps
  for (Pt w : {rec.w0, rec.wM}) {
    long long west = edge_between(g, w - kE1, w);
    long long east = edge_between(g, w, w + kE1);
    if (west < 0 || east < 0) return false;
    if (!ctx.host_edge[size_t(west)] || !ctx.host_edge[size_t(east)]) return false;
  }
  const auto& rv = rec.r.vertices;
  if (rv.size() < 3) return false;
  if (!(rv.front() == rec.w0) || !(rv.back() == rec.wM)) return false;
  if (!(rv[1] == rec.w0 + kE2)) return false;
  if (!(rv[rv.size() - 2] == rec.wM + kE2)) return false;
  // r open, self-avoiding, structurally a path
  LatticePath rr = rec.r;
  rr.self_avoiding = true;
  if (!check_path(g, rr) || !path_color_ok(c, rr)) return false;
  // item 1: interior strictly above the host; item 3: r meets host only at
  // its endpoints, so r u tau is a circuit
  for (size_t i = 1; i + 1 < rv.size(); ++i) {
    int id = g.vertex_id(rv[i]);
    if (!ctx.above_vertex[size_t(id)]) return false;
    if (ctx.host_index[size_t(id)] >= 0) return false;
  }
  // item 4: shield endpoints, vertical first/last dual edges, above region
  const auto& sv = rec.shield.vertices;
  if (sv.size() < 3) return false;
  if (!(sv.front() == Pt{rec.w0.x - 1, rec.w0.y})) return false;
  if (!(sv.back() == Pt{rec.wM.x, rec.wM.y})) return false;
  if (sv[1].x != sv[0].x || sv[1].y != sv[0].y + 1) return false;
  if (sv[sv.size() - 2].x != sv.back().x || sv[sv.size() - 2].y != sv.back().y + 1) return false;
  LatticePath sh = rec.shield;
  sh.self_avoiding = true;
  if (!check_path(g, sh) || !path_color_ok(c, sh)) return false;
  for (const Pt& key : sv) {
    if (!face_in_box(g, key)) return false;
    if (!ctx.above_face[size_t(g.dual_id(key))]) return false;
  }
  // item 5 and the scaled-search box bound
  if (double(rec.r.length()) > kappa * double(rec.tau_len())) return false;
  int xlo = rv[0].x, xhi = rv[0].x, ylo = rv[0].y, yhi = rv[0].y;
  for (const Pt& p : rv) {
    xlo = std::min(xlo, p.x);
    xhi = std::max(xhi, p.x);
    ylo = std::min(ylo, p.y);
    yhi = std::max(yhi, p.y);
  }
  if (xhi - xlo > (3 << rec.scale) || yhi - ylo > (3 << rec.scale)) return false;
  return true;
}

long long SelectionPlan::total_detoured() const {
  long long t = 0;
  for (const auto& r : chosen) t += r.tau_len();
  return t;
}

SelectionPlan select_maximal(
    const std::vector<std::pair<int, std::vector<ShortcutRecord>>>& families_desc,
    const LatticePath& host) {
  for (size_t i = 1; i < families_desc.size(); ++i)
    if (families_desc[i].first >= families_desc[i - 1].first)
      throw std::invalid_argument("select_maximal: families must come in descending scale");
  const int E = int(host.edges.size());
  SelectionPlan plan;
  // uncovered segments as vertex-index ranges [lo, hi]
  std::vector<std::pair<int, int>> segments{{0, E}};
  for (const auto& [scale, family] : families_desc) {
    for (const ShortcutRecord& rec : family)
      if (rec.tau_end > E || !(host.vertices[size_t(rec.tau_begin)] == rec.w0))
        throw std::invalid_argument("select_maximal: record does not match host");
    SelectionPlan::Pass pass;
    pass.scale = scale;
    std::vector<std::pair<int, int>> next_segments;
    for (auto [lo, hi] : segments) {
      // candidates fully inside this uncovered segment
      std::vector<const ShortcutRecord*> cand;
      for (const ShortcutRecord& rec : family)
        if (rec.tau_begin >= lo && rec.tau_end <= hi) cand.push_back(&rec);
      pass.candidates += int(cand.size());
      // weighted interval scheduling, exact; detours may not share a vertex,
      // so compatible means next.begin > prev.end
      std::sort(cand.begin(), cand.end(), [](const ShortcutRecord* a, const ShortcutRecord* b) {
        if (a->tau_end != b->tau_end) return a->tau_end < b->tau_end;
        if (a->tau_begin != b->tau_begin) return a->tau_begin < b->tau_begin;
        return a->r.length() < b->r.length();
      });
      const int m = int(cand.size());
      std::vector<long long> best(size_t(m) + 1, 0);
      std::vector<int> take(size_t(m) + 1, 0);
      for (int i = 1; i <= m; ++i) {
        const ShortcutRecord* r = cand[size_t(i - 1)];
        // last candidate ending strictly before r begins (no shared vertex)
        int p = 0;
        for (int j = i - 1; j >= 1; --j)
          if (cand[size_t(j - 1)]->tau_end < r->tau_begin) {
            p = j;
            break;
          }
        long long with = best[size_t(p)] + r->tau_len();
        if (with > best[size_t(i - 1)]) {
          best[size_t(i)] = with;
          take[size_t(i)] = 1;
        } else {
          best[size_t(i)] = best[size_t(i - 1)];
        }
      }
      std::vector<const ShortcutRecord*> picked;
      for (int i = m; i >= 1;) {
        if (!take[size_t(i)]) {
          --i;
          continue;
        }
        const ShortcutRecord* r = cand[size_t(i - 1)];
        picked.push_back(r);
        int p = 0;
        for (int j = i - 1; j >= 1; --j)
          if (cand[size_t(j - 1)]->tau_end < r->tau_begin) {
            p = j;
            break;
          }
        i = p;
      }
      std::sort(picked.begin(), picked.end(),
                [](const ShortcutRecord* a, const ShortcutRecord* b) {
                  return a->tau_begin < b->tau_begin;
                });
      // record picks and split the segment
      int cursor = lo;
      for (const ShortcutRecord* r : picked) {
        plan.chosen.push_back(*r);
        pass.chosen += 1;
        pass.detoured += r->tau_len();
        if (r->tau_begin > cursor) next_segments.push_back({cursor, r->tau_begin});
        cursor = r->tau_end;
      }
      if (cursor < hi) next_segments.push_back({cursor, hi});
    }
    plan.passes.push_back(pass);
    segments = std::move(next_segments);
  }
  std::sort(plan.chosen.begin(), plan.chosen.end(),
            [](const ShortcutRecord& a, const ShortcutRecord& b) {
              return a.tau_begin < b.tau_begin;
            });
  return plan;
}

LatticePath build_sigma(const LatticePath& host, const SelectionPlan& plan) {
  const int E = int(host.edges.size());
  for (size_t i = 0; i < plan.chosen.size(); ++i) {
    const ShortcutRecord& r = plan.chosen[i];
    if (r.tau_begin < 0 || r.tau_end > E || !(host.vertices[size_t(r.tau_begin)] == r.w0) ||
        !(host.vertices[size_t(r.tau_end)] == r.wM))
      throw std::invalid_argument("build_sigma: plan does not match host");
    if (i > 0 && plan.chosen[i - 1].tau_end >= r.tau_begin)
      throw std::invalid_argument("build_sigma: overlapping detour intervals");
  }
  LatticePath sigma;
  sigma.lattice = host.lattice;
  sigma.self_avoiding = false;  // splices of distinct shortcuts may touch
  int cursor = 0;
  auto copy_host = [&](int upto) {
    for (int i = cursor; i < upto; ++i) {
      sigma.vertices.push_back(host.vertices[size_t(i)]);
      sigma.edges.push_back(host.edges[size_t(i)]);
    }
    cursor = upto;
  };
  for (const ShortcutRecord& r : plan.chosen) {
    copy_host(r.tau_begin);
    for (size_t i = 0; i + 1 < r.r.vertices.size(); ++i) {
      sigma.vertices.push_back(r.r.vertices[i]);
      sigma.edges.push_back(r.r.edges[i]);
    }
    cursor = r.tau_end;
  }
  copy_host(E);
  sigma.vertices.push_back(host.vertices.back());
  return sigma;
}

namespace {

// faces enclosed by the circuit r u tau, by vertical ray casting over the
// circuit's horizontal edges
std::vector<Pt> enclosed_faces(const LatticePath& host, const ShortcutRecord& rec) {
  std::vector<std::pair<int, int>> hedges;  // (x, y) of horizontal circuit edges
  auto add_edges = [&](const std::vector<Pt>& vs) {
    for (size_t i = 0; i + 1 < vs.size(); ++i) {
      if (vs[i].y != vs[i + 1].y) continue;
      int x = std::min(vs[i].x, vs[i + 1].x);
      hedges.push_back({x, vs[i].y});
    }
  };
  add_edges(rec.r.vertices);
  std::vector<Pt> tau(host.vertices.begin() + rec.tau_begin,
                      host.vertices.begin() + rec.tau_end + 1);
  add_edges(tau);
  int xlo = rec.w0.x, xhi = rec.w0.x, ylo = rec.w0.y, yhi = rec.w0.y;
  auto widen = [&](const std::vector<Pt>& vs) {
    for (const Pt& p : vs) {
      xlo = std::min(xlo, p.x);
      xhi = std::max(xhi, p.x);
      ylo = std::min(ylo, p.y);
      yhi = std::max(yhi, p.y);
    }
  };
  widen(rec.r.vertices);
  widen(tau);
  std::vector<Pt> faces;
  for (int i = xlo; i < xhi; ++i)
    for (int j = ylo; j < yhi; ++j) {
      int cnt = 0;
      for (auto [x, y] : hedges)
        if (x == i && y > j) ++cnt;
      if (cnt & 1) faces.push_back(Pt{i, j});
    }
  return faces;
}

}  // namespace

bool verify_nested_or_disjoint(const std::vector<ShortcutRecord>& records,
                               const LatticePath& host) {
  if (records.size() < 2) return true;
  std::vector<std::vector<Pt>> regions;
  regions.reserve(records.size());
  for (const ShortcutRecord& r : records) regions.push_back(enclosed_faces(host, r));
  auto contains_all = [](const std::vector<Pt>& big, const std::vector<Pt>& small) {
    for (const Pt& p : small)
      if (std::find(big.begin(), big.end(), p) == big.end()) return false;
    return true;
  };
  for (size_t i = 0; i < regions.size(); ++i)
    for (size_t j = i + 1; j < regions.size(); ++j) {
      bool overlap = false;
      for (const Pt& p : regions[j])
        if (std::find(regions[i].begin(), regions[i].end(), p) != regions[i].end()) {
          overlap = true;
          break;
        }
      if (!overlap) continue;
      if (!contains_all(regions[i], regions[j]) && !contains_all(regions[j], regions[i]))
        return false;
    }
  return true;
}

LatticePath outermost_arc(const Config& c, const URegion& u, Pt star1, Pt star2) {
  const BoxGeometry& g = c.geom;
  auto in_region = [&](Pt p) { return g.contains(p) && u.U.contains_vertex(p); };
  long long first = edge_between(g, star1, star1 + kE2);
  long long last = edge_between(g, star2, star2 + kE2);
  if (first < 0 || last < 0 || !c.open(first) || !c.open(last) || !in_region(star1 + kE2))
    throw std::logic_error("outermost_arc: no qualifying arc");

  // Wall-follower hugging the outer boundary (left-hand rule from the upward
  // start). The stars are enterable only through their vertical edges.
  std::vector<Pt> path{star1, star1 + kE2};
  std::vector<int> pos(size_t(g.vertex_count()), -1);
  pos[size_t(g.vertex_id(path[0]))] = 0;
  pos[size_t(g.vertex_id(path[1]))] = 1;
  Pt cur = path[1];
  int dir = 1;  // N
  const long long cap = 8 * g.edge_count() + 16;
  long long steps = 0;
  while (!(cur == star2)) {
    if (++steps > cap) throw std::logic_error("outermost_arc: walk failed to terminate");
    int chosen = -1;
    for (int turn : {1, 0, 3, 2}) {  // left, straight, right, back
      int d = (dir + turn) & 3;
      Pt q{cur.x + kDirX[d], cur.y + kDirY[d]};
      if (!in_region(q)) continue;
      if (q == star1) continue;  // the arc only leaves star1 once
      if (q == star2 && !(q + kE2 == cur)) continue;  // enter star2 vertically
      long long e = edge_between(g, cur, q);
      if (e < 0 || !c.open(e)) continue;
      chosen = d;
      break;
    }
    if (chosen < 0) throw std::logic_error("outermost_arc: walk stuck");
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
  return to_path(g, LatticeKind::Primal, path);
}

LatticePath shortest_arc(const Config& c, const URegion& u, Pt star1, Pt star2) {
  const BoxGeometry& g = c.geom;
  auto p = shortest_path(c, EdgeColor::Open, u.U, {g.vertex_id(star1)}, {g.vertex_id(star2)});
  if (!p) throw std::logic_error("shortest_arc: stars are disconnected in U(k)");
  return *p;
}

bool outermost_arc_local_three_arm(const Config& c, const URegion& u, Pt star1, Pt star2,
                                   long long e) {
  const BoxGeometry& g = c.geom;
  if (!c.open(e)) return false;
  BoxGeometry::Edge ed = g.edge_at(e);
  if (!u.U.contains_vertex(ed.a) || !u.U.contains_vertex(ed.b)) return false;
  DisjointSpec flow;
  flow.color = EdgeColor::Open;
  flow.region = u.U;
  flow.sources = {{g.vertex_id(ed.a)}, {g.vertex_id(ed.b)}};
  flow.targets = {{g.vertex_id(star1)}, {g.vertex_id(star2)}};
  if (!disjoint_connections(c, flow)) return false;
  // closed dual arm from e* to a shield corner of a star
  DualEdge de = dual_of(g, e);
  std::vector<int> from;
  if (g.dual_contains(de.a) && u.U.contains_dual(de.a)) from.push_back(g.dual_id(de.a));
  if (g.dual_contains(de.b) && u.U.contains_dual(de.b)) from.push_back(g.dual_id(de.b));
  if (from.empty()) return false;
  std::vector<int> to{g.dual_id(Pt{star1.x - 1, star1.y}), g.dual_id(Pt{star2.x, star2.y})};
  return connected(c, EdgeColor::ClosedDual, u.U, from, to);
}

}  // namespace perc
