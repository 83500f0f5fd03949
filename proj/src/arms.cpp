#include "perc/arms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "perc/parallel.hpp"

namespace perc {

namespace {

int parity_of(LatticeKind k) { return k == LatticeKind::Primal ? 0 : 1; }

// Lattice landing sites of a window: the outward-snapped band around the
// segment, one or two rows/columns thick depending on parity.
std::vector<int> window_ids(const BoxGeometry& g, LatticeKind kind, const SegmentQ& seg) {
  const int par = parity_of(kind);
  auto [line_lo, line_hi] = snap_outward_half(seg.line, seg.line, par);
  auto [span_lo, span_hi] = snap_outward_half(seg.lo, seg.hi, par);
  std::vector<int> out;
  auto push = [&](long long cx2, long long cy2) {
    if (kind == LatticeKind::Primal) {
      Pt v{int(cx2 / 2), int(cy2 / 2)};
      if (g.contains(v)) out.push_back(g.vertex_id(v));
    } else {
      Pt d{int((cx2 - 1) / 2), int((cy2 - 1) / 2)};
      if (g.dual_contains(d)) out.push_back(g.dual_id(d));
    }
  };
  for (long long line2 = line_lo; line2 <= line_hi; line2 += 2)
    for (long long tr2 = span_lo; tr2 <= span_hi; tr2 += 2) {
      if (seg.horizontal)
        push(tr2, line2);
      else
        push(line2, tr2);
    }
  return out;
}

std::vector<int> ring_ids(const BoxGeometry& g, LatticeKind kind, int radius) {
  std::vector<int> out;
  if (kind == LatticeKind::Primal) {
    for (int id = 0; id < g.vertex_count(); ++id) {
      Pt v = g.vertex_at(id);
      if (std::max(std::abs(v.x), std::abs(v.y)) == radius) out.push_back(id);
    }
  } else {
    // outermost dual ring inside B(radius): dual points at radius - 1/2
    for (int id = 0; id < g.dual_count(); ++id) {
      Pt d = g.dual_at(id);
      long long m = std::max(std::abs(2LL * d.x + 1), std::abs(2LL * d.y + 1));
      if (m == 2LL * radius - 1) out.push_back(id);
    }
  }
  return out;
}

double window_angle(const SegmentQ& s) {
  double line = s.line.to_double();
  double mid = 0.5 * (s.lo.to_double() + s.hi.to_double());
  return s.horizontal ? std::atan2(line, mid) : std::atan2(mid, line);
}

// The windows, read in arm order, must wind monotonically one way around the
// boundary (landing points决定 cyclic order at desk scale).
void check_cyclic_windows(const ArmSpec& spec) {
  std::vector<double> angles;
  for (const auto& a : spec.arms)
    if (a.window) angles.push_back(window_angle(*a.window));
  if (angles.size() < 3 || angles.size() != spec.arms.size()) return;
  auto winds_one_way = [&](bool cw) {
    double total = 0;
    for (size_t i = 0; i < angles.size(); ++i) {
      double d = angles[(i + 1) % angles.size()] - angles[i];
      while (d <= -3.14159265358979) d += 2 * 3.14159265358979;
      while (d > 3.14159265358979) d -= 2 * 3.14159265358979;
      if (cw) d = -d;
      if (d < 0) return false;
      total += d;
    }
    return total < 2 * 3.14159265358979 + 1e-9;
  };
  if (!winds_one_way(true) && !winds_one_way(false))
    throw std::invalid_argument("ArmSpec: landing windows violate the cyclic order");
}

long long edge_between_checked(const BoxGeometry& g, Pt a, Pt b) {
  Pt lo = (b < a) ? b : a;
  Orientation o = (a.x != b.x) ? Orientation::Horizontal : Orientation::Vertical;
  if (!g.valid_edge(lo, o)) return -1;
  return g.edge_id(lo, o);
}

}  // namespace

ArmSpec three_arm_spec(const BoxGeometry& g, long long center_edge, int outer_radius) {
  ArmSpec s;
  s.center = ArmSpec::Center::EdgeC;
  s.center_edge = center_edge;
  s.outer_radius = outer_radius;
  s.arms.resize(3);
  s.arms[0].color = EdgeColor::Open;
  s.arms[1].color = EdgeColor::Open;
  s.arms[2].color = EdgeColor::ClosedDual;
  (void)g;
  return s;
}

bool detect_arm_event(const Config& c, const ArmSpec& spec) {
  const BoxGeometry& g = c.geom;
  if (spec.outer_radius < 1 || spec.outer_radius > g.n)
    throw std::invalid_argument("detect_arm_event: outer radius outside box");
  check_cyclic_windows(spec);
  RegionMask region = spec.region ? *spec.region : RegionMask::box(spec.outer_radius);

  DisjointSpec open_flow, closed_flow;
  open_flow.color = EdgeColor::Open;
  closed_flow.color = EdgeColor::ClosedDual;
  open_flow.region = region;
  closed_flow.region = region;

  int open_seen = 0, closed_seen = 0;
  for (const ArmSpec::Arm& arm : spec.arms) {
    DisjointSpec& flow = arm.color == EdgeColor::Open ? open_flow : closed_flow;
    int& seen = arm.color == EdgeColor::Open ? open_seen : closed_seen;
    LatticeKind kind = lattice_for(arm.color);

    // source of this arm
    std::vector<int> src;
    switch (spec.center) {
      case ArmSpec::Center::EdgeC: {
        if (spec.center_edge < 0) throw std::invalid_argument("detect_arm_event: no center edge");
        if (!c.open(spec.center_edge)) return false;  // the three-arm edge is open
        BoxGeometry::Edge e = g.edge_at(spec.center_edge);
        if (arm.color == EdgeColor::Open) {
          src = {g.vertex_id(seen == 0 ? e.a : e.b)};
        } else {
          DualEdge de = dual_of(g, spec.center_edge);
          src = {g.dual_id(seen == 0 ? de.a : de.b)};
        }
        break;
      }
      case ArmSpec::Center::VertexC: {
        Pt v = spec.center_vertex;
        if (arm.color == EdgeColor::Open) {
          if (!arm.first_step) throw std::invalid_argument("vertex arms need a first step");
          Pt w = v + *arm.first_step;
          long long e = edge_between_checked(g, v, w);
          if (e < 0 || !c.open(e)) return false;
          src = {g.vertex_id(w)};
          flow.banned.push_back(g.vertex_id(v));
        } else {
          // adjacent dual corners in order: upper-left then lower-right
          Pt corner = seen == 0 ? Pt{v.x - 1, v.y} : Pt{v.x, v.y - 1};
          src = {g.dual_id(corner)};
        }
        break;
      }
      case ArmSpec::Center::InnerBox: {
        src = ring_ids(g, kind, spec.inner_radius);
        break;
      }
    }

    std::vector<int> tgt = arm.window ? window_ids(g, kind, *arm.window)
                                      : ring_ids(g, kind, spec.outer_radius);
    flow.sources.push_back(src);
    flow.targets.push_back(tgt);
    ++seen;
  }
  if (!open_flow.sources.empty() && !disjoint_connections(c, open_flow)) return false;
  if (!closed_flow.sources.empty() && !disjoint_connections(c, closed_flow)) return false;
  return true;
}

bool detect_three_arm(const Config& c, long long center_edge, int outer_radius) {
  return detect_arm_event(c, three_arm_spec(c.geom, center_edge, outer_radius));
}

namespace {

struct FiveArmLocal {
  // primal first steps (same in both orientations)
  Pt north, east, west;
  // closed corners (dual keys) and their forced step direction
  Pt upper_corner, lower_corner;

  static FiveArmLocal at(Pt v, FiveArmOrientation o) {
    FiveArmLocal f;
    f.north = v + kE2;
    f.east = v + kE1;
    f.west = v - kE1;
    if (o == FiveArmOrientation::Standard) {
      f.upper_corner = Pt{v.x - 1, v.y};  // (x-1/2, y+1/2)
      f.lower_corner = Pt{v.x, v.y - 1};  // (x+1/2, y-1/2)
    } else {
      f.upper_corner = Pt{v.x, v.y};          // (x+1/2, y+1/2)
      f.lower_corner = Pt{v.x - 1, v.y - 1};  // (x-1/2, y-1/2)
    }
    return f;
  }
};

// dual step up/down from a corner: the crossed primal edge, or -1
long long dual_step_edge(const BoxGeometry& g, Pt key, int dy) {
  Pt other{key.x, key.y + dy};
  Pt a = key, b = other;
  if (b < a) std::swap(a, b);
  // vertical dual step -> horizontal primal partner at (a.x, a.y+1)
  if (!g.valid_edge(Pt{a.x, a.y + 1}, Orientation::Horizontal)) return -1;
  return g.edge_id(Pt{a.x, a.y + 1}, Orientation::Horizontal);
}

}  // namespace

bool is_five_arm_point(const Config& c, Pt v, const FiveArmSpec& spec) {
  const BoxGeometry& g = c.geom;
  FiveArmLocal f = FiveArmLocal::at(v, spec.orientation);

  for (Pt w : {f.north, f.east, f.west}) {
    long long e = edge_between_checked(g, v, w);
    if (e < 0 || !c.open(e)) return false;
  }
  long long up = dual_step_edge(g, f.upper_corner, +1);
  long long down = dual_step_edge(g, f.lower_corner, -1);
  if (up < 0 || down < 0 || c.open(up) || c.open(down)) return false;

  auto targets = [&](const std::optional<SegmentQ>& w, LatticeKind kind) {
    return w ? window_ids(g, kind, *w) : ring_ids(g, kind, spec.outer_radius);
  };

  DisjointSpec open_flow;
  open_flow.color = EdgeColor::Open;
  open_flow.region = spec.region;
  open_flow.banned = {g.vertex_id(v)};
  open_flow.sources = {{g.vertex_id(f.north)}, {g.vertex_id(f.east)}, {g.vertex_id(f.west)}};
  open_flow.targets = {targets(spec.w_open_north, LatticeKind::Primal),
                       targets(spec.w_open_east, LatticeKind::Primal),
                       targets(spec.w_open_west, LatticeKind::Primal)};
  if (!disjoint_connections(c, open_flow)) return false;

  DisjointSpec closed_flow;
  closed_flow.color = EdgeColor::ClosedDual;
  closed_flow.region = spec.region;
  closed_flow.banned = {g.dual_id(f.upper_corner), g.dual_id(f.lower_corner)};
  closed_flow.sources = {{g.dual_id(Pt{f.upper_corner.x, f.upper_corner.y + 1})},
                         {g.dual_id(Pt{f.lower_corner.x, f.lower_corner.y - 1})}};
  closed_flow.targets = {targets(spec.w_closed_upper, LatticeKind::Dual),
                         targets(spec.w_closed_lower, LatticeKind::Dual)};
  return disjoint_connections(c, closed_flow);
}

std::vector<Pt> five_arm_scan(const Config& c, const RegionMask& search_box,
                              const FiveArmSpec& spec) {
  std::vector<Pt> out;
  const BoxGeometry& g = c.geom;
  for (int id = 0; id < g.vertex_count(); ++id) {
    Pt v = g.vertex_at(id);
    if (!search_box.contains_vertex(v)) continue;
    if (is_five_arm_point(c, v, spec)) out.push_back(v);
  }
  return out;
}

std::optional<Pt> detect_five_arm_point(const Config& c, const RegionMask& search_box,
                                        const FiveArmSpec& spec) {
  const BoxGeometry& g = c.geom;
  for (int id = 0; id < g.vertex_count(); ++id) {
    Pt v = g.vertex_at(id);
    if (!search_box.contains_vertex(v)) continue;
    if (is_five_arm_point(c, v, spec)) return v;
  }
  return std::nullopt;
}

namespace {

// Append pure-rectangle masks after a base mask; the last matching layer
// wins, so holes of the base never eat the appended rectangles.
RegionMask mask_union(const RegionMask& base, std::initializer_list<const RegionMask*> extra) {
  RegionMask m = base;
  for (const RegionMask* r : extra)
    for (const auto& layer : r->layers) m.layers.push_back(layer);
  return m;
}

// Open crossing of a rectangle mask between its extreme columns (horizontal)
// or rows (vertical).
bool rect_crossing(const Config& c, EdgeColor color, const RegionMask& rect, bool horizontal) {
  LatticeKind kind = lattice_for(color);
  std::vector<int> ids = mask_vertex_ids(c.geom, kind, rect);
  if (ids.empty()) return false;
  auto coord = [&](int id) {
    Pt p = kind == LatticeKind::Primal ? c.geom.vertex_at(id) : c.geom.dual_at(id);
    return horizontal ? p.x : p.y;
  };
  int lo = coord(ids[0]), hi = coord(ids[0]);
  for (int id : ids) {
    lo = std::min(lo, coord(id));
    hi = std::max(hi, coord(id));
  }
  if (lo == hi) return false;
  std::vector<int> from, to;
  for (int id : ids) {
    if (coord(id) == lo) from.push_back(id);
    if (coord(id) == hi) to.push_back(id);
  }
  return connected(c, color, rect, from, to);
}

std::vector<int> side_ids(const Config& c, LatticeKind kind, const RegionMask& rect, bool bottom) {
  std::vector<int> ids = mask_vertex_ids(c.geom, kind, rect);
  if (ids.empty()) return {};
  auto ycoord = [&](int id) {
    return kind == LatticeKind::Primal ? c.geom.vertex_at(id).y : c.geom.dual_at(id).y;
  };
  int extreme = ycoord(ids[0]);
  for (int id : ids) extreme = bottom ? std::min(extreme, ycoord(id)) : std::max(extreme, ycoord(id));
  std::vector<int> out;
  for (int id : ids)
    if (ycoord(id) == extreme) out.push_back(id);
  return out;
}

}  // namespace

std::optional<EkInnerResult> detect_Ek_prime_inner(const Config& c, int k) {
  return detect_Ek_prime_inner(c, k, nullptr);
}

std::optional<EkInnerResult> detect_Ek_prime_inner(const Config& c, int k, int* fail_item) {
  auto fail = [&](int item) {
    if (fail_item) *fail_item = item;
    return std::nullopt;
  };
  const BoxGeometry& g = c.geom;
  URegion u = u_region(k);
  const long long s = u.scale;
  if (g.n < 3 * s) throw std::invalid_argument("detect_Ek_prime_inner: box smaller than 3*2^k");
  auto f = [&](long long num, long long den) { return Frac(num * s, den); };

  // Lattice realizations: thin shells and side pockets snap outward by half a
  // unit so that connectivity has sites to run on at small k.
  RegionMask q1 = u.Q1.expanded_half();
  RegionMask q2 = u.Q2.expanded_half();
  RegionMask b1 = u.B1.expanded_half();
  RegionMask b2 = u.B2.expanded_half();
  RegionMask u_tilde = u.U_tilde.expanded_half();
  RegionMask v_tilde = u.V_tilde.expanded_half();

  // 1. horizontal open crossings of the two side rectangles
  RegionMask ra = RegionMask::rect(f(1, 1), f(3, 1), f(-1, 3), f(1, 3));
  RegionMask rb = RegionMask::rect(f(-7, 3), f(-1, 1), f(-1, 3), f(1, 3));
  if (!rect_crossing(c, EdgeColor::Open, ra, true)) return fail(1);
  if (!rect_crossing(c, EdgeColor::Open, rb, true)) return fail(1);

  // 2. vertical open crossing reaching below the strip
  RegionMask r2 = RegionMask::rect(f(-7, 3), f(-5, 3), f(-3, 1), f(1, 3));
  if (!rect_crossing(c, EdgeColor::Open, r2, false)) return fail(2);

  // 5. closed dual circuit with two open defects, one per side window; the
  // two closed arcs are forced over and under the hole by the band masks
  RegionMask ann = RegionMask::rect(f(-5, 3), f(5, 3), f(-5, 3), f(5, 3));
  ann.subtract_closed(f(-1, 1), f(1, 1), f(-1, 1), f(1, 1));
  RegionMask w5l = RegionMask::rect(f(-5, 3), f(-1, 1), f(-1, 3), f(1, 3));
  RegionMask w5r = RegionMask::rect(f(1, 1), f(5, 3), f(-1, 3), f(1, 3));
  RegionMask band_up = RegionMask::rect(f(-5, 3), f(5, 3), f(-1, 3) - half(), f(5, 3));
  band_up.subtract_closed(f(-1, 1), f(1, 1), f(-1, 1), f(1, 1));
  RegionMask band_down = RegionMask::rect(f(-5, 3), f(5, 3), f(-5, 3), f(1, 3) + half());
  band_down.subtract_closed(f(-1, 1), f(1, 1), f(-1, 1), f(1, 1));
  if (!two_defect_circuit(c, ann, Frac(s), EdgeColor::ClosedDual, w5l, w5r, band_up, band_down))
    return fail(5);

  // 3. five-arm point in B1 (standard orientation), arms inside Q1
  FiveArmSpec s1;
  s1.orientation = FiveArmOrientation::Standard;
  s1.region = q1;
  s1.w_closed_upper = SegmentQ{true, f(1, 3), f(-17, 6), f(-8, 3)};
  s1.w_open_north = SegmentQ{true, f(1, 3), f(-8, 3), f(-15, 6)};
  s1.w_open_east = SegmentQ{true, f(-1, 3), f(-8, 3), f(-7, 3)};
  s1.w_closed_lower = SegmentQ{true, f(-1, 3), f(-3, 1), f(-8, 3)};
  s1.w_open_west = SegmentQ{false, f(-3, 1), f(-1, 3), f(1, 3)};
  std::optional<Pt> star1 = detect_five_arm_point(c, b1, s1);
  if (!star1) return fail(3);

  // 4. five-arm point in B2 (mirrored orientation), arms inside Q2
  FiveArmSpec s2;
  s2.orientation = FiveArmOrientation::Mirrored;
  s2.region = q2;
  s2.w_open_north = SegmentQ{true, f(1, 3), f(15, 6), f(8, 3)};
  s2.w_closed_upper = SegmentQ{true, f(1, 3), f(8, 3), f(17, 6)};
  s2.w_open_east = SegmentQ{false, f(3, 1), f(-1, 3), f(1, 3)};
  s2.w_closed_lower = SegmentQ{true, f(-1, 3), f(7, 3), f(3, 1)};
  s2.w_open_west = SegmentQ{false, f(7, 3), f(-1, 3), f(1, 3)};
  std::optional<Pt> star2 = detect_five_arm_point(c, b2, s2);
  if (!star2) return fail(4);

  // 6. vertical open and closed-dual crossings of the lower-left pocket,
  // attached to the corresponding arms of star1 through their windows
  RegionMask q6 = RegionMask::rect(f(-3, 1), f(-7, 3), f(-3, 1), f(-1, 3));
  {
    RegionMask m = mask_union(q1, {&q6});
    TransitFilter gate;
    gate.gates.push_back(LineGate{true, f(-1, 3), f(-8, 3), f(-7, 3)});
    std::vector<int> to = side_ids(c, LatticeKind::Primal, q6, true);
    if (!connected(c, EdgeColor::Open, m, {g.vertex_id(*star1)}, to, &gate)) return fail(6);

    FiveArmLocal f1 = FiveArmLocal::at(*star1, FiveArmOrientation::Standard);
    TransitFilter dgate;
    dgate.gates.push_back(LineGate{true, f(-1, 3), f(-3, 1), f(-8, 3)});
    long long first = dual_step_edge(g, f1.lower_corner, -1);
    if (first < 0 || c.open(first)) return fail(6);
    std::vector<int> banned{g.dual_id(f1.lower_corner)};
    std::vector<int> dto = side_ids(c, LatticeKind::Dual, q6, true);
    if (!connected(c, EdgeColor::ClosedDual, m,
                   {g.dual_id(Pt{f1.lower_corner.x, f1.lower_corner.y - 1})}, dto, &dgate,
                   &banned))
      return fail(6);
  }

  // 7. closed dual vertical crossing of the lower-right pocket from star2
  RegionMask q7 = RegionMask::rect(f(7, 3), f(3, 1), f(-3, 1), f(-1, 3));
  {
    RegionMask m = mask_union(q2, {&q7});
    FiveArmLocal f2 = FiveArmLocal::at(*star2, FiveArmOrientation::Mirrored);
    TransitFilter dgate;
    dgate.gates.push_back(LineGate{true, f(-1, 3), f(7, 3), f(3, 1)});
    long long first = dual_step_edge(g, f2.lower_corner, -1);
    if (first < 0 || c.open(first)) return fail(7);
    std::vector<int> banned{g.dual_id(f2.lower_corner)};
    std::vector<int> dto = side_ids(c, LatticeKind::Dual, q7, true);
    if (!connected(c, EdgeColor::ClosedDual, m,
                   {g.dual_id(Pt{f2.lower_corner.x, f2.lower_corner.y - 1})}, dto, &dgate,
                   &banned))
      return fail(7);
  }

  // 8. the shield: closed dual arc through V~ joining the upper closed arms
  {
    FiveArmLocal f1 = FiveArmLocal::at(*star1, FiveArmOrientation::Standard);
    FiveArmLocal f2 = FiveArmLocal::at(*star2, FiveArmOrientation::Mirrored);
    long long e1 = dual_step_edge(g, f1.upper_corner, +1);
    long long e2 = dual_step_edge(g, f2.upper_corner, +1);
    if (e1 < 0 || e2 < 0 || c.open(e1) || c.open(e2)) return fail(8);
    RegionMask m = mask_union(v_tilde, {&q1, &q2});
    std::vector<int> banned{g.dual_id(f1.upper_corner), g.dual_id(f2.upper_corner)};
    if (!connected(c, EdgeColor::ClosedDual, m,
                   {g.dual_id(Pt{f1.upper_corner.x, f1.upper_corner.y + 1})},
                   {g.dual_id(Pt{f2.upper_corner.x, f2.upper_corner.y + 1})}, nullptr, &banned))
      return fail(8);
  }

  // 9. the shortcut arc: open path through U~ joining the north arms
  {
    RegionMask m = mask_union(u_tilde, {&q1, &q2});
    std::vector<int> banned{g.vertex_id(*star1), g.vertex_id(*star2)};
    if (!connected(c, EdgeColor::Open, m, {g.vertex_id(*star1 + kE2)},
                   {g.vertex_id(*star2 + kE2)}, nullptr, &banned))
      return fail(9);
  }

  return EkInnerResult{*star1, *star2};
}

EstimateRecord estimate_pi3(int n, long long samples, std::uint64_t master_seed, double p,
                            int workers) {
  if (samples < 1) throw std::invalid_argument("estimate_pi3: samples must be >= 1");
  BoxGeometry g(n);
  long long center = g.edge_id(Pt{0, 0}, Orientation::Horizontal);
  std::function<double(long long)> one = [&](long long i) -> double {
    Config c = sample_config(g, p, sample_seed(master_seed, std::uint64_t(i)));
    return detect_three_arm(c, center, n) ? 1.0 : 0.0;
  };
  std::vector<double> vals = parallel_map_indices<double>(samples, workers, one);
  return make_estimate("pi3", n, vals, samples);
}

CircuitEventRecord detect_circuit_stack(const Config& c, int k, int N,
                                        const std::function<bool(int)>& block_event) {
  if (k < 0 || N < 1) throw std::invalid_argument("detect_circuit_stack: bad parameters");
  const int annuli = 10 * (k + 1);
  if ((annuli * N) >= 62 || (1LL << (annuli * N)) > c.geom.n)
    throw std::invalid_argument("detect_circuit_stack: box too small for the outermost annulus");
  CircuitEventRecord rec;
  rec.k = k;
  rec.N = N;
  rec.occurred_C.resize(size_t(annuli));
  rec.occurred_D.resize(size_t(annuli));
  for (int m = 0; m < annuli; ++m) {
    int inner = int(1LL << (m * N));
    int outer = int(1LL << ((m + 1) * N));
    rec.occurred_C[size_t(m)] = annulus_open_crossings_at_most(c, inner, outer, 2);
    rec.occurred_D[size_t(m)] = annulus_closed_dual_crossings_at_most(c, inner, outer, 1);
  }
  rec.occurred_hatC.resize(size_t(k + 1));
  rec.occurred_B.resize(size_t(k + 1));
  for (int j = 0; j <= k; ++j) {
    bool hat = rec.occurred_D[size_t(10 * j)];
    for (int i : {1, 3, 4, 6, 8, 9}) hat = hat && rec.occurred_C[size_t(10 * j + i)];
    rec.occurred_hatC[size_t(j)] = hat;
    bool b = hat && (!block_event || block_event(j));
    rec.occurred_B[size_t(j)] = b;
    if (hat) ++rec.J_count;
    if (b) ++rec.I_count;
  }
  return rec;
}

EstimateRecord measure_conditional_frequency(const std::function<bool(const Config&)>& event,
                                             const std::function<bool(const Config&)>& conditioning,
                                             int n, long long samples, std::uint64_t master_seed,
                                             double p) {
  BoxGeometry g(n);
  std::vector<double> accepted;
  for (long long i = 0; i < samples; ++i) {
    Config c = sample_config(g, p, sample_seed(master_seed, std::uint64_t(i)));
    if (!conditioning(c)) continue;
    accepted.push_back(event(c) ? 1.0 : 0.0);
  }
  if (accepted.empty())
    throw InsufficientConditioningMass(
        "measure_conditional_frequency: insufficient conditioning mass within budget");
  return make_estimate("conditional", n, accepted, samples);
}

}  // namespace perc
