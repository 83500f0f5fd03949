#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "perc/config.hpp"
#include "perc/geometry.hpp"

using namespace perc;

TEST_CASE("edge counts") {
  CHECK(BoxGeometry(1).edge_count() == 12);
  CHECK(BoxGeometry(2).edge_count() == 40);
  CHECK(BoxGeometry(64).edge_count() == 33024);
  CHECK(BoxGeometry(1).vertex_count() == 9);
  CHECK(BoxGeometry(64).vertex_count() == 129 * 129);
  CHECK_THROWS_AS(BoxGeometry(0), std::invalid_argument);
}

TEST_CASE("edge index bijection, exhaustive for n <= 64") {
  for (int n = 1; n <= 64; ++n) {
    BoxGeometry g(n);
    for (long long e = 0; e < g.edge_count(); ++e) {
      BoxGeometry::Edge ed = g.edge_at(e);
      CHECK(g.edge_id(ed.a, ed.o) == e);
      CHECK(g.contains(ed.a));
      CHECK(g.contains(ed.b));
    }
  }
}

TEST_CASE("dual edges share the midpoint and the involution holds on B(4)") {
  BoxGeometry g(4);
  // {(0,0),(1,0)} -> {(1/2,-1/2),(1/2,1/2)}; keys (0,-1),(0,0)
  DualEdge dh = dual_of(g, g.edge_id(Pt{0, 0}, Orientation::Horizontal));
  CHECK(dh.a == Pt{0, -1});
  CHECK(dh.b == Pt{0, 0});
  // {(0,0),(0,1)} -> {(-1/2,1/2),(1/2,1/2)}; keys (-1,0),(0,0)
  DualEdge dv = dual_of(g, g.edge_id(Pt{0, 0}, Orientation::Vertical));
  CHECK(dv.a == Pt{-1, 0});
  CHECK(dv.b == Pt{0, 0});
  for (long long e = 0; e < g.edge_count(); ++e) {
    DualEdge d = dual_of(g, e);
    CHECK(primal_of(g, d.a, d.b) == e);
    // midpoints agree: primal midpoint in half-units equals dual midpoint
    BoxGeometry::Edge ed = g.edge_at(e);
    long long pmx = 2 * ed.a.x + (ed.o == Orientation::Horizontal ? 1 : 0);
    long long pmy = 2 * ed.a.y + (ed.o == Orientation::Vertical ? 1 : 0);
    long long dmx = (2 * d.a.x + 1 + 2 * d.b.x + 1) / 2;
    long long dmy = (2 * d.a.y + 1 + 2 * d.b.y + 1) / 2;
    CHECK(pmx == dmx);
    CHECK(pmy == dmy);
  }
}

TEST_CASE("sampling is deterministic and degenerate densities are exact") {
  BoxGeometry g(5);
  Config a = sample_config(g, 0.5, 123);
  Config b = sample_config(g, 0.5, 123);
  CHECK(a.states == b.states);
  Config c = sample_config(g, 0.5, 124);
  CHECK(a.states != c.states);

  Config open = sample_config(g, 1.0, 7);
  Config closed = sample_config(g, 0.0, 7);
  for (long long e = 0; e < g.edge_count(); ++e) {
    CHECK(open.open(e));
    CHECK(closed.closed(e));
  }
}

TEST_CASE("empirical open fraction at p=1/2 on B(1), binomial oracle") {
  BoxGeometry g(1);
  const long long samples = 100000;
  long long open = 0;
  for (long long i = 0; i < samples; ++i) {
    Config c = sample_config(g, 0.5, sample_seed(99, std::uint64_t(i)));
    for (auto s : c.states) open += s;
  }
  double total = double(samples) * 12.0;
  double frac = double(open) / total;
  double sigma = std::sqrt(0.25 / total);
  CHECK(std::abs(frac - 0.5) < 3 * sigma);
}

TEST_CASE("annulus masks") {
  RegionMask full = annulus(0, 3);
  CHECK(full.contains_vertex(Pt{0, 0}));
  CHECK(full.contains_vertex(Pt{3, 3}));
  CHECK(!full.contains_vertex(Pt{4, 0}));

  RegionMask a12 = annulus(1, 2);
  CHECK(a12.contains_vertex(Pt{2, 0}));
  CHECK(!a12.contains_vertex(Pt{1, 0}));
  CHECK(!a12.contains_vertex(Pt{0, 0}));
  int count = 0;
  for (int x = -2; x <= 2; ++x)
    for (int y = -2; y <= 2; ++y)
      if (a12.contains_vertex(Pt{x, y})) ++count;
  CHECK(count == 16);

  CHECK_THROWS_AS(annulus(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(annulus(3, 2), std::invalid_argument);
}

TEST_CASE("rational rectangle membership is exact") {
  // [-7/3, 7/3] in both axes, open: integer points with |x|,|y| <= 2
  RectQ hole = RectQ::open(Frac(-7, 3), Frac(7, 3), Frac(-7, 3), Frac(7, 3));
  CHECK(hole.contains_half(4, 0));    // (2,0)
  CHECK(!hole.contains_half(6, 0));   // (3,0)
  CHECK(hole.contains_half(-4, -4));  // (-2,-2)
  // dual point (7/3 is not a half integer, so strictness is moot here)
  CHECK(hole.contains_half(3, 3));  // (1.5,1.5)

  RegionMask m = RegionMask::rect(Frac(-3), Frac(3), Frac(-1, 3), Frac(3));
  m.subtract_open(Frac(-7, 3), Frac(7, 3), Frac(-7, 3), Frac(7, 3));
  CHECK(m.contains_vertex(Pt{3, 0}));
  CHECK(!m.contains_vertex(Pt{2, 0}));   // inside the hole
  CHECK(!m.contains_vertex(Pt{0, -1}));  // below the slab
  CHECK(m.contains_vertex(Pt{0, 3}));
}

TEST_CASE("outward snap to parity bands") {
  auto [lo, hi] = snap_outward_half(Frac(4, 3), Frac(4, 3), 0);  // integers around 4/3
  CHECK(lo == 2);  // 1 in half-units
  CHECK(hi == 4);  // 2
  auto [dlo, dhi] = snap_outward_half(Frac(-17, 6), Frac(-8, 3), 1);
  // dual coordinates around [-2.833, -2.667]: nearest half-integers outward
  CHECK(dlo == -7);  // -3.5
  CHECK(dhi == -5);  // -2.5
  auto [same_lo, same_hi] = snap_outward_half(Frac(2), Frac(2), 0);
  CHECK(same_lo == 4);
  CHECK(same_hi == 4);
}

TEST_CASE("half-unit expansion realizes thin shells") {
  // a shell of width 1/6: no dual sites exactly, some after expansion
  RegionMask shell = RegionMask::rect(Frac(-17, 6).scaled(4), Frac(17, 6).scaled(4),
                                      Frac(-1, 6).scaled(4), Frac(17, 6).scaled(4));
  shell.subtract_open(Frac(-8, 3).scaled(4), Frac(8, 3).scaled(4), Frac(-8, 3).scaled(4),
                      Frac(8, 3).scaled(4));
  bool any = false;
  for (int i = -13; i <= 13 && !any; ++i)
    any = shell.contains_dual(Pt{i, 0});
  CHECK(!any);
  RegionMask wide = shell.expanded_half();
  CHECK(wide.contains_dual(Pt{-12, 0}));  // (-11.5, 0.5)
}
