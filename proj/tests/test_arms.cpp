#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "perc/arms.hpp"
#include "perc/rng.hpp"
#include "perc/shortcuts.hpp"

using namespace perc;

namespace {

void open_edge(Config& c, Pt a, Pt b) {
  c.states[size_t(oracle::edge_of(c.geom, a, b))] = 1;
}

void close_edge(Config& c, Pt a, Pt b) {
  c.states[size_t(oracle::edge_of(c.geom, a, b))] = 0;
}

/// An explicit configuration realizing every item of the inner event at k=2
/// on B(12): five-arm points at (-11,0) and (11,0), the two side crossings,
/// the long vertical crossing, the two-defect circuit, both pocket crossings,
/// shield and shortcut arc.
Config handmade_ek2() {
  BoxGeometry g(12);
  Config c = sample_config(g, 0.0, 1);
  open_edge(c, {-11, 0}, {-11, 1});
  open_edge(c, {-11, 0}, {-10, 0});
  open_edge(c, {-12, 0}, {-11, 0});
  open_edge(c, {-10, 0}, {-10, -1});
  open_edge(c, {11, 0}, {11, 1});
  open_edge(c, {11, 0}, {12, 0});
  open_edge(c, {10, 0}, {11, 0});
  for (int x = 4; x < 12; ++x) open_edge(c, {x, 0}, {x + 1, 0});
  for (int x = -9; x < -4; ++x) open_edge(c, {x, 0}, {x + 1, 0});
  for (int y = -12; y < 1; ++y) open_edge(c, {-8, y}, {-8, y + 1});
  open_edge(c, {-6, 0}, {-5, 0});
  open_edge(c, {5, 0}, {6, 0});
  for (int y = -12; y < -1; ++y) open_edge(c, {-10, y}, {-10, y + 1});
  for (int y = 1; y < 10; ++y) {
    open_edge(c, {-11, y}, {-11, y + 1});
    open_edge(c, {11, y}, {11, y + 1});
  }
  for (int x = -11; x < 11; ++x) open_edge(c, {x, 10}, {x + 1, 10});
  return c;
}

}  // namespace

TEST_CASE("three-arm event: degenerate and forced configurations") {
  BoxGeometry g(3);
  long long center = g.edge_id(Pt{0, 0}, Orientation::Horizontal);
  Config open = sample_config(g, 1.0, 1);
  CHECK(!detect_three_arm(open, center, 3));  // no closed dual arm
  Config closed = sample_config(g, 0.0, 1);
  CHECK(!detect_three_arm(closed, center, 3));  // the edge itself is closed

  // open cross through the center edge plus a closed dual column below it
  Config c = sample_config(g, 1.0, 1);
  for (int y = -3; y <= 0; ++y) close_edge(c, {0, y}, {1, y});
  // (1/2,-1/2) now has a closed dual path straight down; reopen the center
  c.states[size_t(center)] = 1;
  CHECK(detect_three_arm(c, center, 3));
}

TEST_CASE("pi3 estimate matches exhaustive enumeration at n=1") {
  BoxGeometry g(1);
  long long center = g.edge_id(Pt{0, 0}, Orientation::Horizontal);
  long long hits = 0;
  for (unsigned mask = 0; mask < 4096; ++mask) {
    Config c = sample_config(g, 0.0, 1);
    for (int e = 0; e < 12; ++e) c.states[size_t(e)] = (mask >> e) & 1;
    if (detect_three_arm(c, center, 1)) ++hits;
  }
  double exact = double(hits) / 4096.0;
  CHECK(exact > 0);
  EstimateRecord est = estimate_pi3(1, 20000, 77);
  CHECK(std::abs(est.mean - exact) <= 3 * std::max(est.se, 1e-9));

  // geometry independence: the same event embedded in B(2), with the edges
  // outside B(1) closed, gives the same frequency
  BoxGeometry g2(2);
  long long center2 = g2.edge_id(Pt{0, 0}, Orientation::Horizontal);
  long long hits2 = 0;
  for (unsigned mask = 0; mask < 4096; ++mask) {
    Config c = sample_config(g2, 0.0, 1);
    int bit = 0;
    for (long long e = 0; e < g2.edge_count(); ++e) {
      BoxGeometry::Edge ed = g2.edge_at(e);
      bool inner = std::abs(ed.a.x) <= 1 && std::abs(ed.a.y) <= 1 && std::abs(ed.b.x) <= 1 &&
                   std::abs(ed.b.y) <= 1;
      if (inner) c.states[size_t(e)] = (mask >> bit++) & 1;
    }
    REQUIRE(bit == 12);
    if (detect_three_arm(c, center2, 1)) ++hits2;
  }
  CHECK(hits2 == hits);
}

TEST_CASE("arm events are monotone in the outer radius, samplewise") {
  BoxGeometry g(8);
  long long center = g.edge_id(Pt{0, 0}, Orientation::Horizontal);
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    Config c = sample_config(g, 0.5, sample_seed(3, seed));
    bool a8 = detect_three_arm(c, center, 8);
    bool a4 = detect_three_arm(c, center, 4);
    bool a2 = detect_three_arm(c, center, 2);
    if (a8) CHECK(a4);
    if (a4) CHECK(a2);
  }
}

TEST_CASE("quasimultiplicativity proxy in the desk-scale window") {
  const long long N = 4000;
  EstimateRecord p4 = estimate_pi3(4, N, 101);
  EstimateRecord p16 = estimate_pi3(16, N, 103);
  // annulus three-arm probability across A(4,16)
  BoxGeometry g(16);
  ArmSpec ann;
  ann.center = ArmSpec::Center::InnerBox;
  ann.inner_radius = 4;
  ann.outer_radius = 16;
  ann.arms.resize(3);
  ann.arms[0].color = EdgeColor::Open;
  ann.arms[1].color = EdgeColor::Open;
  ann.arms[2].color = EdgeColor::ClosedDual;
  long long hits = 0;
  for (long long i = 0; i < N; ++i) {
    Config c = sample_config(g, 0.5, sample_seed(105, std::uint64_t(i)));
    if (detect_arm_event(c, ann)) ++hits;
  }
  double pann = double(hits) / double(N);
  REQUIRE(p16.mean > 0);
  REQUIRE(pann > 0);
  double ratio = p4.mean * pann / p16.mean;
  // bounded in [1/C, C] with C = 10 at two standard errors slack
  CHECK(ratio < 10.0 * 1.2);
  CHECK(ratio > 0.1 / 1.2);
}

TEST_CASE("two-arm annulus probability is housed and recorded") {
  // one open and one closed-dual arm across A(4,16); enters the lower bound
  // c pi3(d) pi2(d,n) <= P(e in l_n | H_n) which is recorded, not asserted
  BoxGeometry g(16);
  ArmSpec two;
  two.center = ArmSpec::Center::InnerBox;
  two.inner_radius = 4;
  two.outer_radius = 16;
  two.arms.resize(2);
  two.arms[0].color = EdgeColor::Open;
  two.arms[1].color = EdgeColor::ClosedDual;
  long long hits = 0;
  const long long N = 2000;
  for (long long i = 0; i < N; ++i) {
    Config c = sample_config(g, 0.5, sample_seed(207, std::uint64_t(i)));
    if (detect_arm_event(c, two)) ++hits;
  }
  double pi2 = double(hits) / double(N);
  CHECK(pi2 > 0.0);
  CHECK(pi2 < 1.0);
  // degenerate densities: an all-open box has no closed arm and vice versa
  CHECK(!detect_arm_event(sample_config(g, 1.0, 1), two));
  CHECK(!detect_arm_event(sample_config(g, 0.0, 1), two));
  MESSAGE("pi2(4,16) = ", pi2);
}

TEST_CASE("five-arm points: degenerate, forced, and unique") {
  BoxGeometry g(6);
  FiveArmSpec spec;
  spec.orientation = FiveArmOrientation::Standard;
  spec.region = RegionMask::box(3);
  spec.outer_radius = 3;
  RegionMask search = RegionMask::box(2);

  CHECK(!detect_five_arm_point(sample_config(g, 1.0, 1), search, spec));
  CHECK(!detect_five_arm_point(sample_config(g, 0.0, 1), search, spec));

  // forced: three open arms N/E/W from the origin, everything else closed
  Config c = sample_config(g, 0.0, 1);
  for (int i = 0; i < 3; ++i) {
    open_edge(c, {0, i}, {0, i + 1});
    open_edge(c, {i, 0}, {i + 1, 0});
    open_edge(c, {-i, 0}, {-i - 1, 0});
  }
  auto star = detect_five_arm_point(c, search, spec);
  REQUIRE(star.has_value());
  CHECK(*star == Pt{0, 0});
  CHECK(five_arm_scan(c, search, spec).size() == 1);

  // mirrored orientation at the same vertex also holds by symmetry here
  FiveArmSpec mir = spec;
  mir.orientation = FiveArmOrientation::Mirrored;
  CHECK(is_five_arm_point(c, Pt{0, 0}, mir));
}

TEST_CASE("five-arm uniqueness whenever the detector fires on random configs") {
  BoxGeometry g(8);
  FiveArmSpec spec;
  spec.orientation = FiveArmOrientation::Standard;
  spec.region = RegionMask::box(4);
  spec.outer_radius = 4;
  RegionMask search = RegionMask::box(1);
  int found = 0;
  for (std::uint64_t seed = 0; seed < 3000 && found < 40; ++seed) {
    Config c = sample_config(g, 0.5, sample_seed(7, seed));
    auto star = detect_five_arm_point(c, search, spec);
    if (!star) continue;
    ++found;
    std::vector<Pt> all = five_arm_scan(c, search, spec);
    REQUIRE(all.size() >= 1);
    CHECK(all.front() == *star);
    // arms to the full boundary from distinct centers in a small search box
    // must be unique
    CHECK(all.size() == 1);
  }
  CHECK(found > 0);
}

TEST_CASE("inner event: degenerate, handmade, and recorded frequency") {
  BoxGeometry g(12);
  CHECK(!detect_Ek_prime_inner(sample_config(g, 1.0, 1), 2));
  CHECK(!detect_Ek_prime_inner(sample_config(g, 0.0, 1), 2));
  CHECK_THROWS_AS(detect_Ek_prime_inner(sample_config(BoxGeometry(4), 0.5, 1), 2),
                  std::invalid_argument);

  Config c = handmade_ek2();
  auto r = detect_Ek_prime_inner(c, 2);
  REQUIRE(r.has_value());
  CHECK(r->star1 == Pt{-11, 0});
  CHECK(r->star2 == Pt{11, 0});

  // when the inner event holds, the outermost arc stays inside U~ u V~ and
  // every arc edge passes the local three-arm membership oracle
  {
    URegion u = u_region(2);
    LatticePath arc = outermost_arc(c, u, r->star1, r->star2);
    LatticePath sarc = shortest_arc(c, u, r->star1, r->star2);
    CHECK(sarc.length() <= arc.length());
    for (const Pt& v : arc.vertices) {
      bool in_shell = u.U_tilde.contains_vertex(v) || u.V_tilde.contains_vertex(v) ||
                      v == r->star1 || v == r->star2;
      CHECK(in_shell);
    }
    for (long long e : arc.edges)
      CHECK(outermost_arc_local_three_arm(c, u, r->star1, r->star2, e));
  }

  // every single-item degradation kills the event
  {
    Config broken = c;
    close_edge(broken, {-8, -3}, {-8, -2});  // cuts item 2's vertical crossing
    int item = 0;
    CHECK(!detect_Ek_prime_inner(broken, 2, &item));
    CHECK(item == 2);
  }
  {
    // an open radial fence across the upper half-annulus forces a third
    // defect outside the windows, so the two-defect circuit dies
    Config broken = c;
    for (int y = 4; y < 7; ++y) open_edge(broken, {0, y}, {0, y + 1});
    int item = 0;
    CHECK(!detect_Ek_prime_inner(broken, 2, &item));
    CHECK(item == 5);
  }
  {
    Config broken = c;
    close_edge(broken, {0, 10}, {1, 10});  // cuts the shortcut arc
    int item = 0;
    CHECK(!detect_Ek_prime_inner(broken, 2, &item));
    CHECK(item == 9);
  }
  {
    Config broken = c;
    open_edge(broken, {-12, 1}, {-11, 1});  // kills star1's upper closed arm
    int item = 0;
    CHECK(!detect_Ek_prime_inner(broken, 2, &item));
    CHECK(item == 3);
  }

  // Monte Carlo frequency at k=2: recorded and compared across two seed
  // streams only against itself (the event is far into the tail at this
  // scale, so positivity is exercised by the construction above instead)
  long long hits_a = 0, hits_b = 0;
  const long long N = 10000;
  for (long long i = 0; i < N; ++i) {
    if (detect_Ek_prime_inner(sample_config(g, 0.5, sample_seed(11, std::uint64_t(i))), 2))
      ++hits_a;
    if (detect_Ek_prime_inner(sample_config(g, 0.5, sample_seed(13, std::uint64_t(i))), 2))
      ++hits_b;
  }
  double fa = double(hits_a) / double(N), fb = double(hits_b) / double(N);
  double tol = 2 * std::sqrt((fa * (1 - fa) + fb * (1 - fb)) / double(N)) + 1e-3;
  CHECK(std::abs(fa - fb) <= tol);
  MESSAGE("inner event frequency at k=2: ", fa, " / ", fb);
}

TEST_CASE("circuit stack events on degenerate configurations") {
  // one full block needs annuli up to 2^10
  BoxGeometry g(1024);
  Config closed = sample_config(g, 0.0, 1);
  CircuitEventRecord rc = detect_circuit_stack(closed, 0, 1);
  for (int m = 0; m < 10; ++m) {
    CHECK(rc.occurred_C[size_t(m)]);
    CHECK(!rc.occurred_D[size_t(m)]);
  }
  CHECK(!rc.occurred_hatC[0]);  // D_0 fails
  CHECK(rc.J_count == 0);

  Config open = sample_config(g, 1.0, 1);
  CircuitEventRecord ro = detect_circuit_stack(open, 0, 1);
  for (int m = 0; m < 10; ++m) {
    CHECK(!ro.occurred_C[size_t(m)]);
    CHECK(ro.occurred_D[size_t(m)]);
  }
  CHECK(!ro.occurred_hatC[0]);

  CHECK_THROWS_AS(detect_circuit_stack(sample_config(BoxGeometry(8), 0.5, 1), 0, 1),
                  std::invalid_argument);
}

TEST_CASE("circuit stack: hatC needs all seven circuits; I counts block events") {
  // random config on B(1024): consistency of the record with its parts
  BoxGeometry g(1024);
  Config c = sample_config(g, 0.5, 99);
  CircuitEventRecord r = detect_circuit_stack(c, 0, 1, [](int) { return false; });
  bool expect = r.occurred_D[0];
  for (int i : {1, 3, 4, 6, 8, 9}) expect = expect && r.occurred_C[size_t(i)];
  CHECK(r.occurred_hatC[0] == expect);
  CHECK(r.I_count == 0);  // the block event is identically false
  CHECK(r.J_count == (r.occurred_hatC[0] ? 1 : 0));
  CHECK(r.I_count <= r.J_count);
}

TEST_CASE("conditional frequency: identical and disjoint events") {
  auto h = [](const Config& c) { return has_horizontal_crossing(c); };
  EstimateRecord same = measure_conditional_frequency(h, h, 4, 400, 1);
  CHECK(same.mean == 1.0);
  auto noth = [](const Config& c) { return !has_horizontal_crossing(c); };
  EstimateRecord zero = measure_conditional_frequency(noth, h, 4, 400, 1);
  CHECK(zero.mean == 0.0);
  auto never = [](const Config&) { return false; };
  CHECK_THROWS_AS(measure_conditional_frequency(h, never, 4, 100, 1),
                  InsufficientConditioningMass);
}

TEST_CASE("center-edge lowest-crossing frequency vs pi3: ratio recorded") {
  for (int n : {8, 16}) {
    BoxGeometry g(n);
    long long center = g.edge_id(Pt{0, 0}, Orientation::Horizontal);
    auto in_lowest = [center](const Config& c) {
      for (long long e : lowest_crossing(c).edges)
        if (e == center) return true;
      return false;
    };
    auto h = [](const Config& c) { return has_horizontal_crossing(c); };
    EstimateRecord cond = measure_conditional_frequency(in_lowest, h, n, 3000, 51);
    EstimateRecord pi3 = estimate_pi3(n, 3000, 53);
    REQUIRE(pi3.mean > 0);
    double ratio = cond.mean / pi3.mean;
    CHECK(ratio > 0);
    CHECK(ratio < 10.0);  // the upper bound holds with a modest constant
    MESSAGE("P(e in l_n | H_n)/pi3(n) at n=", n, ": ", ratio);
  }
}
