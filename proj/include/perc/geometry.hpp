#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace perc {

struct Pt {
  int x = 0;
  int y = 0;
  friend bool operator==(Pt a, Pt b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(Pt a, Pt b) { return !(a == b); }
  friend bool operator<(Pt a, Pt b) { return a.y != b.y ? a.y < b.y : a.x < b.x; }
  Pt operator+(Pt o) const { return {x + o.x, y + o.y}; }
  Pt operator-(Pt o) const { return {x - o.x, y - o.y}; }
};

inline constexpr Pt kE1{1, 0};
inline constexpr Pt kE2{0, 1};

enum class Orientation : std::uint8_t { Horizontal = 0, Vertical = 1 };

/// Exact rational, used for region bounds of the form (p/q)*2^k.
struct Frac {
  long long num = 0;
  long long den = 1;

  Frac() = default;
  Frac(long long n) : num(n), den(1) {}
  Frac(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::invalid_argument("Frac: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  Frac scaled(long long s) const { return Frac(num * s, den); }

  // Comparisons against a coordinate given in half-units (c represents c/2).
  bool le_half(long long c2) const {
    return (__int128)num * 2 <= (__int128)c2 * den;
  }
  bool lt_half(long long c2) const {
    return (__int128)num * 2 < (__int128)c2 * den;
  }
  bool ge_half(long long c2) const {
    return (__int128)num * 2 >= (__int128)c2 * den;
  }
  bool gt_half(long long c2) const {
    return (__int128)num * 2 > (__int128)c2 * den;
  }

  friend bool operator<(Frac a, Frac b) {
    return (__int128)a.num * b.den < (__int128)b.num * a.den;
  }
  friend bool operator==(Frac a, Frac b) { return a.num == b.num && a.den == b.den; }
  friend bool operator<=(Frac a, Frac b) { return a < b || a == b; }

  double to_double() const { return double(num) / double(den); }
  long long floor() const {
    long long q = num / den;
    return (num % den != 0 && num < 0) ? q - 1 : q;
  }
  long long ceil() const {
    long long q = num / den;
    return (num % den != 0 && num > 0) ? q + 1 : q;
  }

  friend Frac operator+(Frac a, Frac b) { return Frac(a.num * b.den + b.num * a.den, a.den * b.den); }
  friend Frac operator-(Frac a, Frac b) { return Frac(a.num * b.den - b.num * a.den, a.den * b.den); }
};

inline Frac half() { return Frac(1, 2); }

/// Axis-aligned rectangle with exact rational bounds. Each bound may be
/// strict (open) or not. Points are tested in half-units so that primal
/// vertices (even) and dual vertices (odd) share one code path.
struct RectQ {
  Frac xlo, xhi, ylo, yhi;
  bool xlo_strict = false, xhi_strict = false, ylo_strict = false, yhi_strict = false;

  static RectQ closed(Frac xlo, Frac xhi, Frac ylo, Frac yhi) {
    return RectQ{xlo, xhi, ylo, yhi, false, false, false, false};
  }
  static RectQ open(Frac xlo, Frac xhi, Frac ylo, Frac yhi) {
    return RectQ{xlo, xhi, ylo, yhi, true, true, true, true};
  }

  bool contains_half(long long cx2, long long cy2) const {
    bool okx = (xlo_strict ? xlo.lt_half(cx2) : xlo.le_half(cx2)) &&
               (xhi_strict ? xhi.gt_half(cx2) : xhi.ge_half(cx2));
    if (!okx) return false;
    return (ylo_strict ? ylo.lt_half(cy2) : ylo.le_half(cy2)) &&
           (yhi_strict ? yhi.gt_half(cy2) : yhi.ge_half(cy2));
  }
};

/// Union-with-exclusions of rectangles, evaluated in order: the last layer
/// whose rectangle contains the point decides membership.
struct RegionMask {
  struct Layer {
    RectQ rect;
    bool include = true;
  };
  std::vector<Layer> layers;

  RegionMask& add(const RectQ& r, bool include = true) {
    layers.push_back({r, include});
    return *this;
  }

  bool contains_half(long long cx2, long long cy2) const {
    bool in = false;
    for (const Layer& l : layers)
      if (l.rect.contains_half(cx2, cy2)) in = l.include;
    return in;
  }
  bool contains_vertex(Pt v) const { return contains_half(2LL * v.x, 2LL * v.y); }
  // Dual key (i,j) stands for the dual point (i+1/2, j+1/2).
  bool contains_dual(Pt d) const { return contains_half(2LL * d.x + 1, 2LL * d.y + 1); }

  static RegionMask box(int m) {
    RegionMask r;
    r.add(RectQ::closed(Frac(-m), Frac(m), Frac(-m), Frac(m)));
    return r;
  }

  /// Lattice realization of a thin region: include rectangles grow by half a
  /// unit, excluded holes shrink by the same amount, so any region of positive
  /// width hosts lattice sites of either parity.
  RegionMask expanded_half() const {
    RegionMask out;
    for (Layer l : layers) {
      Frac h = half();
      if (l.include) {
        l.rect.xlo = l.rect.xlo - h;
        l.rect.xhi = l.rect.xhi + h;
        l.rect.ylo = l.rect.ylo - h;
        l.rect.yhi = l.rect.yhi + h;
      } else {
        l.rect.xlo = l.rect.xlo + h;
        l.rect.xhi = l.rect.xhi - h;
        l.rect.ylo = l.rect.ylo + h;
        l.rect.yhi = l.rect.yhi - h;
      }
      out.layers.push_back(l);
    }
    return out;
  }
  static RegionMask rect(Frac xlo, Frac xhi, Frac ylo, Frac yhi) {
    RegionMask r;
    r.add(RectQ::closed(xlo, xhi, ylo, yhi));
    return r;
  }
  RegionMask& subtract_open(Frac xlo, Frac xhi, Frac ylo, Frac yhi) {
    return add(RectQ::open(xlo, xhi, ylo, yhi), false);
  }
  RegionMask& subtract_closed(Frac xlo, Frac xhi, Frac ylo, Frac yhi) {
    return add(RectQ::closed(xlo, xhi, ylo, yhi), false);
  }
};

/// annulus(0,m) is the full box; otherwise the closed inner box is removed,
/// so boundary vertices of B(inner) are excluded.
RegionMask annulus(int inner, int outer);

/// Geometry of the box B(n) = [-n,n]^2. Edge ids are row-major over
/// lower-left endpoints, all horizontal edges before all vertical ones.
struct BoxGeometry {
  int n = 0;

  explicit BoxGeometry(int n_) : n(n_) {
    if (n < 1) throw std::invalid_argument("BoxGeometry: n must be >= 1");
    if (n > 20000) throw std::invalid_argument("BoxGeometry: index space overflow");
  }

  int side() const { return 2 * n + 1; }
  long long vertex_count() const { return 1LL * side() * side(); }
  long long horizontal_count() const { return 2LL * n * side(); }
  long long edge_count() const { return 4LL * n * side(); }

  bool contains(Pt v) const {
    return v.x >= -n && v.x <= n && v.y >= -n && v.y <= n;
  }
  int vertex_id(Pt v) const { return (v.y + n) * side() + (v.x + n); }
  Pt vertex_at(int id) const { return {id % side() - n, id / side() - n}; }

  struct Edge {
    Pt a, b;  // a is the lower-left endpoint
    Orientation o;
  };

  bool valid_edge(Pt lower_left, Orientation o) const {
    Pt b = lower_left + (o == Orientation::Horizontal ? kE1 : kE2);
    return contains(lower_left) && contains(b);
  }
  long long edge_id(Pt lower_left, Orientation o) const {
    if (!valid_edge(lower_left, o)) throw std::out_of_range("edge_id: edge outside box");
    if (o == Orientation::Horizontal)
      return 1LL * (lower_left.y + n) * (2 * n) + (lower_left.x + n);
    return horizontal_count() + 1LL * (lower_left.y + n) * side() + (lower_left.x + n);
  }
  Edge edge_at(long long id) const {
    if (id < 0 || id >= edge_count()) throw std::out_of_range("edge_at: bad id");
    if (id < horizontal_count()) {
      Pt a{int(id % (2 * n)) - n, int(id / (2 * n)) - n};
      return {a, a + kE1, Orientation::Horizontal};
    }
    long long v = id - horizontal_count();
    Pt a{int(v % side()) - n, int(v / side()) - n};
    return {a, a + kE2, Orientation::Vertical};
  }

  // Dual vertex keys (i,j) <-> dual point (i+1/2, j+1/2); i,j in [-n-1, n].
  int dual_side() const { return 2 * n + 2; }
  long long dual_count() const { return 1LL * dual_side() * dual_side(); }
  bool dual_contains(Pt d) const {
    return d.x >= -n - 1 && d.x <= n && d.y >= -n - 1 && d.y <= n;
  }
  int dual_id(Pt d) const { return (d.y + n + 1) * dual_side() + (d.x + n + 1); }
  Pt dual_at(int id) const {
    return {id % dual_side() - n - 1, id / dual_side() - n - 1};
  }
};

/// Dual edge of a primal edge; endpoints are dual keys with a < b.
struct DualEdge {
  long long primal = -1;
  Pt a, b;
};

DualEdge dual_of(const BoxGeometry& g, long long edge);
/// Inverse of dual_of: the primal edge whose dual joins the given dual keys.
long long primal_of(const BoxGeometry& g, Pt dual_a, Pt dual_b);

/// Outward snap of an interval [lo,hi] to coordinates of the given parity
/// (0: integers, 1: half-integers given in half-units). Returns half-units.
std::pair<long long, long long> snap_outward_half(Frac lo, Frac hi, int parity);

}  // namespace perc
