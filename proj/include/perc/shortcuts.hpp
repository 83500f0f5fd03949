#pragma once

#include <optional>
#include <vector>

#include "perc/connectivity.hpp"
#include "perc/path.hpp"
#include "perc/uregion.hpp"

namespace perc {

/// Cached geometry of a host crossing: the strictly-above region (complement
/// of the closed below-region, by flood fill from the far side), host vertex
/// and edge membership, and host vertex indices.
struct HostContext {
  const Config* config = nullptr;
  LatticePath host;
  std::vector<std::uint8_t> above_vertex;   // by primal vertex id
  std::vector<std::uint8_t> above_face;     // by dual id: face strictly above host
  std::vector<int> host_index;              // vertex id -> index on host, -1
  std::vector<std::uint8_t> host_edge;      // edge id -> on host

  HostContext(const Config& c, LatticePath host_path);
};

/// An open detour r around the host segment tau = host[i0..i1], shielded from
/// above by a closed dual arc. Detour interval endpoints w0 = host[i0],
/// wM = host[i1]; the first and last steps of r are vertical.
struct ShortcutRecord {
  LatticePath r;
  Pt w0, wM;
  int tau_begin = 0;  // host edge indices [tau_begin, tau_end)
  int tau_end = 0;
  LatticePath shield;  // dual arc
  int scale = 0;
  double gain = 0;  // #r / #tau

  long long r_len() const { return r.length(); }
  long long tau_len() const { return tau_end - tau_begin; }
};

/// All kappa-shortcuts around `e` found by bounded breadth-first search in the
/// strict upper region within the 3*2^scale box around e. Every record
/// contains e in its detour interval and has gain <= kappa.
std::vector<ShortcutRecord> find_shortcuts(const Config& c, const LatticePath& host,
                                           long long e, double kappa, int scale);
std::vector<ShortcutRecord> find_shortcuts(const HostContext& ctx, long long e, double kappa,
                                           int scale);

/// All shortcuts on the host at one scale (deduplicated by detour interval;
/// per interval the shortest r found). Campaign entry point.
std::vector<ShortcutRecord> find_all_shortcuts(const HostContext& ctx, double kappa, int scale);

/// Independent condition-by-condition revalidation of a record against its
/// host (used by audits; does not trust the search that produced it).
bool revalidate_shortcut(const HostContext& ctx, const ShortcutRecord& rec, double kappa);

struct SelectionPlan {
  struct Pass {
    int scale = 0;
    int candidates = 0;
    int chosen = 0;
    long long detoured = 0;
  };
  std::vector<ShortcutRecord> chosen;  // pairwise disjoint detour intervals
  std::vector<Pass> passes;
  long long total_detoured() const;
};

/// Per scale (descending), on each yet-uncovered host segment, an exact
/// maximum-total-detoured-length disjoint family by weighted interval
/// scheduling. Two detours may not even share an endpoint vertex.
SelectionPlan select_maximal(const std::vector<std::pair<int, std::vector<ShortcutRecord>>>& families_desc,
                             const LatticePath& host);

/// Splice the chosen shortcuts into the host:
/// #sigma = #host - sum #tau_i + sum #r_i, exactly.
LatticePath build_sigma(const LatticePath& host, const SelectionPlan& plan);

/// Enclosed regions (faces bounded by r u tau) pairwise disjoint or nested.
bool verify_nested_or_disjoint(const std::vector<ShortcutRecord>& records,
                               const LatticePath& host);

/// The outermost open arc in U(k) from star1 to star2: initial/final edges are
/// the vertical edges out of the five-arm points and the region enclosed with
/// the shield is minimal. Wall-follower hugging the outer boundary.
LatticePath outermost_arc(const Config& c, const URegion& u, Pt star1, Pt star2);

/// Minimum-edge-count open path between the five-arm points inside U(k).
LatticePath shortest_arc(const Config& c, const URegion& u, Pt star1, Pt star2);

/// Local membership oracle for the outermost arc: e open, vertex-disjoint open
/// paths from its endpoints to star1 and star2 in U(k), and a closed dual path
/// from e* to a shield corner of a star.
bool outermost_arc_local_three_arm(const Config& c, const URegion& u, Pt star1, Pt star2,
                                   long long e);

}  // namespace perc
