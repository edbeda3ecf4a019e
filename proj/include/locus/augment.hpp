#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "locus/network.hpp"

namespace locus {

struct ExistenceVerdict {
  bool admits = false;
  /// Vertex ids of a diametral pair whose segment lies in the locus; set iff !admits.
  std::optional<std::pair<int, int>> witness;
  double hull_diameter = 0.0;
  double locus_diameter = 0.0;
};

/// Decides whether some finite shortcut set exists. Outside the tie band
/// |diam(CH) - d| <= tolerance the floating comparison decides; inside it
/// the exact containment of diametral vertex segments decides.
ExistenceVerdict admits_shortcut_set(const Network& net);

/// True iff the straight segment between two vertices is covered by edges
/// collinear with it. Exact.
bool segment_in_locus(const Network& net, int u, int v);

struct VerifyResult {
  bool is_shortcut_set = false;
  double old_d = 0.0;
  double new_d = 0.0;
};

VerifyResult verify_shortcut_set(const Network& net, const ShortcutSet& set);

/// A verified construction: the set, its verification and the standoff used.
struct Construction {
  ShortcutSet set;
  double old_d = 0.0;
  double new_d = 0.0;
  double standoff = 0.0;
};

/// Point on `edge` at arclength `delta` from its endpoint `vertex`.
Point standoff_point(const Network& net, int edge, int vertex, double delta);

/// Fan segments around every vertex of degree >= 2: for each incident ray,
/// one chord to the farthest ray reachable counter-clockwise within an angle
/// below pi. The standoff starts at a quarter of the shortest incident edge
/// and halves until the diameter drops.
Construction fan_shortcut_set(const Network& net);

/// Fan segments at standoff `delta` without verification; the same
/// standoff fraction is applied at every vertex.
ShortcutSet fan_segments(const Network& net, double fraction);

struct EpsilonCoverPlan {
  double eps = 0.0;
  double M = 0.0;  // diam(CH) + eps/4
  double hull_d = 0.0;
  double old_d = 0.0;
  double new_d = 0.0;
  /// Samples (spacing eps/8 along edges) whose eccentricity reaches M.
  std::vector<LocusPoint> net_points;
  ShortcutSet set;
};

/// Shortcut set with diam(CH) <= new d < diam(CH) + eps. Requires
/// diam(CH) + eps < d. Each round joins a diametral pair of the current
/// augmented network by a straight segment, until the target is met.
EpsilonCoverPlan epsilon_shortcut_set(const Network& net, double eps);

/// Vertex indices of a simple cycle in traversal order; throws NotACycle.
std::vector<int> cycle_order(const Network& net);
bool is_convex_polygon(const Network& net);

struct PolygonScn {
  int scn = 0;
  Construction construction;
};

/// Convex polygons get two standoff chords at the ends of a longest edge;
/// non-convex polygons get the pocket segment.
PolygonScn polygon_scn(const Network& net);

/// Segment from a hull vertex u through a point near v on the u-v pocket,
/// extended to the next boundary crossing. Throws NotNonConvex on convex input.
Construction polygon_shortcut(const Network& net);

/// One standoff chord at an outer vertex crossing its three edges. Throws NotK4.
Construction k4_shortcut(const Network& net);

}  // namespace locus
