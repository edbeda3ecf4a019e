#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "locus/geom.hpp"

namespace locus {

struct Vertex {
  int id = 0;
  Point pos;
  // Source text of the coordinates, echoed verbatim on output when present.
  std::string x_text;
  std::string y_text;
};

/// Edge between vertex indices; u has the smaller vertex id.
struct Edge {
  int u = 0;
  int v = 0;
  double length = 0.0;
};

/// A point of the locus: position u + t (v - u) on edge `edge`.
struct LocusPoint {
  int edge = 0;
  double t = 0.0;
};

/// Plane straight-line network. Immutable once built; insertion returns a
/// new value.
class Network {
 public:
  Network() = default;

  /// Builds from vertices and id pairs. Checks ids and self loops only;
  /// geometric validity is reported by validate().
  Network(std::vector<Vertex> vertices, const std::vector<std::pair<int, int>>& edges_by_id);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  int index_of(int id) const;  // -1 if absent
  const Point& pos(int index) const { return vertices_[index].pos; }
  Segment edge_segment(int edge) const;
  /// Edge ids incident to a vertex index, ascending.
  const std::vector<int>& incident(int index) const { return incident_[index]; }
  int degree(int index) const { return static_cast<int>(incident_[index].size()); }
  /// Vertex index across the edge from `index`.
  int other(int edge, int index) const;
  int next_id() const;
  double total_length() const;
  double max_edge_length() const;
  std::vector<Point> points() const;

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> incident_;
};

struct Violation {
  enum class Kind { DuplicateVertex, UnknownVertex, ZeroLengthEdge, DuplicateEdge, Crossing, VertexOnEdge };
  Kind kind;
  std::string message;
  std::optional<Point> where;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::size_t components = 0;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const Network& net);

/// Connected components as sorted lists of vertex ids.
std::vector<std::vector<int>> components(const Network& net);
bool is_connected(const Network& net);

Point locus_coords(const Network& net, const LocusPoint& p);
double locus_x(const Network& net, const LocusPoint& p);
double locus_y(const Network& net, const LocusPoint& p);

/// Vertex points are stored on their smallest incident edge with t in {0,1}.
LocusPoint canonical(const Network& net, const LocusPoint& p);

std::optional<LocusPoint> project_to_locus(const Network& net, double qx, double qy, double snap_radius);

/// Exact locus membership; returns the host edge and exact parameter.
std::optional<std::pair<int, Rational>> locate_exact(const Network& net, const Point& p);

/// Where a shortcut endpoint sits: on an original edge or on an earlier segment.
struct Anchor {
  enum class Host { Edge, Segment };
  Host host = Host::Edge;
  int index = 0;  // edge id of the original network, or segment index
  Rational t;
};

struct ShortcutSet {
  std::vector<Segment> segments;
  // Two anchors per segment; filled by anchor_shortcut_set.
  std::vector<std::pair<Anchor, Anchor>> anchors;

  std::size_t size() const { return segments.size(); }
  bool empty() const { return segments.empty(); }
};

/// Computes anchors for every endpoint, enforcing the chaining rule: s_i's
/// endpoints lie on the network locus or on s_1..s_{i-1}.
ShortcutSet anchor_shortcut_set(const Network& net, std::vector<Segment> segments);

/// Inserts a segment, subdividing at every crossing. Endpoints within kTau of
/// the locus snap onto it.
Network insert_segment(const Network& net, const Segment& s);

/// Folds insert_segment over s_1..s_k after checking the chaining rule.
Network insert_shortcut_set(const Network& net, const ShortcutSet& set);

}  // namespace locus
