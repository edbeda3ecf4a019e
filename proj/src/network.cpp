#include "locus/network.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "locus/error.hpp"

namespace locus {

Network::Network(std::vector<Vertex> vertices, const std::vector<std::pair<int, int>>& edges_by_id)
    : vertices_(std::move(vertices)) {
  std::map<int, int> index;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!index.emplace(vertices_[i].id, static_cast<int>(i)).second) {
      throw Error(ErrorCode::InvalidInput, "duplicate vertex id " + std::to_string(vertices_[i].id));
    }
  }
  incident_.resize(vertices_.size());
  edges_.reserve(edges_by_id.size());
  for (auto [a, b] : edges_by_id) {
    auto ia = index.find(a);
    auto ib = index.find(b);
    if (ia == index.end() || ib == index.end()) {
      throw Error(ErrorCode::InvalidInput,
                  "edge references unknown vertex id " + std::to_string(ia == index.end() ? a : b));
    }
    if (a == b) throw Error(ErrorCode::InvalidInput, "self loop at vertex id " + std::to_string(a));
    Edge e;
    e.u = ia->second;
    e.v = ib->second;
    if (vertices_[e.u].id > vertices_[e.v].id) std::swap(e.u, e.v);
    e.length = euclid(vertices_[e.u].pos, vertices_[e.v].pos);
    int id = static_cast<int>(edges_.size());
    edges_.push_back(e);
    incident_[e.u].push_back(id);
    incident_[e.v].push_back(id);
  }
}

int Network::index_of(int id) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].id == id) return static_cast<int>(i);
  }
  return -1;
}

Segment Network::edge_segment(int edge) const {
  if (edge < 0 || edge >= static_cast<int>(edges_.size())) {
    throw Error(ErrorCode::UnknownEdge, "unknown edge " + std::to_string(edge));
  }
  return Segment(vertices_[edges_[edge].u].pos, vertices_[edges_[edge].v].pos);
}

int Network::other(int edge, int index) const {
  const Edge& e = edges_[edge];
  return e.u == index ? e.v : e.u;
}

int Network::next_id() const {
  int best = -1;
  for (const auto& v : vertices_) best = std::max(best, v.id);
  return best + 1;
}

double Network::total_length() const {
  double total = 0.0;
  for (const auto& e : edges_) total += e.length;
  return total;
}

double Network::max_edge_length() const {
  double best = 0.0;
  for (const auto& e : edges_) best = std::max(best, e.length);
  return best;
}

std::vector<Point> Network::points() const {
  std::vector<Point> out;
  out.reserve(vertices_.size());
  for (const auto& v : vertices_) out.push_back(v.pos);
  return out;
}

namespace {

std::string describe(const Point& p) {
  return "(" + format_rational(p.x) + "," + format_rational(p.y) + ")";
}

}  // namespace

ValidationReport validate(const Network& net) {
  ValidationReport report;
  const auto& vs = net.vertices();
  const auto& es = net.edges();

  std::vector<int> order(vs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return vs[a].pos < vs[b].pos; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (vs[order[i]].pos == vs[order[i - 1]].pos) {
      report.violations.push_back({Violation::Kind::DuplicateVertex,
                                   "vertices " + std::to_string(vs[order[i - 1]].id) + " and " +
                                       std::to_string(vs[order[i]].id) + " coincide",
                                   vs[order[i]].pos});
    }
  }

  std::set<std::pair<int, int>> seen;
  std::vector<bool> usable(es.size(), true);
  for (std::size_t i = 0; i < es.size(); ++i) {
    const Edge& e = es[i];
    if (vs[e.u].pos == vs[e.v].pos) {
      usable[i] = false;
      report.violations.push_back({Violation::Kind::ZeroLengthEdge,
                                   "edge " + std::to_string(i) + " has zero length", vs[e.u].pos});
      continue;
    }
    if (!seen.emplace(e.u, e.v).second) {
      usable[i] = false;
      report.violations.push_back({Violation::Kind::DuplicateEdge,
                                   "edge " + std::to_string(i) + " duplicates another edge", std::nullopt});
    }
  }

  for (std::size_t i = 0; i < es.size(); ++i) {
    if (!usable[i]) continue;
    Segment si = net.edge_segment(static_cast<int>(i));
    for (std::size_t j = i + 1; j < es.size(); ++j) {
      if (!usable[j]) continue;
      Segment sj = net.edge_segment(static_cast<int>(j));
      Intersection hit = seg_intersect(si, sj);
      if (hit.kind == Intersection::Kind::Empty) continue;
      if (hit.kind == Intersection::Kind::Point) {
        bool shared = false;
        for (int a : {es[i].u, es[i].v}) {
          for (int b : {es[j].u, es[j].v}) {
            if (a == b && vs[a].pos == hit.point) shared = true;
          }
        }
        if (shared) continue;
        report.violations.push_back({Violation::Kind::Crossing,
                                     "edges " + std::to_string(i) + " and " + std::to_string(j) +
                                         " cross at " + describe(hit.point),
                                     hit.point});
      } else {
        report.violations.push_back({Violation::Kind::Crossing,
                                     "edges " + std::to_string(i) + " and " + std::to_string(j) +
                                         " overlap",
                                     hit.overlap->a()});
      }
    }
  }

  for (std::size_t w = 0; w < vs.size(); ++w) {
    for (std::size_t i = 0; i < es.size(); ++i) {
      if (!usable[i] || es[i].u == static_cast<int>(w) || es[i].v == static_cast<int>(w)) continue;
      if (point_on_segment(vs[w].pos, net.edge_segment(static_cast<int>(i)))) {
        report.violations.push_back({Violation::Kind::VertexOnEdge,
                                     "vertex " + std::to_string(vs[w].id) + " lies on edge " +
                                         std::to_string(i),
                                     vs[w].pos});
      }
    }
  }

  report.components = components(net).size();
  return report;
}

std::vector<std::vector<int>> components(const Network& net) {
  std::vector<int> parent(net.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : net.edges()) parent[find(e.u)] = find(e.v);
  std::map<int, std::vector<int>> groups;
  for (std::size_t i = 0; i < net.vertex_count(); ++i) {
    groups[find(static_cast<int>(i))].push_back(net.vertices()[i].id);
  }
  std::vector<std::vector<int>> out;
  for (auto& [root, ids] : groups) {
    std::sort(ids.begin(), ids.end());
    out.push_back(std::move(ids));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_connected(const Network& net) { return components(net).size() <= 1; }

namespace {

void check_locus_point(const Network& net, const LocusPoint& p) {
  if (p.edge < 0 || p.edge >= static_cast<int>(net.edge_count())) {
    throw Error(ErrorCode::UnknownEdge, "unknown edge " + std::to_string(p.edge));
  }
  if (!(p.t >= 0.0 && p.t <= 1.0)) {
    throw Error(ErrorCode::ParameterOutOfRange, "locus parameter outside [0,1]");
  }
}

double point_segment_distance(double px, double py, double ax, double ay, double bx, double by,
                              double* t_out) {
  double dx = bx - ax, dy = by - ay;
  double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((px - ax) * dx + (py - ay) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  if (t_out) *t_out = t;
  return std::hypot(ax + t * dx - px, ay + t * dy - py);
}

}  // namespace

Point locus_coords(const Network& net, const LocusPoint& p) {
  check_locus_point(net, p);
  if (p.t == 0.0) return net.pos(net.edges()[p.edge].u);
  if (p.t == 1.0) return net.pos(net.edges()[p.edge].v);
  return net.edge_segment(p.edge).at(to_rational(p.t));
}

double locus_x(const Network& net, const LocusPoint& p) {
  const Edge& e = net.edges()[p.edge];
  return net.pos(e.u).xd() + p.t * (net.pos(e.v).xd() - net.pos(e.u).xd());
}

double locus_y(const Network& net, const LocusPoint& p) {
  const Edge& e = net.edges()[p.edge];
  return net.pos(e.u).yd() + p.t * (net.pos(e.v).yd() - net.pos(e.u).yd());
}

LocusPoint canonical(const Network& net, const LocusPoint& p) {
  check_locus_point(net, p);
  if (p.t != 0.0 && p.t != 1.0) return p;
  const Edge& e = net.edges()[p.edge];
  int vertex = p.t == 0.0 ? e.u : e.v;
  int first = net.incident(vertex).front();
  return LocusPoint{first, net.edges()[first].u == vertex ? 0.0 : 1.0};
}

std::optional<LocusPoint> project_to_locus(const Network& net, double qx, double qy, double snap_radius) {
  std::optional<LocusPoint> best;
  double best_dist = 0.0;
  for (std::size_t i = 0; i < net.edge_count(); ++i) {
    const Edge& e = net.edges()[i];
    double t = 0.0;
    double dist = point_segment_distance(qx, qy, net.pos(e.u).xd(), net.pos(e.u).yd(), net.pos(e.v).xd(),
                                         net.pos(e.v).yd(), &t);
    if (!best || dist < best_dist) {
      best = LocusPoint{static_cast<int>(i), t};
      best_dist = dist;
    }
  }
  if (!best || best_dist > snap_radius) return std::nullopt;
  return canonical(net, *best);
}

std::optional<std::pair<int, Rational>> locate_exact(const Network& net, const Point& p) {
  for (std::size_t i = 0; i < net.edge_count(); ++i) {
    Segment s = net.edge_segment(static_cast<int>(i));
    if (point_on_segment(p, s)) return std::make_pair(static_cast<int>(i), param_on_segment(p, s));
  }
  return std::nullopt;
}

namespace {

// Exact locus point (isolated vertices included), or the nearest one within
// kTau, or nothing.
std::optional<Point> snap_to_locus(const Network& net, const Point& p) {
  if (locate_exact(net, p)) return p;
  for (std::size_t v = 0; v < net.vertex_count(); ++v) {
    if (net.degree(static_cast<int>(v)) == 0 && net.pos(static_cast<int>(v)) == p) return p;
  }
  auto near = project_to_locus(net, p.xd(), p.yd(), kTau * std::max(1.0, std::hypot(p.xd(), p.yd())));
  if (!near) return std::nullopt;
  return locus_coords(net, *near);
}

}  // namespace

ShortcutSet anchor_shortcut_set(const Network& net, std::vector<Segment> segments) {
  ShortcutSet out;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    Point ends[2] = {segments[i].a(), segments[i].b()};
    Anchor anchors[2];
    for (int k = 0; k < 2; ++k) {
      if (auto hit = locate_exact(net, ends[k])) {
        anchors[k] = Anchor{Anchor::Host::Edge, hit->first, hit->second};
        continue;
      }
      bool placed = false;
      for (std::size_t j = 0; j < i && !placed; ++j) {
        if (point_on_segment(ends[k], out.segments[j])) {
          anchors[k] = Anchor{Anchor::Host::Segment, static_cast<int>(j),
                              param_on_segment(ends[k], out.segments[j])};
          placed = true;
        }
      }
      if (placed) continue;
      if (auto snapped = snap_to_locus(net, ends[k])) {
        auto hit = locate_exact(net, *snapped);
        ends[k] = *snapped;
        anchors[k] = Anchor{Anchor::Host::Edge, hit->first, hit->second};
        continue;
      }
      throw Error(ErrorCode::ChainViolation,
                  "endpoint " + describe(ends[k]) + " of segment " + std::to_string(i) +
                      " is neither on the network nor on an earlier segment");
    }
    out.segments.emplace_back(ends[0], ends[1]);
    out.anchors.emplace_back(anchors[0], anchors[1]);
  }
  return out;
}

Network insert_segment(const Network& net, const Segment& raw) {
  auto a = snap_to_locus(net, raw.a());
  auto b = snap_to_locus(net, raw.b());
  if (!a || !b) {
    throw Error(ErrorCode::OffLocus, "segment endpoint " + describe(a ? raw.b() : raw.a()) + " is off the locus");
  }
  Segment s(*a, *b);

  const auto& vs = net.vertices();
  const auto& es = net.edges();
  std::vector<std::pair<Rational, Point>> stops = {{Rational(0), s.a()}, {Rational(1), s.b()}};
  std::map<int, Point> splits;
  for (std::size_t i = 0; i < es.size(); ++i) {
    Segment edge = net.edge_segment(static_cast<int>(i));
    Intersection hit = seg_intersect(s, edge);
    if (hit.kind == Intersection::Kind::Empty) continue;
    if (hit.kind == Intersection::Kind::Overlap) {
      throw Error(ErrorCode::DegenerateOverlap, "segment overlaps edge " + std::to_string(i));
    }
    stops.emplace_back(param_on_segment(hit.point, s), hit.point);
    if (!(hit.point == edge.a()) && !(hit.point == edge.b())) splits.emplace(static_cast<int>(i), hit.point);
  }
  for (std::size_t w = 0; w < vs.size(); ++w) {
    if (net.degree(static_cast<int>(w)) == 0 && point_on_segment(vs[w].pos, s)) {
      stops.emplace_back(param_on_segment(vs[w].pos, s), vs[w].pos);
    }
  }
  std::sort(stops.begin(), stops.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  stops.erase(std::unique(stops.begin(), stops.end(),
                          [](const auto& l, const auto& r) { return l.first == r.first; }),
              stops.end());

  std::vector<Vertex> out_vertices = vs;
  std::map<Point, int> id_at;
  for (const auto& v : vs) id_at.emplace(v.pos, v.id);
  int next = net.next_id();
  auto vertex_for = [&](const Point& p) {
    auto it = id_at.find(p);
    if (it != id_at.end()) return it->second;
    Vertex v;
    v.id = next++;
    v.pos = p;
    out_vertices.push_back(v);
    id_at.emplace(p, v.id);
    return v.id;
  };

  std::vector<int> chain;
  for (const auto& [t, p] : stops) chain.push_back(vertex_for(p));

  std::vector<std::pair<int, int>> out_edges;
  out_edges.reserve(es.size() + splits.size() + chain.size());
  for (std::size_t i = 0; i < es.size(); ++i) {
    int u = vs[es[i].u].id;
    int v = vs[es[i].v].id;
    auto split = splits.find(static_cast<int>(i));
    if (split == splits.end()) {
      out_edges.emplace_back(u, v);
    } else {
      int mid = id_at.at(split->second);
      out_edges.emplace_back(u, mid);
      out_edges.emplace_back(mid, v);
    }
  }
  for (std::size_t k = 1; k < chain.size(); ++k) out_edges.emplace_back(chain[k - 1], chain[k]);
  return Network(std::move(out_vertices), out_edges);
}

Network insert_shortcut_set(const Network& net, const ShortcutSet& set) {
  ShortcutSet anchored = anchor_shortcut_set(net, set.segments);
  Network out = net;
  for (const auto& s : anchored.segments) out = insert_segment(out, s);
  return out;
}

}  // namespace locus
