#pragma once

// Shared networks and random generators for the test suites.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "locus/geom.hpp"
#include "locus/network.hpp"

namespace fixtures {

using locus::Network;
using locus::Point;
using locus::Rational;

inline Network make(const std::vector<Point>& pts, const std::vector<std::pair<int, int>>& edges) {
  std::vector<locus::Vertex> vs;
  for (std::size_t i = 0; i < pts.size(); ++i) vs.push_back({static_cast<int>(i), pts[i], "", ""});
  return Network(std::move(vs), edges);
}

inline Point pt(double x, double y) { return Point(locus::to_rational(x), locus::to_rational(y)); }

inline std::vector<std::pair<int, int>> cycle_edges(int n) {
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
  return es;
}

inline Network cycle(const std::vector<Point>& pts) { return make(pts, cycle_edges(static_cast<int>(pts.size()))); }

inline Network path1() { return make({Point(0, 0), Point(1, 0)}, {{0, 1}}); }

inline Network square1() { return cycle({Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1)}); }

inline Network tri1() { return cycle({Point(0, 0), Point(1, 0), pt(0.5, std::sqrt(3.0) / 2)}); }

inline Network star(int n) {
  std::vector<Point> pts = {Point(0, 0)};
  std::vector<std::pair<int, int>> es;
  for (int k = 0; k < n; ++k) {
    double a = 2 * std::numbers::pi * k / n;
    pts.push_back(pt(std::cos(a), std::sin(a)));
    es.emplace_back(0, k + 1);
  }
  return make(pts, es);
}

inline Network star5() { return star(5); }

inline Network k4a() {
  return make({Point(0, 0), Point(4, 0), Point(2, 3), Point(2, 1)}, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

inline Network pocket1() { return cycle({Point(0, 0), Point(4, 0), Point(1, 1), Point(0, 4)}); }

inline Network lshape() {
  return cycle({Point(0, 0), Point(2, 0), Point(2, 1), Point(1, 1), Point(1, 2), Point(0, 2)});
}

inline Network straight_path3() { return make({Point(0, 0), Point(1, 0), Point(3, 0)}, {{0, 1}, {1, 2}}); }

inline Network two_triangles() {
  return make({Point(0, 0), Point(1, 0), Point(0, 1), Point(5, 5), Point(6, 5), Point(5, 6)},
              {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
}

// Coordinates on a 1/100 grid inside [0, span]^2.
inline Point grid_point(std::mt19937_64& rng, int span) {
  std::uniform_int_distribution<int> d(0, span * 100);
  return Point(Rational(d(rng), 100), Rational(d(rng), 100));
}

inline bool crosses_any(const Network& net, const std::vector<std::pair<int, int>>& edges,
                        const std::vector<Point>& pts, int a, int b) {
  locus::Segment s(pts[a], pts[b]);
  for (auto [u, v] : edges) {
    if ((u == a && v == b) || (u == b && v == a)) return true;
    locus::Intersection hit = locus::seg_intersect(s, locus::Segment(pts[u], pts[v]));
    if (hit.kind == locus::Intersection::Kind::Empty) continue;
    if (hit.kind == locus::Intersection::Kind::Overlap) return true;
    bool shared = (u == a || u == b || v == a || v == b) &&
                  (hit.point == pts[a] || hit.point == pts[b]) && (hit.point == pts[u] || hit.point == pts[v]);
    if (!shared) return true;
  }
  for (std::size_t w = 0; w < pts.size(); ++w) {
    if (static_cast<int>(w) != a && static_cast<int>(w) != b && locus::point_on_segment(pts[w], s)) return true;
  }
  (void)net;
  return false;
}

/// Random connected plane network: random points, a non-crossing spanning
/// tree grown greedily, then `extra` attempts to add non-crossing edges.
inline Network random_network(std::mt19937_64& rng, int n, int extra, int span = 10) {
  for (;;) {
    std::vector<Point> pts;
    while (static_cast<int>(pts.size()) < n) {
      Point p = grid_point(rng, span);
      if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    }
    std::vector<std::pair<int, int>> edges;
    std::vector<int> in_tree = {0};
    std::vector<bool> used(n, false);
    used[0] = true;
    bool stuck = false;
    while (static_cast<int>(in_tree.size()) < n && !stuck) {
      std::vector<std::pair<double, std::pair<int, int>>> options;
      for (int a : in_tree) {
        for (int b = 0; b < n; ++b) {
          if (!used[b]) options.push_back({locus::euclid(pts[a], pts[b]), {a, b}});
        }
      }
      std::shuffle(options.begin(), options.end(), rng);
      std::sort(options.begin(), options.begin() + std::min<std::size_t>(options.size(), 3),
                [](const auto& x, const auto& y) { return x.first < y.first; });
      stuck = true;
      for (const auto& [len, ab] : options) {
        if (!crosses_any(Network(), edges, pts, ab.first, ab.second)) {
          edges.push_back(ab);
          used[ab.second] = true;
          in_tree.push_back(ab.second);
          stuck = false;
          break;
        }
      }
    }
    if (stuck) continue;
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int k = 0; k < extra; ++k) {
      int a = pick(rng), b = pick(rng);
      if (a == b || crosses_any(Network(), edges, pts, a, b)) continue;
      edges.emplace_back(a, b);
    }
    return make(pts, edges);
  }
}

/// Random simple polygon, star-shaped around the origin. Non-convex needs n >= 4.
inline Network random_polygon(std::mt19937_64& rng, int n, bool convex) {
  if (!convex && n < 4) n = 4;
  std::uniform_real_distribution<double> jitter(0.2, 0.8);
  std::uniform_real_distribution<double> radius(0.5, 1.5);
  for (;;) {
    std::vector<Point> pts;
    for (int k = 0; k < n; ++k) {
      double a = 2 * std::numbers::pi * (k + jitter(rng)) / n;
      double r = convex ? 3.0 : 3.0 * radius(rng);
      double x = std::round(r * std::cos(a) * 1000) / 1000;
      double y = std::round(r * std::sin(a) * 1000) / 1000;
      pts.push_back(Point(Rational(static_cast<long>(std::lround(x * 1000)), 1000),
                          Rational(static_cast<long>(std::lround(y * 1000)), 1000)));
    }
    Network net = cycle(pts);
    if (!locus::validate(net).ok()) continue;
    bool is_convex = true;
    for (int k = 0; k < n; ++k) {
      if (locus::orient(pts[k], pts[(k + 1) % n], pts[(k + 2) % n]) <= 0) is_convex = false;
    }
    if (is_convex == convex) return net;
  }
}

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Stabbing by sweeping directions: a line with normal n meets every hull iff
/// the projections of the hulls onto n share a point.
inline bool brute_stabbable(const std::vector<locus::HullPolygon>& hulls, int directions) {
  for (int i = 0; i < directions; ++i) {
    double th = std::numbers::pi * i / directions;
    double nx = -std::sin(th), ny = std::cos(th);
    double lo = -kInf, hi = kInf;
    for (const locus::HullPolygon& h : hulls) {
      double mn = kInf, mx = -kInf;
      for (const Point& p : h.vertices) {
        double v = nx * p.xd() + ny * p.yd();
        mn = std::min(mn, v);
        mx = std::max(mx, v);
      }
      lo = std::max(lo, mn);
      hi = std::min(hi, mx);
    }
    if (lo <= hi + 1e-12) return true;
  }
  return false;
}

inline locus::HullPolygon random_hull(std::mt19937_64& rng, int min_points = 1) {
  std::uniform_int_distribution<int> centre(0, 10000), spread(200, 2500), count(min_points, 5);
  int cx = centre(rng), cy = centre(rng), r = spread(rng);
  std::uniform_int_distribution<int> off(-r, r);
  std::vector<Point> pts;
  for (int k = count(rng); k > 0; --k) pts.emplace_back(Rational(cx + off(rng), 1000), Rational(cy + off(rng), 1000));
  return locus::convex_hull(pts);
}

/// Two or three random hulls, each drawn as a path through its vertices (a
/// single point becomes an isolated vertex). Empty when the parts touch.
inline std::optional<Network> random_forest(std::mt19937_64& rng) {
  std::vector<Point> pts;
  std::vector<std::pair<int, int>> edges;
  int parts = 2 + static_cast<int>(rng() % 2);
  for (int i = 0; i < parts; ++i) {
    locus::HullPolygon h = random_hull(rng);
    int base = static_cast<int>(pts.size());
    for (std::size_t j = 0; j + 1 < h.vertices.size(); ++j) edges.emplace_back(base + j, base + j + 1);
    for (const Point& p : h.vertices) pts.push_back(p);
  }
  Network net = make(pts, edges);
  if (!locus::validate(net).ok() || locus::is_connected(net)) return std::nullopt;
  return net;
}

/// Convex hull of each connected component.
inline std::vector<locus::HullPolygon> component_hulls(const Network& net) {
  std::vector<locus::HullPolygon> hulls;
  for (const auto& comp : locus::components(net)) {
    std::vector<Point> cp;
    for (int id : comp) cp.push_back(net.pos(net.index_of(id)));
    hulls.push_back(locus::convex_hull(cp));
  }
  return hulls;
}

}  // namespace fixtures
