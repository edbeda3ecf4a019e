#include "locus/augment.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "locus/error.hpp"
#include "locus/metrics.hpp"

namespace locus {

namespace {

constexpr int kMaxHalvings = 60;

double min_incident_length(const Network& net, int u) {
  double best = kInfinity;
  for (int e : net.incident(u)) best = std::min(best, net.edges()[e].length);
  return best;
}

// Quadrant-then-cross comparison of directions, exact.
int half_of(const Rational& dx, const Rational& dy) { return (dy > 0 || (dy == 0 && dx > 0)) ? 0 : 1; }

// Incident edges of u sorted counter-clockwise by direction.
std::vector<int> ccw_edges(const Network& net, int u) {
  std::vector<int> es = net.incident(u);
  const Point& o = net.pos(u);
  std::sort(es.begin(), es.end(), [&](int a, int b) {
    const Point& pa = net.pos(net.other(a, u));
    const Point& pb = net.pos(net.other(b, u));
    Rational ax = pa.x - o.x, ay = pa.y - o.y, bx = pb.x - o.x, by = pb.y - o.y;
    int ha = half_of(ax, ay), hb = half_of(bx, by);
    if (ha != hb) return ha < hb;
    return ax * by - ay * bx > 0;
  });
  return es;
}

// Chord index pairs (into the CCW order) at a vertex.
std::vector<std::pair<int, int>> fan_pairs(const Network& net, int u, const std::vector<int>& order) {
  std::vector<std::pair<int, int>> out;
  const int k = static_cast<int>(order.size());
  const Point& o = net.pos(u);
  for (int i = 0; i < k; ++i) {
    const Point& pi = net.pos(net.other(order[i], u));
    int last = -1;
    for (int step = 1; step < k; ++step) {
      int j = (i + step) % k;
      if (orient(o, pi, net.pos(net.other(order[j], u))) <= 0) break;
      last = j;
    }
    if (last >= 0) out.emplace_back(i, last);
  }
  return out;
}

std::optional<VerifyResult> try_verify(const Network& net, const ShortcutSet& set, double old_d) {
  try {
    Network out = insert_shortcut_set(net, set);
    double new_d = diameter_value(out);
    return VerifyResult{new_d < old_d - tolerance(old_d, new_d), old_d, new_d};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DegenerateOverlap || e.code() == ErrorCode::OffLocus ||
        e.code() == ErrorCode::ChainViolation) {
      return std::nullopt;
    }
    throw;
  }
}

// Halves the standoff fraction until `build` yields a verified set.
template <typename Build>
Construction shrink_until_verified(const Network& net, double fraction, Build build, const char* what) {
  double old_d = diameter_value(net);
  for (int k = 0; k <= kMaxHalvings; ++k) {
    std::optional<ShortcutSet> set = build(fraction);
    if (!set) break;
    if (!set->empty()) {
      auto result = try_verify(net, *set, old_d);
      if (result && result->is_shortcut_set) return Construction{std::move(*set), old_d, result->new_d, fraction};
    }
    fraction /= 2;
  }
  throw Error(ErrorCode::VerificationExhausted, std::string(what) + ": no standoff verified after " +
                                                    std::to_string(kMaxHalvings) + " halvings");
}

Segment chord_at(const Network& net, int u, int e1, int e2, double delta) {
  return Segment(standoff_point(net, e1, u, delta), standoff_point(net, e2, u, delta));
}

}  // namespace

bool segment_in_locus(const Network& net, int u, int v) {
  Segment target(net.pos(u), net.pos(v));
  std::vector<std::pair<Rational, Rational>> spans;
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    Segment s = net.edge_segment(static_cast<int>(e));
    if (orient(target.a(), target.b(), s.a()) != 0 || orient(target.a(), target.b(), s.b()) != 0) continue;
    Rational t0 = param_on_segment(s.a(), target), t1 = param_on_segment(s.b(), target);
    if (t0 > t1) std::swap(t0, t1);
    if (t1 <= 0 || t0 >= 1) continue;
    spans.emplace_back(std::max(t0, Rational(0)), std::min(t1, Rational(1)));
  }
  std::sort(spans.begin(), spans.end());
  Rational reach = 0;
  for (const auto& [a, b] : spans) {
    if (a > reach) return false;
    reach = std::max(reach, b);
  }
  return reach == 1;
}

ExistenceVerdict admits_shortcut_set(const Network& net) {
  DistanceOracle oracle(net);
  ExistenceVerdict verdict;
  verdict.locus_diameter = diameter_value(net, oracle);
  if (net.vertex_count() < 2) return verdict;
  verdict.hull_diameter = hull_diameter(net.points());
  const double hull = verdict.hull_diameter;
  const double d = verdict.locus_diameter;
  if (hull < d && !approx_eq(hull, d)) {
    verdict.admits = true;
    return verdict;
  }
  for (std::size_t u = 0; u < net.vertex_count(); ++u) {
    for (std::size_t v = u + 1; v < net.vertex_count(); ++v) {
      int a = static_cast<int>(u), b = static_cast<int>(v);
      double dv = oracle(a, b);
      if (!approx_eq(dv, d) || !approx_eq(euclid(net.pos(a), net.pos(b)), dv)) continue;
      if (segment_in_locus(net, a, b)) {
        verdict.witness = std::make_pair(net.vertices()[a].id, net.vertices()[b].id);
        return verdict;
      }
    }
  }
  verdict.admits = true;
  return verdict;
}

VerifyResult verify_shortcut_set(const Network& net, const ShortcutSet& set) {
  double old_d = diameter_value(net);
  Network out = insert_shortcut_set(net, set);
  double new_d = diameter_value(out);
  return VerifyResult{new_d < old_d - tolerance(old_d, new_d), old_d, new_d};
}

Point standoff_point(const Network& net, int edge, int vertex, double delta) {
  const Edge& e = net.edges().at(edge);
  Rational t = to_rational(std::clamp(delta / e.length, 0.0, 1.0));
  Segment s = net.edge_segment(edge);
  return e.u == vertex ? s.at(t) : s.at(Rational(1) - t);
}

ShortcutSet fan_segments(const Network& net, double fraction) {
  std::vector<Segment> segments;
  for (std::size_t i = 0; i < net.vertex_count(); ++i) {
    int u = static_cast<int>(i);
    if (net.degree(u) < 2) continue;
    double delta = fraction * min_incident_length(net, u);
    auto order = ccw_edges(net, u);
    for (auto [a, b] : fan_pairs(net, u, order)) segments.push_back(chord_at(net, u, order[a], order[b], delta));
  }
  return anchor_shortcut_set(net, std::move(segments));
}

Construction fan_shortcut_set(const Network& net) {
  if (!is_connected(net)) throw Error(ErrorCode::Disconnected, "fan construction needs a connected network");
  return shrink_until_verified(
      net, 0.25, [&](double f) -> std::optional<ShortcutSet> { return fan_segments(net, f); }, "fan");
}

EpsilonCoverPlan epsilon_shortcut_set(const Network& net, double eps) {
  if (!(eps > 0)) throw Error(ErrorCode::ParameterOutOfRange, "eps must be positive");
  DistanceOracle oracle(net);
  EpsilonCoverPlan plan;
  plan.eps = eps;
  plan.old_d = diameter_value(net, oracle);
  plan.hull_d = net.vertex_count() >= 2 ? hull_diameter(net.points()) : 0.0;
  plan.M = plan.hull_d + eps / 4;
  if (!(plan.hull_d + eps < plan.old_d)) {
    throw Error(ErrorCode::HypothesisViolated, "diam(CH) + eps must be below the diameter");
  }

  // Reported cover: samples at spacing at most eps/8 whose eccentricity reaches M.
  const double spacing = eps / 8;
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    int pieces = std::max(1, static_cast<int>(std::ceil(net.edges()[e].length / spacing)));
    for (int i = 0; i <= pieces; ++i) {
      LocusPoint at{static_cast<int>(e), static_cast<double>(i) / pieces};
      if (eccentricity(net, oracle, at) >= plan.M) plan.net_points.push_back(at);
    }
  }

  // Join a current diametral pair until the diameter is below target. Each
  // joined pair ends within diam(CH); points of the new segments are covered
  // because every round measures the whole augmented locus.
  const double target = plan.hull_d + eps;
  const std::size_t budget = 16 * (net.edge_count() + 8);
  std::vector<Segment> chosen;
  Network current = net;
  while (true) {
    DiameterReport report = continuous_diameter(current);
    if (report.d < target) break;
    if (chosen.size() >= budget) {
      throw Error(ErrorCode::VerificationExhausted, "eps-cover exceeded its segment budget");
    }
    bool joined = false;
    for (const auto& pair : report.pairs) {
      Point a = locus_coords(current, pair.p), b = locus_coords(current, pair.q);
      if (a == b) continue;
      try {
        current = insert_segment(current, Segment(a, b));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateOverlap) throw;
        continue;
      }
      chosen.emplace_back(a, b);
      joined = true;
      break;
    }
    if (!joined) throw Error(ErrorCode::VerificationExhausted, "no diametral pair can be joined");
  }

  plan.set = anchor_shortcut_set(net, std::move(chosen));
  plan.new_d = diameter_value(insert_shortcut_set(net, plan.set));
  bool low_ok = plan.new_d >= plan.hull_d - tolerance(plan.new_d, plan.hull_d);
  if (!low_ok || !(plan.new_d < plan.hull_d + eps)) {
    throw Error(ErrorCode::VerificationExhausted, "eps-cover did not reach the target diameter");
  }
  return plan;
}

std::vector<int> cycle_order(const Network& net) {
  const std::size_t n = net.vertex_count();
  bool ok = n >= 3 && net.edge_count() == n && is_connected(net) && validate(net).ok();
  for (std::size_t i = 0; ok && i < n; ++i) ok = net.degree(static_cast<int>(i)) == 2;
  if (!ok) throw Error(ErrorCode::NotACycle, "network is not a simple cycle");
  std::vector<int> order{0};
  int prev = -1, cur = 0;
  while (order.size() < n) {
    int next = -1;
    for (int e : net.incident(cur)) {
      int w = net.other(e, cur);
      if (w != prev) {
        next = w;
        break;
      }
    }
    prev = cur;
    cur = next;
    order.push_back(cur);
  }
  return order;
}

bool is_convex_polygon(const Network& net) {
  auto order = cycle_order(net);
  const std::size_t n = order.size();
  int sign = 0;
  for (std::size_t i = 0; i < n; ++i) {
    int s = orient(net.pos(order[i]), net.pos(order[(i + 1) % n]), net.pos(order[(i + 2) % n]));
    if (s == 0) continue;
    if (sign == 0) sign = s;
    if (s != sign) return false;
  }
  return true;
}

namespace {

int edge_of(const Network& net, int a, int b) {
  for (int e : net.incident(a)) {
    if (net.other(e, a) == b) return e;
  }
  return -1;
}

Construction convex_pair(const Network& net, const std::vector<int>& order) {
  const std::size_t n = order.size();
  std::size_t longest = 0;
  for (std::size_t i = 1; i < n; ++i) {
    int e = edge_of(net, order[i], order[(i + 1) % n]);
    int best = edge_of(net, order[longest], order[(longest + 1) % n]);
    if (net.edges()[e].length > net.edges()[best].length) longest = i;
  }
  std::array<int, 2> ends = {order[longest], order[(longest + 1) % n]};
  return shrink_until_verified(
      net, 0.25,
      [&](double f) -> std::optional<ShortcutSet> {
        std::vector<Segment> segs;
        for (int u : ends) {
          const auto& inc = net.incident(u);
          segs.push_back(chord_at(net, u, inc[0], inc[1], f * min_incident_length(net, u)));
        }
        return anchor_shortcut_set(net, std::move(segs));
      },
      "convex polygon pair");
}

// First boundary crossing of the ray from `from` through `via`, beyond `via`.
std::optional<Point> ray_exit(const Network& net, const Point& from, const Point& via) {
  Rational span = 0;
  for (const auto& v : net.vertices()) {
    span = std::max(span, Rational(abs(v.pos.x - from.x) + abs(v.pos.y - from.y)));
  }
  Rational dx = via.x - from.x, dy = via.y - from.y;
  Rational scale = 4 * span / Rational(abs(dx) + abs(dy)) + 2;
  Segment probe(via, Point(from.x + scale * dx, from.y + scale * dy));
  std::optional<Point> best;
  Rational best_t;
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    auto hit = seg_intersect(probe, net.edge_segment(static_cast<int>(e)));
    if (hit.kind != Intersection::Kind::Point || hit.point == via) continue;
    Rational t = param_on_segment(hit.point, probe);
    if (!best || t < best_t) {
      best = hit.point;
      best_t = t;
    }
  }
  return best;
}

}  // namespace

Construction polygon_shortcut(const Network& net) {
  auto order = cycle_order(net);
  if (is_convex_polygon(net)) throw Error(ErrorCode::NotNonConvex, "polygon is convex");
  const std::size_t n = order.size();
  std::vector<int> position(n);
  for (std::size_t i = 0; i < n; ++i) position[order[i]] = static_cast<int>(i);

  HullPolygon hull = convex_hull(net.points());
  std::map<Point, int> at;
  for (std::size_t i = 0; i < net.vertex_count(); ++i) at[net.pos(static_cast<int>(i))] = static_cast<int>(i);
  std::set<int> on_hull;
  for (const auto& p : hull.vertices) on_hull.insert(at.at(p));

  double old_d = diameter_value(net);
  const std::size_t h = hull.vertices.size();
  for (std::size_t k = 0; k < h; ++k) {
    int a = at.at(hull.vertices[k]);
    int b = at.at(hull.vertices[(k + 1) % h]);
    if (edge_of(net, a, b) >= 0) continue;
    for (auto [u, v] : {std::pair{a, b}, std::pair{b, a}}) {
      // Walk from v into the pocket: the neighbour whose arc reaches u without hull vertices.
      int into = -1;
      for (int e : net.incident(v)) {
        int w = net.other(e, v);
        int prev = v, cur = w;
        bool clean = true;
        while (cur != u) {
          if (on_hull.count(cur)) {
            clean = false;
            break;
          }
          int nxt = net.other(net.incident(cur)[0], cur) == prev ? net.other(net.incident(cur)[1], cur)
                                                                    : net.other(net.incident(cur)[0], cur);
          prev = cur;
          cur = nxt;
        }
        if (clean) {
          into = e;
          break;
        }
      }
      if (into < 0) continue;
      double fraction = 0.25;
      for (int step = 0; step <= kMaxHalvings; ++step, fraction /= 2) {
        Point r_prime = standoff_point(net, into, v, fraction * net.edges()[into].length);
        if (r_prime == net.pos(u)) continue;
        auto r = ray_exit(net, net.pos(u), r_prime);
        if (!r) continue;
        ShortcutSet set;
        try {
          set = anchor_shortcut_set(net, {Segment(net.pos(u), *r)});
        } catch (const Error&) {
          continue;
        }
        auto result = try_verify(net, set, old_d);
        if (result && result->is_shortcut_set) return Construction{std::move(set), old_d, result->new_d, fraction};
      }
    }
  }
  throw Error(ErrorCode::VerificationExhausted, "no pocket segment verified");
}

PolygonScn polygon_scn(const Network& net) {
  auto order = cycle_order(net);
  if (is_convex_polygon(net)) return PolygonScn{2, convex_pair(net, order)};
  return PolygonScn{1, polygon_shortcut(net)};
}

Construction k4_shortcut(const Network& net) {
  bool shape = net.vertex_count() == 4 && net.edge_count() == 6 && validate(net).ok();
  for (int u = 0; shape && u < 4; ++u) shape = net.degree(u) == 3;
  int inner = -1;
  if (shape) {
    for (int c = 0; c < 4 && inner < 0; ++c) {
      std::vector<int> t;
      for (int w = 0; w < 4; ++w) {
        if (w != c) t.push_back(w);
      }
      int s0 = orient(net.pos(t[0]), net.pos(t[1]), net.pos(c));
      int s1 = orient(net.pos(t[1]), net.pos(t[2]), net.pos(c));
      int s2 = orient(net.pos(t[2]), net.pos(t[0]), net.pos(c));
      if (s0 != 0 && s0 == s1 && s1 == s2) inner = c;
    }
  }
  if (inner < 0) throw Error(ErrorCode::NotK4, "network is not a plane K4 with an interior vertex");

  for (int u = 0; u < 4; ++u) {
    if (u == inner) continue;
    auto order = ccw_edges(net, u);
    auto pairs = fan_pairs(net, u, order);
    // The outer angle is below pi; its chord spans all three edges.
    auto wide = std::find_if(pairs.begin(), pairs.end(), [&](auto pr) { return (pr.second - pr.first + 3) % 3 == 2; });
    if (wide == pairs.end()) continue;
    try {
      return shrink_until_verified(
          net, 0.25,
          [&](double f) -> std::optional<ShortcutSet> {
            double delta = f * min_incident_length(net, u);
            return anchor_shortcut_set(net, {chord_at(net, u, order[wide->first], order[wide->second], delta)});
          },
          "k4");
    } catch (const Error& e) {
      if (e.code() != ErrorCode::VerificationExhausted) throw;
    }
  }
  throw Error(ErrorCode::VerificationExhausted, "no K4 standoff chord verified");
}

}  // namespace locus
