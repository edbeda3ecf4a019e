#include <algorithm>
#include <cmath>
#include <queue>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "locus/error.hpp"
#include "locus/geom.hpp"
#include "locus/metrics.hpp"

using namespace locus;

namespace {

// Independent oracle: every edge cut into k pieces, plain Dijkstra on the
// resulting graph. Node (e, i) is the point at t = i/k on edge e; vertex
// nodes are merged.
struct Subdivided {
  const Network& net;
  int k;
  std::vector<std::vector<std::pair<int, double>>> adj;

  Subdivided(const Network& n, int pieces) : net(n), k(pieces) {
    int nv = static_cast<int>(net.vertex_count());
    adj.resize(nv + net.edge_count() * (k - 1));
    for (std::size_t e = 0; e < net.edge_count(); ++e) {
      double step = net.edges()[e].length / k;
      for (int i = 0; i < k; ++i) {
        int a = node(static_cast<int>(e), i), b = node(static_cast<int>(e), i + 1);
        adj[a].emplace_back(b, step);
        adj[b].emplace_back(a, step);
      }
    }
  }

  int node(int e, int i) const {
    if (i == 0) return net.edges()[e].u;
    if (i == k) return net.edges()[e].v;
    return static_cast<int>(net.vertex_count()) + e * (k - 1) + (i - 1);
  }

  std::vector<double> from(int src) const {
    std::vector<double> dist(adj.size(), kInfinity);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[src] = 0;
    heap.emplace(0.0, src);
    while (!heap.empty()) {
      auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[u]) continue;
      for (auto [v, w] : adj[u]) {
        if (d + w < dist[v]) {
          dist[v] = d + w;
          heap.emplace(dist[v], v);
        }
      }
    }
    return dist;
  }
};

int edge_between(const Network& net, int a, int b) {
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    const Edge& x = net.edges()[e];
    if ((x.u == a && x.v == b) || (x.u == b && x.v == a)) return static_cast<int>(e);
  }
  return -1;
}

LocusPoint at_vertex(const Network& net, int v) { return canonical(net, {net.incident(v).front(), net.edges()[net.incident(v).front()].u == v ? 0.0 : 1.0}); }

}  // namespace

TEST_CASE("vertex distances") {
  Network sq = fixtures::square1();
  DistanceOracle o(sq);
  CHECK(o(0, 2) == 2.0);
  CHECK(o(1, 3) == 2.0);
  CHECK(o(0, 0) == 0.0);
  auto path = o.path(0, 2);
  CHECK(path.size() == 3);
  CHECK(path.front() == 0);
  CHECK(path.back() == 2);

  Network k4 = fixtures::k4a();
  CHECK(DistanceOracle(k4)(0, 1) == 4.0);

  Network star = fixtures::star5();
  DistanceOracle so(star);
  for (int i = 1; i <= 5; ++i) {
    for (int j = i + 1; j <= 5; ++j) CHECK(so(i, j) == doctest::Approx(2.0).epsilon(1e-15));
  }

  DistanceOracle two(fixtures::two_triangles());
  CHECK(two(0, 3) == kInfinity);
  CHECK(two.path(0, 3).empty());
}

TEST_CASE("oracle invariants on random networks") {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 20; ++k) {
    Network net = fixtures::random_network(rng, 4 + static_cast<int>(rng() % 7), 6);
    DistanceOracle o(net);
    int n = static_cast<int>(net.vertex_count());
    for (int u = 0; u < n; ++u) {
      CHECK(o(u, u) == 0.0);
      for (int v = 0; v < n; ++v) {
        CHECK(o(u, v) == doctest::Approx(o(v, u)).epsilon(1e-12));
        for (int w = 0; w < n; ++w) CHECK(o(u, w) <= o(u, v) + o(v, w) + tolerance(o(u, w), o(u, v) + o(v, w)));
      }
    }
    for (const auto& e : net.edges()) CHECK(o(e.u, e.v) <= e.length + kTau);
  }
}

TEST_CASE("locus distance examples") {
  Network sq = fixtures::square1();
  DistanceOracle o(sq);
  int bottom = edge_between(sq, 0, 1);
  int top = edge_between(sq, 2, 3);
  CHECK(locus_distance(sq, o, {bottom, 0.5}, {top, 0.5}) == doctest::Approx(2.0));
  CHECK(locus_distance(sq, o, {bottom, 0.2}, {bottom, 0.7}) == doctest::Approx(0.5));

  Network k4 = fixtures::k4a();
  DistanceOracle ko(k4);
  int e23 = edge_between(k4, 1, 2);
  int e14 = edge_between(k4, 0, 3);
  double got = locus_distance(k4, ko, {e23, 0.5}, {e14, 0.5});
  Subdivided sub(k4, 64);
  double want = sub.from(sub.node(e23, 32))[sub.node(e14, 32)];
  double lmax = k4.max_edge_length();
  CHECK(std::abs(got - want) <= 2 * lmax / 64);
  // Midpoints are grid nodes, so the subdivided graph is exact here.
  CHECK(got == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("locus distance matches the subdivided graph on random networks") {
  std::mt19937_64 rng(32);
  for (int k = 0; k < 15; ++k) {
    Network net = fixtures::random_network(rng, 4 + static_cast<int>(rng() % 5), 5);
    DistanceOracle o(net);
    Subdivided sub(net, 16);
    for (int trial = 0; trial < 10; ++trial) {
      int e1 = static_cast<int>(rng() % net.edge_count()), e2 = static_cast<int>(rng() % net.edge_count());
      int i1 = static_cast<int>(rng() % 17), i2 = static_cast<int>(rng() % 17);
      double got = locus_distance(net, o, {e1, i1 / 16.0}, {e2, i2 / 16.0});
      double want = sub.from(sub.node(e1, i1))[sub.node(e2, i2)];
      CHECK(got == doctest::Approx(want).epsilon(1e-9));
    }
  }
}

TEST_CASE("eccentricity examples") {
  Network sq = fixtures::square1();
  DistanceOracle o(sq);
  CHECK(eccentricity(sq, o, at_vertex(sq, 0)) == doctest::Approx(2.0));
  Network path = fixtures::path1();
  CHECK(eccentricity(path, DistanceOracle(path), {0, 0.25}) == doctest::Approx(0.75));
  Network star = fixtures::star5();
  CHECK(eccentricity(star, DistanceOracle(star), at_vertex(star, 0)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eccentricity matches the subdivided graph") {
  std::mt19937_64 rng(33);
  for (int k = 0; k < 10; ++k) {
    Network net = fixtures::random_network(rng, 5, 4);
    DistanceOracle o(net);
    Subdivided sub(net, 64);
    int e = static_cast<int>(rng() % net.edge_count());
    int i = static_cast<int>(rng() % 65);
    auto dist = sub.from(sub.node(e, i));
    double brute = *std::max_element(dist.begin(), dist.end());
    double ecc = eccentricity(net, o, {e, i / 64.0});
    CHECK(ecc >= brute - 1e-9);
    CHECK(ecc <= brute + net.max_edge_length() / 64 + 1e-9);
  }
}

TEST_CASE("continuous diameter of fixtures") {
  auto sq = continuous_diameter(fixtures::square1());
  CHECK(sq.d == doctest::Approx(2.0).epsilon(1e-12));
  Network square = fixtures::square1();
  bool opposite_midpoints = false;
  for (const auto& pr : sq.pairs) {
    double px = locus_x(square, pr.p), py = locus_y(square, pr.p);
    double qx = locus_x(square, pr.q), qy = locus_y(square, pr.q);
    bool horizontal = std::abs(px - 0.5) < 1e-9 && std::abs(qx - 0.5) < 1e-9 && std::abs(std::abs(py - qy) - 1) < 1e-9;
    bool vertical = std::abs(py - 0.5) < 1e-9 && std::abs(qy - 0.5) < 1e-9 && std::abs(std::abs(px - qx) - 1) < 1e-9;
    opposite_midpoints = opposite_midpoints || horizontal || vertical;
  }
  CHECK(opposite_midpoints);

  CHECK(continuous_diameter(fixtures::tri1()).d == doctest::Approx(1.5).epsilon(1e-12));

  auto star = continuous_diameter(fixtures::star5());
  CHECK(star.d == doctest::Approx(2.0).epsilon(1e-12));
  REQUIRE_FALSE(star.pairs.empty());
  CHECK(star.pairs.size() == 10);
  for (const auto& pr : star.pairs) CHECK(pr.kind == PairKind::VertexVertex);

  Network k4 = fixtures::k4a();
  double d = continuous_diameter(k4).d;
  CHECK(std::abs(d - sampled_diameter(k4, 128)) <= 2 * k4.max_edge_length() / 128);

  CHECK(continuous_diameter(fixtures::path1()).d == 1.0);
  CHECK_THROWS_AS(continuous_diameter(fixtures::two_triangles()), Error);
}

TEST_CASE("pendant pair classification") {
  // A right triangle with a tail: the tail tip against the antipode of its
  // base, which lies inside the hypotenuse.
  Network tailed = fixtures::make({Point(0, 0), Point(2, 0), Point(0, 1), Point(-1, 0)},
                                  {{0, 1}, {1, 2}, {2, 0}, {0, 3}});
  auto report = continuous_diameter(tailed);
  CHECK(report.d == doctest::Approx(1.0 + (3.0 + std::sqrt(5.0)) / 2));
  REQUIRE_FALSE(report.pairs.empty());
  bool pendant = false;
  for (const auto& pr : report.pairs) pendant = pendant || pr.kind == PairKind::PendantVertexEdge;
  CHECK(pendant);
}

TEST_CASE("sampled diameter examples") {
  CHECK(sampled_diameter(fixtures::square1(), 4) == doctest::Approx(2.0));
  for (int k : {2, 3, 17}) CHECK(sampled_diameter(fixtures::path1(), k) == doctest::Approx(1.0));
  CHECK(sampled_diameter(fixtures::tri1(), 6) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK_THROWS_AS(sampled_diameter(fixtures::path1(), 1), Error);
}

TEST_CASE("diameter invariants on random networks") {
  std::mt19937_64 rng(34);
  for (int k = 0; k < 30; ++k) {
    Network net = fixtures::random_network(rng, 4 + static_cast<int>(rng() % 7), 6);
    DistanceOracle o(net);
    auto report = continuous_diameter(net, o);
    double vertex_max = 0;
    for (std::size_t u = 0; u < net.vertex_count(); ++u) {
      for (std::size_t v = 0; v < net.vertex_count(); ++v) vertex_max = std::max(vertex_max, o(u, v));
    }
    CHECK(report.d >= vertex_max);
    CHECK(hull_diameter(net.points()) <= report.d + kTau);
    for (int s : {8, 32}) CHECK(std::abs(report.d - sampled_diameter(net, s)) <= 2 * net.max_edge_length() / s);
    REQUIRE_FALSE(report.pairs.empty());
    for (const auto& pr : report.pairs) {
      CHECK(locus_distance(net, o, pr.p, pr.q) == doctest::Approx(report.d).epsilon(1e-9));
    }
    CHECK(step_formula_diameter(net, o) <= report.d + 1e-9);
    CHECK(diameter_value(net, o) == report.d);
  }
}

TEST_CASE("cycle diameter is half the perimeter") {
  std::mt19937_64 rng(35);
  for (int k = 0; k < 20; ++k) {
    Network poly = fixtures::random_polygon(rng, 4 + static_cast<int>(rng() % 7), k % 2 == 0);
    double d = continuous_diameter(poly).d;
    CHECK(d == doctest::Approx(poly.total_length() / 2).epsilon(1e-12));
  }
}

TEST_CASE("inserting a segment raises the diameter by at most half its length") {
  std::mt19937_64 rng(36);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    Network net = fixtures::random_network(rng, 5, 4);
    Point a = locus_coords(net, {static_cast<int>(rng() % net.edge_count()), unit(rng)});
    Point b = locus_coords(net, {static_cast<int>(rng() % net.edge_count()), unit(rng)});
    if (a == b) continue;
    Segment s(a, b);
    Network out;
    try {
      out = insert_segment(net, s);
    } catch (const Error&) {
      continue;
    }
    CHECK(diameter_value(out) <= diameter_value(net) + s.length() / 2 + kTau);
  }
}
