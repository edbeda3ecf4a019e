#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "locus/error.hpp"
#include "locus/metrics.hpp"
#include "locus/network.hpp"

using namespace locus;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidInput;
}

int edge_between(const Network& net, const Point& a, const Point& b) {
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    Segment s = net.edge_segment(static_cast<int>(e));
    if ((s.a() == a && s.b() == b) || (s.a() == b && s.b() == a)) return static_cast<int>(e);
  }
  return -1;
}

// Locus membership of a point, exact.
bool on_locus(const Network& net, const Point& p) { return locate_exact(net, p).has_value(); }

}  // namespace

TEST_CASE("construction rejects unknown ids and self loops") {
  std::vector<Vertex> vs = {{1, Point(0, 0), "", ""}, {2, Point(1, 0), "", ""}};
  CHECK_THROWS_AS(Network(vs, {{1, 3}}), Error);
  CHECK_THROWS_AS(Network(vs, {{1, 1}}), Error);
  std::vector<Vertex> dup = {{1, Point(0, 0), "", ""}, {1, Point(1, 0), "", ""}};
  CHECK_THROWS_AS(Network(dup, {}), Error);
}

TEST_CASE("edges are oriented from the smaller id") {
  std::vector<Vertex> vs = {{7, Point(0, 0), "", ""}, {3, Point(2, 0), "", ""}};
  Network net(vs, {{7, 3}});
  const Edge& e = net.edges()[0];
  CHECK(net.vertices()[e.u].id == 3);
  CHECK(net.vertices()[e.v].id == 7);
  CHECK(e.length == 2.0);
}

TEST_CASE("validate examples") {
  CHECK(validate(fixtures::square1()).ok());

  Network crossed = fixtures::make({Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1)},
                                   {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {1, 3}});
  auto report = validate(crossed);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].kind == Violation::Kind::Crossing);
  REQUIRE(report.violations[0].where);
  CHECK(*report.violations[0].where == Point(Rational(1, 2), Rational(1, 2)));

  auto two = validate(fixtures::two_triangles());
  CHECK(two.ok());
  CHECK(two.components == 2);
}

TEST_CASE("validate flags duplicates, zero length and vertices on edges") {
  Network dup_pos = fixtures::make({Point(0, 0), Point(0, 0), Point(1, 0)}, {{0, 2}});
  auto r1 = validate(dup_pos);
  CHECK(std::any_of(r1.violations.begin(), r1.violations.end(),
                    [](const Violation& v) { return v.kind == Violation::Kind::DuplicateVertex; }));

  Network dup_edge = fixtures::make({Point(0, 0), Point(1, 0)}, {{0, 1}, {1, 0}});
  auto r2 = validate(dup_edge);
  CHECK(std::any_of(r2.violations.begin(), r2.violations.end(),
                    [](const Violation& v) { return v.kind == Violation::Kind::DuplicateEdge; }));

  Network through = fixtures::make({Point(0, 0), Point(2, 0), Point(1, 0)}, {{0, 1}});
  auto r3 = validate(through);
  CHECK(std::any_of(r3.violations.begin(), r3.violations.end(),
                    [](const Violation& v) { return v.kind == Violation::Kind::VertexOnEdge; }));

  Network zero = fixtures::make({Point(0, 0), Point(0, 0)}, {{0, 1}});
  auto r4 = validate(zero);
  CHECK(std::any_of(r4.violations.begin(), r4.violations.end(),
                    [](const Violation& v) { return v.kind == Violation::Kind::ZeroLengthEdge; }));
}

TEST_CASE("components") {
  CHECK(components(fixtures::square1()).size() == 1);
  CHECK(components(fixtures::two_triangles()).size() == 2);
  Network bare = fixtures::make({Point(0, 0), Point(1, 0), Point(2, 5)}, {});
  CHECK(components(bare).size() == 3);
  CHECK_FALSE(is_connected(bare));
}

TEST_CASE("locus coordinates") {
  Network sq = fixtures::square1();
  int e = edge_between(sq, Point(0, 0), Point(1, 0));
  REQUIRE(e >= 0);
  const Edge& edge = sq.edges()[e];
  CHECK(locus_coords(sq, {e, 0.5}) == Point(Rational(1, 2), 0));
  CHECK(locus_coords(sq, {e, 0.0}) == sq.pos(edge.u));
  CHECK(locus_coords(sq, {e, 1.0}) == sq.pos(edge.v));
  CHECK(code_of([&] { locus_coords(sq, {99, 0.5}); }) == ErrorCode::UnknownEdge);
  CHECK(code_of([&] { locus_coords(sq, {e, 1.5}); }) == ErrorCode::ParameterOutOfRange);
}

TEST_CASE("canonical vertex points use the smallest incident edge") {
  Network sq = fixtures::square1();
  for (std::size_t e = 0; e < sq.edge_count(); ++e) {
    for (double t : {0.0, 1.0}) {
      LocusPoint c = canonical(sq, {static_cast<int>(e), t});
      int vertex = t == 0.0 ? sq.edges()[e].u : sq.edges()[e].v;
      CHECK(c.edge == sq.incident(vertex).front());
      CHECK(locus_coords(sq, c) == sq.pos(vertex));
    }
  }
}

TEST_CASE("project to locus") {
  Network sq = fixtures::square1();
  auto p = project_to_locus(sq, 0.5, 0.1, 0.2);
  REQUIRE(p);
  CHECK(locus_x(sq, *p) == doctest::Approx(0.5));
  CHECK(locus_y(sq, *p) == doctest::Approx(0.0));
  CHECK(p->edge == edge_between(sq, Point(0, 0), Point(1, 0)));

  auto corner = project_to_locus(sq, 1.0, 1.0, 0.2);
  REQUIRE(corner);
  LocusPoint c = canonical(sq, *corner);
  CHECK(c.edge == corner->edge);
  CHECK(c.t == corner->t);
  CHECK((corner->t == 0.0 || corner->t == 1.0));

  CHECK_FALSE(project_to_locus(sq, 10, 10, 0.2));
}

TEST_CASE("insert a diagonal between existing vertices") {
  Network sq = fixtures::square1();
  Network out = insert_segment(sq, Segment(Point(0, 0), Point(1, 1)));
  CHECK(out.vertex_count() == 4);
  CHECK(out.edge_count() == 5);
  CHECK(edge_between(out, Point(0, 0), Point(1, 1)) >= 0);
  CHECK(validate(out).ok());
}

TEST_CASE("insert a chord across two star spokes") {
  Network star = fixtures::star5();
  // Endpoints at distance 0.1 from the center on two adjacent spokes.
  Point c0 = locus_coords(star, {0, 0.1});
  Point c1 = locus_coords(star, {1, 0.1});
  Segment chord(c0, c1);
  Network out = insert_segment(star, chord);
  CHECK(out.vertex_count() == star.vertex_count() + 2);
  CHECK(out.edge_count() == star.edge_count() + 3);
  CHECK(validate(out).ok());
  CHECK(on_locus(out, c0));
  CHECK(on_locus(out, c1));
}

TEST_CASE("insert a chord crossing spokes in their interiors") {
  Network star = fixtures::star5();
  // Anchored on spokes 4 and 1; crosses spoke 0 strictly inside.
  Point a = locus_coords(star, {4, 0.6});
  Point b = locus_coords(star, {1, 0.6});
  Segment chord(a, b);
  std::vector<Point> crossings;
  for (int spoke : {0}) {
    auto hit = seg_intersect(chord, star.edge_segment(spoke));
    REQUIRE(hit.kind == Intersection::Kind::Point);
    crossings.push_back(hit.point);
  }
  Network out = insert_segment(star, chord);
  // Two endpoint splits plus one crossing.
  CHECK(out.vertex_count() == star.vertex_count() + 3);
  // Three spokes split, chord in two pieces.
  CHECK(out.edge_count() == star.edge_count() + 3 + 2);
  CHECK(validate(out).ok());
  for (const auto& x : crossings) {
    auto it = std::find_if(out.vertices().begin(), out.vertices().end(),
                           [&](const Vertex& v) { return v.pos == x; });
    CHECK(it != out.vertices().end());
  }
  CHECK(out.total_length() == doctest::Approx(star.total_length() + chord.length()).epsilon(1e-12));
}

TEST_CASE("collinear overlap is rejected") {
  Network path = fixtures::path1();
  CHECK(code_of([&] { insert_segment(path, Segment(Point(0, 0), Point(Rational(1, 2), 0))); }) ==
        ErrorCode::DegenerateOverlap);
}

TEST_CASE("off-locus endpoint is rejected") {
  Network sq = fixtures::square1();
  CHECK(code_of([&] { insert_segment(sq, Segment(Point(0, 0), Point(Rational(1, 2), Rational(1, 2)))); }) ==
        ErrorCode::OffLocus);
}

TEST_CASE("shortcut sets") {
  Network sq = fixtures::square1();
  ShortcutSet none;
  Network same = insert_shortcut_set(sq, none);
  CHECK(same.vertex_count() == sq.vertex_count());
  CHECK(same.edge_count() == sq.edge_count());

  ShortcutSet both = anchor_shortcut_set(sq, {Segment(Point(0, 0), Point(1, 1)), Segment(Point(1, 0), Point(0, 1))});
  Network x = insert_shortcut_set(sq, both);
  CHECK(x.vertex_count() == 5);
  CHECK(x.edge_count() == 8);
  auto center = std::find_if(x.vertices().begin(), x.vertices().end(),
                             [](const Vertex& v) { return v.pos == Point(Rational(1, 2), Rational(1, 2)); });
  REQUIRE(center != x.vertices().end());
  CHECK(x.degree(static_cast<int>(center - x.vertices().begin())) == 4);
  CHECK(validate(x).ok());

  // s2 starts at the midpoint of s1, which is off the original locus.
  ShortcutSet chained = anchor_shortcut_set(
      sq, {Segment(Point(0, 0), Point(1, 1)), Segment(Point(Rational(1, 2), Rational(1, 2)), Point(1, 0))});
  REQUIRE(chained.anchors.size() == 2);
  CHECK(chained.anchors[1].first.host == Anchor::Host::Segment);
  CHECK(chained.anchors[1].first.index == 0);
  CHECK(validate(insert_shortcut_set(sq, chained)).ok());

  CHECK(code_of([&] {
          anchor_shortcut_set(sq, {Segment(Point(Rational(1, 2), Rational(1, 2)), Point(1, 0)),
                                   Segment(Point(0, 0), Point(1, 1))});
        }) == ErrorCode::ChainViolation);
}

TEST_CASE("random insertions keep the network valid and distances non-increasing") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int inserted = 0;
  for (int k = 0; k < 40; ++k) {
    Network net = fixtures::random_network(rng, 4 + static_cast<int>(rng() % 5), 4, 8);
    int e1 = static_cast<int>(rng() % net.edge_count());
    int e2 = static_cast<int>(rng() % net.edge_count());
    Point a = locus_coords(net, {e1, std::round(unit(rng) * 16) / 16});
    Point b = locus_coords(net, {e2, std::round(unit(rng) * 16) / 16});
    if (a == b) continue;
    Segment s(a, b);
    Network out;
    try {
      out = insert_segment(net, s);
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::DegenerateOverlap);
      continue;
    }
    ++inserted;
    CHECK(validate(out).ok());
    CHECK(out.total_length() == doctest::Approx(net.total_length() + s.length()).epsilon(1e-9));
    // Locus of the result covers the old locus and the segment.
    for (int i = 0; i <= 8; ++i) {
      CHECK(on_locus(out, s.at(Rational(i, 8))));
      int e = static_cast<int>(rng() % net.edge_count());
      CHECK(on_locus(out, net.edge_segment(e).at(Rational(i, 8))));
    }
    // Sampled old pairs never get farther apart.
    DistanceOracle before(net), after(out);
    for (int i = 0; i < 20; ++i) {
      LocusPoint p{static_cast<int>(rng() % net.edge_count()), unit(rng)};
      LocusPoint q{static_cast<int>(rng() % net.edge_count()), unit(rng)};
      double d0 = locus_distance(net, before, p, q);
      auto pp = locate_exact(out, locus_coords(net, p));
      auto qq = locate_exact(out, locus_coords(net, q));
      REQUIRE(pp);
      REQUIRE(qq);
      double d1 = locus_distance(out, after, {pp->first, pp->second.get_d()}, {qq->first, qq->second.get_d()});
      CHECK(d1 <= d0 + tolerance(d0, d1));
    }
  }
  CHECK(inserted > 20);
}
