#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "locus/augment.hpp"
#include "locus/error.hpp"
#include "locus/metrics.hpp"

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

std::size_t fan_bound(const Network& net) {
  std::size_t pendant = 0;
  for (std::size_t i = 0; i < net.vertex_count(); ++i) pendant += net.degree(static_cast<int>(i)) == 1;
  return 2 * net.edge_count() - pendant;
}

// Recomputes the diameter of the augmented network from scratch.
double rebuilt_diameter(const Network& net, const ShortcutSet& set) {
  std::vector<Segment> segs = set.segments;
  return continuous_diameter(insert_shortcut_set(net, anchor_shortcut_set(net, segs))).d;
}

}  // namespace

TEST_CASE("existence examples") {
  auto path = admits_shortcut_set(fixtures::straight_path3());
  CHECK_FALSE(path.admits);
  REQUIRE(path.witness);
  CHECK(std::min(path.witness->first, path.witness->second) == 0);
  CHECK(std::max(path.witness->first, path.witness->second) == 2);

  for (const Network& net : {fixtures::square1(), fixtures::tri1(), fixtures::star5(), fixtures::k4a()}) {
    auto v = admits_shortcut_set(net);
    CHECK(v.admits);
    CHECK_FALSE(v.witness);
    CHECK(v.hull_diameter < v.locus_diameter);
  }
  CHECK_FALSE(admits_shortcut_set(fixtures::path1()).admits);
}

TEST_CASE("a bent path admits, a straight one split into many edges does not") {
  Network bent = fixtures::make({Point(0, 0), Point(1, 0), Point(2, 1)}, {{0, 1}, {1, 2}});
  CHECK(admits_shortcut_set(bent).admits);
  Network straight = fixtures::make({Point(0, 0), Point(1, 0), Point(3, 0), Point(7, 0)}, {{0, 1}, {1, 2}, {2, 3}});
  CHECK_FALSE(admits_shortcut_set(straight).admits);
  // A straight path with a short side branch still cannot be shortcut.
  Network branch = fixtures::make({Point(0, 0), Point(2, 0), Point(4, 0), Point(2, 1)}, {{0, 1}, {1, 2}, {1, 3}});
  CHECK_FALSE(admits_shortcut_set(branch).admits);
}

TEST_CASE("segment containment is exact") {
  Network straight = fixtures::make({Point(0, 0), Point(Rational(1, 3), 0), Point(1, 0)}, {{0, 1}, {1, 2}});
  CHECK(segment_in_locus(straight, 0, 2));
  Network gap = fixtures::make({Point(0, 0), Point(Rational(1, 3), 0), Point(Rational(1, 2), 0), Point(1, 0)},
                               {{0, 1}, {2, 3}, {1, 2}});
  CHECK(segment_in_locus(gap, 0, 3));
  Network broken = fixtures::make({Point(0, 0), Point(Rational(1, 3), 0), Point(Rational(1, 2), 0), Point(1, 0)},
                                  {{0, 1}, {2, 3}});
  CHECK_FALSE(segment_in_locus(broken, 0, 3));
}

TEST_CASE("fan examples") {
  for (const Network& net : {fixtures::star5(), fixtures::tri1(), fixtures::square1()}) {
    auto fan = fan_shortcut_set(net);
    CHECK(fan.set.size() <= fan_bound(net));
    CHECK(fan.new_d < fan.old_d - kTau);
    CHECK(rebuilt_diameter(net, fan.set) == doctest::Approx(fan.new_d).epsilon(1e-12));
  }
  CHECK(fan_shortcut_set(fixtures::star5()).set.size() == 5);
  CHECK(fan_shortcut_set(fixtures::tri1()).set.size() <= 6);
  CHECK(fan_shortcut_set(fixtures::square1()).set.size() <= 8);
}

TEST_CASE("fan fails exactly when no shortcut set exists") {
  CHECK(code_of([] { fan_shortcut_set(fixtures::straight_path3()); }) == ErrorCode::VerificationExhausted);
  CHECK(code_of([] { fan_shortcut_set(fixtures::path1()); }) == ErrorCode::VerificationExhausted);
}

TEST_CASE("fan on random networks matches the characterization") {
  std::mt19937_64 rng(41);
  for (int k = 0; k < 12; ++k) {
    Network net = fixtures::random_network(rng, 4 + static_cast<int>(rng() % 4), 3);
    bool admits = admits_shortcut_set(net).admits;
    bool built = true;
    try {
      auto fan = fan_shortcut_set(net);
      CHECK(fan.set.size() <= fan_bound(net));
      CHECK(fan.new_d < fan.old_d - kTau);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::VerificationExhausted);
      built = false;
    }
    CHECK(built == admits);
  }
}

TEST_CASE("epsilon examples") {
  const double sqrt2 = std::sqrt(2.0);
  auto sq = epsilon_shortcut_set(fixtures::square1(), 0.4);
  CHECK(sq.new_d >= sqrt2 - kTau);
  CHECK(sq.new_d < sqrt2 + 0.4);
  CHECK(rebuilt_diameter(fixtures::square1(), sq.set) == doctest::Approx(sq.new_d).epsilon(1e-12));
  CHECK_FALSE(sq.net_points.empty());

  auto star = epsilon_shortcut_set(fixtures::star5(), 0.05);
  CHECK(star.new_d >= 1.9021);
  CHECK(star.new_d < 1.9521);

  CHECK(code_of([] { epsilon_shortcut_set(fixtures::tri1(), 0.6); }) == ErrorCode::HypothesisViolated);
  CHECK(code_of([] { epsilon_shortcut_set(fixtures::square1(), 0.0); }) == ErrorCode::ParameterOutOfRange);
}

TEST_CASE("verify examples") {
  Network sq = fixtures::square1();
  auto diag = verify_shortcut_set(sq, anchor_shortcut_set(sq, {Segment(Point(0, 0), Point(1, 1))}));
  CHECK(diag.old_d == doctest::Approx(2.0));
  CHECK(diag.new_d == doctest::Approx(continuous_diameter(insert_segment(sq, Segment(Point(0, 0), Point(1, 1)))).d));
  CHECK(diag.is_shortcut_set == (diag.new_d < 2.0 - kTau));

  auto empty = verify_shortcut_set(sq, ShortcutSet{});
  CHECK_FALSE(empty.is_shortcut_set);
  CHECK(empty.new_d == empty.old_d);

  Network tri = fixtures::tri1();
  Point a = locus_coords(tri, {0, 0.5}), b = locus_coords(tri, {1, 0.5});
  CHECK_FALSE(verify_shortcut_set(tri, anchor_shortcut_set(tri, {Segment(a, b)})).is_shortcut_set);
}

TEST_CASE("no simple chord shortens a polygon") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int simple = 0;
  for (int k = 0; k < 40; ++k) {
    Network poly = fixtures::random_polygon(rng, 4 + static_cast<int>(rng() % 5), k % 2 == 0);
    int e1 = static_cast<int>(rng() % poly.edge_count()), e2 = static_cast<int>(rng() % poly.edge_count());
    if (e1 == e2) continue;
    Point a = locus_coords(poly, {e1, unit(rng)}), b = locus_coords(poly, {e2, unit(rng)});
    Segment chord(a, b);
    // Simple: the only locus points of the chord are its endpoints.
    bool is_simple = true;
    for (std::size_t e = 0; e < poly.edge_count() && is_simple; ++e) {
      auto hit = seg_intersect(chord, poly.edge_segment(static_cast<int>(e)));
      if (hit.kind == Intersection::Kind::Overlap) is_simple = false;
      if (hit.kind == Intersection::Kind::Point && !(hit.point == a) && !(hit.point == b)) is_simple = false;
    }
    if (!is_simple) continue;
    ++simple;
    CHECK_FALSE(verify_shortcut_set(poly, anchor_shortcut_set(poly, {chord})).is_shortcut_set);
  }
  CHECK(simple >= 10);
}

TEST_CASE("polygon families") {
  auto sq = polygon_scn(fixtures::square1());
  CHECK(sq.scn == 2);
  CHECK(sq.construction.set.size() == 2);
  CHECK(sq.construction.new_d < 2.0 - kTau);

  auto tri = polygon_scn(fixtures::tri1());
  CHECK(tri.scn == 2);
  CHECK(tri.construction.new_d < 1.5 - kTau);

  auto pocket = polygon_scn(fixtures::pocket1());
  CHECK(pocket.scn == 1);
  REQUIRE(pocket.construction.set.size() == 1);
  const Segment& s = pocket.construction.set.segments[0];
  bool at_hull_vertex = s.a() == Point(4, 0) || s.a() == Point(0, 4) || s.b() == Point(4, 0) || s.b() == Point(0, 4);
  CHECK(at_hull_vertex);
  CHECK(rebuilt_diameter(fixtures::pocket1(), pocket.construction.set) < pocket.construction.old_d - kTau);

  auto ell = polygon_shortcut(fixtures::lshape());
  CHECK(ell.new_d < ell.old_d - kTau);

  CHECK(code_of([] { polygon_shortcut(fixtures::square1()); }) == ErrorCode::NotNonConvex);
  CHECK(code_of([] { polygon_scn(fixtures::star5()); }) == ErrorCode::NotACycle);
}

TEST_CASE("k4 shortcut") {
  auto k4 = k4_shortcut(fixtures::k4a());
  REQUIRE(k4.set.size() == 1);
  CHECK(k4.new_d < k4.old_d - kTau);

  Network centroid = fixtures::make({Point(0, 0), Point(1, 0), fixtures::pt(0.5, std::sqrt(3.0) / 2),
                                     Point(Rational(1, 2), Rational(3, 10))},
                                    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  auto c = k4_shortcut(centroid);
  CHECK(c.new_d < c.old_d - kTau);

  CHECK(code_of([] { k4_shortcut(fixtures::square1()); }) == ErrorCode::NotK4);
}

TEST_CASE("random polygon constructions verify") {
  std::mt19937_64 rng(43);
  for (int k = 0; k < 8; ++k) {
    bool convex = k % 2 == 0;
    Network poly = fixtures::random_polygon(rng, 5 + static_cast<int>(rng() % 4), convex);
    auto result = polygon_scn(poly);
    CHECK(result.scn == (convex ? 2 : 1));
    CHECK(rebuilt_diameter(poly, result.construction.set) < result.construction.old_d - kTau);
  }
}
