#pragma once

// Exact planar primitives. Incidence predicates run over GMP rationals;
// metric quantities are plain doubles.

#include <gmpxx.h>

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace locus {

using Rational = mpq_class;

/// Global comparison tolerance for metric values.
inline constexpr double kTau = 1e-9;

/// Tolerance scaled to the magnitude of the operands (relative above 1).
double tolerance(double a, double b);
bool approx_eq(double a, double b);
/// a < b by more than tolerance.
bool definitely_less(double a, double b);

struct Point {
  Rational x;
  Rational y;

  Point() = default;
  Point(Rational px, Rational py) : x(std::move(px)), y(std::move(py)) {
    x.canonicalize();
    y.canonicalize();
  }
  Point(long px, long py) : x(px), y(py) {}

  double xd() const { return x.get_d(); }
  double yd() const { return y.get_d(); }

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const Point& a, const Point& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  }
};

/// Parses "12", "-0.25", "1e-3" or "p/q" into an exact rational.
Rational parse_rational(std::string_view text);
/// Terminating decimals print as decimals; everything else as "p/q".
std::string format_rational(const Rational& value);

/// Exact rational nearest-ish to a double (the double's exact binary value).
Rational to_rational(double value);

double euclid(const Point& a, const Point& b);

/// Sign of the signed area of (p, q, r): +1 left turn, 0 collinear, -1 right turn.
int orient(const Point& p, const Point& q, const Point& r);

class Segment {
 public:
  Segment(Point a, Point b);

  const Point& a() const { return a_; }
  const Point& b() const { return b_; }
  double length() const { return euclid(a_, b_); }
  /// a + t (b - a), exact.
  Point at(const Rational& t) const;

 private:
  Point a_;
  Point b_;
};

bool point_on_segment(const Point& p, const Segment& s);

struct Intersection {
  enum class Kind { Empty, Point, Overlap };
  Kind kind = Kind::Empty;
  Point point;                    // valid for Kind::Point
  std::optional<Segment> overlap;  // valid for Kind::Overlap
};

Intersection seg_intersect(const Segment& s1, const Segment& s2);

/// Parameter t with p = s.a + t (s.b - s.a); p must lie on the supporting line.
Rational param_on_segment(const Point& p, const Segment& s);

/// Counter-clockwise convex polygon without collinear triples. Degenerate
/// inputs give one point or the extreme pair of a collinear set.
struct HullPolygon {
  std::vector<Point> vertices;

  /// Closed containment (boundary counts), exact.
  bool contains(const Point& p) const;
};

HullPolygon convex_hull(std::vector<Point> points);

/// Max pairwise Euclidean distance (computed over the hull vertices).
double hull_diameter(std::span<const Point> points);

struct Line {
  Point origin;
  Point through;  // second point, distinct from origin
};

/// True if the line meets the closed convex hull, exact.
bool line_meets_hull(const Line& line, const HullPolygon& hull);

}  // namespace locus
