#include "locus/geom.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "locus/error.hpp"

namespace locus {

double tolerance(double a, double b) {
  return kTau * std::max({1.0, std::abs(a), std::abs(b)});
}

bool approx_eq(double a, double b) { return std::abs(a - b) <= tolerance(a, b); }

bool definitely_less(double a, double b) { return a < b - tolerance(a, b); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto fail = [&]() -> Rational {
    throw Error(ErrorCode::InvalidInput, "malformed coordinate '" + s + "'");
  };
  if (s.empty()) return fail();
  if (s.find('/') != std::string::npos) {
    Rational q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0) return fail();
    q.canonicalize();
    return q;
  }
  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') {
    negative = s[i] == '-';
    ++i;
  }
  std::string digits;
  long scale = 0;
  bool seen_digit = false;
  bool seen_dot = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_dot) ++scale;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!seen_digit) return fail();
  long exponent = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') return fail();
    ++i;
    std::string exp_text = s.substr(i);
    if (exp_text.empty()) return fail();
    std::size_t used = 0;
    try {
      exponent = std::stol(exp_text, &used);
    } catch (const std::exception&) {
      return fail();
    }
    if (used != exp_text.size() || std::abs(exponent) > 4000) return fail();
  }
  mpz_class numerator(digits, 10);
  if (negative) numerator = -numerator;
  long shift = exponent - scale;
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(shift)));
  Rational value = shift >= 0 ? Rational(numerator * power) : Rational(numerator, power);
  value.canonicalize();
  return value;
}

std::string format_rational(const Rational& value) {
  mpz_class den = value.get_den();
  unsigned long twos = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(2).get_mpz_t());
  unsigned long fives = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(5).get_mpz_t());
  if (den != 1) return value.get_str(10);
  unsigned long places = std::max(twos, fives);
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, places);
  mpz_class scaled = value.get_num() * power / value.get_den();
  bool negative = scaled < 0;
  std::string digits = mpz_class(abs(scaled)).get_str(10);
  if (places > 0) {
    if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
    digits.insert(digits.size() - places, ".");
  }
  return negative ? "-" + digits : digits;
}

Rational to_rational(double value) {
  Rational q(value);
  q.canonicalize();
  return q;
}

double euclid(const Point& a, const Point& b) {
  return std::hypot(a.xd() - b.xd(), a.yd() - b.yd());
}

int orient(const Point& p, const Point& q, const Point& r) {
  // Floating filter: the bound exceeds the rounding error of the converted
  // inputs and of the expression by a wide margin.
  const double px = p.xd(), py = p.yd(), qx = q.xd(), qy = q.yd(), rx = r.xd(), ry = r.yd();
  const double det = (qx - px) * (ry - py) - (qy - py) * (rx - px);
  const double mag = (std::abs(qx) + std::abs(px)) * (std::abs(ry) + std::abs(py)) +
                     (std::abs(qy) + std::abs(py)) * (std::abs(rx) + std::abs(px));
  if (det > 1e-14 * mag) return 1;
  if (det < -1e-14 * mag) return -1;
  Rational area = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
  return sgn(area);
}

Segment::Segment(Point a, Point b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_ == b_) throw Error(ErrorCode::ZeroLength, "segment endpoints coincide");
}

Point Segment::at(const Rational& t) const {
  return Point(a_.x + t * (b_.x - a_.x), a_.y + t * (b_.y - a_.y));
}

bool point_on_segment(const Point& p, const Segment& s) {
  if (orient(s.a(), s.b(), p) != 0) return false;
  return std::min(s.a().x, s.b().x) <= p.x && p.x <= std::max(s.a().x, s.b().x) &&
         std::min(s.a().y, s.b().y) <= p.y && p.y <= std::max(s.a().y, s.b().y);
}

Rational param_on_segment(const Point& p, const Segment& s) {
  Rational dx = s.b().x - s.a().x;
  Rational dy = s.b().y - s.a().y;
  Rational t = (abs(dx) >= abs(dy)) ? Rational((p.x - s.a().x) / dx) : Rational((p.y - s.a().y) / dy);
  t.canonicalize();
  return t;
}

Intersection seg_intersect(const Segment& s1, const Segment& s2) {
  const Point& a = s1.a();
  const Point& b = s1.b();
  const Point& c = s2.a();
  const Point& d = s2.b();
  int o1 = orient(a, b, c);
  int o2 = orient(a, b, d);
  int o3 = orient(c, d, a);
  int o4 = orient(c, d, b);
  Intersection result;

  if (o1 == 0 && o2 == 0) {
    // Collinear: intersect parameter intervals along s1.
    Rational tc = param_on_segment(c, s1);
    Rational td = param_on_segment(d, s1);
    Rational lo = std::max(Rational(0), std::min(tc, td));
    Rational hi = std::min(Rational(1), std::max(tc, td));
    if (lo > hi) return result;
    if (lo == hi) {
      result.kind = Intersection::Kind::Point;
      result.point = s1.at(lo);
      return result;
    }
    result.kind = Intersection::Kind::Overlap;
    result.overlap.emplace(s1.at(lo), s1.at(hi));
    return result;
  }
  if (o1 * o2 > 0 || o3 * o4 > 0) return result;

  result.kind = Intersection::Kind::Point;
  if (o1 == 0) {
    result.point = c;
  } else if (o2 == 0) {
    result.point = d;
  } else if (o3 == 0) {
    result.point = a;
  } else if (o4 == 0) {
    result.point = b;
  } else {
    Rational rx = b.x - a.x, ry = b.y - a.y;
    Rational sx = d.x - c.x, sy = d.y - c.y;
    Rational denom = rx * sy - ry * sx;
    Rational t = ((c.x - a.x) * sy - (c.y - a.y) * sx) / denom;
    result.point = s1.at(t);
  }
  return result;
}

bool HullPolygon::contains(const Point& p) const {
  if (vertices.size() == 1) return vertices[0] == p;
  if (vertices.size() == 2) return point_on_segment(p, Segment(vertices[0], vertices[1]));
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (orient(vertices[i], vertices[(i + 1) % vertices.size()], p) < 0) return false;
  }
  return true;
}

HullPolygon convex_hull(std::vector<Point> points) {
  if (points.empty()) throw Error(ErrorCode::EmptyInput, "convex hull of no points");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  HullPolygon hull;
  if (points.size() <= 2) {
    hull.vertices = points;
    return hull;
  }
  // Andrew's monotone chain; popping on <= 0 drops collinear points.
  std::vector<Point> chain(2 * points.size());
  std::size_t k = 0;
  for (const auto& p : points) {
    while (k >= 2 && orient(chain[k - 2], chain[k - 1], p) <= 0) --k;
    chain[k++] = p;
  }
  for (std::size_t i = points.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && orient(chain[k - 2], chain[k - 1], points[i]) <= 0) --k;
    chain[k++] = points[i];
  }
  chain.resize(k - 1);
  hull.vertices = std::move(chain);
  return hull;
}

double hull_diameter(std::span<const Point> points) {
  if (points.size() < 2) throw Error(ErrorCode::EmptyInput, "hull diameter needs two points");
  HullPolygon hull = convex_hull(std::vector<Point>(points.begin(), points.end()));
  double best = 0.0;
  for (std::size_t i = 0; i < hull.vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < hull.vertices.size(); ++j) {
      best = std::max(best, euclid(hull.vertices[i], hull.vertices[j]));
    }
  }
  return best;
}

bool line_meets_hull(const Line& line, const HullPolygon& hull) {
  bool left = false;
  bool right = false;
  for (const auto& v : hull.vertices) {
    int o = orient(line.origin, line.through, v);
    if (o == 0) return true;
    (o > 0 ? left : right) = true;
    if (left && right) return true;
  }
  return false;
}

}  // namespace locus
