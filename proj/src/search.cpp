#include "locus/search.hpp"

#include <algorithm>
#include <memory>
#include <cmath>
#include <queue>
#include <set>

#include "locus/error.hpp"
#include "locus/metrics.hpp"

namespace locus {

std::optional<Segment> candidate_segment(const Network& net, const ParamPoint& p) {
  Point a = net.edge_segment(p.e).at(to_rational(p.t));
  Point b = net.edge_segment(p.e2).at(to_rational(p.t2));
  if (a == b) return std::nullopt;
  return Segment(std::move(a), std::move(b));
}

std::optional<double> evaluate_candidate(const Network& net, const Segment& s) {
  try {
    return diameter_value(insert_segment(net, s));
  } catch (const Error&) {
    return std::nullopt;
  }
}

bool is_simple_segment(const Network& net, const Segment& s) {
  if (s.a() == s.b()) return false;
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    auto hit = seg_intersect(s, net.edge_segment(static_cast<int>(e)));
    if (hit.kind == Intersection::Kind::Overlap) return false;
    if (hit.kind == Intersection::Kind::Point && !(hit.point == s.a()) && !(hit.point == s.b())) return false;
  }
  return true;
}

namespace {

struct XY {
  double x = 0.0;
  double y = 0.0;
};

double cross(const XY& o, const XY& a, const XY& b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

std::vector<XY> hull_xy(std::vector<XY> pts) {
  std::sort(pts.begin(), pts.end(), [](const XY& a, const XY& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  if (pts.size() < 3) return pts;
  std::vector<XY> h(2 * pts.size());
  std::size_t k = 0;
  for (const XY& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lo = k + 1; i-- > 0;) {
    while (k >= lo && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

// Parameter interval of a->b inside a CCW convex polygon (Cyrus-Beck).
std::optional<std::pair<double, double>> clip(const XY& a, const XY& b, const std::vector<XY>& poly) {
  double lo = 0.0, hi = 1.0;
  const XY d{b.x - a.x, b.y - a.y};
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const XY& p = poly[i];
    const XY& q = poly[(i + 1) % poly.size()];
    double num = (q.x - p.x) * (a.y - p.y) - (q.y - p.y) * (a.x - p.x);
    double den = (q.x - p.x) * d.y - (q.y - p.y) * d.x;
    // inside: num + s * den >= 0
    if (den == 0.0) {
      if (num < 0.0) return std::nullopt;
    } else if (den > 0.0) {
      lo = std::max(lo, -num / den);
    } else {
      hi = std::min(hi, -num / den);
    }
    if (lo > hi) return std::nullopt;
  }
  return std::make_pair(lo, hi);
}

// Some point of g lies strictly inside the hull; exact. Segments along a
// hull side only touch it.
bool meets_interior(const Segment& g, const HullPolygon& h) {
  const std::size_t n = h.vertices.size();
  if (n < 3) return false;
  const Rational dx = g.b().x - g.a().x, dy = g.b().y - g.a().y;
  std::vector<Rational> num(n), den(n);
  Rational lo = 0, hi = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = h.vertices[i];
    const Point& q = h.vertices[(i + 1) % n];
    num[i] = (q.x - p.x) * (g.a().y - p.y) - (q.y - p.y) * (g.a().x - p.x);
    den[i] = (q.x - p.x) * dy - (q.y - p.y) * dx;
    if (den[i] == 0) {
      if (num[i] <= 0) return false;
    } else if (den[i] > 0) {
      lo = std::max<Rational>(lo, -num[i] / den[i]);
    } else {
      hi = std::min<Rational>(hi, -num[i] / den[i]);
    }
    if (lo >= hi) return false;
  }
  const Rational mid = (lo + hi) / 2;
  for (std::size_t i = 0; i < n; ++i) {
    if (num[i] + mid * den[i] <= 0) return false;
  }
  return true;
}

double point_segment_distance(const XY& p, const XY& a, const XY& b) {
  double dx = b.x - a.x, dy = b.y - a.y;
  double len2 = dx * dx + dy * dy;
  double s = len2 > 0.0 ? std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0) : 0.0;
  return std::hypot(p.x - a.x - s * dx, p.y - a.y - s * dy);
}

double segment_distance(const XY& a, const XY& b, const XY& c, const XY& d) {
  double o1 = cross(a, b, c), o2 = cross(a, b, d), o3 = cross(c, d, a), o4 = cross(c, d, b);
  if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0))) return 0.0;
  return std::min({point_segment_distance(a, c, d), point_segment_distance(b, c, d), point_segment_distance(c, a, b),
                   point_segment_distance(d, a, b)});
}

// A pair of original locus points at distance close to d, with distances
// from each endpoint to every vertex.
struct Witness {
  LocusPoint w, z;
  double dwz = 0.0;
  std::vector<double> to_w, to_z;
  double wx = 0.0, wy = 0.0, zx = 0.0, zy = 0.0;
};

struct Piece {
  int edge = 0;
  double s0 = 0.0, s1 = 0.0;
  XY a, b;
};

using Witnesses = std::vector<Witness>;

struct Cell {
  int pair = 0;
  double t0 = 0.0, t1 = 1.0, u0 = 0.0, u1 = 1.0;
  double lb = 0.0;
  std::size_t seq = 0;
  std::size_t pool = 0;  // global witness count when lb was computed
  // Diametral pairs at the parent's centre; tight near this cell.
  std::shared_ptr<const Witnesses> local;
};

struct CellOrder {
  bool operator()(const Cell& x, const Cell& y) const {
    if (x.lb != y.lb) return x.lb > y.lb;
    return x.seq > y.seq;
  }
};

class Searcher {
 public:
  Searcher(const Network& net, const SearchOptions& opt) : net_(net), opt_(opt), oracle_(net) {
    if (!is_connected(net)) throw Error(ErrorCode::Disconnected, "search needs a connected network");
    DiameterReport rep = continuous_diameter(net, oracle_);
    d_ = rep.d;
    gap_ = opt.gap > 0.0 ? opt.gap : 1e-6 * d_;
    res_ = opt.resolution > 0.0 ? opt.resolution : 1e-3 * net.max_edge_length();
    if (!(gap_ > kTau)) throw Error(ErrorCode::ParameterOutOfRange, "gap must exceed the tolerance");
    threshold_ = d_ - gap_;
    for (const Edge& e : net.edges()) {
      double mx = std::max(std::abs(net.pos(e.u).xd()), std::abs(net.pos(e.u).yd()));
      scale_ = std::max(scale_, mx);
    }
    xy_.reserve(net.vertex_count());
    for (std::size_t i = 0; i < net.vertex_count(); ++i) xy_.push_back({net.pos(static_cast<int>(i)).xd(), net.pos(static_cast<int>(i)).yd()});
    for (const DiametralPair& p : rep.pairs) add_witness(witnesses_, p.p, p.q, kMaxWitnesses);
    seed_antipodes();
    for (std::size_t e = 0; e < net.edge_count(); ++e) {
      for (std::size_t f = e + 1; f < net.edge_count(); ++f) pairs_.push_back({static_cast<int>(e), static_cast<int>(f)});
    }
  }

  SearchResult run() {
    SearchResult out;
    out.old_d = d_;
    out.new_d = d_;
    out.gap = gap_;
    out.resolution = res_;
    best_ = d_;
    double deficiency = -kInfinity;
    std::priority_queue<Cell, std::vector<Cell>, CellOrder> open;
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      Cell c;
      c.pair = static_cast<int>(i);
      c.lb = lower_bound(c);
      c.pool = witnesses_.size();
      c.seq = seq_++;
      if (c.lb > threshold_) {
        ++stats_.pruned;
        deficiency = std::max(deficiency, d_ - c.lb);
        emit(c, SearchCell::Status::Pruned);
      } else {
        open.push(c);
      }
    }
    while (!open.empty()) {
      if (stats_.cells >= opt_.max_cells) {
        out.exhausted = true;
        while (!open.empty()) {
          deficiency = std::max(deficiency, d_ - open.top().lb);
          open.pop();
        }
        break;
      }
      Cell c = open.top();
      open.pop();
      ++stats_.cells;
      report(open.size());
      if (c.pool != witnesses_.size()) c.lb = std::max(c.lb, lower_bound(c));
      if (c.lb > threshold_) {
        ++stats_.pruned;
        deficiency = std::max(deficiency, d_ - c.lb);
        emit(c, SearchCell::Status::Pruned);
        continue;
      }
      if (opt_.simple && blocked(c)) {
        ++stats_.infeasible;
        emit(c, SearchCell::Status::Infeasible);
        continue;
      }
      const auto [e, f] = pairs_[c.pair];
      const double le = net_.edges()[e].length, lf = net_.edges()[f].length;
      const double side_e = (c.t1 - c.t0) * le, side_f = (c.u1 - c.u0) * lf;
      ParamPoint centre{e, f, 0.5 * (c.t0 + c.t1), 0.5 * (c.u0 + c.u1)};
      const bool leaf = std::max(side_e, side_f) < res_;
      auto local = std::make_shared<Witnesses>();
      auto value = evaluate(centre, leaf ? nullptr : local.get());
      if (value && *value <= d_ - gap_) {
        out.found = true;
        out.segment = candidate_segment(net_, centre);
        out.at = centre;
        out.new_d = *value;
        out.certified_gap = gap_;
        out.stats = stats_;
        emit(c, SearchCell::Status::Feasible);
        return out;
      }
      if (leaf) {
        ++stats_.leaves;
        std::optional<double> lower;
        if (may_cross(c)) {
          // Crossings can appear, vanish or slide fast inside the box, so
          // the centre says nothing about the rest; the witness bound does.
          lower = c.lb;
        } else if (value) {
          lower = *value - 2.0 * (side_e + side_f);
        } else {
          for (double t : {c.t0, c.t1}) {
            for (double u : {c.u0, c.u1}) {
              auto v = evaluate({e, f, t, u});
              if (v) lower = std::max(lower.value_or(-kInfinity), *v - 4.0 * (side_e + side_f));
            }
          }
        }
        if (lower) {
          deficiency = std::max(deficiency, d_ - *lower);
          emit(c, SearchCell::Status::Covered);
        } else {
          ++stats_.infeasible;
          emit(c, SearchCell::Status::Infeasible);
        }
        continue;
      }
      std::vector<Cell> kids;
      const double tm = centre.t, um = centre.t2;
      const bool split_e = side_e >= res_, split_f = side_f >= res_;
      for (int i = 0; i < (split_e ? 2 : 1); ++i) {
        for (int j = 0; j < (split_f ? 2 : 1); ++j) {
          Cell k = c;
          if (!local->empty()) k.local = local;
          if (split_e) (i == 0 ? k.t1 : k.t0) = tm;
          if (split_f) (j == 0 ? k.u1 : k.u0) = um;
          kids.push_back(k);
        }
      }
      for (Cell& k : kids) {
        k.lb = std::max(c.lb, lower_bound(k));
        k.pool = witnesses_.size();
        k.seq = seq_++;
        if (k.lb > threshold_) {
          ++stats_.pruned;
          deficiency = std::max(deficiency, d_ - k.lb);
          emit(k, SearchCell::Status::Pruned);
        } else {
          open.push(k);
        }
      }
    }
    out.new_d = best_;
    out.certified_gap = std::max(gap_, deficiency);
    out.stats = stats_;
    report(0, true);
    return out;
  }

 private:
  // Leaves use the value only; inner cells also harvest witness pairs.
  std::optional<double> evaluate(const ParamPoint& p, Witnesses* harvest = nullptr) {
    auto s = candidate_segment(net_, p);
    if (!s) return std::nullopt;
    if (opt_.simple && !is_simple_segment(net_, *s)) return std::nullopt;
    Network aug;
    try {
      aug = insert_segment(net_, *s);
    } catch (const Error&) {
      return std::nullopt;
    }
    ++stats_.evaluations;
    if (!harvest) {
      double v = diameter_value(aug);
      best_ = std::min(best_, v);
      return v;
    }
    DiameterReport rep = continuous_diameter(aug);
    best_ = std::min(best_, rep.d);
    for (const DiametralPair& dp : rep.pairs) {
      // Any pair of original locus points is a valid witness, so a nearby
      // projection suffices; points on the new segment are dropped.
      const double snap = 1e-9 * (1.0 + scale_);
      auto w = project_to_locus(net_, locus_x(aug, dp.p), locus_y(aug, dp.p), snap);
      auto z = project_to_locus(net_, locus_x(aug, dp.q), locus_y(aug, dp.q), snap);
      if (!w || !z) continue;
      add_witness(witnesses_, *w, *z, kMaxWitnesses);
      add_witness(*harvest, *w, *z, kMaxLocal);
    }
    return rep.d;
  }

  std::vector<double> distances_from(const LocusPoint& p) const {
    const Edge& e = net_.edges()[p.edge];
    std::vector<double> out(net_.vertex_count());
    for (std::size_t v = 0; v < out.size(); ++v) {
      out[v] = std::min(p.t * e.length + oracle_(e.u, static_cast<int>(v)),
                        (1.0 - p.t) * e.length + oracle_(e.v, static_cast<int>(v)));
    }
    return out;
  }

  void add_witness(Witnesses& pool, const LocusPoint& w, const LocusPoint& z, std::size_t cap) const {
    if (pool.size() >= cap) return;
    double dwz = locus_distance(net_, oracle_, w, z);
    if (!(dwz > threshold_)) return;
    Witness x;
    x.w = w;
    x.z = z;
    x.dwz = dwz;
    x.wx = locus_x(net_, w);
    x.wy = locus_y(net_, w);
    x.zx = locus_x(net_, z);
    x.zy = locus_y(net_, z);
    const double near = 1e-9 * (1.0 + scale_);
    for (const Witness& o : pool) {
      bool same = std::hypot(o.wx - x.wx, o.wy - x.wy) < near && std::hypot(o.zx - x.zx, o.zy - x.zy) < near;
      bool swapped = std::hypot(o.wx - x.zx, o.wy - x.zy) < near && std::hypot(o.zx - x.wx, o.zy - x.wy) < near;
      if (same || swapped) return;
    }
    x.to_w = distances_from(w);
    x.to_z = distances_from(z);
    pool.push_back(std::move(x));
  }

  // Farthest points of evenly spaced samples; the argmax on each edge solves
  // a + s = b + L - s.
  void seed_antipodes() {
    constexpr int kSamples = 4;
    for (std::size_t e = 0; e < net_.edge_count(); ++e) {
      for (int i = 0; i <= kSamples; ++i) {
        LocusPoint w{static_cast<int>(e), static_cast<double>(i) / kSamples};
        std::vector<double> to_w = distances_from(w);
        LocusPoint far{};
        double best = -1.0;
        for (std::size_t g = 0; g < net_.edge_count(); ++g) {
          const Edge& eg = net_.edges()[g];
          double s = std::clamp((to_w[eg.v] + eg.length - to_w[eg.u]) / 2.0, 0.0, eg.length);
          LocusPoint z{static_cast<int>(g), eg.length > 0.0 ? s / eg.length : 0.0};
          double dz = locus_distance(net_, oracle_, w, z);
          if (dz > best) {
            best = dz;
            far = z;
          }
        }
        add_witness(witnesses_, w, far, kMaxWitnesses);
      }
    }
  }

  double witness_to(const std::vector<double>& to, const LocusPoint& w, const Piece& p) const {
    const Edge& e = net_.edges()[p.edge];
    if (w.edge == p.edge && w.t >= p.s0 && w.t <= p.s1) return 0.0;
    auto at = [&](double s) {
      if (w.edge == p.edge) return std::abs(s - w.t) * e.length;
      return std::min(to[e.u] + s * e.length, to[e.v] + (1.0 - s) * e.length);
    };
    return std::min(at(p.s0), at(p.s1));
  }

  XY at(int edge, double t) const {
    const Edge& e = net_.edges()[edge];
    return {xy_[e.u].x + t * (xy_[e.v].x - xy_[e.u].x), xy_[e.u].y + t * (xy_[e.v].y - xy_[e.u].y)};
  }

  std::vector<XY> sweep_hull(const Cell& c, double mu) const {
    const auto [e, f] = pairs_[c.pair];
    std::vector<XY> corners;
    for (const XY& p : {at(e, c.t0), at(e, c.t1), at(f, c.u0), at(f, c.u1)}) {
      for (double dx : {-mu, mu}) {
        for (double dy : {-mu, mu}) corners.push_back({p.x + dx, p.y + dy});
      }
    }
    return hull_xy(std::move(corners));
  }

  // Some edge other than the hosts enters the interior of the region swept
  // by the cell's candidates, so some candidate may cross it.
  bool may_cross(const Cell& c) const {
    const auto [e, f] = pairs_[c.pair];
    const double mu = 1e-9 * (1.0 + scale_);
    std::vector<XY> poly = sweep_hull(c, mu);
    std::optional<HullPolygon> exact;
    for (std::size_t g = 0; g < net_.edge_count(); ++g) {
      if (static_cast<int>(g) == e || static_cast<int>(g) == f) continue;
      const Edge& eg = net_.edges()[g];
      if (!clip(xy_[eg.u], xy_[eg.v], poly)) continue;
      if (!exact) {
        const Segment se = net_.edge_segment(e), sf = net_.edge_segment(f);
        exact = convex_hull({se.at(to_rational(c.t0)), se.at(to_rational(c.t1)), sf.at(to_rational(c.u0)),
                             sf.at(to_rational(c.u1))});
      }
      if (meets_interior(net_.edge_segment(static_cast<int>(g)), *exact)) return true;
    }
    return false;
  }

  // Every segment of the cell lies in the hull of its endpoint intervals;
  // a path using the segment enters and leaves it at locus points inside
  // that hull. Valid for every candidate of the cell.
  double lower_bound(const Cell& c) const {
    const double mu = 1e-9 * (1.0 + scale_);
    std::vector<XY> poly = sweep_hull(c, mu);
    std::vector<Piece> pieces;
    for (std::size_t g = 0; g < net_.edge_count(); ++g) {
      const Edge& eg = net_.edges()[g];
      auto range = clip(xy_[eg.u], xy_[eg.v], poly);
      if (!range) continue;
      Piece p;
      p.edge = static_cast<int>(g);
      p.s0 = range->first;
      p.s1 = range->second;
      p.a = at(p.edge, p.s0);
      p.b = at(p.edge, p.s1);
      pieces.push_back(p);
    }
    const std::size_t n = pieces.size();
    std::vector<double> gaps(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        gaps[i * n + j] = gaps[j * n + i] = segment_distance(pieces[i].a, pieces[i].b, pieces[j].a, pieces[j].b);
      }
    }
    double lb = -kInfinity;
    std::vector<double> mw(n), mz(n);
    auto consider = [&](const Witness& x) {
      for (std::size_t i = 0; i < n; ++i) {
        mw[i] = witness_to(x.to_w, x.w, pieces[i]);
        mz[i] = witness_to(x.to_z, x.z, pieces[i]);
      }
      double via = x.dwz;
      for (std::size_t i = 0; i < n && via > lb; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i != j) via = std::min(via, mw[i] + gaps[i * n + j] + mz[j]);
        }
      }
      lb = std::max(lb, via);
    };
    if (c.local) {
      for (const Witness& x : *c.local) consider(x);
    }
    for (const Witness& x : witnesses_) consider(x);
    // Pieces of width mu can undercut a true value by at most a few mu.
    return lb - 8.0 * mu;
  }

  // Simple search only: an edge strictly separating the two endpoint
  // intervals and crossed by all four corner segments blocks every candidate.
  bool blocked(const Cell& c) const {
    const auto [e, f] = pairs_[c.pair];
    const Segment se = net_.edge_segment(e), sf = net_.edge_segment(f);
    const std::array<Point, 2> ps = {se.at(to_rational(c.t0)), se.at(to_rational(c.t1))};
    const std::array<Point, 2> qs = {sf.at(to_rational(c.u0)), sf.at(to_rational(c.u1))};
    for (std::size_t g = 0; g < net_.edge_count(); ++g) {
      if (static_cast<int>(g) == e || static_cast<int>(g) == f) continue;
      const Segment sg = net_.edge_segment(static_cast<int>(g));
      int o0 = orient(sg.a(), sg.b(), ps[0]), o1 = orient(sg.a(), sg.b(), ps[1]);
      int o2 = orient(sg.a(), sg.b(), qs[0]), o3 = orient(sg.a(), sg.b(), qs[1]);
      if (o0 == 0 || o0 != o1 || o2 != o3 || o2 != -o0) continue;
      bool all = true;
      for (const Point& p : ps) {
        for (const Point& q : qs) {
          if (seg_intersect(Segment(p, q), sg).kind == Intersection::Kind::Empty) all = false;
        }
      }
      if (all) return true;
    }
    return false;
  }

  void emit(const Cell& c, SearchCell::Status status) const {
    if (!opt_.on_cell) return;
    SearchCell out;
    out.e = pairs_[c.pair].first;
    out.e2 = pairs_[c.pair].second;
    out.t0 = c.t0;
    out.t1 = c.t1;
    out.u0 = c.u0;
    out.u1 = c.u1;
    out.lower_bound = c.lb;
    out.status = status;
    opt_.on_cell(out);
  }

  void report(std::size_t open, bool final = false) {
    if (!opt_.progress) return;
    if (!final && (opt_.progress_every == 0 || stats_.cells % opt_.progress_every != 0)) return;
    SearchProgress p = stats_;
    p.open = open;
    p.d = d_;
    p.best_new_d = best_;
    opt_.progress(p);
  }

  static constexpr std::size_t kMaxWitnesses = 64;
  static constexpr std::size_t kMaxLocal = 16;

  const Network& net_;
  SearchOptions opt_;
  DistanceOracle oracle_;
  double d_ = 0.0, gap_ = 0.0, res_ = 0.0, threshold_ = 0.0, best_ = 0.0, scale_ = 1.0;
  std::vector<XY> xy_;
  std::vector<Witness> witnesses_;
  std::vector<std::pair<int, int>> pairs_;
  SearchProgress stats_;
  std::size_t seq_ = 0;
};

}  // namespace

SearchResult find_shortcut(const Network& net, SearchOptions options) {
  return Searcher(net, options).run();
}

SearchResult find_simple_shortcut(const Network& net, SearchOptions options) {
  options.simple = true;
  return Searcher(net, options).run();
}

GridResult grid_shortcut_oracle(const Network& net, int k) {
  if (k < 2) throw Error(ErrorCode::ParameterOutOfRange, "grid needs k >= 2");
  GridResult out;
  out.old_d = diameter_value(net);
  out.new_d = out.old_d;
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    for (std::size_t f = e + 1; f < net.edge_count(); ++f) {
      for (int i = 0; i <= k; ++i) {
        for (int j = 0; j <= k; ++j) {
          ParamPoint p{static_cast<int>(e), static_cast<int>(f), static_cast<double>(i) / k,
                       static_cast<double>(j) / k};
          auto s = candidate_segment(net, p);
          if (!s) continue;
          auto v = evaluate_candidate(net, *s);
          if (!v) continue;
          ++out.evaluated;
          if (*v < out.new_d) {
            out.new_d = *v;
            out.segment = s;
          }
        }
      }
    }
  }
  return out;
}

namespace {

// Candidate lines: vertex pairs across hulls, then hull edges, then the
// remaining same-hull pairs; each kept if it stabs every hull.
std::vector<Line> stabbing_candidates(const std::vector<HullPolygon>& hulls, bool first_only) {
  if (hulls.empty()) throw Error(ErrorCode::EmptyInput, "no hulls");
  std::vector<std::pair<Point, std::size_t>> verts;
  for (std::size_t h = 0; h < hulls.size(); ++h) {
    for (const Point& p : hulls[h].vertices) verts.emplace_back(p, h);
  }
  std::vector<Line> out;
  std::set<std::pair<Point, Point>> seen;
  auto consider = [&](const Point& a, const Point& b) {
    if (a == b) return false;
    auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    if (!seen.insert(key).second) return false;
    Line line{a, b};
    for (const HullPolygon& h : hulls) {
      if (!line_meets_hull(line, h)) return false;
    }
    out.push_back(line);
    return first_only;
  };
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (std::size_t j = i + 1; j < verts.size(); ++j) {
      if (verts[i].second != verts[j].second && consider(verts[i].first, verts[j].first)) return out;
    }
  }
  for (const HullPolygon& h : hulls) {
    const auto& v = h.vertices;
    for (std::size_t i = 0; i + 1 < v.size() || (v.size() > 2 && i < v.size()); ++i) {
      if (consider(v[i], v[(i + 1) % v.size()])) return out;
    }
  }
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (std::size_t j = i + 1; j < verts.size(); ++j) {
      if (verts[i].second == verts[j].second && consider(verts[i].first, verts[j].first)) return out;
    }
  }
  if (out.empty() && !verts.empty()) {
    // Every hull vertex coincides: any line through the point.
    bool single = std::all_of(verts.begin(), verts.end(), [&](const auto& v) { return v.first == verts[0].first; });
    if (single) {
      const Point& p = verts[0].first;
      out.push_back(Line{p, Point(p.x + 1, p.y)});
    }
  }
  return out;
}

Point along(const Line& l, const Rational& lambda) {
  return Point(l.origin.x + lambda * (l.through.x - l.origin.x), l.origin.y + lambda * (l.through.y - l.origin.y));
}

// Parameters where the line meets a component's locus; collinear edges
// contribute their endpoints.
std::vector<Rational> line_hits(const Network& net, const Line& line, const std::vector<int>& edges,
                                const std::vector<int>& isolated) {
  const Rational dx = line.through.x - line.origin.x, dy = line.through.y - line.origin.y;
  auto cr = [](const Rational& ax, const Rational& ay, const Rational& bx, const Rational& by) {
    return Rational(ax * by - ay * bx);
  };
  auto proj = [&](const Point& p) {
    return Rational(((p.x - line.origin.x) * dx + (p.y - line.origin.y) * dy) / (dx * dx + dy * dy));
  };
  std::vector<Rational> hits;
  for (int e : edges) {
    const Segment s = net.edge_segment(e);
    const Rational ex = s.b().x - s.a().x, ey = s.b().y - s.a().y;
    const Rational ox = s.a().x - line.origin.x, oy = s.a().y - line.origin.y;
    Rational den = cr(dx, dy, ex, ey);
    if (den == 0) {
      if (cr(ox, oy, dx, dy) == 0) {
        hits.push_back(proj(s.a()));
        hits.push_back(proj(s.b()));
      }
      continue;
    }
    Rational mu = cr(ox, oy, dx, dy) / den;
    if (mu < 0 || mu > 1) continue;
    hits.push_back(cr(ox, oy, ex, ey) / den);
  }
  for (int v : isolated) {
    const Point& p = net.pos(v);
    if (cr(p.x - line.origin.x, p.y - line.origin.y, dx, dy) == 0) hits.push_back(proj(p));
  }
  return hits;
}

}  // namespace

std::optional<Line> stabbing_line(const std::vector<HullPolygon>& hulls) {
  auto lines = stabbing_candidates(hulls, true);
  if (lines.empty()) return std::nullopt;
  return lines.front();
}

ScnOneResult scn_is_one_disconnected(const Network& net) {
  auto comps = components(net);
  if (comps.size() < 2) throw Error(ErrorCode::Connected, "network is connected");
  const std::size_t k = comps.size();
  std::vector<HullPolygon> hulls;
  std::vector<std::vector<int>> edges(k), isolated(k);
  std::vector<int> comp_of(net.vertex_count());
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<Point> pts;
    for (int id : comps[c]) {
      int v = net.index_of(id);
      comp_of[v] = static_cast<int>(c);
      pts.push_back(net.pos(v));
      if (net.degree(v) == 0) isolated[c].push_back(v);
    }
    hulls.push_back(convex_hull(std::move(pts)));
  }
  for (std::size_t e = 0; e < net.edge_count(); ++e) edges[comp_of[net.edges()[e].u]].push_back(static_cast<int>(e));

  ScnOneResult out;
  for (const Line& line : stabbing_candidates(hulls, false)) {
    std::vector<Rational> lo(k), hi(k);
    bool all = true;
    for (std::size_t c = 0; c < k && all; ++c) {
      auto hits = line_hits(net, line, edges[c], isolated[c]);
      if (hits.empty()) {
        all = false;
        break;
      }
      auto [mn, mx] = std::minmax_element(hits.begin(), hits.end());
      lo[c] = *mn;
      hi[c] = *mx;
    }
    if (!all) continue;
    Rational inner_a = *std::min_element(hi.begin(), hi.end()), inner_b = *std::max_element(lo.begin(), lo.end());
    Rational outer_a = *std::min_element(lo.begin(), lo.end()), outer_b = *std::max_element(hi.begin(), hi.end());
    for (auto [a, b] : {std::make_pair(inner_a, inner_b), std::make_pair(outer_a, outer_b)}) {
      if (a == b) continue;
      Segment s(along(line, a < b ? a : b), along(line, a < b ? b : a));
      try {
        if (is_connected(insert_segment(net, s))) {
          out.yes = true;
          out.witness = s;
          out.line = line;
          return out;
        }
      } catch (const Error&) {
      }
    }
  }
  return out;
}

}  // namespace locus
