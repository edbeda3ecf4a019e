#include "locus/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <queue>

#include "locus/error.hpp"

namespace locus {

DistanceOracle::DistanceOracle(const Network& net)
    : n_(net.vertex_count()), dist_(n_ * n_, kInfinity), pred_(n_ * n_, -1) {
  lengths_.reserve(net.edge_count());
  for (const auto& e : net.edges()) lengths_.push_back(e.length);

  using Item = std::pair<double, int>;
  for (std::size_t src = 0; src < n_; ++src) {
    double* dist = &dist_[src * n_];
    int* pred = &pred_[src * n_];
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[src] = 0.0;
    heap.emplace(0.0, static_cast<int>(src));
    while (!heap.empty()) {
      auto [du, u] = heap.top();
      heap.pop();
      if (du > dist[u]) continue;
      for (int e : net.incident(u)) {
        int v = net.other(e, u);
        double alt = du + lengths_[e];
        if (alt < dist[v]) {
          dist[v] = alt;
          pred[v] = u;
          heap.emplace(alt, v);
        }
      }
    }
  }
  // Both Dijkstra directions may differ in the last bit; keep the matrix symmetric.
  for (std::size_t u = 0; u < n_; ++u) {
    for (std::size_t v = u + 1; v < n_; ++v) {
      double& a = dist_[u * n_ + v];
      double& b = dist_[v * n_ + u];
      a = b = std::min(a, b);
    }
  }
}

std::vector<int> DistanceOracle::path(int u, int v) const {
  if (dist_[static_cast<std::size_t>(u) * n_ + v] == kInfinity) return {};
  std::vector<int> out{v};
  while (v != u) {
    v = pred_[static_cast<std::size_t>(u) * n_ + v];
    out.push_back(v);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

double locus_distance(const Network& net, const DistanceOracle& oracle, const LocusPoint& p,
                      const LocusPoint& q) {
  const Edge& e1 = net.edges().at(p.edge);
  const Edge& e2 = net.edges().at(q.edge);
  double s = p.t * e1.length;
  double r = q.t * e2.length;
  if (p.edge == q.edge) return std::abs(s - r);
  double best = s + oracle(e1.u, e2.u) + r;
  best = std::min(best, s + oracle(e1.u, e2.v) + e2.length - r);
  best = std::min(best, e1.length - s + oracle(e1.v, e2.u) + r);
  best = std::min(best, e1.length - s + oracle(e1.v, e2.v) + e2.length - r);
  return best;
}

double eccentricity(const Network& net, const DistanceOracle& oracle, const LocusPoint& p) {
  const Edge& home = net.edges().at(p.edge);
  double s = p.t * home.length;
  auto from_p = [&](int x) { return std::min(s + oracle(home.u, x), home.length - s + oracle(home.v, x)); };
  double best = std::max(s, home.length - s);
  for (std::size_t i = 0; i < net.edge_count(); ++i) {
    if (static_cast<int>(i) == p.edge) continue;
    const Edge& e = net.edges()[i];
    double a = from_p(e.u);
    double b = from_p(e.v);
    // max over r of min(a + r, b + L - r), r in [0, L]
    double r = std::clamp((b + e.length - a) / 2.0, 0.0, e.length);
    best = std::max(best, std::min(a + r, b + e.length - r));
  }
  return best;
}

const char* to_string(PairKind kind) {
  switch (kind) {
    case PairKind::VertexVertex: return "VertexVertex";
    case PairKind::EdgeEdge: return "EdgeEdge";
    case PairKind::PendantVertexEdge: return "PendantVertexEdge";
  }
  return "?";
}

namespace {

struct Route {
  double cs, cr, c;
  double at(double s, double r) const { return cs * s + cr * r + c; }
};

struct BoxCandidate {
  double s, r, value;
};

// Routes from p (at arclength s from a on edge ab) to q (at r from c on cd).
std::array<Route, 4> routes(double l1, double l2, double ac, double ad, double bc, double bd) {
  return {Route{1, 1, ac}, Route{1, -1, ad + l2}, Route{-1, 1, bc + l1}, Route{-1, -1, bd + l1 + l2}};
}

double envelope(const std::array<Route, 4>& f, double s, double r) {
  return std::min({f[0].at(s, r), f[1].at(s, r), f[2].at(s, r), f[3].at(s, r)});
}

// Maximizes the lower envelope over [0,l1]x[0,l2] by arrangement-vertex
// enumeration. Appends candidates whose value reaches `floor`; returns the max.
double maximize_pair(double l1, double l2, const std::array<Route, 4>& f, double floor,
                     std::vector<BoxCandidate>* out) {
  // Lines a s + b r = c.
  std::array<std::array<double, 3>, 10> lines;
  std::size_t n = 0;
  lines[n++] = {1, 0, 0};
  lines[n++] = {1, 0, l1};
  lines[n++] = {0, 1, 0};
  lines[n++] = {0, 1, l2};
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      lines[n++] = {f[i].cs - f[j].cs, f[i].cr - f[j].cr, f[j].c - f[i].c};
    }
  }
  double slack = 1e-12 * std::max({1.0, l1, l2});
  double best = -kInfinity;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& p = lines[i];
      const auto& q = lines[j];
      double det = p[0] * q[1] - p[1] * q[0];
      if (std::abs(det) < 1e-12) continue;
      double s = (p[2] * q[1] - p[1] * q[2]) / det;
      double r = (p[0] * q[2] - p[2] * q[0]) / det;
      if (s < -slack || s > l1 + slack || r < -slack || r > l2 + slack) continue;
      s = std::clamp(s, 0.0, l1);
      r = std::clamp(r, 0.0, l2);
      if (s <= slack) s = 0.0;
      if (s >= l1 - slack) s = l1;
      if (r <= slack) r = 0.0;
      if (r >= l2 - slack) r = l2;
      double value = envelope(f, s, r);
      best = std::max(best, value);
      if (out && value >= floor) out->push_back({s, r, value});
    }
  }
  return best;
}

struct EdgePairJob {
  int i, j;
  double bound;
};

void require_connected(const DistanceOracle& oracle) {
  for (std::size_t v = 1; v < oracle.size(); ++v) {
    if (oracle(0, static_cast<int>(v)) == kInfinity) {
      throw Error(ErrorCode::Disconnected, "network is not connected; its diameter is infinite");
    }
  }
}

LocusPoint vertex_point(const Network& net, int vertex) {
  int e = net.incident(vertex).front();
  return LocusPoint{e, net.edges()[e].u == vertex ? 0.0 : 1.0};
}

DiameterReport compute(const Network& net, const DistanceOracle& oracle, bool with_pairs) {
  require_connected(oracle);
  DiameterReport report;
  const auto& es = net.edges();
  const std::size_t nv = net.vertex_count();
  if (es.empty()) return report;

  double best = 0.0;
  for (std::size_t u = 0; u < nv; ++u) {
    for (std::size_t v = u + 1; v < nv; ++v) best = std::max(best, oracle(static_cast<int>(u), static_cast<int>(v)));
  }

  std::vector<EdgePairJob> jobs;
  jobs.reserve(es.size() * (es.size() - 1) / 2);
  for (std::size_t i = 0; i < es.size(); ++i) {
    for (std::size_t j = i + 1; j < es.size(); ++j) {
      const Edge& a = es[i];
      const Edge& b = es[j];
      double base = a.length + b.length;
      double bound = 0.5 * std::min(base + oracle(a.u, b.u) + oracle(a.v, b.v),
                                    base + oracle(a.u, b.v) + oracle(a.v, b.u));
      if (bound >= best - tolerance(bound, best)) {
        jobs.push_back({static_cast<int>(i), static_cast<int>(j), bound});
      }
    }
  }
  std::sort(jobs.begin(), jobs.end(), [](const EdgePairJob& x, const EdgePairJob& y) {
    return x.bound > y.bound || (x.bound == y.bound && (x.i < y.i || (x.i == y.i && x.j < y.j)));
  });

  struct Found {
    int i, j;
    BoxCandidate c;
  };
  std::vector<Found> found;
  std::vector<BoxCandidate> scratch;
  for (const auto& job : jobs) {
    if (job.bound < best - tolerance(job.bound, best)) break;
    const Edge& a = es[job.i];
    const Edge& b = es[job.j];
    auto f = routes(a.length, b.length, oracle(a.u, b.u), oracle(a.u, b.v), oracle(a.v, b.u), oracle(a.v, b.v));
    scratch.clear();
    double value = maximize_pair(a.length, b.length, f, best - tolerance(best, best),
                                 with_pairs ? &scratch : nullptr);
    best = std::max(best, value);
    if (with_pairs) {
      for (const auto& c : scratch) found.push_back({job.i, job.j, c});
    }
  }
  report.d = best;
  if (!with_pairs) return report;

  const double tol = 10 * tolerance(best, best);
  const std::size_t cap = es.size() * es.size() + nv;
  std::vector<std::array<double, 4>> keys;
  auto add_pair = [&](LocusPoint p, LocusPoint q, PairKind kind) {
    if (report.pairs.size() >= cap) return;
    p = canonical(net, p);
    q = canonical(net, q);
    std::array<double, 4> key = {locus_x(net, p), locus_y(net, p), locus_x(net, q), locus_y(net, q)};
    std::array<double, 4> flipped = {key[2], key[3], key[0], key[1]};
    for (const auto& k : keys) {
      auto close = [&](const std::array<double, 4>& o) {
        for (int t = 0; t < 4; ++t) {
          if (std::abs(o[t] - k[t]) > 1e-9 * std::max(1.0, std::abs(k[t]))) return false;
        }
        return true;
      };
      if (close(key) || close(flipped)) return;
    }
    double dist = locus_distance(net, oracle, p, q);
    if (std::abs(dist - best) > tol) return;
    keys.push_back(key);
    report.pairs.push_back({p, q, kind, dist});
  };

  for (std::size_t u = 0; u < nv; ++u) {
    if (net.degree(static_cast<int>(u)) == 0) continue;
    for (std::size_t v = u + 1; v < nv; ++v) {
      if (net.degree(static_cast<int>(v)) == 0) continue;
      if (std::abs(oracle(static_cast<int>(u), static_cast<int>(v)) - best) <= tol) {
        add_pair(vertex_point(net, static_cast<int>(u)), vertex_point(net, static_cast<int>(v)),
                 PairKind::VertexVertex);
      }
    }
  }
  for (const auto& hit : found) {
    if (std::abs(hit.c.value - best) > tol) continue;
    const Edge& a = es[hit.i];
    const Edge& b = es[hit.j];
    LocusPoint p{hit.i, hit.c.s / a.length};
    LocusPoint q{hit.j, hit.c.r / b.length};
    bool p_vertex = hit.c.s == 0.0 || hit.c.s == a.length;
    bool q_vertex = hit.c.r == 0.0 || hit.c.r == b.length;
    if (p_vertex) p.t = hit.c.s == 0.0 ? 0.0 : 1.0;
    if (q_vertex) q.t = hit.c.r == 0.0 ? 0.0 : 1.0;
    PairKind kind = PairKind::EdgeEdge;
    if (p_vertex && q_vertex) {
      kind = PairKind::VertexVertex;
    } else if (p_vertex || q_vertex) {
      int vertex = p_vertex ? (p.t == 0.0 ? a.u : a.v) : (q.t == 0.0 ? b.u : b.v);
      if (net.degree(vertex) == 1) kind = PairKind::PendantVertexEdge;
    }
    add_pair(p, q, kind);
  }
  return report;
}

}  // namespace

DiameterReport continuous_diameter(const Network& net, const DistanceOracle& oracle) {
  return compute(net, oracle, true);
}

DiameterReport continuous_diameter(const Network& net) {
  DistanceOracle oracle(net);
  return compute(net, oracle, true);
}

double diameter_value(const Network& net, const DistanceOracle& oracle) {
  return compute(net, oracle, false).d;
}

double diameter_value(const Network& net) {
  DistanceOracle oracle(net);
  return compute(net, oracle, false).d;
}

namespace {

// Midpoint of [lo, hi] when the interval is nonempty up to slack.
std::optional<double> pick(double lo, double hi, double slack) {
  if (lo > hi + slack) return std::nullopt;
  return 0.5 * (lo + std::max(lo, hi));
}

}  // namespace

double step_formula_diameter(const Network& net, const DistanceOracle& oracle) {
  require_connected(oracle);
  const auto& es = net.edges();
  const std::size_t nv = net.vertex_count();
  double best = 0.0;
  for (std::size_t u = 0; u < nv; ++u) {
    for (std::size_t v = u + 1; v < nv; ++v) best = std::max(best, oracle(static_cast<int>(u), static_cast<int>(v)));
  }
  auto pendant_end = [&](const Edge& e) {
    if (net.degree(e.u) == 1) return e.u;
    if (net.degree(e.v) == 1) return e.v;
    return -1;
  };
  auto verified = [&](int ei, double s, int ej, double r, double value) {
    LocusPoint p{ei, std::clamp(s / es[ei].length, 0.0, 1.0)};
    LocusPoint q{ej, std::clamp(r / es[ej].length, 0.0, 1.0)};
    return std::abs(locus_distance(net, oracle, p, q) - value) <= 1e-7 * std::max(1.0, value);
  };

  for (std::size_t i = 0; i < es.size(); ++i) {
    const Edge& e1 = es[i];
    for (std::size_t j = 0; j < es.size(); ++j) {
      if (i == j) continue;
      const Edge& e2 = es[j];
      if (pendant_end(e2) >= 0) continue;
      int u = e1.u, v = e1.v, u2 = e2.u, v2 = e2.v;
      double l1 = e1.length, l2 = e2.length;
      int tip = pendant_end(e1);
      if (tip >= 0) {
        // Pendant vertex against a point of a non-pendant edge.
        int base = tip == u ? v : u;
        double value = oracle(tip, base) + 0.5 * (oracle(base, u2) + oracle(u2, v2) + oracle(v2, base));
        double r = 0.5 * (oracle(base, v2) + l2 - oracle(base, u2));
        if (r < -1e-12 || r > l2 + 1e-12) continue;
        if (verified(static_cast<int>(i), tip == u ? 0.0 : l1, static_cast<int>(j), std::clamp(r, 0.0, l2), value)) {
          best = std::max(best, value);
        }
        continue;
      }
      if (j < i) continue;
      double straight = 0.5 * (oracle(u, v) + oracle(v, v2) + oracle(v2, u2) + oracle(u2, u));
      double crossed = 0.5 * (oracle(u, v) + oracle(v, u2) + oracle(u2, v2) + oracle(v2, u));
      double value = std::min(straight, crossed);
      double slack = 1e-12 * std::max({1.0, l1, l2});
      if (straight <= crossed) {
        // s + r fixed; choose x = s - r.
        double sigma = value - oracle(u, u2);
        double lo = std::max({-sigma, sigma - 2 * l2, value - oracle(u, v2) - l2});
        double hi = std::min({2 * l1 - sigma, sigma, l1 + oracle(v, u2) - value});
        auto x = pick(lo, hi, slack);
        if (!x) continue;
        if (verified(static_cast<int>(i), 0.5 * (sigma + *x), static_cast<int>(j), 0.5 * (sigma - *x), value)) {
          best = std::max(best, value);
        }
      } else {
        // s - r fixed; choose y = s + r.
        double sigma = value - oracle(u, v2) - l2;
        double lo = std::max({-sigma, sigma, value - oracle(u, u2)});
        double hi = std::min({2 * l1 - sigma, sigma + 2 * l2, l1 + l2 + oracle(v, v2) - value});
        auto y = pick(lo, hi, slack);
        if (!y) continue;
        if (verified(static_cast<int>(i), 0.5 * (*y + sigma), static_cast<int>(j), 0.5 * (*y - sigma), value)) {
          best = std::max(best, value);
        }
      }
    }
  }
  return best;
}

double sampled_diameter(const Network& net, int k) {
  if (k < 2) throw Error(ErrorCode::InvalidInput, "sampled diameter needs k >= 2");
  DistanceOracle oracle(net);
  require_connected(oracle);
  std::vector<LocusPoint> grid;
  grid.reserve(net.edge_count() * static_cast<std::size_t>(k + 1));
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    for (int i = 0; i <= k; ++i) grid.push_back({static_cast<int>(e), static_cast<double>(i) / k});
  }
  double best = 0.0;
  for (std::size_t a = 0; a < grid.size(); ++a) {
    for (std::size_t b = a + 1; b < grid.size(); ++b) {
      best = std::max(best, locus_distance(net, oracle, grid[a], grid[b]));
    }
  }
  return best;
}

}  // namespace locus
