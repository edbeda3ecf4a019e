#include "locus/gadgets.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "locus/error.hpp"

namespace locus {

void check_formula(const CnfFormula& phi) {
  if (phi.n < 1) throw Error(ErrorCode::MalformedCnf, "formula needs at least one variable");
  if (phi.clauses.empty()) throw Error(ErrorCode::MalformedCnf, "formula needs at least one clause");
  std::vector<int> parent(phi.n + phi.m());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t j = 0; j < phi.m(); ++j) {
    const auto& c = phi.clauses[j];
    const std::string where = "clause " + std::to_string(j + 1);
    if (c.size() != 3) {
      throw Error(ErrorCode::MalformedCnf, where + " has " + std::to_string(c.size()) + " literals, expected 3");
    }
    for (int lit : c) {
      if (lit == 0 || std::abs(lit) > phi.n) {
        throw Error(ErrorCode::MalformedCnf, where + " has literal " + std::to_string(lit) + " out of range");
      }
      if (std::find(c.begin(), c.end(), -lit) != c.end()) {
        throw Error(ErrorCode::MalformedCnf, where + " holds a literal and its negation");
      }
      parent[find(std::abs(lit) - 1)] = find(phi.n + static_cast<int>(j));
    }
  }
  const int root = find(0);
  for (int x = 1; x < static_cast<int>(parent.size()); ++x) {
    if (find(x) != root) throw Error(ErrorCode::MalformedCnf, "variable-clause incidence graph is disconnected");
  }
}

bool satisfiable(const CnfFormula& phi) {
  if (phi.n > 24) throw Error(ErrorCode::TooLarge, "exhaustive satisfiability is capped at 24 variables");
  for (std::uint32_t a = 0; a < (1u << phi.n); ++a) {
    bool all = std::all_of(phi.clauses.begin(), phi.clauses.end(), [&](const std::vector<int>& c) {
      return std::any_of(c.begin(), c.end(), [&](int lit) {
        bool value = (a >> (std::abs(lit) - 1)) & 1u;
        return lit > 0 ? value : !value;
      });
    });
    if (all) return true;
  }
  return false;
}

CnfFormula parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  CnfFormula phi;
  int declared_m = -1;
  std::vector<int> current;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head == "c" || head == "%") continue;
    if (head == "p") {
      std::string kind;
      if (!(ls >> kind >> phi.n >> declared_m) || kind != "cnf") {
        throw Error(ErrorCode::MalformedCnf, "bad problem line: " + line);
      }
      continue;
    }
    std::istringstream all(line);
    int lit = 0;
    while (all >> lit) {
      if (lit == 0) {
        phi.clauses.push_back(current);
        current.clear();
      } else {
        current.push_back(lit);
      }
    }
    if (!all.eof()) throw Error(ErrorCode::MalformedCnf, "bad clause line: " + line);
  }
  if (!current.empty()) phi.clauses.push_back(current);
  if (declared_m < 0) throw Error(ErrorCode::MalformedCnf, "missing 'p cnf' line");
  if (static_cast<int>(phi.m()) != declared_m) {
    throw Error(ErrorCode::MalformedCnf, "declared " + std::to_string(declared_m) + " clauses, found " +
                                             std::to_string(phi.m()));
  }
  return phi;
}

std::string to_dimacs(const CnfFormula& phi) {
  std::ostringstream out;
  out << "p cnf " << phi.n << ' ' << phi.m() << '\n';
  for (const auto& c : phi.clauses) {
    for (int lit : c) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

CnfFormula random_formula(std::mt19937_64& rng, int n, int m) {
  std::uniform_int_distribution<int> var(1, n);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    CnfFormula phi;
    phi.n = n;
    for (int j = 0; j < m; ++j) {
      std::vector<int> c;
      for (int k = 0; k < 3; ++k) c.push_back(var(rng) * (rng() % 2 == 0 ? 1 : -1));
      phi.clauses.push_back(c);
    }
    try {
      check_formula(phi);
      return phi;
    } catch (const Error&) {
    }
  }
  throw Error(ErrorCode::RetryExhausted, "no valid formula with n=" + std::to_string(n) + " m=" + std::to_string(m));
}

Network GadgetInstance::network() const {
  std::vector<Vertex> vs;
  for (std::size_t i = 0; i < points.size(); ++i) {
    Vertex v;
    v.id = static_cast<int>(i);
    v.pos = points[i].pos;
    vs.push_back(v);
  }
  return Network(std::move(vs), {});
}

namespace {

bool on_line(const Line& l, const Point& p) { return orient(l.origin, l.through, p) == 0; }

std::optional<Point> meet(const Line& a, const Line& b) {
  Rational dx = a.through.x - a.origin.x, dy = a.through.y - a.origin.y;
  Rational ex = b.through.x - b.origin.x, ey = b.through.y - b.origin.y;
  Rational den = dx * ey - dy * ex;
  if (den == 0) return std::nullopt;
  Rational s = ((b.origin.x - a.origin.x) * ey - (b.origin.y - a.origin.y) * ex) / den;
  return Point(a.origin.x + s * dx, a.origin.y + s * dy);
}

bool has_literal(const std::vector<int>& clause, int lit) {
  return std::find(clause.begin(), clause.end(), lit) != clause.end();
}

// Indices of the points that a declared line must carry.
std::vector<int> expected_on(const GadgetInstance& g, const DeclaredLine& d) {
  std::vector<int> out;
  for (std::size_t p = 0; p < g.points.size(); ++p) {
    const GadgetPoint& gp = g.points[p];
    bool on = false;
    if (gp.role == GadgetPoint::Role::Grid) {
      on = gp.var == d.var && (d.family == DeclaredLine::Family::L ? gp.l : gp.k) == d.index;
    } else if (gp.k == d.index) {
      const auto& c = g.formula.clauses[gp.k - 1];
      on = has_literal(c, d.family == DeclaredLine::Family::L ? d.var : -d.var);
    }
    if (on) out.push_back(static_cast<int>(p));
  }
  return out;
}

std::string describe(const DeclaredLine& d) {
  return std::string(d.family == DeclaredLine::Family::L ? "L" : "R") + "_{" + std::to_string(d.var) + "," +
         std::to_string(d.index) + "}";
}

GadgetInstance realize(const CnfFormula& phi, std::mt19937_64& rng) {
  constexpr int kSpan = 1000, kSlope = 60;
  std::uniform_int_distribution<int> coord(0, kSpan), slope(-kSlope, kSlope);
  auto random_point = [&] { return Point(coord(rng), coord(rng)); };
  auto through = [&](const Point& p) {
    int dx = 0, dy = 0;
    while (dx == 0 && dy == 0) {
      dx = slope(rng);
      dy = slope(rng);
    }
    return Line{p, Point(p.x + dx, p.y + dy)};
  };

  GadgetInstance g;
  g.formula = phi;
  const int m = static_cast<int>(phi.m());
  for (int j = 1; j <= m; ++j) {
    GadgetPoint c;
    c.pos = random_point();
    c.role = GadgetPoint::Role::Clause;
    c.k = j;
    g.points.push_back(c);
  }
  for (int i = 1; i <= phi.n; ++i) {
    std::vector<Line> rows, cols;
    for (int j = 1; j <= m; ++j) {
      const auto& clause = phi.clauses[j - 1];
      const Point& pj = g.points[j - 1].pos;
      Line col = has_literal(clause, i) ? through(pj) : through(random_point());
      Line row = has_literal(clause, -i) ? through(pj) : through(random_point());
      g.lines.push_back({DeclaredLine::Family::L, i, j, col});
      g.lines.push_back({DeclaredLine::Family::R, i, j, row});
      cols.push_back(col);
      rows.push_back(row);
    }
    for (int k = 1; k <= m; ++k) {
      for (int l = 1; l <= m; ++l) {
        auto p = meet(rows[k - 1], cols[l - 1]);
        if (!p) throw Error(ErrorCode::RetryExhausted, "parallel row and column");
        GadgetPoint gp;
        gp.pos = *p;
        gp.role = GadgetPoint::Role::Grid;
        gp.var = i;
        gp.k = k;
        gp.l = l;
        g.points.push_back(gp);
      }
    }
  }
  return g;
}

}  // namespace

std::vector<GadgetViolation> verify_gadget(const GadgetInstance& g) {
  std::vector<GadgetViolation> out;
  const std::size_t n = g.points.size();
  std::map<Point, int> seen;
  for (std::size_t p = 0; p < n; ++p) {
    auto [it, fresh] = seen.emplace(g.points[p].pos, static_cast<int>(p));
    if (!fresh) {
      out.push_back({GadgetViolation::Kind::Duplicate,
                     "points " + std::to_string(it->second) + " and " + std::to_string(p) + " coincide"});
    }
  }
  std::set<std::vector<int>> declared_sets;
  for (const DeclaredLine& d : g.lines) {
    std::vector<int> want = expected_on(g, d);
    declared_sets.insert(want);
    for (int p : want) {
      if (on_line(d.line, g.points[p].pos)) continue;
      bool clause = g.points[p].role == GadgetPoint::Role::Clause;
      out.push_back({clause ? GadgetViolation::Kind::Incidence : GadgetViolation::Kind::Collinearity,
                     describe(d) + " misses point " + std::to_string(p)});
    }
    for (std::size_t p = 0; p < n; ++p) {
      if (std::find(want.begin(), want.end(), static_cast<int>(p)) != want.end()) continue;
      if (!on_line(d.line, g.points[p].pos)) continue;
      bool clause = g.points[p].role == GadgetPoint::Role::Clause;
      out.push_back({clause ? GadgetViolation::Kind::Incidence : GadgetViolation::Kind::Genericity,
                     describe(d) + " carries undeclared point " + std::to_string(p)});
    }
  }
  std::set<std::vector<int>> reported;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (g.points[a].pos == g.points[b].pos) continue;
      Line l{g.points[a].pos, g.points[b].pos};
      std::vector<int> on;
      for (std::size_t p = 0; p < n; ++p) {
        if (on_line(l, g.points[p].pos)) on.push_back(static_cast<int>(p));
      }
      if (on.size() <= 2 || declared_sets.count(on) || !reported.insert(on).second) continue;
      std::string ids;
      for (int p : on) ids += (ids.empty() ? "" : ",") + std::to_string(p);
      out.push_back({GadgetViolation::Kind::Genericity, "undeclared line through points " + ids});
    }
  }
  return out;
}

GadgetInstance build_point_cover_instance(const CnfFormula& phi, std::uint64_t seed, int max_attempts) {
  check_formula(phi);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt));
    try {
      GadgetInstance g = realize(phi, rng);
      if (!verify_gadget(g).empty()) continue;
      g.seed = seed;
      g.attempts = attempt + 1;
      return g;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::RetryExhausted) throw;
    }
  }
  throw Error(ErrorCode::RetryExhausted, "no verified gadget after " + std::to_string(max_attempts) +
                                             " attempts from seed " + std::to_string(seed));
}

std::optional<std::vector<CoverLine>> min_line_cover_bruteforce(const std::vector<Point>& points, int budget) {
  const std::size_t n = points.size();
  if (n > kMaxCoverPoints) {
    throw Error(ErrorCode::TooLarge, std::to_string(n) + " points exceed the cover cap of " +
                                         std::to_string(kMaxCoverPoints));
  }
  using Mask = std::uint32_t;
  const Mask full = n == 0 ? 0 : (Mask{1} << n) - 1;
  // Maximal collinear subsets; each point lies on one unless it is alone.
  std::vector<Mask> lines;
  std::vector<Line> geometry;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (points[a] == points[b]) continue;
      Line l{points[a], points[b]};
      Mask on = 0;
      for (std::size_t p = 0; p < n; ++p) {
        if (on_line(l, points[p])) on |= Mask{1} << p;
      }
      if (std::find(lines.begin(), lines.end(), on) == lines.end()) {
        lines.push_back(on);
        geometry.push_back(l);
      }
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    bool covered = std::any_of(lines.begin(), lines.end(), [&](Mask m) { return (m >> p) & 1u; });
    if (!covered) {
      Mask same = 0;
      for (std::size_t q = 0; q < n; ++q) same |= points[q] == points[p] ? Mask{1} << q : 0;
      lines.push_back(same);
      geometry.push_back(Line{points[p], Point(points[p].x + 1, points[p].y)});
    }
  }
  std::vector<int> chosen;
  auto search = [&](auto&& self, Mask covered, int left) -> bool {
    if (covered == full) return true;
    if (left == 0) return false;
    int p = std::countr_one(covered);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (!((lines[i] >> p) & 1u)) continue;
      chosen.push_back(static_cast<int>(i));
      if (self(self, covered | lines[i], left - 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  for (int size = 0; size <= budget; ++size) {
    chosen.clear();
    if (!search(search, 0, size)) continue;
    std::vector<CoverLine> out;
    for (int i : chosen) {
      CoverLine c;
      c.line = geometry[i];
      for (std::size_t p = 0; p < n; ++p) {
        if ((lines[i] >> p) & 1u) c.points.push_back(static_cast<int>(p));
      }
      out.push_back(std::move(c));
    }
    return out;
  }
  return std::nullopt;
}

bool scn_reduction_check(const CnfFormula& phi, std::uint64_t seed) {
  check_formula(phi);
  const std::size_t m = phi.m(), size = static_cast<std::size_t>(phi.n) * m * m + m;
  if (size > kMaxCoverPoints) {
    throw Error(ErrorCode::TooLarge, "gadget has " + std::to_string(size) + " points; the cover cap is " +
                                         std::to_string(kMaxCoverPoints));
  }
  GadgetInstance g = build_point_cover_instance(phi, seed);
  std::vector<Point> pts;
  for (const GadgetPoint& p : g.points) pts.push_back(p.pos);
  bool coverable = min_line_cover_bruteforce(pts, phi.n * static_cast<int>(m)).has_value();
  return satisfiable(phi) == coverable;
}

}  // namespace locus
