#include "locus/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace locus {

Json number(double value) {
  if (!std::isfinite(value)) return nullptr;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return std::strtod(buf, nullptr);
}

namespace {

[[noreturn]] void bad(const std::string& message) { throw Error(ErrorCode::InvalidInput, message); }

std::string coordinate_text(const Json& j, const char* key) {
  if (!j.contains(key)) bad(std::string("vertex lacks '") + key + "'");
  const Json& c = j.at(key);
  if (c.is_string()) return c.get<std::string>();
  if (c.is_number()) return c.dump();
  bad(std::string("coordinate '") + key + "' must be a string or number");
}

Point point_from_json(const Json& j) {
  if (!j.is_object()) bad("point must be an object with x and y");
  return Point(parse_rational(coordinate_text(j, "x")), parse_rational(coordinate_text(j, "y")));
}

Json anchor_json(const Anchor& a) {
  return {{"host", a.host == Anchor::Host::Edge ? "edge" : "segment"},
          {"index", a.index},
          {"t", format_rational(a.t)}};
}

Json construction_body(const Construction& c) {
  return {{"set", to_json(c.set)},
          {"verification",
           {{"is_shortcut_set", c.new_d < c.old_d}, {"old_d", number(c.old_d)}, {"new_d", number(c.new_d)},
            {"standoff", number(c.standoff)}}}};
}

}  // namespace

Network network_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("vertices")) bad("network JSON needs a 'vertices' list");
  const Json& vs = j.at("vertices");
  if (!vs.is_array()) bad("'vertices' must be a list");
  std::vector<Vertex> vertices;
  for (const Json& v : vs) {
    if (!v.is_object() || !v.contains("id") || !v.at("id").is_number_integer()) bad("vertex needs an integer 'id'");
    Vertex out;
    out.id = v.at("id").get<int>();
    out.x_text = coordinate_text(v, "x");
    out.y_text = coordinate_text(v, "y");
    out.pos = Point(parse_rational(out.x_text), parse_rational(out.y_text));
    vertices.push_back(std::move(out));
  }
  std::vector<std::pair<int, int>> edges;
  if (j.contains("edges")) {
    const Json& es = j.at("edges");
    if (!es.is_array()) bad("'edges' must be a list");
    for (const Json& e : es) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
        bad("edge must be a pair of vertex ids");
      }
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
  }
  Network net(std::move(vertices), edges);
  ValidationReport report = validate(net);
  if (!report.ok()) {
    std::string message = "invalid network:";
    for (const Violation& v : report.violations) message += " " + v.message + ";";
    message.pop_back();
    throw Error(ErrorCode::InvalidNetwork, message);
  }
  return net;
}

Network read_network(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
  return network_from_json(j);
}

Json to_json(const Network& net) {
  Json vs = Json::array();
  for (const Vertex& v : net.vertices()) {
    vs.push_back({{"id", v.id},
                  {"x", v.x_text.empty() ? format_rational(v.pos.x) : v.x_text},
                  {"y", v.y_text.empty() ? format_rational(v.pos.y) : v.y_text}});
  }
  Json es = Json::array();
  for (const Edge& e : net.edges()) es.push_back({net.vertices()[e.u].id, net.vertices()[e.v].id});
  return {{"vertices", vs}, {"edges", es}};
}

Json point_json(const Point& p) { return {{"x", format_rational(p.x)}, {"y", format_rational(p.y)}}; }

Json locus_point_json(const Network& net, const LocusPoint& p) {
  return {{"edge", p.edge}, {"t", number(p.t)}, {"x", number(locus_x(net, p))}, {"y", number(locus_y(net, p))}};
}

Json to_json(const Network& net, const DiameterReport& report) {
  Json pairs = Json::array();
  for (const DiametralPair& pr : report.pairs) {
    pairs.push_back({{"p", locus_point_json(net, pr.p)},
                     {"q", locus_point_json(net, pr.q)},
                     {"kind", to_string(pr.kind)},
                     {"distance", number(pr.distance)}});
  }
  return {{"d", number(report.d)}, {"pairs", pairs}};
}

Json to_json(const ShortcutSet& set) {
  Json segs = Json::array();
  for (std::size_t i = 0; i < set.size(); ++i) {
    Json s = {{"a", point_json(set.segments[i].a())}, {"b", point_json(set.segments[i].b())}};
    s["anchors"] = Json::array();
    if (i < set.anchors.size()) {
      s["anchors"] = {anchor_json(set.anchors[i].first), anchor_json(set.anchors[i].second)};
    }
    segs.push_back(std::move(s));
  }
  return {{"segments", segs}};
}

ShortcutSet shortcut_set_from_json(const Json& j) {
  const Json* list = &j;
  if (j.is_object()) {
    if (!j.contains("segments")) bad("shortcut set needs a 'segments' list");
    list = &j.at("segments");
  }
  if (!list->is_array()) bad("'segments' must be a list");
  ShortcutSet set;
  for (const Json& s : *list) {
    if (!s.is_object() || !s.contains("a") || !s.contains("b")) bad("segment needs 'a' and 'b'");
    set.segments.emplace_back(point_from_json(s.at("a")), point_from_json(s.at("b")));
  }
  return set;
}

Json to_json(const ExistenceVerdict& v) {
  Json w = nullptr;
  if (v.witness) w = {v.witness->first, v.witness->second};
  return {{"admits", v.admits},
          {"witness", w},
          {"hull_diameter", number(v.hull_diameter)},
          {"locus_diameter", number(v.locus_diameter)}};
}

Json to_json(const Construction& c) { return construction_body(c); }

Json to_json(const EpsilonCoverPlan& plan) {
  return {{"set", to_json(plan.set)},
          {"eps", number(plan.eps)},
          {"M", number(plan.M)},
          {"net_points", plan.net_points.size()},
          {"verification",
           {{"is_shortcut_set", plan.new_d < plan.old_d},
            {"hull_d", number(plan.hull_d)},
            {"old_d", number(plan.old_d)},
            {"new_d", number(plan.new_d)},
            {"within_eps", plan.hull_d <= plan.new_d + kTau && plan.new_d < plan.hull_d + plan.eps}}}};
}

Json to_json(const PolygonScn& p) {
  Json out = construction_body(p.construction);
  out["scn"] = p.scn;
  return out;
}

Json to_json(const SearchProgress& p) {
  return {{"cells", p.cells},     {"pruned", p.pruned}, {"infeasible", p.infeasible},
          {"leaves", p.leaves},   {"evaluations", p.evaluations}, {"open", p.open},
          {"d", number(p.d)},     {"best_new_d", number(p.best_new_d)}};
}

Json to_json(const SearchResult& r) {
  Json out = {{"verdict", r.found ? "FOUND" : "NONE"},
              {"old_d", number(r.old_d)},
              {"new_d", number(r.new_d)},
              {"gap", number(r.gap)},
              {"resolution", number(r.resolution)},
              {"certified_gap", number(r.certified_gap)},
              {"exhausted", r.exhausted},
              {"stats", to_json(r.stats)},
              {"segment", nullptr}};
  if (r.segment) out["segment"] = {{"a", point_json(r.segment->a())}, {"b", point_json(r.segment->b())}};
  if (r.at) {
    out["at"] = {{"p", {{"edge", r.at->e}, {"t", number(r.at->t)}}}, {"q", {{"edge", r.at->e2}, {"t", number(r.at->t2)}}}};
  }
  return out;
}

Json to_json(const ScnOneResult& r) {
  Json out = {{"yes", r.yes}, {"witness", nullptr}, {"line", nullptr}};
  if (r.witness) out["witness"] = {{"a", point_json(r.witness->a())}, {"b", point_json(r.witness->b())}};
  if (r.line) out["line"] = {{"origin", point_json(r.line->origin)}, {"through", point_json(r.line->through)}};
  return out;
}

Json provenance_json(const GadgetInstance& g) {
  Json points = Json::array();
  for (std::size_t i = 0; i < g.points.size(); ++i) {
    const GadgetPoint& p = g.points[i];
    if (p.role == GadgetPoint::Role::Clause) {
      points.push_back({{"id", i}, {"role", "clause"}, {"clause", p.k}});
    } else {
      points.push_back({{"id", i}, {"role", "grid"}, {"var", p.var}, {"k", p.k}, {"l", p.l}});
    }
  }
  Json lines = Json::array();
  for (const DeclaredLine& d : g.lines) {
    lines.push_back({{"family", d.family == DeclaredLine::Family::L ? "L" : "R"},
                     {"var", d.var},
                     {"index", d.index},
                     {"origin", point_json(d.line.origin)},
                     {"through", point_json(d.line.through)}});
  }
  return {{"n", g.formula.n}, {"m", g.formula.m()}, {"seed", g.seed}, {"attempts", g.attempts},
          {"points", points}, {"lines", lines}};
}

std::vector<Point> locus_path(const Network& net, const DistanceOracle& oracle, const LocusPoint& p,
                              const LocusPoint& q) {
  const Edge& ep = net.edges()[p.edge];
  const Edge& eq = net.edges()[q.edge];
  Point a = locus_coords(net, p), b = locus_coords(net, q);
  double best = kInfinity;
  std::vector<Point> out;
  if (p.edge == q.edge) {
    best = std::abs(p.t - q.t) * ep.length;
    out = {a, b};
  }
  const int from[2] = {ep.u, ep.v};
  const int to[2] = {eq.u, eq.v};
  const double lead[2] = {p.t * ep.length, (1 - p.t) * ep.length};
  const double tail[2] = {q.t * eq.length, (1 - q.t) * eq.length};
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 2; ++k) {
      double len = lead[i] + oracle(from[i], to[k]) + tail[k];
      if (!(len < best - kTau)) continue;
      best = len;
      out = {a};
      for (int v : oracle.path(from[i], to[k])) out.push_back(net.pos(v));
      out.push_back(b);
    }
  }
  // Drop consecutive repeats left by endpoints sitting on vertices.
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Json error_json(const std::string& code, const std::string& message) {
  return {{"error", {{"code", code}, {"message", message}}}};
}

Json error_json(const Error& e) { return error_json(std::string(to_string(e.code())), e.what()); }

}  // namespace locus
