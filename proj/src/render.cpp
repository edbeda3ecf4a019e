#include "locus/render.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace locus {

namespace {

struct Frame {
  double x0 = 0, y0 = 0, scale = 1;
  int height = 0, margin = 0;

  double sx(double x) const { return margin + (x - x0) * scale; }
  double sy(double y) const { return height - margin - (y - y0) * scale; }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

Frame fit(const std::vector<Point>& pts, const RenderOptions& o) {
  Frame f;
  f.height = o.height;
  f.margin = o.margin;
  if (pts.empty()) return f;
  double x1 = pts[0].xd(), y1 = pts[0].yd();
  f.x0 = x1;
  f.y0 = y1;
  for (const Point& p : pts) {
    f.x0 = std::min(f.x0, p.xd());
    f.y0 = std::min(f.y0, p.yd());
    x1 = std::max(x1, p.xd());
    y1 = std::max(y1, p.yd());
  }
  double span = std::max(x1 - f.x0, y1 - f.y0);
  double room = std::min(o.width, o.height) - 2.0 * o.margin;
  f.scale = span > 0 ? room / span : 1.0;
  return f;
}

}  // namespace

std::string render_svg(const Network& net, const ShortcutSet* overlay, RenderOptions options) {
  std::vector<Point> pts = net.points();
  if (overlay) {
    for (const Segment& s : overlay->segments) {
      pts.push_back(s.a());
      pts.push_back(s.b());
    }
  }
  Frame f = fit(pts, options);
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << options.width << "\" height=\""
      << options.height << "\" viewBox=\"0 0 " << options.width << ' ' << options.height << "\">\n"
      << "<style>.edge{stroke:#333;stroke-width:2}.vertex{fill:#111}"
         ".diametral{fill:none;stroke:#d62728;stroke-width:3;stroke-dasharray:6 4;opacity:0.8}"
         ".shortcut{stroke:#1f77b4;stroke-width:2.5}</style>\n";
  out << "<g class=\"edges\">\n";
  for (const Edge& e : net.edges()) {
    const Point& a = net.pos(e.u);
    const Point& b = net.pos(e.v);
    out << "<line class=\"edge\" x1=\"" << fmt(f.sx(a.xd())) << "\" y1=\"" << fmt(f.sy(a.yd())) << "\" x2=\""
        << fmt(f.sx(b.xd())) << "\" y2=\"" << fmt(f.sy(b.yd())) << "\"/>\n";
  }
  out << "</g>\n";
  if (net.edge_count() > 0 && is_connected(net)) {
    DistanceOracle oracle(net);
    DiameterReport report = continuous_diameter(net, oracle);
    out << "<g class=\"diametral-pairs\">\n";
    for (const DiametralPair& pr : report.pairs) {
      out << "<polyline class=\"diametral\" points=\"";
      bool first = true;
      for (const Point& p : locus_path(net, oracle, pr.p, pr.q)) {
        out << (first ? "" : " ") << fmt(f.sx(p.xd())) << ',' << fmt(f.sy(p.yd()));
        first = false;
      }
      out << "\"/>\n";
    }
    out << "</g>\n";
  }
  if (overlay) {
    out << "<g class=\"overlay\">\n";
    for (const Segment& s : overlay->segments) {
      out << "<line class=\"shortcut\" x1=\"" << fmt(f.sx(s.a().xd())) << "\" y1=\"" << fmt(f.sy(s.a().yd()))
          << "\" x2=\"" << fmt(f.sx(s.b().xd())) << "\" y2=\"" << fmt(f.sy(s.b().yd())) << "\"/>\n";
    }
    out << "</g>\n";
  }
  out << "<g class=\"vertices\">\n";
  for (const Vertex& v : net.vertices()) {
    out << "<circle class=\"vertex\" cx=\"" << fmt(f.sx(v.pos.xd())) << "\" cy=\"" << fmt(f.sy(v.pos.yd()))
        << "\" r=\"4\"><title>" << v.id << "</title></circle>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

Json geometry_json(const Network& net, const DiameterReport& report) {
  Json g = to_json(net);
  for (Json& v : g["vertices"]) {
    v["px"] = number(parse_rational(v["x"].get<std::string>()).get_d());
    v["py"] = number(parse_rational(v["y"].get<std::string>()).get_d());
  }
  DistanceOracle oracle(net);
  Json paths = Json::array();
  for (const DiametralPair& pr : report.pairs) {
    Json line = Json::array();
    for (const Point& p : locus_path(net, oracle, pr.p, pr.q)) line.push_back({number(p.xd()), number(p.yd())});
    paths.push_back({{"distance", number(pr.distance)}, {"kind", to_string(pr.kind)}, {"polyline", line}});
  }
  g["d"] = number(report.d);
  g["diametral"] = paths;
  return g;
}

}  // namespace locus
