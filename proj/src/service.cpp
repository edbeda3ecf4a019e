#include "locus/service.hpp"

#include <algorithm>

#include "httplib.h"
#include "locus/commands.hpp"
#include "locus/render.hpp"

namespace locus {

namespace {

[[noreturn]] void bad(const std::string& message) { throw Error(ErrorCode::InvalidInput, message); }

double number_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) bad(std::string("endpoint needs numeric '") + key + "'");
  return j.at(key).get<double>();
}

LocusPoint endpoint(const Network& net, const Json& j, double radius) {
  if (!j.is_object()) bad("endpoint must be an object");
  if (j.contains("edge")) {
    if (!j.at("edge").is_number_integer()) bad("endpoint 'edge' must be an integer");
    int e = j.at("edge").get<int>();
    double t = number_field(j, "t");
    if (e < 0 || e >= static_cast<int>(net.edge_count())) {
      throw Error(ErrorCode::UnknownEdge, "no edge " + std::to_string(e));
    }
    if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorCode::ParameterOutOfRange, "t must lie in [0, 1]");
    return LocusPoint{e, t};
  }
  double x = number_field(j, "x"), y = number_field(j, "y");
  auto p = project_to_locus(net, x, y, radius);
  if (!p) throw Error(ErrorCode::OffLocus, "endpoint is farther than the snap radius from the locus");
  return *p;
}

}  // namespace

SessionStore::State SessionStore::make_state(Network net) {
  State s;
  s.oracle = std::make_shared<const DistanceOracle>(net);
  DiameterReport r = continuous_diameter(net, *s.oracle);
  s.report = to_json(net, r);
  s.d = r.d;
  s.pairs = std::move(r.pairs);
  s.net = std::move(net);
  return s;
}

SessionStore::Placement SessionStore::place(const State& s, const Json& body) {
  if (!body.is_object() || !body.contains("p") || !body.contains("q")) bad("body needs endpoints 'p' and 'q'");
  double radius = kTau;
  if (body.contains("snap_radius")) {
    if (!body.at("snap_radius").is_number()) bad("'snap_radius' must be a number");
    radius = std::max(radius, body.at("snap_radius").get<double>());
  }
  LocusPoint p = endpoint(s.net, body.at("p"), radius);
  LocusPoint q = endpoint(s.net, body.at("q"), radius);
  Segment seg(locus_coords(s.net, p), locus_coords(s.net, q));
  Network out = insert_segment(s.net, seg);
  return Placement{std::move(out), std::move(seg), p, q};
}

std::shared_ptr<SessionStore::Session> SessionStore::find(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw UnknownSession(id);
  return it->second;
}

Json SessionStore::state_json(const std::string& id, const Session& s) {
  return {{"id", id}, {"depth", s.stack.size() - 1}, {"report", s.stack.back().report}};
}

Json SessionStore::create(const Network& net) {
  if (!is_connected(net)) throw Error(ErrorCode::Disconnected, "sessions need a connected network");
  auto session = std::make_shared<Session>();
  session->stack.push_back(make_state(net));
  std::string id;
  {
    std::lock_guard lock(mutex_);
    id = "s" + std::to_string(next_++);
    sessions_[id] = session;
  }
  return state_json(id, *session);
}

Json SessionStore::preview(const std::string& id, const Json& body) const {
  auto session = find(id);
  std::shared_lock lock(session->mutex);
  const State& cur = session->stack.back();
  Placement pl = place(cur, body);
  DiameterReport r = continuous_diameter(pl.net);
  Json out = to_json(pl.net, r);
  out["old_d"] = number(cur.d);
  out["delta"] = number(r.d - cur.d);
  out["p"] = locus_point_json(cur.net, pl.p);
  out["q"] = locus_point_json(cur.net, pl.q);
  out["segment"] = {{"a", point_json(pl.segment.a())}, {"b", point_json(pl.segment.b())}};
  return out;
}

Json SessionStore::commit(const std::string& id, const Json& body) {
  auto session = find(id);
  std::unique_lock lock(session->mutex);
  Placement pl = place(session->stack.back(), body);
  session->stack.push_back(make_state(std::move(pl.net)));
  Json out = state_json(id, *session);
  out["segment"] = {{"a", point_json(pl.segment.a())}, {"b", point_json(pl.segment.b())}};
  return out;
}

Json SessionStore::undo(const std::string& id) {
  auto session = find(id);
  std::unique_lock lock(session->mutex);
  if (session->stack.size() == 1) throw Error(ErrorCode::EmptyInput, "nothing to undo");
  session->stack.pop_back();
  return state_json(id, *session);
}

Json SessionStore::geometry(const std::string& id) const {
  auto session = find(id);
  std::shared_lock lock(session->mutex);
  const State& cur = session->stack.back();
  Json g = geometry_json(cur.net, DiameterReport{cur.d, cur.pairs});
  g["id"] = id;
  g["depth"] = session->stack.size() - 1;
  return g;
}

Json SessionStore::state(const std::string& id) const {
  auto session = find(id);
  std::shared_lock lock(session->mutex);
  Json out = state_json(id, *session);
  out["network"] = to_json(session->stack.back().net);
  return out;
}

SearchResult SessionStore::search(const std::string& id, const SearchOptions& options) const {
  auto session = find(id);
  std::shared_lock lock(session->mutex);
  const Network& net = session->stack.back().net;
  return options.simple ? find_simple_shortcut(net, options) : find_shortcut(net, options);
}

namespace {

void send(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

// Runs a handler, mapping failures to status codes with an error object.
template <typename F>
void guarded(httplib::Response& res, F&& f) {
  try {
    f();
  } catch (const UnknownSession& e) {
    send(res, 404, error_json("UnknownSession", e.what()));
  } catch (const Error& e) {
    send(res, http_status(e.code()), error_json(e));
  } catch (const Json::exception& e) {
    send(res, 400, error_json("InvalidInput", e.what()));
  } catch (const std::exception& e) {
    send(res, 500, error_json("Internal", e.what()));
  }
}

Json parse_body(const httplib::Request& req) {
  try {
    return Json::parse(req.body);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
}

double query_double(const httplib::Request& req, const std::string& key, double fallback) {
  if (!req.has_param(key)) return fallback;
  try {
    return std::stod(req.get_param_value(key));
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidInput, "query parameter '" + key + "' is not a number");
  }
}

SearchOptions search_options(const Json& j) {
  SearchOptions o;
  if (!j.is_object()) bad("search options must be an object");
  if (j.contains("gap")) o.gap = j.at("gap").get<double>();
  if (j.contains("res")) o.resolution = j.at("res").get<double>();
  if (j.contains("simple")) o.simple = j.at("simple").get<bool>();
  if (j.contains("max_cells")) o.max_cells = j.at("max_cells").get<std::size_t>();
  if (j.contains("progress_every")) o.progress_every = std::max<std::size_t>(1, j.at("progress_every").get<std::size_t>());
  return o;
}

}  // namespace

struct Service::Impl {
  httplib::Server server;
  SessionStore store;
};

Service::Service() : impl_(std::make_unique<Impl>()) {
  httplib::Server& s = impl_->server;
  SessionStore& store = impl_->store;

  auto stateless = [&s](const std::string& path, auto run) {
    s.Post(path, [run](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { send(res, 200, run(req)); });
    });
  };
  stateless("/diameter", [](const httplib::Request& r) { return cmd_diameter(network_from_json(parse_body(r))); });
  stateless("/check", [](const httplib::Request& r) { return cmd_check(network_from_json(parse_body(r))); });
  stateless("/fan", [](const httplib::Request& r) { return cmd_fan(network_from_json(parse_body(r))); });
  stateless("/epsilon", [](const httplib::Request& r) {
    return cmd_epsilon(network_from_json(parse_body(r)), query_double(r, "eps", 0.0));
  });
  stateless("/shortcut", [](const httplib::Request& r) {
    SearchOptions o;
    o.gap = query_double(r, "gap", 0.0);
    o.resolution = query_double(r, "res", 0.0);
    o.simple = r.has_param("simple") && r.get_param_value("simple") != "false";
    return cmd_shortcut(network_from_json(parse_body(r)), o);
  });
  stateless("/scn1", [](const httplib::Request& r) { return cmd_scn1(network_from_json(parse_body(r))); });
  stateless("/polygon", [](const httplib::Request& r) { return cmd_polygon(network_from_json(parse_body(r))); });
  stateless("/k4", [](const httplib::Request& r) { return cmd_k4(network_from_json(parse_body(r))); });
  stateless("/gen3sat", [](const httplib::Request& r) {
    return cmd_gen3sat(r.body, static_cast<std::uint64_t>(query_double(r, "seed", 1)));
  });
  s.Post("/render", [](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      Json body = parse_body(req);
      Network net = network_from_json(body);
      std::optional<ShortcutSet> overlay;
      if (body.contains("overlay")) overlay = shortcut_set_from_json(body.at("overlay"));
      res.set_content(render_svg(net, overlay ? &*overlay : nullptr), "image/svg+xml");
    });
  });

  s.Post("/session", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send(res, 200, store.create(network_from_json(parse_body(req)))); });
  });
  s.Get("/session/:id", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send(res, 200, store.state(req.path_params.at("id"))); });
  });
  s.Post("/session/:id/preview", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send(res, 200, store.preview(req.path_params.at("id"), parse_body(req))); });
  });
  s.Post("/session/:id/commit", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send(res, 200, store.commit(req.path_params.at("id"), parse_body(req))); });
  });
  s.Post("/session/:id/undo", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send(res, 200, store.undo(req.path_params.at("id"))); });
  });
  s.Get("/session/:id/geometry", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send(res, 200, store.geometry(req.path_params.at("id"))); });
  });
  // NDJSON: {"event": "progress", ...} lines, then one {"event": "result", ...}.
  s.Post("/session/:id/search", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      std::string id = req.path_params.at("id");
      store.state(id);
      SearchOptions options = search_options(req.body.empty() ? Json::object() : parse_body(req));
      res.set_chunked_content_provider("application/x-ndjson", [&store, id, options](std::size_t,
                                                                                     httplib::DataSink& sink) {
        SearchOptions o = options;
        o.progress = [&sink](const SearchProgress& p) {
          Json line = to_json(p);
          line["event"] = "progress";
          std::string text = line.dump() + "\n";
          sink.write(text.data(), text.size());
        };
        Json last;
        try {
          last = to_json(store.search(id, o));
          last["event"] = "result";
        } catch (const Error& e) {
          last = error_json(e);
          last["event"] = "error";
        }
        std::string text = last.dump() + "\n";
        sink.write(text.data(), text.size());
        sink.done();
        return true;
      });
    });
  });
}

Service::~Service() = default;

SessionStore& Service::store() { return impl_->store; }

int Service::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool Service::listen() { return impl_->server.listen_after_bind(); }

void Service::stop() { impl_->server.stop(); }

void Service::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace locus
