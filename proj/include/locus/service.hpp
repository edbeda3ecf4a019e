#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "locus/io.hpp"

namespace locus {

class UnknownSession : public std::runtime_error {
 public:
  explicit UnknownSession(const std::string& id) : std::runtime_error("unknown session '" + id + "'") {}
};

/// In-memory sessions. Each holds a stack of states, the base network at the
/// bottom and one state per committed insertion, each with its oracle and
/// report computed once. Commit and undo take the session's writer lock;
/// preview, geometry and search share the reader lock.
class SessionStore {
 public:
  /// {"id", "depth", "report"}.
  Json create(const Network& net);
  /// Body {"p": endpoint, "q": endpoint, "snap_radius"?}; an endpoint is
  /// {"edge", "t"} on the current state or {"x", "y"} snapped within the
  /// radius. Returns the augmented diameter and pairs without committing.
  Json preview(const std::string& id, const Json& body) const;
  Json commit(const std::string& id, const Json& body);
  /// Pops the last commit; returns the restored state's stored report.
  Json undo(const std::string& id);
  Json geometry(const std::string& id) const;
  Json state(const std::string& id) const;
  SearchResult search(const std::string& id, const SearchOptions& options) const;

 private:
  struct State {
    Network net;
    std::shared_ptr<const DistanceOracle> oracle;
    Json report;
    double d = 0.0;
    std::vector<DiametralPair> pairs;
  };
  struct Session {
    mutable std::shared_mutex mutex;
    std::vector<State> stack;
  };
  struct Placement {
    Network net;
    Segment segment;
    LocusPoint p, q;
  };

  static State make_state(Network net);
  static Placement place(const State& s, const Json& body);
  static Json state_json(const std::string& id, const Session& s);
  std::shared_ptr<Session> find(const std::string& id) const;

  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  long next_ = 1;
};

/// HTTP binding of the stateless commands and the session endpoints.
class Service {
 public:
  Service();
  ~Service();
  SessionStore& store();
  /// Port 0 picks a free port. Returns the bound port, or -1.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  bool listen();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace locus
