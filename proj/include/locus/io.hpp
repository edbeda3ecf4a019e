#pragma once

#include <string>

#include "json.hpp"
#include "locus/augment.hpp"
#include "locus/error.hpp"
#include "locus/gadgets.hpp"
#include "locus/metrics.hpp"
#include "locus/network.hpp"
#include "locus/search.hpp"

namespace locus {

using Json = nlohmann::json;

/// Doubles rounded to 12 significant digits; non-finite values become null.
Json number(double value);

/// {"vertices": [{"id", "x", "y"}], "edges": [[id, id]]}. Coordinates may be
/// decimal or "p/q" strings, or JSON numbers. Throws InvalidInput on shape
/// errors and InvalidNetwork when validate() reports violations.
Network network_from_json(const Json& j);
Network read_network(const std::string& text);
/// Coordinates echo the source text when the vertex carries it.
Json to_json(const Network& net);

Json point_json(const Point& p);
Json locus_point_json(const Network& net, const LocusPoint& p);
Json to_json(const Network& net, const DiameterReport& report);
Json to_json(const ShortcutSet& set);
/// Accepts {"segments": [...]} or a bare list of {"a": {x, y}, "b": {x, y}}.
ShortcutSet shortcut_set_from_json(const Json& j);
Json to_json(const ExistenceVerdict& v);
Json to_json(const Construction& c);
Json to_json(const EpsilonCoverPlan& plan);
Json to_json(const PolygonScn& p);
Json to_json(const SearchProgress& p);
Json to_json(const SearchResult& r);
Json to_json(const ScnOneResult& r);
/// Provenance sidecar: role and indices per vertex id.
Json provenance_json(const GadgetInstance& g);

/// Shortest path between two locus points as a polyline.
std::vector<Point> locus_path(const Network& net, const DistanceOracle& oracle, const LocusPoint& p,
                              const LocusPoint& q);

/// {"error": {"code", "message"}}.
Json error_json(const std::string& code, const std::string& message);
Json error_json(const Error& e);

}  // namespace locus
