#include "locus/commands.hpp"

namespace locus {

Json cmd_diameter(const Network& net) {
  if (!is_connected(net)) throw Error(ErrorCode::Disconnected, "diameter needs a connected network");
  return to_json(net, continuous_diameter(net));
}

Json cmd_check(const Network& net) { return to_json(admits_shortcut_set(net)); }

Json cmd_fan(const Network& net) {
  ExistenceVerdict v = admits_shortcut_set(net);
  if (!v.admits) {
    throw Error(ErrorCode::HypothesisViolated, "network admits no shortcut set: vertices " +
                                                   std::to_string(v.witness->first) + " and " +
                                                   std::to_string(v.witness->second) + " span a contained segment");
  }
  return to_json(fan_shortcut_set(net));
}

Json cmd_epsilon(const Network& net, double eps) { return to_json(epsilon_shortcut_set(net, eps)); }

Json cmd_shortcut(const Network& net, const SearchOptions& options) {
  return to_json(options.simple ? find_simple_shortcut(net, options) : find_shortcut(net, options));
}

Json cmd_scn1(const Network& net) { return to_json(scn_is_one_disconnected(net)); }

Json cmd_polygon(const Network& net) {
  bool convex = is_convex_polygon(net);
  Json out = to_json(polygon_scn(net));
  out["convex"] = convex;
  return out;
}

Json cmd_k4(const Network& net) { return to_json(k4_shortcut(net)); }

Json cmd_gen3sat(const std::string& dimacs, std::uint64_t seed) {
  GadgetInstance g = build_point_cover_instance(parse_dimacs(dimacs), seed);
  return {{"network", to_json(g.network())}, {"provenance", provenance_json(g)}};
}

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput:
    case ErrorCode::InvalidNetwork:
    case ErrorCode::MalformedCnf:
      return 400;
    case ErrorCode::VerificationExhausted:
    case ErrorCode::RetryExhausted:
      return 500;
    default:
      return 422;
  }
}

int exit_code(ErrorCode code) { return http_status(code) == 500 ? 2 : 1; }

}  // namespace locus
