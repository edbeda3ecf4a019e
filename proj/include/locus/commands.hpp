#pragma once

#include <cstdint>
#include <string>

#include "locus/io.hpp"

namespace locus {

// Shared by the command-line tool and the stateless service endpoints.
Json cmd_diameter(const Network& net);
Json cmd_check(const Network& net);
/// Throws HypothesisViolated when the network admits no shortcut set.
Json cmd_fan(const Network& net);
Json cmd_epsilon(const Network& net, double eps);
Json cmd_shortcut(const Network& net, const SearchOptions& options);
Json cmd_scn1(const Network& net);
Json cmd_polygon(const Network& net);
Json cmd_k4(const Network& net);
/// {"network": gadget Network JSON, "provenance": sidecar}.
Json cmd_gen3sat(const std::string& dimacs, std::uint64_t seed);

/// 400 for malformed input, 422 for well-formed input the operation
/// rejects, 500 when a construction fails to verify.
int http_status(ErrorCode code);
/// 1 for user errors, 2 for internal failures.
int exit_code(ErrorCode code);

}  // namespace locus
