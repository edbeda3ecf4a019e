#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "locus/geom.hpp"
#include "locus/network.hpp"

namespace locus {

/// Candidate segment p p' with p = (e, t) and p' = (e2, t2).
struct ParamPoint {
  int e = 0;
  int e2 = 0;
  double t = 0.0;
  double t2 = 0.0;
};

struct SearchProgress {
  std::size_t cells = 0;
  std::size_t pruned = 0;
  std::size_t infeasible = 0;
  std::size_t leaves = 0;
  std::size_t evaluations = 0;
  std::size_t open = 0;
  double d = 0.0;
  double best_new_d = 0.0;
};

/// A closed cell of the search: Pruned by the lower bound, Covered by the
/// Lipschitz margin around its evaluated centre, or Infeasible (no legal
/// candidate at its centre and corners, or blocked by one edge in simple mode).
struct SearchCell {
  enum class Status { Pruned, Covered, Infeasible, Feasible };
  int e = 0;
  int e2 = 0;
  double t0 = 0.0, t1 = 1.0, u0 = 0.0, u1 = 1.0;
  double lower_bound = 0.0;
  Status status = Status::Pruned;
};

struct SearchOptions {
  /// Required improvement; <= 0 selects 1e-6 d.
  double gap = 0.0;
  /// Leaf size in arclength; <= 0 selects 1e-3 Lmax.
  double resolution = 0.0;
  /// Only segments whose interior avoids the locus.
  bool simple = false;
  std::size_t max_cells = 200000;
  std::function<void(const SearchProgress&)> progress;
  std::size_t progress_every = 500;
  std::function<void(const SearchCell&)> on_cell;
};

struct SearchResult {
  bool found = false;
  std::optional<Segment> segment;
  std::optional<ParamPoint> at;
  double old_d = 0.0;
  /// Diameter with the returned segment when found; otherwise the best
  /// evaluated candidate.
  double new_d = 0.0;
  /// NONE certifies that no candidate improves the diameter by more than this.
  double certified_gap = 0.0;
  /// Cell budget ran out before the queue emptied; certified_gap then covers
  /// the open cells by their lower bounds.
  bool exhausted = false;
  double gap = 0.0;
  double resolution = 0.0;
  SearchProgress stats;
};

/// Best-first branch-and-prune over all edge pairs. A cell is dropped when a
/// lower bound on diam(N u s), valid for every s in the cell, exceeds d - gap;
/// leaves below `resolution` are covered by the exact value at their centre
/// and the Lipschitz margin 4 (eta_p + eta_q), unless some other edge enters
/// the region their candidates sweep: crossings make the diameter jump, so
/// such leaves keep only their witness bound. Cells are ordered by bound,
/// then creation order, so the result is deterministic.
SearchResult find_shortcut(const Network& net, SearchOptions options = {});
SearchResult find_simple_shortcut(const Network& net, SearchOptions options = {});

struct GridResult {
  double old_d = 0.0;
  double new_d = 0.0;
  std::optional<Segment> segment;
  std::size_t evaluated = 0;
};

/// Exhaustive (k+1) x (k+1) parameter grid over every edge pair.
GridResult grid_shortcut_oracle(const Network& net, int k);

/// Candidate segment for a parameter point; nullopt when degenerate.
std::optional<Segment> candidate_segment(const Network& net, const ParamPoint& p);
/// Diameter after inserting the candidate; nullopt when insertion rejects it.
std::optional<double> evaluate_candidate(const Network& net, const Segment& s);
/// Interior of the segment misses the locus; exact.
bool is_simple_segment(const Network& net, const Segment& s);

/// Lines through two hull vertices (of any hulls) and hull edge lines, each
/// tested exactly; the first stabbing one is returned.
std::optional<Line> stabbing_line(const std::vector<HullPolygon>& hulls);

struct ScnOneResult {
  bool yes = false;
  std::optional<Segment> witness;
  std::optional<Line> line;
};

/// For a disconnected network: a single segment connecting all components
/// exists iff the component hulls admit a stabbing line. The witness is
/// clipped to the components' loci and verified by insertion.
ScnOneResult scn_is_one_disconnected(const Network& net);

}  // namespace locus
