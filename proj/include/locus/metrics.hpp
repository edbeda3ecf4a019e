#pragma once

#include <limits>
#include <vector>

#include "locus/network.hpp"

namespace locus {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// All-pairs shortest vertex distances with predecessors. Unreachable pairs
/// hold kInfinity.
class DistanceOracle {
 public:
  explicit DistanceOracle(const Network& net);

  double operator()(int u, int v) const { return dist_[static_cast<std::size_t>(u) * n_ + v]; }
  double edge_length(int edge) const { return lengths_[edge]; }
  std::size_t size() const { return n_; }
  /// Vertex indices of a shortest u-v path, inclusive; empty if unreachable.
  std::vector<int> path(int u, int v) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> dist_;
  std::vector<int> pred_;
  std::vector<double> lengths_;
};

double locus_distance(const Network& net, const DistanceOracle& oracle, const LocusPoint& p,
                      const LocusPoint& q);

/// max over q of d(p, q), computed edge by edge in closed form.
double eccentricity(const Network& net, const DistanceOracle& oracle, const LocusPoint& p);

enum class PairKind { VertexVertex, EdgeEdge, PendantVertexEdge };
const char* to_string(PairKind kind);

struct DiametralPair {
  LocusPoint p;
  LocusPoint q;
  PairKind kind = PairKind::VertexVertex;
  double distance = 0.0;
};

struct DiameterReport {
  double d = 0.0;
  std::vector<DiametralPair> pairs;
};

/// Continuous diameter of a connected network. For every pair of distinct
/// edges the distance between their points is the lower envelope of four
/// affine routes; its maximum over the parameter box sits on a vertex of the
/// arrangement of the route-equality lines and the box sides, so enumerating
/// those vertices gives the exact value. Pairs are pruned by the closed-form
/// two-path bound before enumeration.
DiameterReport continuous_diameter(const Network& net);
DiameterReport continuous_diameter(const Network& net, const DistanceOracle& oracle);
/// Value only; skips pair reconstruction.
double diameter_value(const Network& net, const DistanceOracle& oracle);
double diameter_value(const Network& net);

/// Independent route: the three-step vertex / two-path / pendant formulas,
/// keeping only candidates whose realizing positions exist and re-verify.
double step_formula_diameter(const Network& net, const DistanceOracle& oracle);

/// Brute force over k+1 evenly spaced points per edge.
double sampled_diameter(const Network& net, int k);

}  // namespace locus
