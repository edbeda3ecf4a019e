#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "locus/geom.hpp"
#include "locus/network.hpp"

namespace locus {

/// Literals are signed 1-based variable indices.
struct CnfFormula {
  int n = 0;
  std::vector<std::vector<int>> clauses;
  std::size_t m() const { return clauses.size(); }
};

/// Throws MalformedCnf unless every clause has exactly three literals in
/// range, no clause holds a literal and its negation, and the
/// variable-clause incidence graph is connected.
void check_formula(const CnfFormula& phi);
bool satisfiable(const CnfFormula& phi);
/// DIMACS "p cnf n m" text.
CnfFormula parse_dimacs(const std::string& text);
std::string to_dimacs(const CnfFormula& phi);
/// Uniform random valid formula; rejects until check_formula passes.
CnfFormula random_formula(std::mt19937_64& rng, int n, int m);

struct GadgetPoint {
  enum class Role { Clause, Grid };
  Point pos;
  Role role = Role::Clause;
  int var = 0;  // grid: variable index (1-based)
  int k = 0;    // clause: clause index (1-based); grid: row
  int l = 0;    // grid: column
};

/// L_{ij} holds the grid column P^i_{1j}..P^i_{mj}; R_{ij} the row
/// P^i_{j1}..P^i_{jm}. Clause j lies on L_{ij} iff x_i is in it and on
/// R_{ij} iff its negation is.
struct DeclaredLine {
  enum class Family { L, R };
  Family family = Family::L;
  int var = 0;
  int index = 0;
  Line line;
};

struct GadgetInstance {
  CnfFormula formula;
  std::vector<GadgetPoint> points;  // clause points first
  std::vector<DeclaredLine> lines;
  std::uint64_t seed = 0;
  int attempts = 0;
  Network network() const;
};

/// Rows and columns are random rational lines, constrained ones passing
/// through their clause point; grid points are row-column intersections.
/// Retries with derived seeds until verify_gadget passes; throws
/// RetryExhausted naming the seed.
GadgetInstance build_point_cover_instance(const CnfFormula& phi, std::uint64_t seed = 1, int max_attempts = 64);

struct GadgetViolation {
  enum class Kind { Duplicate, Collinearity, Incidence, Genericity };
  Kind kind;
  std::string message;
};

/// Exact checks: declared rows and columns carry their grid points, clause
/// points sit on exactly the declared lines their literals call for, and
/// every other line meets at most two points.
std::vector<GadgetViolation> verify_gadget(const GadgetInstance& g);

struct CoverLine {
  Line line;
  std::vector<int> points;
};

inline constexpr std::size_t kMaxCoverPoints = 14;

/// Smallest cover of size <= budget by exhaustive search over maximal
/// collinear subsets (a single point counts as a line). Throws TooLarge
/// above kMaxCoverPoints points.
std::optional<std::vector<CoverLine>> min_line_cover_bruteforce(const std::vector<Point>& points, int budget);

/// Whether "phi satisfiable" equals "gadget coverable by n m lines", both
/// decided exhaustively. Throws TooLarge when the gadget exceeds the cover cap.
bool scn_reduction_check(const CnfFormula& phi, std::uint64_t seed = 1);

}  // namespace locus
