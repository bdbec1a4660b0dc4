#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mpgcc/core_model.hpp"

namespace mpgcc {

inline constexpr double kRankPivotThreshold = 1e-10;
inline constexpr double kVertexDedupeTol = 1e-7;
inline constexpr std::int64_t kDefaultBasisBudget = 5'000'000;

/// A x = b, x >= 0, with x = (original coordinates, one slack per inequality row).
/// Rows whose right-hand side was negative are sign-flipped so b >= 0.
struct StandardFormLp {
  Matrixd constraint_matrix;
  Vectord rhs;
  Vectord cost;
  int original_dim = 0;
  /// slack_map[r] is the column of the slack attached to inequality row r.
  std::vector<int> slack_map;

  int num_rows() const { return static_cast<int>(constraint_matrix.rows()); }
  int num_cols() const { return static_cast<int>(constraint_matrix.cols()); }
};

StandardFormLp to_standard_form(const Polyhedrond& poly);

/// Indices of a maximal linearly independent subset of the rows of `a`,
/// scanned in order; later rows that are combinations of earlier ones are dropped.
std::vector<int> independent_rows(const Matrixd& a, double pivot_threshold = kRankPivotThreshold);

enum class LpStatus { optimal, infeasible, unbounded };

std::string to_string(LpStatus s);

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  /// Optimal vertex in original coordinates; empty unless optimal.
  Vectord point;
  double value = 0.0;
  /// Basic columns of the standard form (after redundant-row removal), sorted.
  std::vector<int> basis;
};

/// Minimizes cost . x over the polyhedron with a two-phase dense tableau
/// simplex using Bland's smallest-index rule in both phases. The returned
/// point is always a basic feasible solution, hence a vertex.
LpSolution solve_lp(const Polyhedrond& poly, const Vectord& cost);

struct VertexSet {
  std::vector<Vectord> vertices;
  /// First basis (sorted standard-form columns) found for each vertex.
  std::vector<std::vector<int>> bases;
  double dedupe_tol = kVertexDedupeTol;
  /// Pairs of stored vertices closer than 10 * dedupe_tol in the max-norm.
  std::vector<std::pair<int, int>> near_duplicates;

  int size() const { return static_cast<int>(vertices.size()); }
};

/// All extreme points, by solving every basis-sized column subset of the
/// standard form. Throws BudgetError when the number of subsets exceeds
/// `budget`; never truncates.
VertexSet enumerate_vertices(const Polyhedrond& poly, std::int64_t budget = kDefaultBasisBudget,
                             double dedupe_tol = kVertexDedupeTol);

/// True iff the constraints active at x have rank dim. Throws DomainError for
/// points outside the polyhedron.
bool is_vertex(const Polyhedrond& poly, const Vectord& x, double tol = kFeasibilityTol);

/// n choose k, saturating at INT64_MAX.
std::int64_t binomial(int n, int k);

}  // namespace mpgcc
