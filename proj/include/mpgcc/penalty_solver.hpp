#pragma once

// Extreme-point rounding by successive block LPs, block coordinate descent
// built on it, penalty continuation and seeded multi-start.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mpgcc/core_model.hpp"
#include "mpgcc/polytope_lp.hpp"

namespace mpgcc {

struct SolveOptions {
  double beta = 0.0;
  int max_sweeps = 50;
  /// Relative: a sweep must improve f_beta by at least improvement_tol * (1 + |f_beta|).
  double improvement_tol = 1e-10;
  std::uint64_t seed = 0;
  /// When nonempty, continuation runs over these strictly increasing betas.
  std::vector<double> beta_schedule;

  void validate() const;
};

struct SolveReport {
  BlockPointd point;
  double f_value = 0;
  double p_value = 0;
  double fbeta_value = 0;
  double beta_used = 0;
  int sweeps = 0;
  std::vector<bool> block_is_vertex;
  bool complementary = false;
  /// f_beta after each accepted sweep; nonincreasing.
  std::vector<double> trajectory;
  /// Continuation only: final p after each schedule stage, and notes about
  /// stages where p went up (BCD is local, so this is reported, not enforced).
  std::vector<double> stage_p_values;
  std::vector<std::string> notes;
};

/// One pass of block LPs in order 0..n-1. Block i is minimized with blocks
/// < i already rounded and blocks > i still at z_hat. A block that is already
/// a vertex attaining the LP value is kept as is. Every output block is a
/// vertex and f_beta does not increase.
BlockPointd extreme_point_rounding(const Instanced& inst, double beta, const BlockPointd& z_hat);

/// Repeats rounding sweeps while each sweep strictly improves f_beta.
SolveReport bcd_solve(const Instanced& inst, const SolveOptions& opts, const BlockPointd& z0);

/// bcd_solve at each beta of opts.beta_schedule, warm-started from the previous point.
SolveReport penalty_continuation(const Instanced& inst, const SolveOptions& opts, const BlockPointd& z0);

/// Deterministic start points. With vertex sets, each block is a random
/// convex combination of its vertices; otherwise of LP vertices for random costs.
std::vector<BlockPointd> generate_starts(const Instanced& inst, int num_starts, std::uint64_t seed,
                                         const std::vector<VertexSet>* vertex_sets = nullptr);

struct MultiStartReport {
  SolveReport best;
  int best_start = 0;
  std::vector<double> fbeta_per_start;
  /// Smallest f over runs that ended complementary.
  std::optional<double> best_complementary_f;
};

/// Runs bcd_solve (or continuation when a schedule is set) from each start and
/// keeps the smallest f_beta; ties go to the lowest start index.
MultiStartReport multi_start(const Instanced& inst, const SolveOptions& opts, int num_starts,
                             const std::vector<VertexSet>* vertex_sets = nullptr);

/// Fills the evaluation fields of a report for point z at the given beta.
SolveReport make_report(const Instanced& inst, double beta, const BlockPointd& z);

}  // namespace mpgcc
