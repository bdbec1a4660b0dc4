#pragma once

// Exhaustive oracles over the vertex lattice (product of the blocks' vertex
// sets) and vertex-level certification of penalty exactness.
//
// Full solution sets contain non-vertex points and cannot be enumerated, so
// the certificates here compare extreme-point optimal sets exactly and probe
// the continuum with sampled convex combinations.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mpgcc/core_model.hpp"
#include "mpgcc/polytope_lp.hpp"

namespace mpgcc {

inline constexpr double kTieTol = 1e-8;
inline constexpr std::int64_t kDefaultLatticeBudget = 10'000'000;

struct LatticeOptions {
  double tie_tol = kTieTol;
  double comp_tol = kComplementarityTol;
  std::int64_t budget = kDefaultLatticeBudget;
};

/// A vertex tuple, one index into each block's VertexSet.
using LatticeIndex = std::vector<int>;

struct LatticeOptima {
  double value = 0;
  std::vector<BlockPointd> argmin;
  /// Same tuples as `argmin`, in lexicographic index order.
  std::vector<LatticeIndex> argmin_indices;
  std::int64_t lattice_size = 0;
  double tie_tol = kTieTol;
};

/// f and p for every vertex tuple, in lexicographic tuple order.
class LatticeTable {
 public:
  LatticeTable(const Instanced& inst, const std::vector<VertexSet>& vertex_sets,
               std::int64_t budget = kDefaultLatticeBudget);

  std::int64_t size() const { return static_cast<std::int64_t>(f_.size()); }
  double f(std::int64_t k) const { return f_[static_cast<std::size_t>(k)]; }
  double p(std::int64_t k) const { return p_[static_cast<std::size_t>(k)]; }
  LatticeIndex index(std::int64_t k) const;
  BlockPointd point(std::int64_t k) const;

  /// min f + beta p over all tuples.
  LatticeOptima penalized(double beta, double tie_tol) const;
  /// min f over tuples with p <= comp_tol; throws LatticeInfeasibleError if none.
  LatticeOptima complementary(double comp_tol, double tie_tol) const;

 private:
  std::vector<VertexSet> sets_;
  std::vector<int> radix_;
  std::vector<double> f_;
  std::vector<double> p_;
};

/// Exact minimum of f_beta over the vertex lattice, with complete argmin.
LatticeOptima brute_force_penalty_opt(const Instanced& inst, double beta, const std::vector<VertexSet>& vertex_sets,
                                      const LatticeOptions& opts = {});

/// Exact minimum of f over complementary vertex tuples, with complete argmin.
LatticeOptima brute_force_mpgcc_opt(const Instanced& inst, const std::vector<VertexSet>& vertex_sets,
                                    const LatticeOptions& opts = {});

struct BetaResult {
  double beta = 0;
  LatticeOptima penalized;
  LatticeOptima feasible;
  /// Every penalized argmin member is complementary and attains the feasible value.
  bool inclusion = false;
  bool sets_equal = false;
};

struct ExactnessReport {
  std::vector<double> beta_grid;
  std::vector<BetaResult> per_beta;
  /// Smallest grid beta from which sets_equal holds for the rest of the grid.
  std::optional<double> beta_bar_estimate;
  /// Bisection between the last failing grid beta and the estimate, if run.
  std::optional<double> refined_beta_bar;
  /// Certification covers the vertex lattice only.
  std::string scope = "vertex lattice";
};

/// 2^-4, 2^-3, ..., 2^12.
std::vector<double> default_beta_grid();

ExactnessReport find_beta_bar(const Instanced& inst, const std::vector<VertexSet>& vertex_sets,
                              const std::vector<double>& grid, const LatticeOptions& opts = {});

/// Narrows report.beta_bar_estimate by `steps` bisection steps against the
/// preceding grid point and stores the result in report.refined_beta_bar.
void refine_beta_bar(const Instanced& inst, const std::vector<VertexSet>& vertex_sets, ExactnessReport& report,
                     int steps = 10, const LatticeOptions& opts = {});

struct CertificationRecord {
  double beta = 0;
  bool vertex_level_equal = false;
  int samples = 0;
  int sampled_violations = 0;
  double feasible_value = 0;
  double penalized_value = 0;
  /// min over samples of f_beta(z) - feasible_value.
  double min_sample_margin = 0;
  std::string scope = "vertex lattice plus sampled convex combinations of vertex tuples";
};

/// Vertex-level set equality plus a randomized check that no sampled point of
/// the product polytope beats the feasible value, and that samples matching it
/// are complementary optima.
CertificationRecord certify_exactness(const Instanced& inst, double beta, const std::vector<VertexSet>& vertex_sets,
                                      int samples, std::uint64_t seed, const LatticeOptions& opts = {});

/// Enumerates every block's vertex set.
std::vector<VertexSet> enumerate_all(const Instanced& inst, std::int64_t basis_budget = kDefaultBasisBudget);

}  // namespace mpgcc
