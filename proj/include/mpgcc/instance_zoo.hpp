#pragma once

// Generators for the three-marginal Coulomb transport instance, its closed-form
// solution and perturbation, the error-bound probe, and seeded random
// desk-scale instances.

#include <cstdint>
#include <string>
#include <vector>

#include "mpgcc/core_model.hpp"

namespace mpgcc {

/// Grid of the discretized transport instance: n = 3 blocks, m = K * K, h = 1 / K.
struct MmotSpec {
  int K = 4;

  double h() const { return 1.0 / K; }
  int n() const { return 3; }
  int m() const { return K * K; }
};

/// C_ij = 1 / (|i - j| h) off the diagonal, 0 on it.
Matrixd coulomb_cost(int K);

/// Column-stacking vectorization and its inverse.
Vectord vec(const Matrixd& x);
Matrixd unvec(const Vectord& x, int rows);

/// Three blocks over { X 1 = 1, X^T 1 = 1, trace X = 0, X >= 0 } with
/// f = sum_i <X_i, C> + sum_{i<j} <X_i, X_j C>, stored as a_i = vec(C) and
/// Q_ij = C kron I.
Instanced mmot_instance(int K);

/// Polyhedron of zero-diagonal doubly stochastic K x K matrices, vectorized.
Polyhedrond zero_diagonal_doubly_stochastic(int K);

/// Closed-form optimum Z* for K divisible by 4; three derangement matrices.
BlockPointd mmot_optimal_solution(int K);

/// Z(eps): X_2 = X_2*, X_1 and X_3 move eps of mass onto shifted offsets.
/// Requires K % 4 == 0, K > 4 and eps in (0, 1).
BlockPointd mmot_perturbed(int K, double epsilon);

struct ProbeRow {
  double epsilon = 0;
  double p_value = 0;
  /// ||Z* - Z(eps)||, an upper bound on dist(Z(eps), F).
  double dist_upper = 0;
  double ratio = 0;
  double predicted_p = 0;
  double predicted_dist = 0;
};

/// One row per epsilon, sorted by epsilon descending.
std::vector<ProbeRow> error_bound_probe(int K, const std::vector<double>& epsilons);

inline const std::vector<double>& default_probe_epsilons() {
  static const std::vector<double> eps{0.1, 0.01, 0.001};
  return eps;
}

struct GeneratedInstance {
  Instanced instance;
  std::vector<std::string> warnings;
};

/// Seeded random instance. Each block lies in a slab
///   { x >= 0 : lo <= w . x <= hi }
/// cut by a few random inequalities that keep every inner axis point
/// (lo / w_k) e_k, so n <= m distinct axes give complementary vertex tuples.
/// Linear parts and pairwise couplings are uniform in [-1, 1].
GeneratedInstance random_instance(int n, int m, std::uint64_t seed, int vertex_budget = 64);

}  // namespace mpgcc
