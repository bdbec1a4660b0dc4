#include "mpgcc/instance_zoo.hpp"

#include <algorithm>
#include <cmath>

#include "mpgcc/polytope_lp.hpp"
#include "mpgcc/random.hpp"

namespace mpgcc {

namespace {

void require_quarter_grid(int K) {
  if (K < 4 || K % 4 != 0) throw DomainError("closed-form solution needs K divisible by 4, got " + std::to_string(K));
}

// Entry (i, j) of a K x K matrix lies on the wrapped offset i - j = d1 or j - i = d2.
bool on_offset(int i, int j, int d1, int d2) { return i - j == d1 || j - i == d2; }

Matrixd offset_matrix(int K, int d1, int d2) {
  Matrixd x = Matrixd::Zero(K, K);
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j)
      if (on_offset(i, j, d1, d2)) x(i, j) = 1.0;
  return x;
}

}  // namespace

Matrixd coulomb_cost(int K) {
  if (K < 2) throw DomainError("coulomb_cost needs K >= 2");
  const double h = 1.0 / K;
  Matrixd c = Matrixd::Zero(K, K);
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j)
      if (i != j) c(i, j) = 1.0 / (std::abs(i - j) * h);
  return c;
}

Vectord vec(const Matrixd& x) { return Eigen::Map<const Vectord>(x.data(), x.size()); }

Matrixd unvec(const Vectord& x, int rows) {
  if (rows <= 0 || x.size() % rows != 0) throw ShapeError("unvec: length not divisible by row count");
  return Eigen::Map<const Matrixd>(x.data(), rows, x.size() / rows);
}

Polyhedrond zero_diagonal_doubly_stochastic(int K) {
  if (K < 2) throw DomainError("polytope needs K >= 2");
  const int m = K * K;
  Matrixd a = Matrixd::Zero(2 * K + 1, m);
  Vectord b = Vectord::Zero(2 * K + 1);
  for (int col = 0; col < K; ++col)
    for (int row = 0; row < K; ++row) {
      const int idx = col * K + row;
      a(row, idx) = 1.0;      // (1^T kron I) vec X = X 1
      a(K + col, idx) = 1.0;  // (I kron 1^T) vec X = X^T 1
    }
  for (int k = 0; k < K; ++k) a(2 * K, k * K + k) = 1.0;
  b.head(2 * K).setOnes();
  return Polyhedrond::equalities(m, std::move(a), std::move(b));
}

Instanced mmot_instance(int K) {
  const Matrixd c = coulomb_cost(K);
  const int m = K * K;
  MultiAffineObjectived obj(3, m);
  const Vectord a = vec(c);
  Matrixd q = Matrixd::Zero(m, m);
  for (int bi = 0; bi < K; ++bi)
    for (int bj = 0; bj < K; ++bj)
      if (c(bi, bj) != 0.0)
        for (int r = 0; r < K; ++r) q(bi * K + r, bj * K + r) = c(bi, bj);
  for (int i = 0; i < 3; ++i) obj.set_linear(i, a);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) obj.set_pairwise(i, j, q);
  const Polyhedrond poly = zero_diagonal_doubly_stochastic(K);
  return Instanced(std::move(obj), {poly, poly, poly});
}

BlockPointd mmot_optimal_solution(int K) {
  require_quarter_grid(K);
  const int q = K / 4;
  return BlockPointd({vec(offset_matrix(K, 3 * q, q)), vec(offset_matrix(K, 2 * q, 2 * q)),
                      vec(offset_matrix(K, q, 3 * q))});
}

BlockPointd mmot_perturbed(int K, double epsilon) {
  require_quarter_grid(K);
  if (K <= 4) throw DomainError("perturbation requires K > 4");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
  const int q = K / 4;
  const Matrixd shifted = offset_matrix(K, 3 * q - 1, q + 1);
  const Matrixd x1 = (1.0 - epsilon) * offset_matrix(K, 3 * q, q) + epsilon * shifted;
  const Matrixd x3 = (1.0 - epsilon) * offset_matrix(K, q, 3 * q) + epsilon * shifted;
  return BlockPointd({vec(x1), vec(offset_matrix(K, 2 * q, 2 * q)), vec(x3)});
}

std::vector<ProbeRow> error_bound_probe(int K, const std::vector<double>& epsilons) {
  const BlockPointd star = mmot_optimal_solution(K);
  std::vector<ProbeRow> rows;
  rows.reserve(epsilons.size());
  for (double eps : epsilons) {
    const BlockPointd z = mmot_perturbed(K, eps);
    ProbeRow row;
    row.epsilon = eps;
    row.p_value = eval_penalty(z);
    row.dist_upper = (star.stacked() - z.stacked()).norm();
    row.ratio = row.dist_upper / row.p_value;
    row.predicted_p = K * eps * eps;
    row.predicted_dist = 2.0 * std::sqrt(static_cast<double>(K)) * eps;
    rows.push_back(row);
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ProbeRow& a, const ProbeRow& b) { return a.epsilon > b.epsilon; });
  return rows;
}

GeneratedInstance random_instance(int n, int m, std::uint64_t seed, int vertex_budget) {
  if (n < 2 || m < 2) throw DomainError("random_instance needs n >= 2 and m >= 2");
  if (2 * m > vertex_budget) throw BudgetError("slab polytope alone has 2m vertices");
  Rng rng(seed);

  std::vector<Polyhedrond> polys;
  for (int i = 0; i < n; ++i) {
    Vectord w(m);
    for (int k = 0; k < m; ++k) w(k) = uniform(rng, 0.5, 1.5);
    const double lo = uniform(rng, 0.5, 1.0);
    const double hi = lo * uniform(rng, 1.5, 2.5);
    const int cuts = uniform_index(rng, 3);

    Matrixd g(2 + cuts, m);
    Vectord rhs(2 + cuts);
    g.row(0) = w.transpose();
    rhs(0) = hi;
    g.row(1) = -w.transpose();
    rhs(1) = -lo;
    for (int c = 0; c < cuts; ++c) {
      Vectord h(m);
      for (int k = 0; k < m; ++k) h(k) = uniform(rng, 0.0, 1.0);
      const double inner = h.cwiseProduct(w.cwiseInverse()).maxCoeff() * lo;
      const double outer = h.cwiseProduct(w.cwiseInverse()).maxCoeff() * hi;
      g.row(2 + c) = h.transpose();
      rhs(2 + c) = inner + uniform(rng, 0.2, 0.8) * (outer - inner);
    }

    // Drop cuts until the vertex count fits the budget.
    for (int keep = cuts; keep >= 0; --keep) {
      Polyhedrond poly(m, Matrixd(0, m), Vectord(0), g.topRows(2 + keep), rhs.head(2 + keep));
      if (keep == 0 || enumerate_vertices(poly).size() <= vertex_budget) {
        polys.push_back(std::move(poly));
        break;
      }
    }
  }

  MultiAffineObjectived obj(n, m);
  for (int i = 0; i < n; ++i) {
    Vectord a(m);
    for (int k = 0; k < m; ++k) a(k) = uniform(rng, -1.0, 1.0);
    obj.set_linear(i, a);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Matrixd q(m, m);
      for (int c = 0; c < m; ++c)
        for (int r = 0; r < m; ++r) q(r, c) = uniform(rng, -1.0, 1.0);
      obj.set_pairwise(i, j, q);
    }

  GeneratedInstance out{Instanced(std::move(obj), std::move(polys)), {}};
  if (n > m)
    out.warnings.push_back("n > m: blocks cannot have pairwise disjoint nonempty supports, "
                           "so no complementary vertex tuple is guaranteed");
  return out;
}

}  // namespace mpgcc
