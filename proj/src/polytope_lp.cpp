#include "mpgcc/polytope_lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mpgcc {

namespace {

constexpr double kPivotEps = 1e-9;
constexpr double kSnapZero = 1e-12;
constexpr int kMaxPivots = 200000;

double residual_scale(const Vectord& b) { return 1.0 + (b.size() ? b.cwiseAbs().maxCoeff() : 0.0); }

bool satisfies_rows(const StandardFormLp& lp, const Vectord& full) {
  if (lp.num_rows() == 0) return true;
  const double res = (lp.constraint_matrix * full - lp.rhs).cwiseAbs().maxCoeff();
  return res <= 1e-8 * residual_scale(lp.rhs);
}

void snap(Vectord& x) {
  for (Eigen::Index k = 0; k < x.size(); ++k)
    if (std::abs(x(k)) < kSnapZero) x(k) = 0.0;
}

// Dense tableau in canonical form with respect to `basis`.
class Tableau {
 public:
  Tableau(Matrixd t, Vectord rhs, std::vector<int> basis)
      : t_(std::move(t)), rhs_(std::move(rhs)), basis_(std::move(basis)) {}

  void set_cost(const Vectord& cost) {
    reduced_ = cost;
    for (int i = 0; i < rows(); ++i) reduced_ -= cost(basis_[static_cast<std::size_t>(i)]) * t_.row(i).transpose();
    value_ = 0.0;
    for (int i = 0; i < rows(); ++i) value_ += cost(basis_[static_cast<std::size_t>(i)]) * rhs_(i);
  }

  // Bland's rule: smallest entering index with negative reduced cost, ties in
  // the ratio test broken by smallest basic variable index.
  LpStatus run(int usable_cols, double cost_scale) {
    const double eps = kPivotEps * std::max(1.0, cost_scale);
    for (int iter = 0; iter < kMaxPivots; ++iter) {
      int enter = -1;
      for (int j = 0; j < usable_cols; ++j)
        if (reduced_(j) < -eps) {
          enter = j;
          break;
        }
      if (enter < 0) return LpStatus::optimal;

      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows(); ++i) {
        const double a = t_(i, enter);
        if (a <= kPivotEps) continue;
        const double ratio = rhs_(i) / a;
        if (leave < 0) {
          best = ratio;
          leave = i;
          continue;
        }
        const double slack = 1e-12 * std::max(1.0, std::abs(best));
        if (ratio < best - slack) {
          best = ratio;
          leave = i;
        } else if (ratio <= best + slack &&
                   basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)]) {
          leave = i;
        }
      }
      if (leave < 0) return LpStatus::unbounded;
      pivot(leave, enter);
    }
    throw ModelError("simplex pivot limit reached");
  }

  void pivot(int row, int col) {
    const double p = t_(row, col);
    t_.row(row) /= p;
    rhs_(row) /= p;
    for (int i = 0; i < rows(); ++i) {
      if (i == row) continue;
      const double f = t_(i, col);
      if (f == 0.0) continue;
      t_.row(i) -= f * t_.row(row);
      rhs_(i) -= f * rhs_(row);
      t_(i, col) = 0.0;
    }
    const double d = reduced_(col);
    if (d != 0.0) {
      reduced_ -= d * t_.row(row).transpose();
      value_ += d * rhs_(row);
      reduced_(col) = 0.0;
    }
    basis_[static_cast<std::size_t>(row)] = col;
  }

  int rows() const { return static_cast<int>(t_.rows()); }
  double value() const { return value_; }
  const Matrixd& table() const { return t_; }
  const Vectord& rhs() const { return rhs_; }
  std::vector<int>& basis() { return basis_; }

  void drop_row(int row) {
    Matrixd t(t_.rows() - 1, t_.cols());
    Vectord r(rhs_.size() - 1);
    int k = 0;
    for (int i = 0; i < rows(); ++i) {
      if (i == row) continue;
      t.row(k) = t_.row(i);
      r(k) = rhs_(i);
      ++k;
    }
    t_ = std::move(t);
    rhs_ = std::move(r);
    basis_.erase(basis_.begin() + row);
  }

  void keep_cols(int n) { t_.conservativeResize(Eigen::NoChange, n); }

 private:
  Matrixd t_;
  Vectord rhs_;
  std::vector<int> basis_;
  Vectord reduced_;
  double value_ = 0.0;
};

StandardFormLp reduced(const StandardFormLp& lp) {
  const auto rows = independent_rows(lp.constraint_matrix);
  StandardFormLp out = lp;
  out.constraint_matrix.resize(static_cast<Eigen::Index>(rows.size()), lp.num_cols());
  out.rhs.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    out.constraint_matrix.row(static_cast<Eigen::Index>(k)) = lp.constraint_matrix.row(rows[k]);
    out.rhs(static_cast<Eigen::Index>(k)) = lp.rhs(rows[k]);
  }
  return out;
}

}  // namespace

std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
  }
  return "unknown";
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    const std::int64_t num = n - k + i;
    if (r > std::numeric_limits<std::int64_t>::max() / num) return std::numeric_limits<std::int64_t>::max();
    r = r * num / i;
  }
  return r;
}

StandardFormLp to_standard_form(const Polyhedrond& poly) {
  poly.validate();
  if (!poly.nonneg) throw DomainError("standard form requires x >= 0");
  const int m = poly.dim;
  const int ne = poly.num_eq();
  const int ni = poly.num_ineq();

  StandardFormLp lp;
  lp.original_dim = m;
  lp.constraint_matrix = Matrixd::Zero(ne + ni, m + ni);
  lp.rhs = Vectord::Zero(ne + ni);
  lp.cost = Vectord::Zero(m + ni);
  if (ne > 0) {
    lp.constraint_matrix.topLeftCorner(ne, m) = poly.eq_matrix;
    lp.rhs.head(ne) = poly.eq_rhs;
  }
  for (int r = 0; r < ni; ++r) {
    lp.constraint_matrix.block(ne + r, 0, 1, m) = poly.ineq_matrix.row(r);
    lp.constraint_matrix(ne + r, m + r) = 1.0;
    lp.rhs(ne + r) = poly.ineq_rhs(r);
    lp.slack_map.push_back(m + r);
  }
  for (int r = 0; r < ne + ni; ++r)
    if (lp.rhs(r) < 0) {
      lp.constraint_matrix.row(r) *= -1.0;
      lp.rhs(r) = -lp.rhs(r);
    }
  return lp;
}

std::vector<int> independent_rows(const Matrixd& a, double pivot_threshold) {
  // Row echelon elimination in scan order; each kept row is reduced against
  // earlier pivots and stored with its own pivot column.
  std::vector<int> kept;
  std::vector<Eigen::RowVectorXd> reduced_rows;
  std::vector<int> pivots;
  for (int r = 0; r < a.rows(); ++r) {
    Eigen::RowVectorXd row = a.row(r);
    const double scale = std::max(1.0, row.cwiseAbs().maxCoeff());
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      const double f = row(pivots[k]);
      if (f != 0.0) row -= f * reduced_rows[k];
    }
    Eigen::Index col = 0;
    const double mag = row.size() ? row.cwiseAbs().maxCoeff(&col) : 0.0;
    if (mag <= pivot_threshold * scale) continue;
    row /= row(col);
    kept.push_back(r);
    pivots.push_back(static_cast<int>(col));
    reduced_rows.push_back(std::move(row));
  }
  return kept;
}

LpSolution solve_lp(const Polyhedrond& poly, const Vectord& cost) {
  if (cost.size() != poly.dim) throw ShapeError("cost length differs from polyhedron dimension");
  const StandardFormLp full = to_standard_form(poly);
  const StandardFormLp lp = reduced(full);
  const int r = lp.num_rows();
  const int n = lp.num_cols();
  const int m = lp.original_dim;

  Vectord std_cost = Vectord::Zero(n);
  std_cost.head(m) = cost;
  const double cost_scale = cost.size() ? cost.cwiseAbs().maxCoeff() : 0.0;

  LpSolution sol;

  // Phase 1 on [A | I] with the artificials as starting basis.
  Matrixd t(r, n + r);
  t << lp.constraint_matrix, Matrixd::Identity(r, r);
  std::vector<int> basis(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) basis[static_cast<std::size_t>(i)] = n + i;
  Tableau tab(std::move(t), lp.rhs, std::move(basis));
  Vectord phase1 = Vectord::Zero(n + r);
  phase1.tail(r).setOnes();
  tab.set_cost(phase1);
  tab.run(n + r, 1.0);
  if (tab.value() > 1e-8 * residual_scale(lp.rhs)) {
    sol.status = LpStatus::infeasible;
    return sol;
  }

  // Drive zero-level artificials out of the basis.
  for (int i = 0; i < tab.rows();) {
    if (tab.basis()[static_cast<std::size_t>(i)] < n) {
      ++i;
      continue;
    }
    int col = -1;
    for (int j = 0; j < n; ++j)
      if (std::abs(tab.table()(i, j)) > kPivotEps) {
        col = j;
        break;
      }
    if (col >= 0) {
      tab.pivot(i, col);
      ++i;
    } else {
      tab.drop_row(i);
    }
  }
  tab.keep_cols(n);

  tab.set_cost(std_cost);
  const LpStatus st = tab.run(n, cost_scale);
  if (st == LpStatus::unbounded) {
    sol.status = LpStatus::unbounded;
    return sol;
  }

  std::vector<int> b = tab.basis();
  std::sort(b.begin(), b.end());
  Vectord full_x = Vectord::Zero(n);
  if (!b.empty()) {
    Matrixd ab(lp.num_rows(), static_cast<Eigen::Index>(b.size()));
    for (std::size_t k = 0; k < b.size(); ++k) ab.col(static_cast<Eigen::Index>(k)) = lp.constraint_matrix.col(b[k]);
    Vectord xb;
    if (ab.rows() == ab.cols()) {
      xb = ab.partialPivLu().solve(lp.rhs);
    } else {
      // Only reachable if a redundant row slipped through elimination.
      xb = ab.colPivHouseholderQr().solve(lp.rhs);
    }
    for (std::size_t k = 0; k < b.size(); ++k) full_x(b[k]) = xb(static_cast<Eigen::Index>(k));
  }
  snap(full_x);
  full_x = full_x.cwiseMax(0.0);
  if (!satisfies_rows(full, full_x)) {
    sol.status = LpStatus::infeasible;
    return sol;
  }
  sol.status = LpStatus::optimal;
  sol.point = full_x.head(m);
  sol.value = cost.dot(sol.point);
  sol.basis = std::move(b);
  return sol;
}

VertexSet enumerate_vertices(const Polyhedrond& poly, std::int64_t budget, double dedupe_tol) {
  const StandardFormLp full = to_standard_form(poly);
  const StandardFormLp lp = reduced(full);
  const int r = lp.num_rows();
  const int n = lp.num_cols();
  const int m = lp.original_dim;

  const std::int64_t count = binomial(n, r);
  if (count > budget)
    throw BudgetError(std::to_string(count) + " candidate bases exceed budget " + std::to_string(budget));

  VertexSet out;
  out.dedupe_tol = dedupe_tol;

  std::vector<int> idx(static_cast<std::size_t>(r));
  for (int k = 0; k < r; ++k) idx[static_cast<std::size_t>(k)] = k;
  Matrixd ab(r, r);
  while (true) {
    for (int k = 0; k < r; ++k) ab.col(k) = lp.constraint_matrix.col(idx[static_cast<std::size_t>(k)]);
    Vectord full_x = Vectord::Zero(n);
    bool ok = true;
    if (r > 0) {
      Eigen::FullPivLU<Matrixd> lu(ab);
      lu.setThreshold(kRankPivotThreshold);
      if (lu.rank() < r) {
        ok = false;
      } else {
        const Vectord xb = lu.solve(lp.rhs);
        if (xb.minCoeff() < -kFeasibilityTol) ok = false;
        for (int k = 0; k < r; ++k) full_x(idx[static_cast<std::size_t>(k)]) = xb(k);
      }
    }
    if (ok) {
      snap(full_x);
      full_x = full_x.cwiseMax(0.0);
      ok = satisfies_rows(full, full_x);
    }
    if (ok) {
      const Vectord x = full_x.head(m);
      const bool seen = std::any_of(out.vertices.begin(), out.vertices.end(), [&](const Vectord& v) {
        return (v - x).cwiseAbs().maxCoeff() <= dedupe_tol;
      });
      if (!seen) {
        out.vertices.push_back(x);
        out.bases.push_back(idx);
      }
    }

    // Next combination in lexicographic order.
    int k = r - 1;
    while (k >= 0 && idx[static_cast<std::size_t>(k)] == n - r + k) --k;
    if (k < 0) break;
    ++idx[static_cast<std::size_t>(k)];
    for (int j = k + 1; j < r; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }

  for (int a = 0; a < out.size(); ++a)
    for (int b = a + 1; b < out.size(); ++b)
      if ((out.vertices[static_cast<std::size_t>(a)] - out.vertices[static_cast<std::size_t>(b)]).cwiseAbs().maxCoeff() <=
          10.0 * dedupe_tol)
        out.near_duplicates.emplace_back(a, b);
  return out;
}

bool is_vertex(const Polyhedrond& poly, const Vectord& x, double tol) {
  if (!check_membership(poly, x, tol)) throw DomainError("is_vertex called on a point outside the polyhedron");
  std::vector<Eigen::RowVectorXd> active;
  for (int r = 0; r < poly.num_eq(); ++r) active.push_back(poly.eq_matrix.row(r));
  for (int r = 0; r < poly.num_ineq(); ++r)
    if (poly.ineq_rhs(r) - poly.ineq_matrix.row(r).dot(x) <= tol) active.push_back(poly.ineq_matrix.row(r));
  if (poly.nonneg)
    for (int k = 0; k < poly.dim; ++k)
      if (x(k) <= tol) active.push_back(Eigen::RowVectorXd::Unit(poly.dim, k));
  if (static_cast<int>(active.size()) < poly.dim) return false;
  Matrixd a(static_cast<Eigen::Index>(active.size()), poly.dim);
  for (std::size_t k = 0; k < active.size(); ++k) a.row(static_cast<Eigen::Index>(k)) = active[k];
  Eigen::ColPivHouseholderQR<Matrixd> qr(a);
  qr.setThreshold(kFeasibilityTol);
  return qr.rank() == poly.dim;
}

}  // namespace mpgcc
