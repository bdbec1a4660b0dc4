#pragma once

// Problem data for multi-affine programs with generalized complementarity
// constraints, and the evaluation primitives shared by every other module:
// the objective f, the penalty p, the penalized objective f + beta * p and
// the affine restriction of the penalized objective to a single block.
//
// All block and coordinate indices are zero-based.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "mpgcc/errors.hpp"

namespace mpgcc {

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr double kFeasibilityTol = 1e-9;
inline constexpr double kComplementarityTol = 1e-9;

struct BlockCoord {
  int block = 0;
  int coord = 0;

  friend bool operator==(const BlockCoord&, const BlockCoord&) = default;
};

template <typename Scalar>
struct Monomial {
  Scalar coeff{0};
  std::vector<BlockCoord> factors;
};

/// Sparse multi-affine function over n blocks of dimension m:
///   constant + sum_i <a_i, x_i> + sum_{i<j} <x_i, Q_ij x_j> + sum_k c_k prod x_{b,c}.
/// Every monomial touches each block at most once, so the function is affine
/// in any single block with the others held fixed.
template <typename Scalar>
class MultiAffineObjective {
 public:
  using PairKey = std::pair<int, int>;

  MultiAffineObjective(int n_blocks, int block_dim)
      : n_blocks_(n_blocks), block_dim_(block_dim) {
    if (n_blocks < 1 || block_dim < 1)
      throw ShapeError("objective needs n_blocks >= 1 and block_dim >= 1");
    linear_.assign(static_cast<std::size_t>(n_blocks), Vec<Scalar>::Zero(block_dim));
  }

  int n_blocks() const { return n_blocks_; }
  int block_dim() const { return block_dim_; }
  Scalar constant() const { return constant_; }
  const Vec<Scalar>& linear(int i) const { return linear_.at(static_cast<std::size_t>(i)); }
  const std::map<PairKey, Mat<Scalar>>& pairwise() const { return pairwise_; }
  const std::vector<Monomial<Scalar>>& higher_terms() const { return higher_; }

  MultiAffineObjective& set_constant(Scalar c) {
    constant_ = c;
    return *this;
  }

  MultiAffineObjective& set_linear(int i, const Vec<Scalar>& a) {
    check_block(i);
    if (a.size() != block_dim_) throw ShapeError("linear part has wrong length");
    linear_[static_cast<std::size_t>(i)] = a;
    return *this;
  }

  /// Sets the coupling <x_i, Q x_j>; requires i < j.
  MultiAffineObjective& set_pairwise(int i, int j, const Mat<Scalar>& q) {
    check_block(i);
    check_block(j);
    if (i >= j) throw ShapeError("pairwise key requires i < j");
    if (q.rows() != block_dim_ || q.cols() != block_dim_)
      throw ShapeError("pairwise matrix must be block_dim x block_dim");
    pairwise_[{i, j}] = q;
    return *this;
  }

  MultiAffineObjective& add_monomial(Scalar coeff, std::vector<BlockCoord> factors) {
    if (factors.size() < 3) throw ShapeError("higher-order monomials need at least 3 factors");
    for (std::size_t a = 0; a < factors.size(); ++a) {
      check_block(factors[a].block);
      if (factors[a].coord < 0 || factors[a].coord >= block_dim_)
        throw ShapeError("monomial coordinate out of range");
      for (std::size_t b = 0; b < a; ++b)
        if (factors[a].block == factors[b].block)
          throw ShapeError("monomial references block " + std::to_string(factors[a].block) +
                           " twice; objective would not be multi-affine");
    }
    higher_.push_back({coeff, std::move(factors)});
    return *this;
  }

 private:
  void check_block(int i) const {
    if (i < 0 || i >= n_blocks_) throw ShapeError("block index " + std::to_string(i) + " out of range");
  }

  int n_blocks_;
  int block_dim_;
  Scalar constant_{0};
  std::vector<Vec<Scalar>> linear_;
  std::map<PairKey, Mat<Scalar>> pairwise_;
  std::vector<Monomial<Scalar>> higher_;
};

/// { x : A x = b, G x <= g } intersected with the nonnegative orthant when
/// `nonneg` is set.
template <typename Scalar>
struct Polyhedron {
  int dim = 0;
  Mat<Scalar> eq_matrix;
  Vec<Scalar> eq_rhs;
  Mat<Scalar> ineq_matrix;
  Vec<Scalar> ineq_rhs;
  bool nonneg = true;

  Polyhedron() = default;
  Polyhedron(int dim_, Mat<Scalar> a, Vec<Scalar> b, Mat<Scalar> g, Vec<Scalar> h, bool nonneg_ = true)
      : dim(dim_), eq_matrix(std::move(a)), eq_rhs(std::move(b)), ineq_matrix(std::move(g)),
        ineq_rhs(std::move(h)), nonneg(nonneg_) {
    if (eq_matrix.size() == 0) eq_matrix.resize(0, dim);
    if (ineq_matrix.size() == 0) ineq_matrix.resize(0, dim);
    validate();
  }

  static Polyhedron equalities(int dim, Mat<Scalar> a, Vec<Scalar> b) {
    return Polyhedron(dim, std::move(a), std::move(b), Mat<Scalar>(0, dim), Vec<Scalar>(0));
  }

  /// Standard simplex { x >= 0 : sum x = 1 }.
  static Polyhedron simplex(int dim) {
    return equalities(dim, Mat<Scalar>::Ones(1, dim), Vec<Scalar>::Ones(1));
  }

  int num_eq() const { return static_cast<int>(eq_matrix.rows()); }
  int num_ineq() const { return static_cast<int>(ineq_matrix.rows()); }

  void validate() const {
    if (dim < 1) throw ShapeError("polyhedron dimension must be positive");
    if (eq_matrix.cols() != dim || eq_matrix.rows() != eq_rhs.size())
      throw ShapeError("equality block inconsistent with dimension");
    if (ineq_matrix.cols() != dim || ineq_matrix.rows() != ineq_rhs.size())
      throw ShapeError("inequality block inconsistent with dimension");
  }
};

/// Candidate z = (x_1, ..., x_n).
template <typename Scalar>
class BlockPoint {
 public:
  BlockPoint() = default;
  explicit BlockPoint(std::vector<Vec<Scalar>> blocks) : blocks_(std::move(blocks)) {
    for (const auto& b : blocks_)
      if (b.size() != blocks_.front().size()) throw ShapeError("blocks of unequal length");
  }
  static BlockPoint zeros(int n, int m) {
    return BlockPoint(std::vector<Vec<Scalar>>(static_cast<std::size_t>(n), Vec<Scalar>::Zero(m)));
  }

  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  int block_dim() const { return blocks_.empty() ? 0 : static_cast<int>(blocks_.front().size()); }

  const Vec<Scalar>& block(int i) const { return blocks_.at(static_cast<std::size_t>(i)); }
  void set_block(int i, const Vec<Scalar>& x) {
    if (x.size() != block_dim()) throw ShapeError("replacement block has wrong length");
    blocks_.at(static_cast<std::size_t>(i)) = x;
  }
  const std::vector<Vec<Scalar>>& blocks() const { return blocks_; }

  /// Column-stacked z.
  Vec<Scalar> stacked() const {
    Vec<Scalar> out(num_blocks() * block_dim());
    for (int i = 0; i < num_blocks(); ++i) out.segment(i * block_dim(), block_dim()) = block(i);
    return out;
  }

  friend bool operator==(const BlockPoint& a, const BlockPoint& b) {
    if (a.num_blocks() != b.num_blocks()) return false;
    for (int i = 0; i < a.num_blocks(); ++i)
      if (a.block(i) != b.block(i)) return false;
    return true;
  }

 private:
  std::vector<Vec<Scalar>> blocks_;
};

/// Objective plus one nonnegative polyhedron per block. The feasible region of
/// the penalized problem is the product of the polyhedra.
template <typename Scalar>
class Instance {
 public:
  Instance(MultiAffineObjective<Scalar> objective, std::vector<Polyhedron<Scalar>> polyhedra)
      : objective_(std::move(objective)), polyhedra_(std::move(polyhedra)) {
    if (static_cast<int>(polyhedra_.size()) != objective_.n_blocks())
      throw ShapeError("need one polyhedron per block");
    for (const auto& p : polyhedra_) {
      p.validate();
      if (p.dim != objective_.block_dim()) throw ShapeError("polyhedron dimension differs from block_dim");
      if (!p.nonneg) throw ShapeError("instance polyhedra must include x >= 0");
    }
  }

  int n_blocks() const { return objective_.n_blocks(); }
  int block_dim() const { return objective_.block_dim(); }
  const MultiAffineObjective<Scalar>& objective() const { return objective_; }
  const std::vector<Polyhedron<Scalar>>& polyhedra() const { return polyhedra_; }
  const Polyhedron<Scalar>& polyhedron(int i) const { return polyhedra_.at(static_cast<std::size_t>(i)); }

 private:
  MultiAffineObjective<Scalar> objective_;
  std::vector<Polyhedron<Scalar>> polyhedra_;
};

using MultiAffineObjectived = MultiAffineObjective<double>;
using Polyhedrond = Polyhedron<double>;
using BlockPointd = BlockPoint<double>;
using Instanced = Instance<double>;
using Vectord = Vec<double>;
using Matrixd = Mat<double>;

namespace detail {

template <typename Scalar>
void check_point(int n, int m, const BlockPoint<Scalar>& z) {
  if (z.num_blocks() != n || z.block_dim() != m)
    throw ShapeError("point has " + std::to_string(z.num_blocks()) + "x" + std::to_string(z.block_dim()) +
                     " blocks, instance expects " + std::to_string(n) + "x" + std::to_string(m));
}

template <typename Scalar>
Scalar monomial_value(const Monomial<Scalar>& mono, const BlockPoint<Scalar>& z) {
  Scalar v = mono.coeff;
  for (const auto& f : mono.factors) v *= z.block(f.block)(f.coord);
  return v;
}

}  // namespace detail

template <typename Scalar>
Scalar eval_objective(const Instance<Scalar>& inst, const BlockPoint<Scalar>& z) {
  const auto& obj = inst.objective();
  detail::check_point(inst.n_blocks(), inst.block_dim(), z);
  Scalar v = obj.constant();
  for (int i = 0; i < inst.n_blocks(); ++i) v += obj.linear(i).dot(z.block(i));
  for (const auto& [key, q] : obj.pairwise()) v += z.block(key.first).dot(q * z.block(key.second));
  for (const auto& mono : obj.higher_terms()) v += detail::monomial_value(mono, z);
  return v;
}

/// p(z) = sum_{i<j} <x_i, x_j>. Raw bilinear form; no clamping.
template <typename Scalar>
Scalar eval_penalty(const BlockPoint<Scalar>& z) {
  Scalar v{0};
  for (int i = 0; i < z.num_blocks(); ++i)
    for (int j = i + 1; j < z.num_blocks(); ++j) v += z.block(i).dot(z.block(j));
  return v;
}

template <typename Scalar>
Scalar eval_penalized(const Instance<Scalar>& inst, Scalar beta, const BlockPoint<Scalar>& z) {
  return eval_objective(inst, z) + beta * eval_penalty(z);
}

template <typename Scalar>
struct AffineRestriction {
  Vec<Scalar> gradient;
  Scalar offset{0};

  Scalar operator()(const Vec<Scalar>& x) const { return gradient.dot(x) + offset; }
};

/// The penalized objective as an affine function of block i, other blocks held
/// at their values in z: f_beta(z with x_i := x) = <gradient, x> + offset.
template <typename Scalar>
AffineRestriction<Scalar> partial_linearization(const Instance<Scalar>& inst, Scalar beta,
                                                const BlockPoint<Scalar>& z, int i) {
  const auto& obj = inst.objective();
  const int n = inst.n_blocks();
  detail::check_point(n, inst.block_dim(), z);
  if (i < 0 || i >= n) throw ShapeError("block index out of range");

  AffineRestriction<Scalar> r;
  r.gradient = obj.linear(i);
  r.offset = obj.constant();
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    r.offset += obj.linear(j).dot(z.block(j));
    r.gradient += beta * z.block(j);
  }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      if (j != i && k != i) r.offset += beta * z.block(j).dot(z.block(k));

  for (const auto& [key, q] : obj.pairwise()) {
    const auto [a, b] = key;
    if (a == i)
      r.gradient += q * z.block(b);
    else if (b == i)
      r.gradient += q.transpose() * z.block(a);
    else
      r.offset += z.block(a).dot(q * z.block(b));
  }

  for (const auto& mono : obj.higher_terms()) {
    Scalar rest = mono.coeff;
    int coord = -1;
    for (const auto& f : mono.factors) {
      if (f.block == i)
        coord = f.coord;
      else
        rest *= z.block(f.block)(f.coord);
    }
    if (coord >= 0)
      r.gradient(coord) += rest;
    else
      r.offset += rest;
  }
  return r;
}

template <typename Scalar>
struct ComplementarityResidual {
  Scalar p_value{0};
  bool is_complementary = false;
};

/// Penalty value at z after clamping entries in [-tol, 0) to zero. Entries
/// below -tol are rejected because p only measures complementarity on the
/// nonnegative orthant.
template <typename Scalar>
ComplementarityResidual<Scalar> complementarity_residual(const BlockPoint<Scalar>& z,
                                                         Scalar tol = Scalar(kComplementarityTol)) {
  std::vector<Vec<Scalar>> clamped;
  clamped.reserve(static_cast<std::size_t>(z.num_blocks()));
  for (int i = 0; i < z.num_blocks(); ++i) {
    const auto& x = z.block(i);
    if (x.size() > 0 && x.minCoeff() < -tol)
      throw DomainError("block " + std::to_string(i) + " has an entry below -tol");
    clamped.push_back(x.cwiseMax(Scalar(0)));
  }
  const Scalar p = eval_penalty(BlockPoint<Scalar>(std::move(clamped)));
  return {p, p <= tol};
}

template <typename Scalar>
bool check_membership(const Polyhedron<Scalar>& poly, const std::type_identity_t<Vec<Scalar>>& x,
                      Scalar tol = Scalar(kFeasibilityTol)) {
  if (x.size() != poly.dim) throw ShapeError("point dimension differs from polyhedron");
  using std::abs;
  if (poly.num_eq() > 0 && ((poly.eq_matrix * x - poly.eq_rhs).cwiseAbs().maxCoeff() > tol)) return false;
  if (poly.num_ineq() > 0 && ((poly.ineq_matrix * x - poly.ineq_rhs).maxCoeff() > tol)) return false;
  if (poly.nonneg && x.minCoeff() < -tol) return false;
  return true;
}

template <typename Scalar>
bool check_membership(const Instance<Scalar>& inst, const BlockPoint<Scalar>& z,
                      Scalar tol = Scalar(kFeasibilityTol)) {
  detail::check_point(inst.n_blocks(), inst.block_dim(), z);
  for (int i = 0; i < inst.n_blocks(); ++i)
    if (!check_membership(inst.polyhedron(i), z.block(i), tol)) return false;
  return true;
}

}  // namespace mpgcc
