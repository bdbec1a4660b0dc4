#include <doctest.h>

#include <algorithm>

#include "mpgcc/instance_zoo.hpp"
#include "mpgcc/polytope_lp.hpp"
#include "test_support.hpp"

using namespace mpgcc;

namespace {

bool same_vertex_set(const VertexSet& a, const VertexSet& b, double tol) {
  if (a.size() != b.size()) return false;
  for (const auto& v : a.vertices)
    if (std::none_of(b.vertices.begin(), b.vertices.end(),
                     [&](const Vectord& w) { return (v - w).cwiseAbs().maxCoeff() <= tol; }))
      return false;
  return true;
}

Polyhedrond permute_rows(const Polyhedrond& p, Rng& rng) {
  auto shuffle = [&](const Matrixd& a, const Vectord& b, Matrixd& a2, Vectord& b2) {
    std::vector<int> order(static_cast<std::size_t>(a.rows()));
    for (int k = 0; k < a.rows(); ++k) order[static_cast<std::size_t>(k)] = k;
    for (int s = static_cast<int>(order.size()) - 1; s > 0; --s)
      std::swap(order[static_cast<std::size_t>(s)], order[static_cast<std::size_t>(uniform_index(rng, s + 1))]);
    a2.resize(a.rows(), a.cols());
    b2.resize(b.size());
    for (int k = 0; k < a.rows(); ++k) {
      a2.row(k) = a.row(order[static_cast<std::size_t>(k)]);
      b2(k) = b(order[static_cast<std::size_t>(k)]);
    }
  };
  Matrixd a, g;
  Vectord b, h;
  shuffle(p.eq_matrix, p.eq_rhs, a, b);
  shuffle(p.ineq_matrix, p.ineq_rhs, g, h);
  return Polyhedrond(p.dim, a, b, g, h);
}

}  // namespace

TEST_CASE("to_standard_form") {
  SUBCASE("simplex needs no slacks") {
    const auto lp = to_standard_form(Polyhedrond::simplex(3));
    CHECK(lp.num_rows() == 1);
    CHECK(lp.num_cols() == 3);
    CHECK(lp.slack_map.empty());
    CHECK(lp.constraint_matrix == Matrixd::Ones(1, 3));
    CHECK(lp.rhs(0) == 1.0);
  }
  SUBCASE("one inequality adds one slack") {
    const Polyhedrond box(1, Matrixd(0, 1), Vectord(0), Matrixd::Ones(1, 1), Vectord::Ones(1));
    const auto lp = to_standard_form(box);
    CHECK(lp.constraint_matrix == Matrixd::Ones(1, 2));
    CHECK(lp.rhs == Vectord::Ones(1));
    REQUIRE(lp.slack_map.size() == 1);
    CHECK(lp.slack_map[0] == 1);
  }
  SUBCASE("negative right-hand sides are flipped") {
    const Polyhedrond p(2, Matrixd::Ones(1, 2), Vectord::Constant(1, -1.0), -Matrixd::Ones(1, 2),
                        Vectord::Constant(1, -0.5));
    const auto lp = to_standard_form(p);
    CHECK(lp.rhs.minCoeff() >= 0.0);
    CHECK(lp.constraint_matrix(1, 2) == -1.0);
  }
  SUBCASE("zero-diagonal doubly stochastic, K=4") {
    const auto lp = to_standard_form(zero_diagonal_doubly_stochastic(4));
    CHECK(lp.num_rows() == 9);
    CHECK(lp.slack_map.empty());
    // Rank oracle independent of the elimination used by the solver.
    Eigen::FullPivLU<Matrixd> lu(lp.constraint_matrix);
    CHECK(lu.rank() == 8);
    CHECK(independent_rows(lp.constraint_matrix).size() == 8);
  }
  SUBCASE("free variables are rejected") {
    Polyhedrond p = Polyhedrond::simplex(2);
    p.nonneg = false;
    CHECK_THROWS_AS(to_standard_form(p), DomainError);
  }
}

TEST_CASE("solve_lp: worked examples") {
  const Polyhedrond simplex = Polyhedrond::simplex(3);
  {
    const auto s = solve_lp(simplex, (Vectord(3) << 0, 1, 1).finished());
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(s.point == Vectord::Unit(3, 0));
    CHECK(s.value == 0.0);
  }
  {
    const auto s = solve_lp(simplex, (Vectord(3) << 1, 1, 0).finished());
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(s.point == Vectord::Unit(3, 2));
    CHECK(s.value == 0.0);
  }
  {
    const auto s = solve_lp(Polyhedrond::equalities(3, Matrixd::Ones(1, 3), Vectord::Constant(1, -1.0)),
                            Vectord::Zero(3));
    CHECK(s.status == LpStatus::infeasible);
  }
  SUBCASE("all-tied costs pick the smallest index") {
    const auto s = solve_lp(simplex, Vectord::Constant(3, 1.0 / 3.0));
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(s.point == Vectord::Unit(3, 0));
  }
  SUBCASE("unbounded") {
    const Polyhedrond orthant(2, Matrixd(0, 2), Vectord(0), (Matrixd(1, 2) << 1, -1).finished(), Vectord::Ones(1));
    CHECK(solve_lp(orthant, (Vectord(2) << 0, -1).finished()).status == LpStatus::unbounded);
  }
  SUBCASE("inconsistent redundant rows") {
    Matrixd a(2, 2);
    a << 1, 1, 2, 2;
    const Polyhedrond p = Polyhedrond::equalities(2, a, (Vectord(2) << 1, 3).finished());
    CHECK(solve_lp(p, Vectord::Zero(2)).status == LpStatus::infeasible);
  }
  SUBCASE("cost length mismatch") { CHECK_THROWS_AS(solve_lp(simplex, Vectord::Zero(2)), ShapeError); }
}

TEST_CASE("enumerate_vertices: worked examples") {
  SUBCASE("simplex") {
    const VertexSet v = enumerate_vertices(Polyhedrond::simplex(3));
    REQUIRE(v.size() == 3);
    for (int k = 0; k < 3; ++k) CHECK(v.vertices[static_cast<std::size_t>(k)] == Vectord::Unit(3, k));
  }
  SUBCASE("K=2 forces the anti-diagonal") {
    const VertexSet v = enumerate_vertices(zero_diagonal_doubly_stochastic(2));
    REQUIRE(v.size() == 1);
    CHECK(unvec(v.vertices[0], 2) == (Matrixd(2, 2) << 0, 1, 1, 0).finished());
  }
  SUBCASE("K=4 matches brute force over permutation matrices") {
    int seen = 0;
    const auto ders = mpgcc::testing::derangement_matrices(4, &seen);
    CHECK(seen == 24);
    CHECK(ders.size() == 9);
    const VertexSet v = enumerate_vertices(zero_diagonal_doubly_stochastic(4));
    REQUIRE(v.size() == 9);
    for (const auto& d : ders)
      CHECK(std::any_of(v.vertices.begin(), v.vertices.end(), [&](const Vectord& x) { return x == vec(d); }));
    CHECK(v.near_duplicates.empty());
  }
  SUBCASE("budget is never silently truncated") {
    CHECK_THROWS_AS(enumerate_vertices(zero_diagonal_doubly_stochastic(4), 1000), BudgetError);
  }
  SUBCASE("only nonnegativity") {
    const Polyhedrond orthant(2, Matrixd(0, 2), Vectord(0), Matrixd(0, 2), Vectord(0));
    const VertexSet v = enumerate_vertices(orthant);
    REQUIRE(v.size() == 1);
    CHECK(v.vertices[0] == Vectord::Zero(2));
  }
}

TEST_CASE("is_vertex") {
  const Polyhedrond simplex = Polyhedrond::simplex(3);
  CHECK(is_vertex(simplex, Vectord::Unit(3, 1)));
  CHECK_FALSE(is_vertex(simplex, Vectord::Constant(3, 1.0 / 3.0)));
  CHECK_FALSE(is_vertex(simplex, (Vectord(3) << 0.5, 0.5, 0).finished()));
  CHECK_THROWS_AS(is_vertex(simplex, Vectord::Ones(3)), DomainError);

  const Polyhedrond dsp = zero_diagonal_doubly_stochastic(4);
  const Vectord x2 = mmot_optimal_solution(4).block(1);
  CHECK(is_vertex(dsp, x2));
  // Independent rank count: 9 equality rows have rank 8, and the 12 zero
  // entries add unit rows; together they must span R^16.
  Matrixd active(9 + 12, 16);
  active.topRows(9) = dsp.eq_matrix;
  int r = 9;
  for (int k = 0; k < 16; ++k)
    if (x2(k) == 0.0) active.row(r++) = Eigen::RowVectorXd::Unit(16, k);
  CHECK(r == 21);
  CHECK(Eigen::FullPivLU<Matrixd>(active).rank() == 16);
}

TEST_CASE("property: solve_lp agrees with the vertex oracle and is deterministic") {
  Rng rng(77);
  for (int trial = 0; trial < 12; ++trial) {
    const int m = 2 + uniform_index(rng, 3);
    const Polyhedrond poly = mpgcc::testing::random_polytope(rng, m, trial % 2 == 1);
    const VertexSet verts = enumerate_vertices(poly);
    REQUIRE(verts.size() >= 1);
    for (const auto& v : verts.vertices) CHECK(is_vertex(poly, v));

    for (int t = 0; t < 50; ++t) {
      const Vectord c = mpgcc::testing::random_vector(rng, m);
      const auto s = solve_lp(poly, c);
      REQUIRE(s.status == LpStatus::optimal);
      double best = std::numeric_limits<double>::infinity();
      for (const auto& v : verts.vertices) best = std::min(best, c.dot(v));
      CHECK(std::abs(s.value - best) <= 1e-9);
      CHECK(std::abs(s.value - c.dot(s.point)) <= 1e-9);
      CHECK(is_vertex(poly, s.point));
      const auto again = solve_lp(poly, c);
      CHECK(again.point == s.point);
      CHECK(again.basis == s.basis);
    }

    const VertexSet shuffled = enumerate_vertices(permute_rows(poly, rng));
    CHECK(same_vertex_set(verts, shuffled, verts.dedupe_tol));
  }
}
