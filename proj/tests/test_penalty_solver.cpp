#include <doctest.h>

#include "mpgcc/exactness_lab.hpp"
#include "mpgcc/instance_zoo.hpp"
#include "mpgcc/penalty_solver.hpp"
#include "test_support.hpp"

using namespace mpgcc;
using mpgcc::testing::simplex_pair;

namespace {

const Vectord kBary = Vectord::Constant(3, 1.0 / 3.0);

bool all_vertices(const Instanced& inst, const BlockPointd& z) {
  for (int i = 0; i < inst.n_blocks(); ++i)
    if (!is_vertex(inst.polyhedron(i), z.block(i))) return false;
  return true;
}

}  // namespace

TEST_CASE("extreme_point_rounding: worked examples") {
  SUBCASE("barycenters round to (e1, e2) under smallest-index ties") {
    const Instanced inst = simplex_pair(1.0);
    const BlockPointd z_hat({kBary, kBary});
    CHECK(eval_penalized(inst, 0.0, z_hat) == doctest::Approx(1.0 / 3.0));
    const BlockPointd z = extreme_point_rounding(inst, 0.0, z_hat);
    CHECK(z.block(0) == Vectord::Unit(3, 0));
    CHECK(z.block(1) == Vectord::Unit(3, 1));
    CHECK(eval_penalized(inst, 0.0, z) == 0.0);
  }
  SUBCASE("a blockwise-optimal vertex tuple is a fixed point") {
    const Instanced inst = simplex_pair(1.0);
    const BlockPointd z_hat({Vectord::Unit(3, 2), Vectord::Unit(3, 0)});
    CHECK(extreme_point_rounding(inst, 0.0, z_hat) == z_hat);
  }
  SUBCASE("closed-form transport optimum is kept at beta = 10") {
    const Instanced inst = mmot_instance(4);
    const BlockPointd star = mmot_optimal_solution(4);
    // Blockwise LP optimality of Z*, checked against the 9 enumerated vertices.
    const auto ders = mpgcc::testing::derangement_matrices(4);
    for (int i = 0; i < 3; ++i) {
      const auto lin = partial_linearization(inst, 10.0, star, i);
      double best = std::numeric_limits<double>::infinity();
      for (const auto& d : ders) best = std::min(best, lin(vec(d)));
      CHECK(lin(star.block(i)) <= best + 1e-9);
    }
    CHECK(extreme_point_rounding(inst, 10.0, star) == star);
  }
  SUBCASE("infeasible start is rejected") {
    const Instanced inst = simplex_pair(1.0);
    CHECK_THROWS_AS(extreme_point_rounding(inst, 0.0, BlockPointd({Vectord::Ones(3), kBary})), DomainError);
  }
}

TEST_CASE("bcd_solve: worked examples") {
  SolveOptions opts;
  SUBCASE("fixed point takes one sweep") {
    const Instanced inst = simplex_pair(1.0);
    const BlockPointd z0({Vectord::Unit(3, 2), Vectord::Unit(3, 0)});
    const SolveReport r = bcd_solve(inst, opts, z0);
    CHECK(r.sweeps == 1);
    CHECK(r.point == z0);
    CHECK(r.trajectory.size() == 1);
  }
  SUBCASE("unpenalized bilinear maximization reaches an equal pair") {
    const Instanced inst = simplex_pair(-1.0);
    const SolveReport r = bcd_solve(inst, opts, BlockPointd({kBary, kBary}));
    CHECK(r.f_value == -1.0);
    CHECK(r.point.block(0) == r.point.block(1));
    CHECK(r.block_is_vertex == std::vector<bool>{true, true});
    CHECK_FALSE(r.complementary);
  }
  SUBCASE("beta = 2 reaches a disjoint pair") {
    const Instanced inst = simplex_pair(-1.0);
    opts.beta = 2.0;
    const SolveReport r = bcd_solve(inst, opts, BlockPointd({kBary, kBary}));
    CHECK(r.fbeta_value == 0.0);
    CHECK(r.p_value == 0.0);
    CHECK(r.complementary);
    CHECK(r.point.block(0) != r.point.block(1));
  }
  SUBCASE("option validation") {
    const Instanced inst = simplex_pair(1.0);
    const BlockPointd z0({kBary, kBary});
    SolveOptions bad;
    bad.max_sweeps = 0;
    CHECK_THROWS_AS(bcd_solve(inst, bad, z0), DomainError);
    bad = {};
    bad.improvement_tol = 0;
    CHECK_THROWS_AS(bcd_solve(inst, bad, z0), DomainError);
    bad = {};
    bad.beta_schedule = {1.0, 1.0};
    CHECK_THROWS_AS(penalty_continuation(inst, bad, z0), DomainError);
    bad = {};
    CHECK_THROWS_AS(penalty_continuation(inst, bad, z0), DomainError);
  }
}

TEST_CASE("penalty_continuation: worked examples") {
  const Instanced inst = simplex_pair(-1.0);
  const BlockPointd z0({kBary, kBary});
  SUBCASE("schedule [0] equals bcd at beta 0") {
    SolveOptions opts;
    opts.beta_schedule = {0.0};
    const SolveReport a = penalty_continuation(inst, opts, z0);
    const SolveReport b = bcd_solve(inst, SolveOptions{}, z0);
    CHECK(a.point == b.point);
    CHECK(a.fbeta_value == b.fbeta_value);
    CHECK(a.trajectory == b.trajectory);
  }
  SUBCASE("schedule [0.5, 1.5] ends complementary with f = 0") {
    SolveOptions opts;
    opts.beta_schedule = {0.5, 1.5};
    const SolveReport r = penalty_continuation(inst, opts, z0);
    CHECK(r.complementary);
    CHECK(r.f_value == 0.0);
    CHECK(r.fbeta_value == r.f_value);
    CHECK(r.beta_used == 1.5);
    CHECK(r.stage_p_values.size() == 2);
  }
  SUBCASE("transport instance, 20 starts, schedule [1, 10, 100]") {
    const Instanced mmot = mmot_instance(4);
    const auto sets = enumerate_all(mmot);
    const double global = brute_force_mpgcc_opt(mmot, sets).value;
    CHECK(global == doctest::Approx(208.0 / 3.0).epsilon(1e-14));
    SolveOptions opts;
    opts.beta_schedule = {1.0, 10.0, 100.0};
    opts.seed = 3;
    const MultiStartReport r = multi_start(mmot, opts, 20, &sets);
    REQUIRE(r.best_complementary_f.has_value());
    CHECK(std::abs(*r.best_complementary_f - global) <= 1e-9);
  }
}

TEST_CASE("multi_start: worked examples") {
  SUBCASE("one start equals a single bcd run from that start") {
    const Instanced inst = simplex_pair(-1.0);
    SolveOptions opts;
    opts.seed = 9;
    const auto starts = generate_starts(inst, 1, opts.seed);
    const MultiStartReport ms = multi_start(inst, opts, 1);
    const SolveReport single = bcd_solve(inst, opts, starts[0]);
    CHECK(ms.best.point == single.point);
    CHECK(ms.best.fbeta_value == single.fbeta_value);
    CHECK(ms.best_start == 0);
  }
  SUBCASE("simplex pair at beta = 2 finds value 0") {
    const Instanced inst = simplex_pair(-1.0);
    SolveOptions opts;
    opts.beta = 2.0;
    opts.seed = 1;
    CHECK(multi_start(inst, opts, 10).best.fbeta_value == 0.0);
  }
  SUBCASE("transport instance at beta = 100, 50 starts reaches the lattice value") {
    const Instanced mmot = mmot_instance(4);
    const auto sets = enumerate_all(mmot);
    const double global = brute_force_mpgcc_opt(mmot, sets).value;
    SolveOptions opts;
    opts.beta = 100.0;
    opts.seed = 5;
    const MultiStartReport r = multi_start(mmot, opts, 50, &sets);
    REQUIRE(r.best_complementary_f.has_value());
    CHECK(std::abs(*r.best_complementary_f - global) <= 1e-9);
    CHECK(*r.best_complementary_f >= global - 1e-9);
  }
  SUBCASE("deterministic given the seed") {
    const GeneratedInstance g = random_instance(3, 3, 4);
    SolveOptions opts;
    opts.beta = 1.0;
    opts.seed = 12;
    const MultiStartReport a = multi_start(g.instance, opts, 5);
    const MultiStartReport b = multi_start(g.instance, opts, 5);
    CHECK(a.best.point == b.best.point);
    CHECK(a.fbeta_per_start == b.fbeta_per_start);
  }
}

TEST_CASE("property: rounding descends, lands on vertices, and BCD terminates blockwise optimal") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const int n = 2 + static_cast<int>(seed % 2);
    const int m = 2 + static_cast<int>(seed % 3);
    const Instanced inst = random_instance(n, m, 100 + seed).instance;
    const auto sets = enumerate_all(inst);
    const auto starts = generate_starts(inst, 30, seed, &sets);
    for (const double beta : {0.0, 1.0, 8.0}) {
      for (const auto& z_hat : starts) {
        const BlockPointd z = extreme_point_rounding(inst, beta, z_hat);
        CHECK(eval_penalized(inst, beta, z) <= eval_penalized(inst, beta, z_hat) + 1e-9);
        CHECK(all_vertices(inst, z));
      }
      SolveOptions opts;
      opts.beta = beta;
      opts.max_sweeps = 50;
      const SolveReport r = bcd_solve(inst, opts, starts.front());
      CHECK(r.sweeps <= opts.max_sweeps);
      for (std::size_t k = 1; k < r.trajectory.size(); ++k) CHECK(r.trajectory[k] <= r.trajectory[k - 1]);
      CHECK(std::abs(r.fbeta_value - (r.f_value + beta * r.p_value)) <= 1e-9);
      for (int i = 0; i < n; ++i) {
        const auto lin = partial_linearization(inst, beta, r.point, i);
        const LpSolution lp = solve_lp(inst.polyhedron(i), lin.gradient);
        CHECK(lin.gradient.dot(r.point.block(i)) - lp.value <= opts.improvement_tol * (1.0 + std::abs(r.fbeta_value)) + 1e-9);
      }
    }
  }
}
