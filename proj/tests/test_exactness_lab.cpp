#include <doctest.h>

#include <set>

#include "mpgcc/exactness_lab.hpp"
#include "mpgcc/instance_zoo.hpp"
#include "mpgcc/penalty_solver.hpp"
#include "test_support.hpp"

using namespace mpgcc;
using mpgcc::testing::simplex_pair;

namespace {

// Hand enumeration of the 9 simplex-vertex pairs: pairs (i, j) of vertex indices.
std::set<std::pair<int, int>> index_pairs(const LatticeOptima& o) {
  std::set<std::pair<int, int>> out;
  for (const auto& idx : o.argmin_indices) out.emplace(idx[0], idx[1]);
  return out;
}

std::set<std::pair<int, int>> disjoint_pairs() {
  std::set<std::pair<int, int>> out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) out.emplace(i, j);
  return out;
}

Polyhedrond point_polytope(const Vectord& x) {
  const int m = static_cast<int>(x.size());
  return Polyhedrond::equalities(m, Matrixd::Identity(m, m), x);
}

}  // namespace

TEST_CASE("brute_force_penalty_opt: worked examples") {
  const Instanced inst = simplex_pair(-1.0);
  const auto sets = enumerate_all(inst);
  SUBCASE("beta = 2: the six disjoint pairs at value 0") {
    const LatticeOptima o = brute_force_penalty_opt(inst, 2.0, sets);
    CHECK(o.value == 0.0);
    CHECK(o.lattice_size == 9);
    CHECK(index_pairs(o) == disjoint_pairs());
  }
  SUBCASE("beta = 0: the three equal pairs at value -1") {
    const LatticeOptima o = brute_force_penalty_opt(inst, 0.0, sets);
    CHECK(o.value == -1.0);
    CHECK(index_pairs(o) == std::set<std::pair<int, int>>{{0, 0}, {1, 1}, {2, 2}});
  }
  SUBCASE("single-vertex blocks") {
    MultiAffineObjectived obj(2, 2);
    obj.set_pairwise(0, 1, Matrixd::Ones(2, 2));
    const Instanced single(obj, {point_polytope(Vectord::Unit(2, 0)), point_polytope(Vectord::Unit(2, 0))});
    const auto s = enumerate_all(single);
    const LatticeOptima o = brute_force_penalty_opt(single, 3.7, s);
    REQUIRE(o.argmin.size() == 1);
    CHECK(o.argmin[0] == BlockPointd({Vectord::Unit(2, 0), Vectord::Unit(2, 0)}));
    CHECK(o.value == doctest::Approx(1.0 + 3.7));
  }
  SUBCASE("budget") {
    LatticeOptions opts;
    opts.budget = 8;
    CHECK_THROWS_AS(brute_force_penalty_opt(inst, 1.0, sets, opts), BudgetError);
  }
}

TEST_CASE("brute_force_mpgcc_opt: worked examples") {
  SUBCASE("simplex pair") {
    const Instanced inst = simplex_pair(-1.0);
    const LatticeOptima o = brute_force_mpgcc_opt(inst, enumerate_all(inst));
    CHECK(o.value == 0.0);
    CHECK(index_pairs(o) == disjoint_pairs());
  }
  SUBCASE("transport instance, K = 2, has no complementary tuple") {
    const Instanced inst = mmot_instance(2);
    CHECK_THROWS_AS(brute_force_mpgcc_opt(inst, enumerate_all(inst)), LatticeInfeasibleError);
  }
  SUBCASE("transport instance, K = 4, matches the closed form") {
    const Instanced inst = mmot_instance(4);
    const auto sets = enumerate_all(inst);
    const LatticeOptima o = brute_force_mpgcc_opt(inst, sets);
    CHECK(o.lattice_size == 729);
    CHECK(std::abs(o.value - eval_objective(inst, mmot_optimal_solution(4))) <= 1e-9);
    // numpy oracle: all 24 complementary derangement triples attain 208/3.
    CHECK(o.argmin.size() == 24);
    CHECK(std::find(o.argmin.begin(), o.argmin.end(), mmot_optimal_solution(4)) != o.argmin.end());
  }
}

TEST_CASE("find_beta_bar: worked examples") {
  SUBCASE("simplex pair on {0.5, 1, 2, 4}") {
    const Instanced inst = simplex_pair(-1.0);
    const auto sets = enumerate_all(inst);
    ExactnessReport r = find_beta_bar(inst, sets, {0.5, 1.0, 2.0, 4.0});
    REQUIRE(r.per_beta.size() == 4);
    CHECK_FALSE(r.per_beta[0].sets_equal);
    CHECK_FALSE(r.per_beta[1].sets_equal);
    CHECK(r.per_beta[2].sets_equal);
    CHECK(r.per_beta[3].sets_equal);
    CHECK_FALSE(r.per_beta[0].inclusion);
    CHECK_FALSE(r.per_beta[1].inclusion);
    CHECK(r.per_beta[1].penalized.argmin.size() == 9);
    REQUIRE(r.beta_bar_estimate.has_value());
    CHECK(*r.beta_bar_estimate == 2.0);

    refine_beta_bar(inst, sets, r);
    REQUIRE(r.refined_beta_bar.has_value());
    CHECK(*r.refined_beta_bar > 1.0);
    CHECK(*r.refined_beta_bar <= 1.0 + 1.0 / 1024.0);
  }
  SUBCASE("separable objective with a complementary optimum") {
    MultiAffineObjectived obj(2, 3);
    obj.set_linear(0, (Vectord(3) << -1, 0, 0).finished());
    obj.set_linear(1, (Vectord(3) << 0, -1, 0).finished());
    const Instanced inst(obj, {Polyhedrond::simplex(3), Polyhedrond::simplex(3)});
    const ExactnessReport r = find_beta_bar(inst, enumerate_all(inst), {0.25, 1.0, 4.0});
    for (const auto& b : r.per_beta) CHECK(b.sets_equal);
    CHECK(r.beta_bar_estimate == 0.25);
  }
  SUBCASE("transport instance, K = 4, default grid") {
    const Instanced inst = mmot_instance(4);
    const ExactnessReport r = find_beta_bar(inst, enumerate_all(inst), default_beta_grid());
    REQUIRE(r.beta_bar_estimate.has_value());
    // numpy oracle over the 729 triples.
    CHECK(*r.beta_bar_estimate == 8.0);
    CHECK(r.per_beta.front().penalized.value == doctest::Approx(24.75));
  }
  SUBCASE("grid validation") {
    const Instanced inst = simplex_pair(-1.0);
    const auto sets = enumerate_all(inst);
    CHECK_THROWS_AS(find_beta_bar(inst, sets, {}), DomainError);
    CHECK_THROWS_AS(find_beta_bar(inst, sets, {1.0, 0.5}), DomainError);
  }
}

TEST_CASE("certify_exactness: worked examples") {
  const Instanced inst = simplex_pair(-1.0);
  const auto sets = enumerate_all(inst);
  SUBCASE("beta = 2") {
    const CertificationRecord c = certify_exactness(inst, 2.0, sets, 1000, 17);
    CHECK(c.vertex_level_equal);
    CHECK(c.sampled_violations == 0);
    CHECK(c.samples == 1000);
    CHECK(c.min_sample_margin >= 0.0);
  }
  SUBCASE("beta = 0.5") {
    const CertificationRecord c = certify_exactness(inst, 0.5, sets, 1000, 17);
    CHECK_FALSE(c.vertex_level_equal);
    CHECK(c.sampled_violations > 0);
  }
  SUBCASE("constant penalized objective on a single point") {
    MultiAffineObjectived obj(2, 2);
    obj.set_constant(4.0);
    const Instanced single(obj, {point_polytope(Vectord::Unit(2, 0)), point_polytope(Vectord::Unit(2, 1))});
    const CertificationRecord c = certify_exactness(single, 1.0, enumerate_all(single), 100, 1);
    CHECK(c.vertex_level_equal);
    CHECK(c.sampled_violations == 0);
  }
}

TEST_CASE("property: monotone lattice values, inclusion chain and multi-start cross-check") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const int n = 2 + static_cast<int>(seed % 2);
    const int m = 3 + static_cast<int>(seed % 2);
    const Instanced inst = random_instance(n, m, 500 + seed).instance;
    const auto sets = enumerate_all(inst);
    const ExactnessReport r = find_beta_bar(inst, sets, default_beta_grid());
    const double pval = r.per_beta.front().feasible.value;
    REQUIRE(r.beta_bar_estimate.has_value());

    for (std::size_t k = 0; k < r.per_beta.size(); ++k) {
      const auto& b = r.per_beta[k];
      CHECK(b.penalized.value <= pval + 1e-9);
      if (k > 0) CHECK(b.penalized.value >= r.per_beta[k - 1].penalized.value - 1e-12);
      if (b.beta >= *r.beta_bar_estimate) {
        CHECK(b.inclusion);
        CHECK(std::abs(b.penalized.value - pval) <= 1e-9);
        // Every feasible-problem optimum attains the penalized lattice value.
        for (const auto& z : b.feasible.argmin)
          CHECK(std::abs(eval_penalized(inst, b.beta, z) - b.penalized.value) <= b.feasible.tie_tol);
      }
    }

    SolveOptions opts;
    opts.beta_schedule = {1.0, 16.0, 256.0};
    opts.seed = seed;
    const MultiStartReport ms = multi_start(inst, opts, 10, &sets);
    if (ms.best_complementary_f) CHECK(*ms.best_complementary_f >= pval - 1e-9);
  }

  SUBCASE("beta = 0 lower-bounds the feasible value for nonnegative couplings") {
    const Instanced inst = simplex_pair(1.0);
    const auto sets = enumerate_all(inst);
    CHECK(brute_force_penalty_opt(inst, 0.0, sets).value <= brute_force_mpgcc_opt(inst, sets).value);
  }
}
