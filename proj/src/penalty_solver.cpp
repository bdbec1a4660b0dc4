#include "mpgcc/penalty_solver.hpp"

#include <cmath>

#include "mpgcc/random.hpp"

namespace mpgcc {

namespace {

constexpr double kKeepTol = 1e-10;
constexpr int kLpVerticesPerStart = 3;

Vectord random_combination(Rng& rng, const std::vector<Vectord>& points) {
  // Cubed exponentials spread the weights further from the barycenter than a
  // flat Dirichlet draw.
  Vectord w(static_cast<Eigen::Index>(points.size()));
  for (Eigen::Index k = 0; k < w.size(); ++k) w(k) = std::pow(exponential(rng), 3.0);
  w /= w.sum();
  Vectord x = Vectord::Zero(points.front().size());
  for (std::size_t k = 0; k < points.size(); ++k) x += w(static_cast<Eigen::Index>(k)) * points[k];
  return x;
}

}  // namespace

void SolveOptions::validate() const {
  if (beta < 0.0) throw DomainError("beta must be nonnegative");
  if (max_sweeps < 1) throw DomainError("max_sweeps must be at least 1");
  if (!(improvement_tol > 0.0)) throw DomainError("improvement_tol must be positive");
  for (std::size_t k = 0; k < beta_schedule.size(); ++k) {
    if (beta_schedule[k] < 0.0) throw DomainError("schedule betas must be nonnegative");
    if (k > 0 && !(beta_schedule[k] > beta_schedule[k - 1]))
      throw DomainError("beta schedule must be strictly increasing");
  }
}

SolveReport make_report(const Instanced& inst, double beta, const BlockPointd& z) {
  SolveReport r;
  r.point = z;
  r.beta_used = beta;
  r.f_value = eval_objective(inst, z);
  r.p_value = eval_penalty(z);
  r.fbeta_value = r.f_value + beta * r.p_value;
  r.complementary = complementarity_residual(z).is_complementary;
  for (int i = 0; i < inst.n_blocks(); ++i) r.block_is_vertex.push_back(is_vertex(inst.polyhedron(i), z.block(i)));
  return r;
}

BlockPointd extreme_point_rounding(const Instanced& inst, double beta, const BlockPointd& z_hat) {
  if (!check_membership(inst, z_hat))
    throw DomainError("rounding start is not blockwise feasible");
  BlockPointd z = z_hat;
  for (int i = 0; i < inst.n_blocks(); ++i) {
    const auto lin = partial_linearization(inst, beta, z, i);
    const LpSolution sol = solve_lp(inst.polyhedron(i), lin.gradient);
    if (sol.status == LpStatus::infeasible)
      throw ModelError("block " + std::to_string(i) + " LP is infeasible");
    if (sol.status == LpStatus::unbounded)
      throw ModelError("block " + std::to_string(i) + " LP is unbounded; polyhedron is not compact");
    const Vectord& current = z.block(i);
    const bool keep = lin.gradient.dot(current) <= sol.value + kKeepTol * (1.0 + std::abs(sol.value)) &&
                      is_vertex(inst.polyhedron(i), current);
    if (!keep) z.set_block(i, sol.point);
  }
  return z;
}

SolveReport bcd_solve(const Instanced& inst, const SolveOptions& opts, const BlockPointd& z0) {
  opts.validate();
  const double beta = opts.beta;
  BlockPointd z = z0;
  double value = eval_penalized(inst, beta, z);
  std::vector<double> trajectory;

  while (static_cast<int>(trajectory.size()) < opts.max_sweeps) {
    const BlockPointd next = extreme_point_rounding(inst, beta, z);
    const double next_value = eval_penalized(inst, beta, next);
    const double gain = value - next_value;
    const bool strict = gain >= opts.improvement_tol * (1.0 + std::abs(value));
    if (trajectory.empty()) {
      // The first sweep lands on the vertex lattice and is always taken.
      z = next;
      value = next_value;
      trajectory.push_back(value);
      if (!strict) break;
      continue;
    }
    if (!strict) break;
    z = next;
    value = next_value;
    trajectory.push_back(value);
  }

  SolveReport report = make_report(inst, beta, z);
  report.sweeps = static_cast<int>(trajectory.size());
  report.trajectory = std::move(trajectory);
  return report;
}

SolveReport penalty_continuation(const Instanced& inst, const SolveOptions& opts, const BlockPointd& z0) {
  opts.validate();
  if (opts.beta_schedule.empty()) throw DomainError("continuation needs a nonempty beta schedule");
  BlockPointd z = z0;
  SolveReport report;
  std::vector<double> stage_p;
  std::vector<std::string> notes;
  int total_sweeps = 0;
  for (double beta : opts.beta_schedule) {
    SolveOptions stage = opts;
    stage.beta = beta;
    stage.beta_schedule.clear();
    report = bcd_solve(inst, stage, z);
    z = report.point;
    total_sweeps += report.sweeps;
    if (!stage_p.empty() && report.p_value > stage_p.back() + kComplementarityTol)
      notes.push_back("p increased from " + std::to_string(stage_p.back()) + " to " +
                      std::to_string(report.p_value) + " at beta " + std::to_string(beta));
    stage_p.push_back(report.p_value);
  }
  report.sweeps = total_sweeps;
  report.stage_p_values = std::move(stage_p);
  report.notes = std::move(notes);
  return report;
}

std::vector<BlockPointd> generate_starts(const Instanced& inst, int num_starts, std::uint64_t seed,
                                         const std::vector<VertexSet>* vertex_sets) {
  if (num_starts < 1) throw DomainError("num_starts must be at least 1");
  if (vertex_sets && static_cast<int>(vertex_sets->size()) != inst.n_blocks())
    throw ShapeError("need one vertex set per block");
  Rng rng(seed);
  const int m = inst.block_dim();
  std::vector<BlockPointd> starts;
  for (int s = 0; s < num_starts; ++s) {
    std::vector<Vectord> blocks;
    for (int i = 0; i < inst.n_blocks(); ++i) {
      std::vector<Vectord> pool;
      if (vertex_sets) {
        pool = (*vertex_sets)[static_cast<std::size_t>(i)].vertices;
      } else {
        for (int k = 0; k < kLpVerticesPerStart; ++k) {
          Vectord c(m);
          for (int j = 0; j < m; ++j) c(j) = uniform(rng, -1.0, 1.0);
          const LpSolution sol = solve_lp(inst.polyhedron(i), c);
          if (sol.status != LpStatus::optimal)
            throw ModelError("block " + std::to_string(i) + " LP failed while sampling starts: " +
                             to_string(sol.status));
          pool.push_back(sol.point);
        }
      }
      if (pool.empty()) throw ModelError("block " + std::to_string(i) + " has no vertices");
      blocks.push_back(random_combination(rng, pool));
    }
    starts.emplace_back(std::move(blocks));
  }
  return starts;
}

MultiStartReport multi_start(const Instanced& inst, const SolveOptions& opts, int num_starts,
                             const std::vector<VertexSet>* vertex_sets) {
  opts.validate();
  const auto starts = generate_starts(inst, num_starts, opts.seed, vertex_sets);
  MultiStartReport out;
  for (int s = 0; s < num_starts; ++s) {
    const auto& z0 = starts[static_cast<std::size_t>(s)];
    SolveReport r = opts.beta_schedule.empty() ? bcd_solve(inst, opts, z0) : penalty_continuation(inst, opts, z0);
    out.fbeta_per_start.push_back(r.fbeta_value);
    if (r.complementary && (!out.best_complementary_f || r.f_value < *out.best_complementary_f))
      out.best_complementary_f = r.f_value;
    if (s == 0 || r.fbeta_value < out.best.fbeta_value) {
      out.best = std::move(r);
      out.best_start = s;
    }
  }
  return out;
}

}  // namespace mpgcc
