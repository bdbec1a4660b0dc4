#include "mpgcc/exactness_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mpgcc/random.hpp"

namespace mpgcc {

namespace {

const std::vector<VertexSet>& checked(const Instanced& inst, const std::vector<VertexSet>& sets) {
  if (static_cast<int>(sets.size()) != inst.n_blocks()) throw ShapeError("need one vertex set per block");
  for (std::size_t i = 0; i < sets.size(); ++i)
    if (sets[i].vertices.empty()) throw ModelError("block " + std::to_string(i) + " has an empty vertex set");
  return sets;
}

bool sets_equal_at(const LatticeTable& table, const LatticeOptima& feasible, double beta, const LatticeOptions& opts) {
  return table.penalized(beta, opts.tie_tol).argmin_indices == feasible.argmin_indices;
}

}  // namespace

LatticeTable::LatticeTable(const Instanced& inst, const std::vector<VertexSet>& vertex_sets, std::int64_t budget)
    : sets_(checked(inst, vertex_sets)) {
  std::int64_t total = 1;
  for (const auto& s : vertex_sets) {
    radix_.push_back(s.size());
    if (total > budget / s.size())
      throw BudgetError("vertex lattice exceeds " + std::to_string(budget) + " tuples");
    total *= s.size();
  }
  f_.resize(static_cast<std::size_t>(total));
  p_.resize(static_cast<std::size_t>(total));
  for (std::int64_t k = 0; k < total; ++k) {
    const BlockPointd z = point(k);
    f_[static_cast<std::size_t>(k)] = eval_objective(inst, z);
    p_[static_cast<std::size_t>(k)] = eval_penalty(z);
  }
}

LatticeIndex LatticeTable::index(std::int64_t k) const {
  // Last block varies fastest.
  LatticeIndex idx(radix_.size());
  for (std::size_t b = radix_.size(); b-- > 0;) {
    idx[b] = static_cast<int>(k % radix_[b]);
    k /= radix_[b];
  }
  return idx;
}

BlockPointd LatticeTable::point(std::int64_t k) const {
  const LatticeIndex idx = index(k);
  std::vector<Vectord> blocks;
  for (std::size_t b = 0; b < idx.size(); ++b)
    blocks.push_back(sets_[b].vertices[static_cast<std::size_t>(idx[b])]);
  return BlockPointd(std::move(blocks));
}

LatticeOptima LatticeTable::penalized(double beta, double tie_tol) const {
  LatticeOptima out;
  out.lattice_size = size();
  out.tie_tol = tie_tol;
  out.value = std::numeric_limits<double>::infinity();
  for (std::int64_t k = 0; k < size(); ++k) out.value = std::min(out.value, f(k) + beta * p(k));
  for (std::int64_t k = 0; k < size(); ++k)
    if (f(k) + beta * p(k) <= out.value + tie_tol) {
      out.argmin_indices.push_back(index(k));
      out.argmin.push_back(point(k));
    }
  return out;
}

LatticeOptima LatticeTable::complementary(double comp_tol, double tie_tol) const {
  LatticeOptima out;
  out.lattice_size = size();
  out.tie_tol = tie_tol;
  out.value = std::numeric_limits<double>::infinity();
  bool any = false;
  for (std::int64_t k = 0; k < size(); ++k)
    if (p(k) <= comp_tol) {
      any = true;
      out.value = std::min(out.value, f(k));
    }
  if (!any) throw LatticeInfeasibleError("no complementary vertex tuple among " + std::to_string(size()));
  for (std::int64_t k = 0; k < size(); ++k)
    if (p(k) <= comp_tol && f(k) <= out.value + tie_tol) {
      out.argmin_indices.push_back(index(k));
      out.argmin.push_back(point(k));
    }
  return out;
}

LatticeOptima brute_force_penalty_opt(const Instanced& inst, double beta, const std::vector<VertexSet>& vertex_sets,
                                      const LatticeOptions& opts) {
  return LatticeTable(inst, vertex_sets, opts.budget).penalized(beta, opts.tie_tol);
}

LatticeOptima brute_force_mpgcc_opt(const Instanced& inst, const std::vector<VertexSet>& vertex_sets,
                                    const LatticeOptions& opts) {
  return LatticeTable(inst, vertex_sets, opts.budget).complementary(opts.comp_tol, opts.tie_tol);
}

std::vector<double> default_beta_grid() {
  std::vector<double> grid;
  for (int e = -4; e <= 12; ++e) grid.push_back(std::ldexp(1.0, e));
  return grid;
}

ExactnessReport find_beta_bar(const Instanced& inst, const std::vector<VertexSet>& vertex_sets,
                              const std::vector<double>& grid, const LatticeOptions& opts) {
  if (grid.empty()) throw DomainError("beta grid is empty");
  for (std::size_t k = 1; k < grid.size(); ++k)
    if (!(grid[k] > grid[k - 1])) throw DomainError("beta grid must be strictly increasing");

  const LatticeTable table(inst, vertex_sets, opts.budget);
  const LatticeOptima feasible = table.complementary(opts.comp_tol, opts.tie_tol);

  ExactnessReport report;
  report.beta_grid = grid;
  for (double beta : grid) {
    BetaResult r;
    r.beta = beta;
    r.penalized = table.penalized(beta, opts.tie_tol);
    r.feasible = feasible;
    r.inclusion = true;
    for (const auto& idx : r.penalized.argmin_indices) {
      std::int64_t k = 0;
      for (std::size_t b = 0; b < idx.size(); ++b) k = k * vertex_sets[b].size() + idx[b];
      if (table.p(k) > opts.comp_tol || std::abs(table.f(k) - feasible.value) > opts.tie_tol) r.inclusion = false;
    }
    r.sets_equal = r.penalized.argmin_indices == feasible.argmin_indices;
    report.per_beta.push_back(std::move(r));
  }
  for (std::size_t k = report.per_beta.size(); k-- > 0;) {
    if (!report.per_beta[k].sets_equal) break;
    report.beta_bar_estimate = report.per_beta[k].beta;
  }
  return report;
}

void refine_beta_bar(const Instanced& inst, const std::vector<VertexSet>& vertex_sets, ExactnessReport& report,
                     int steps, const LatticeOptions& opts) {
  if (!report.beta_bar_estimate) return;
  const auto it = std::find(report.beta_grid.begin(), report.beta_grid.end(), *report.beta_bar_estimate);
  double hi = *report.beta_bar_estimate;
  double lo = it == report.beta_grid.begin() ? 0.0 : *(it - 1);
  const LatticeTable table(inst, vertex_sets, opts.budget);
  const LatticeOptima feasible = table.complementary(opts.comp_tol, opts.tie_tol);
  for (int s = 0; s < steps; ++s) {
    const double mid = 0.5 * (lo + hi);
    if (sets_equal_at(table, feasible, mid, opts))
      hi = mid;
    else
      lo = mid;
  }
  report.refined_beta_bar = hi;
}

CertificationRecord certify_exactness(const Instanced& inst, double beta, const std::vector<VertexSet>& vertex_sets,
                                      int samples, std::uint64_t seed, const LatticeOptions& opts) {
  if (samples < 0) throw DomainError("sample count must be nonnegative");
  const LatticeTable table(inst, vertex_sets, opts.budget);
  const LatticeOptima feasible = table.complementary(opts.comp_tol, opts.tie_tol);
  const LatticeOptima penalized = table.penalized(beta, opts.tie_tol);

  CertificationRecord rec;
  rec.beta = beta;
  rec.samples = samples;
  rec.feasible_value = feasible.value;
  rec.penalized_value = penalized.value;
  rec.vertex_level_equal = penalized.argmin_indices == feasible.argmin_indices;
  rec.min_sample_margin = std::numeric_limits<double>::infinity();

  Rng rng(seed);
  const int n = inst.n_blocks();
  std::vector<int> mixable;
  for (int i = 0; i < n; ++i)
    if (vertex_sets[static_cast<std::size_t>(i)].size() >= 2) mixable.push_back(i);

  for (int s = 0; s < samples; ++s) {
    // Each block is a vertex, a point on an edge between two vertices, or a
    // full convex combination; at least one block is not a single vertex.
    std::vector<int> mode(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) mode[static_cast<std::size_t>(i)] = uniform_index(rng, 3);
    if (!mixable.empty() && std::all_of(mode.begin(), mode.end(), [](int v) { return v == 0; }))
      mode[static_cast<std::size_t>(mixable[static_cast<std::size_t>(uniform_index(rng, static_cast<int>(mixable.size())))])] = 1;

    std::vector<Vectord> blocks;
    for (int i = 0; i < n; ++i) {
      const auto& verts = vertex_sets[static_cast<std::size_t>(i)].vertices;
      const int nv = static_cast<int>(verts.size());
      const int md = nv < 2 ? 0 : mode[static_cast<std::size_t>(i)];
      if (md == 0) {
        blocks.push_back(verts[static_cast<std::size_t>(uniform_index(rng, nv))]);
      } else if (md == 1) {
        const int a = uniform_index(rng, nv);
        const int b = (a + 1 + uniform_index(rng, nv - 1)) % nv;
        const double t = uniform01(rng);
        blocks.push_back((1.0 - t) * verts[static_cast<std::size_t>(a)] + t * verts[static_cast<std::size_t>(b)]);
      } else {
        Vectord x = Vectord::Zero(inst.block_dim());
        double total = 0;
        for (const auto& v : verts) {
          const double w = exponential(rng);
          x += w * v;
          total += w;
        }
        blocks.push_back(x / total);
      }
    }
    const BlockPointd z(std::move(blocks));
    const double f = eval_objective(inst, z);
    const double p = eval_penalty(z);
    const double margin = f + beta * p - feasible.value;
    rec.min_sample_margin = std::min(rec.min_sample_margin, margin);
    if (margin < -kFeasibilityTol) {
      ++rec.sampled_violations;
    } else if (margin <= opts.tie_tol && !(p <= opts.comp_tol && std::abs(f - feasible.value) <= opts.tie_tol)) {
      ++rec.sampled_violations;
    }
  }
  if (samples == 0) rec.min_sample_margin = 0;
  return rec;
}

std::vector<VertexSet> enumerate_all(const Instanced& inst, std::int64_t basis_budget) {
  std::vector<VertexSet> sets;
  for (int i = 0; i < inst.n_blocks(); ++i) sets.push_back(enumerate_vertices(inst.polyhedron(i), basis_budget));
  return sets;
}

}  // namespace mpgcc
