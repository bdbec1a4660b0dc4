#include "mpgcc/cli_io.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

namespace mpgcc {

using nlohmann::json;

namespace {

// ---- parsing helpers ------------------------------------------------------

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(path + "/" + key + ": missing field");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path + ": expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path + ": expected an integer");
  return j.get<int>();
}

const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path + ": expected an array");
  return j;
}

Vectord vector_from(const json& j, const std::string& path) {
  array(j, path);
  Vectord v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v(static_cast<Eigen::Index>(k)) = number(j[k], path + "/" + std::to_string(k));
  return v;
}

Matrixd matrix_from(const json& j, int cols, const std::string& path) {
  array(j, path);
  Matrixd m(static_cast<Eigen::Index>(j.size()), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string rp = path + "/" + std::to_string(r);
    const Vectord row = vector_from(j[r], rp);
    if (row.size() != cols) throw ParseError(rp + ": expected " + std::to_string(cols) + " columns");
    m.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  return m;
}

json vector_json(const Vectord& v) {
  json a = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(v(k));
  return a;
}

json matrix_json(const Matrixd& m) {
  json a = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) a.push_back(vector_json(m.row(r).transpose()));
  return a;
}

// ---- CLI helpers -----------------------------------------------------------

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

std::string csv_path_for(const std::string& json_path) {
  return std::filesystem::path(json_path).replace_extension(".csv").string();
}

json report_document(const std::string& kind, json inputs, json payload, double seconds) {
  return json{{"schema_version", kReportSchema},
              {"kind", kind},
              {"inputs", std::move(inputs)},
              {"payload", std::move(payload)},
              {"timings", {{"elapsed_seconds", seconds}}}};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

// ---- instances ---------------------------------------------------------------

json instance_to_json(const Instanced& inst) {
  const auto& obj = inst.objective();
  json linear = json::array();
  for (int i = 0; i < inst.n_blocks(); ++i) linear.push_back(vector_json(obj.linear(i)));

  json pairwise = json::array();
  for (const auto& [key, q] : obj.pairwise()) {
    json triplets = json::array();
    for (Eigen::Index r = 0; r < q.rows(); ++r)
      for (Eigen::Index c = 0; c < q.cols(); ++c)
        if (q(r, c) != 0.0) triplets.push_back(json::array({r, c, q(r, c)}));
    pairwise.push_back({{"i", key.first}, {"j", key.second}, {"triplets", std::move(triplets)}});
  }

  json higher = json::array();
  for (const auto& mono : obj.higher_terms()) {
    json factors = json::array();
    for (const auto& f : mono.factors) factors.push_back(json::array({f.block, f.coord}));
    higher.push_back({{"coeff", mono.coeff}, {"factors", std::move(factors)}});
  }

  json polys = json::array();
  for (const auto& p : inst.polyhedra())
    polys.push_back({{"eq", {{"matrix", matrix_json(p.eq_matrix)}, {"rhs", vector_json(p.eq_rhs)}}},
                     {"ineq", {{"matrix", matrix_json(p.ineq_matrix)}, {"rhs", vector_json(p.ineq_rhs)}}},
                     {"nonneg", p.nonneg}});

  return json{{"schema_version", kInstanceSchema},
              {"objective",
               {{"constant", obj.constant()},
                {"linear", std::move(linear)},
                {"pairwise", std::move(pairwise)},
                {"higher_terms", std::move(higher)}}},
              {"polyhedra", std::move(polys)}};
}

Instanced instance_from_json(const json& doc) {
  const auto& version = field(doc, "schema_version", "");
  if (!version.is_string() || version.get<std::string>() != kInstanceSchema)
    throw ParseError("/schema_version: expected \"" + std::string(kInstanceSchema) + "\"");

  const auto& jo = field(doc, "objective", "");
  const auto& jl = array(field(jo, "linear", "/objective"), "/objective/linear");
  if (jl.empty()) throw ParseError("/objective/linear: need at least one block");
  const int n = static_cast<int>(jl.size());
  const int m = static_cast<int>(array(jl[0], "/objective/linear/0").size());
  if (m < 1) throw ParseError("/objective/linear/0: blocks must be nonempty");

  try {
    MultiAffineObjectived obj(n, m);
    obj.set_constant(number(field(jo, "constant", "/objective"), "/objective/constant"));
    for (int i = 0; i < n; ++i) {
      const std::string p = "/objective/linear/" + std::to_string(i);
      const Vectord a = vector_from(jl[static_cast<std::size_t>(i)], p);
      if (a.size() != m) throw ParseError(p + ": expected length " + std::to_string(m));
      obj.set_linear(i, a);
    }

    const auto& jp = array(field(jo, "pairwise", "/objective"), "/objective/pairwise");
    for (std::size_t k = 0; k < jp.size(); ++k) {
      const std::string p = "/objective/pairwise/" + std::to_string(k);
      const int i = integer(field(jp[k], "i", p), p + "/i");
      const int j = integer(field(jp[k], "j", p), p + "/j");
      if (i >= j) throw ParseError(p + ": pair key requires i < j, got (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      if (i < 0 || j >= n) throw ParseError(p + ": block index out of range");
      Matrixd q = Matrixd::Zero(m, m);
      if (jp[k].contains("matrix")) {
        q = matrix_from(jp[k]["matrix"], m, p + "/matrix");
        if (q.rows() != m) throw ParseError(p + "/matrix: expected " + std::to_string(m) + " rows");
      } else {
        const auto& jt = array(field(jp[k], "triplets", p), p + "/triplets");
        for (std::size_t t = 0; t < jt.size(); ++t) {
          const std::string tp = p + "/triplets/" + std::to_string(t);
          if (!jt[t].is_array() || jt[t].size() != 3) throw ParseError(tp + ": expected [row, col, value]");
          const int r = integer(jt[t][0], tp + "/0");
          const int c = integer(jt[t][1], tp + "/1");
          if (r < 0 || r >= m || c < 0 || c >= m) throw ParseError(tp + ": index out of range");
          q(r, c) += number(jt[t][2], tp + "/2");
        }
      }
      obj.set_pairwise(i, j, q);
    }

    const auto& jh = array(field(jo, "higher_terms", "/objective"), "/objective/higher_terms");
    for (std::size_t k = 0; k < jh.size(); ++k) {
      const std::string p = "/objective/higher_terms/" + std::to_string(k);
      const double coeff = number(field(jh[k], "coeff", p), p + "/coeff");
      const auto& jf = array(field(jh[k], "factors", p), p + "/factors");
      std::vector<BlockCoord> factors;
      for (std::size_t f = 0; f < jf.size(); ++f) {
        const std::string fp = p + "/factors/" + std::to_string(f);
        if (!jf[f].is_array() || jf[f].size() != 2) throw ParseError(fp + ": expected [block, coord]");
        factors.push_back({integer(jf[f][0], fp + "/0"), integer(jf[f][1], fp + "/1")});
      }
      try {
        obj.add_monomial(coeff, std::move(factors));
      } catch (const ShapeError& e) {
        throw ParseError(p + ": " + e.what());
      }
    }

    const auto& jpoly = array(field(doc, "polyhedra", ""), "/polyhedra");
    if (static_cast<int>(jpoly.size()) != n)
      throw ParseError("/polyhedra: expected " + std::to_string(n) + " entries, one per block");
    std::vector<Polyhedrond> polys;
    for (std::size_t k = 0; k < jpoly.size(); ++k) {
      const std::string p = "/polyhedra/" + std::to_string(k);
      const auto& eq = field(jpoly[k], "eq", p);
      const auto& in = field(jpoly[k], "ineq", p);
      const auto& nn = field(jpoly[k], "nonneg", p);
      if (!nn.is_boolean()) throw ParseError(p + "/nonneg: expected a boolean");
      Matrixd a = matrix_from(field(eq, "matrix", p + "/eq"), m, p + "/eq/matrix");
      Vectord b = vector_from(field(eq, "rhs", p + "/eq"), p + "/eq/rhs");
      Matrixd g = matrix_from(field(in, "matrix", p + "/ineq"), m, p + "/ineq/matrix");
      Vectord h = vector_from(field(in, "rhs", p + "/ineq"), p + "/ineq/rhs");
      if (a.rows() != b.size()) throw ParseError(p + "/eq: matrix rows and rhs length differ");
      if (g.rows() != h.size()) throw ParseError(p + "/ineq: matrix rows and rhs length differ");
      polys.emplace_back(m, std::move(a), std::move(b), std::move(g), std::move(h), nn.get<bool>());
    }
    return Instanced(std::move(obj), std::move(polys));
  } catch (const ShapeError& e) {
    throw ParseError(e.what());
  }
}

std::string emit_instance(const Instanced& inst) { return instance_to_json(inst).dump(2) + "\n"; }

Instanced parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  return instance_from_json(doc);
}

std::string instance_hash(const Instanced& inst) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : emit_instance(inst)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

// ---- reports -----------------------------------------------------------------

json to_json(const BlockPointd& z) {
  json a = json::array();
  for (const auto& b : z.blocks()) a.push_back(vector_json(b));
  return a;
}

json to_json(const SolveReport& r) {
  return json{{"point", to_json(r.point)},
              {"f_value", r.f_value},
              {"p_value", r.p_value},
              {"fbeta_value", r.fbeta_value},
              {"beta_used", r.beta_used},
              {"sweeps", r.sweeps},
              {"block_is_vertex", r.block_is_vertex},
              {"complementary", r.complementary},
              {"trajectory", r.trajectory},
              {"stage_p_values", r.stage_p_values},
              {"notes", r.notes}};
}

json to_json(const MultiStartReport& r) {
  return json{{"best", to_json(r.best)},
              {"best_start", r.best_start},
              {"fbeta_per_start", r.fbeta_per_start},
              {"best_complementary_f", r.best_complementary_f ? json(*r.best_complementary_f) : json(nullptr)}};
}

json to_json(const VertexSet& v) {
  json verts = json::array();
  for (const auto& x : v.vertices) verts.push_back(vector_json(x));
  json near = json::array();
  for (const auto& [a, b] : v.near_duplicates) near.push_back(json::array({a, b}));
  return json{{"count", v.size()}, {"vertices", verts}, {"bases", v.bases}, {"dedupe_tol", v.dedupe_tol},
              {"near_duplicates", near}};
}

json to_json(const LatticeOptima& o) {
  return json{{"value", o.value},
              {"argmin_indices", o.argmin_indices},
              {"argmin_size", o.argmin_indices.size()},
              {"lattice_size", o.lattice_size},
              {"tie_tol", o.tie_tol}};
}

json to_json(const ExactnessReport& r) {
  json per = json::array();
  for (const auto& b : r.per_beta)
    per.push_back({{"beta", b.beta},
                   {"penalized", to_json(b.penalized)},
                   {"feasible_value", b.feasible.value},
                   {"feasible_argmin_size", b.feasible.argmin_indices.size()},
                   {"inclusion_Sbar_beta_in_Sopt", b.inclusion},
                   {"sets_equal", b.sets_equal}});
  return json{{"beta_grid", r.beta_grid},
              {"per_beta", per},
              {"beta_bar_estimate", r.beta_bar_estimate ? json(*r.beta_bar_estimate) : json(nullptr)},
              {"refined_beta_bar", r.refined_beta_bar ? json(*r.refined_beta_bar) : json(nullptr)},
              {"scope", r.scope}};
}

json to_json(const CertificationRecord& r) {
  return json{{"beta", r.beta},
              {"vertex_level_equal", r.vertex_level_equal},
              {"samples", r.samples},
              {"sampled_violations", r.sampled_violations},
              {"feasible_value", r.feasible_value},
              {"penalized_value", r.penalized_value},
              {"min_sample_margin", r.min_sample_margin},
              {"scope", r.scope}};
}

json to_json(const ProbeRow& r) {
  return json{{"epsilon", r.epsilon},         {"p_value", r.p_value},
              {"dist_upper", r.dist_upper},   {"ratio", r.ratio},
              {"predicted_p", r.predicted_p}, {"predicted_dist", r.predicted_dist}};
}

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string probe_csv(const std::vector<ProbeRow>& rows) {
  std::string out = "epsilon,p_value,dist_upper,ratio,predicted_p,predicted_dist\n";
  for (const auto& r : rows)
    out += format_number(r.epsilon) + "," + format_number(r.p_value) + "," + format_number(r.dist_upper) + "," +
           format_number(r.ratio) + "," + format_number(r.predicted_p) + "," + format_number(r.predicted_dist) + "\n";
  return out;
}

std::string certify_csv(const ExactnessReport& report) {
  std::string out = "beta,penalized_value,feasible_value,penalized_argmin_size,feasible_argmin_size,inclusion,sets_equal\n";
  for (const auto& b : report.per_beta)
    out += format_number(b.beta) + "," + format_number(b.penalized.value) + "," + format_number(b.feasible.value) +
           "," + std::to_string(b.penalized.argmin_indices.size()) + "," +
           std::to_string(b.feasible.argmin_indices.size()) + "," + (b.inclusion ? "true" : "false") + "," +
           (b.sets_equal ? "true" : "false") + "\n";
  return out;
}

std::string matrix_csv(const Matrixd& m) {
  std::string out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out += ",";
      out += format_number(m(r, c));
    }
    out += "\n";
  }
  return out;
}

// ---- command line ---------------------------------------------------------------

namespace {

void emit_heatmaps(const std::string& prefix, const BlockPointd& z, int K) {
  for (int i = 0; i < z.num_blocks(); ++i)
    write_file(prefix + "_X" + std::to_string(i + 1) + ".csv", matrix_csv(unvec(z.block(i), K)));
}

std::vector<VertexSet> try_enumerate(const Instanced& inst, std::int64_t budget) {
  try {
    return enumerate_all(inst, budget);
  } catch (const BudgetError&) {
    return {};
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact l1 penalty toolkit for multi-affine programs with generalized complementarity constraints"};
  app.name("mpgcc");
  app.require_subcommand(1);

  int K = 4;
  int n_blocks = 2;
  int block_dim = 3;
  std::uint64_t seed = 0;
  std::int64_t budget = -1;
  std::optional<double> tol;
  std::optional<double> beta;
  std::vector<double> beta_grid;
  std::vector<double> eps = default_probe_epsilons();
  int starts = 1;
  int samples = 1000;
  int max_sweeps = 50;
  std::string instance_path = "instance.json";
  std::string out_path;
  std::string heatmap_prefix;

  auto* gen = app.add_subcommand("gen", "Generate an instance document");
  gen->require_subcommand(1);
  auto* gen_mmot = gen->add_subcommand("mmot", "Three-marginal Coulomb transport instance");
  gen_mmot->add_option("--K", K, "Grid size")->required();
  gen_mmot->add_option("--out", out_path, "Instance path (default instance.json)");
  gen_mmot->add_option("--emit-heatmap", heatmap_prefix, "Write the closed-form solution blocks as CSV grids");
  auto* gen_random = gen->add_subcommand("random", "Seeded random desk-scale instance");
  gen_random->add_option("--n", n_blocks, "Number of blocks");
  gen_random->add_option("--m", block_dim, "Block dimension");
  gen_random->add_option("--seed", seed, "Random seed");
  gen_random->add_option("--budget", budget, "Max vertices per block (default 64)");
  gen_random->add_option("--out", out_path, "Instance path (default instance.json)");

  auto* solve = app.add_subcommand("solve", "Block coordinate descent, continuation and multi-start");
  solve->add_option("--instance", instance_path, "Instance document");
  solve->add_option("--beta", beta, "Penalty parameter");
  solve->add_option("--beta-grid", beta_grid, "Continuation schedule, comma separated")->delimiter(',');
  solve->add_option("--starts", starts, "Number of starts");
  solve->add_option("--seed", seed, "Random seed");
  solve->add_option("--max-sweeps", max_sweeps, "Sweep limit per BCD run");
  solve->add_option("--tol", tol, "Relative sweep improvement tolerance");
  solve->add_option("--budget", budget, "Basis budget for vertex enumeration of start pools");
  solve->add_option("--out", out_path, "Report path (default solve.json)");

  auto* enumerate = app.add_subcommand("enumerate", "Enumerate the vertices of every block");
  enumerate->add_option("--instance", instance_path, "Instance document");
  enumerate->add_option("--budget", budget, "Basis budget");
  enumerate->add_option("--tol", tol, "Vertex dedupe tolerance");
  enumerate->add_option("--out", out_path, "Report path (default enumerate.json)");

  auto* certify = app.add_subcommand("certify", "Vertex-level exactness over a beta grid");
  certify->add_option("--instance", instance_path, "Instance document");
  certify->add_option("--beta-grid", beta_grid, "Increasing betas (default 2^-4..2^12)")->delimiter(',');
  certify->add_option("--beta", beta, "Beta for sampled certification (default: estimated threshold)");
  certify->add_option("--samples", samples, "Sampled points");
  certify->add_option("--seed", seed, "Random seed");
  certify->add_option("--budget", budget, "Lattice tuple budget");
  certify->add_option("--tol", tol, "Tie tolerance");
  certify->add_option("--out", out_path, "Report path (default certify.json; CSV beside it)");

  auto* probe = app.add_subcommand("probe", "Error-bound probe along the perturbation Z(eps)");
  probe->add_option("--K", K, "Grid size")->required();
  probe->add_option("--eps", eps, "Epsilons, comma separated")->delimiter(',');
  probe->add_option("--out", out_path, "Report path (default probe.json; CSV beside it)");
  probe->add_option("--emit-heatmap", heatmap_prefix, "Write Z(eps) blocks as CSV grids");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (gen->parsed()) {
      const std::string path = out_path.empty() ? "instance.json" : out_path;
      if (gen_mmot->parsed()) {
        const Instanced inst = mmot_instance(K);
        write_file(path, emit_instance(inst));
        if (!heatmap_prefix.empty()) emit_heatmaps(heatmap_prefix, mmot_optimal_solution(K), K);
        out << "wrote " << path << " (K=" << K << ", n=3, m=" << K * K << ")\n";
      } else {
        const GeneratedInstance g = random_instance(n_blocks, block_dim, seed, budget > 0 ? static_cast<int>(budget) : 64);
        write_file(path, emit_instance(g.instance));
        for (const auto& w : g.warnings) err << "warning: " << w << "\n";
        out << "wrote " << path << " (n=" << n_blocks << ", m=" << block_dim << ", seed=" << seed << ")\n";
      }
      return 0;
    }

    if (probe->parsed()) {
      const auto rows = error_bound_probe(K, eps);
      json payload = json::array();
      for (const auto& r : rows) payload.push_back(to_json(r));
      const std::string path = out_path.empty() ? "probe.json" : out_path;
      const json doc = report_document("probe", {{"K", K}, {"epsilons", eps}}, payload, seconds_since(t0));
      write_file(path, doc.dump(2) + "\n");
      write_file(csv_path_for(path), probe_csv(rows));
      if (!heatmap_prefix.empty())
        for (std::size_t k = 0; k < rows.size(); ++k)
          emit_heatmaps(heatmap_prefix + "_eps" + std::to_string(k), mmot_perturbed(K, rows[k].epsilon), K);
      out << probe_csv(rows);
      return 0;
    }

    const Instanced inst = parse_instance(read_file(instance_path));
    const std::string hash = instance_hash(inst);

    if (enumerate->parsed()) {
      const std::int64_t b = budget > 0 ? budget : kDefaultBasisBudget;
      json payload = json::array();
      for (int i = 0; i < inst.n_blocks(); ++i) {
        const VertexSet v = enumerate_vertices(inst.polyhedron(i), b, tol.value_or(kVertexDedupeTol));
        payload.push_back(to_json(v));
        out << "block " << i << ": " << v.size() << " vertices\n";
      }
      const std::string path = out_path.empty() ? "enumerate.json" : out_path;
      const json doc = report_document("enumerate", {{"instance_hash", hash}, {"budget", b}}, payload, seconds_since(t0));
      write_file(path, doc.dump(2) + "\n");
      return 0;
    }

    if (solve->parsed()) {
      SolveOptions opts;
      opts.beta = beta.value_or(0.0);
      opts.beta_schedule = beta_grid;
      opts.seed = seed;
      opts.max_sweeps = max_sweeps;
      if (tol) opts.improvement_tol = *tol;
      const auto sets = try_enumerate(inst, budget > 0 ? budget : kDefaultBasisBudget);
      const MultiStartReport r = multi_start(inst, opts, starts, sets.empty() ? nullptr : &sets);
      const std::string path = out_path.empty() ? "solve.json" : out_path;
      const json inputs{{"instance_hash", hash},
                        {"beta", opts.beta},
                        {"beta_schedule", opts.beta_schedule},
                        {"starts", starts},
                        {"seed", seed},
                        {"max_sweeps", opts.max_sweeps},
                        {"improvement_tol", opts.improvement_tol},
                        {"start_pool", sets.empty() ? "lp_vertices" : "enumerated_vertices"}};
      const json doc = report_document("solve", inputs, to_json(r), seconds_since(t0));
      write_file(path, doc.dump(2) + "\n");
      out << "best f_beta " << format_number(r.best.fbeta_value) << " (f " << format_number(r.best.f_value) << ", p "
          << format_number(r.best.p_value) << ") from start " << r.best_start << "\n";
      return 0;
    }

    if (certify->parsed()) {
      LatticeOptions lopts;
      if (budget > 0) lopts.budget = budget;
      if (tol) lopts.tie_tol = *tol;
      const auto sets = enumerate_all(inst);
      const std::vector<double> grid = beta_grid.empty() ? default_beta_grid() : beta_grid;
      ExactnessReport report = find_beta_bar(inst, sets, grid, lopts);
      refine_beta_bar(inst, sets, report, 10, lopts);
      json payload{{"exactness", to_json(report)}};
      const std::optional<double> cert_beta = beta ? beta : report.beta_bar_estimate;
      if (cert_beta) {
        payload["certification"] = to_json(certify_exactness(inst, *cert_beta, sets, samples, seed, lopts));
      } else {
        payload["certification"] = nullptr;
        err << "warning: no beta threshold found on the grid; sampled certification skipped\n";
      }
      const std::string path = out_path.empty() ? "certify.json" : out_path;
      const json inputs{{"instance_hash", hash}, {"beta_grid", grid},       {"samples", samples},
                        {"seed", seed},          {"tie_tol", lopts.tie_tol}, {"lattice_budget", lopts.budget}};
      const json doc = report_document("certify", inputs, payload, seconds_since(t0));
      write_file(path, doc.dump(2) + "\n");
      write_file(csv_path_for(path), certify_csv(report));
      out << "beta_bar estimate: "
          << (report.beta_bar_estimate ? format_number(*report.beta_bar_estimate) : std::string("none")) << "\n";
      return 0;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  return run_cli(args, out, err);
}

}  // namespace mpgcc
