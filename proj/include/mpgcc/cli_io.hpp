#pragma once

// JSON instance/report documents, CSV tables and the command-line driver.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "mpgcc/core_model.hpp"
#include "mpgcc/exactness_lab.hpp"
#include "mpgcc/instance_zoo.hpp"
#include "mpgcc/penalty_solver.hpp"
#include "mpgcc/polytope_lp.hpp"

namespace mpgcc {

inline constexpr const char* kInstanceSchema = "mpgcc-instance/1";
inline constexpr const char* kReportSchema = "mpgcc-report/1";

nlohmann::json instance_to_json(const Instanced& inst);
Instanced instance_from_json(const nlohmann::json& doc);

/// Canonical text: pairwise couplings as row-major nonzero triplets, two-space
/// indent, shortest round-trip number formatting.
std::string emit_instance(const Instanced& inst);
/// Validates the schema and every model invariant; throws ParseError with the
/// offending field path (or line and column for malformed JSON).
Instanced parse_instance(const std::string& text);

/// FNV-1a over the canonical text, as 16 hex digits.
std::string instance_hash(const Instanced& inst);

nlohmann::json to_json(const BlockPointd& z);
nlohmann::json to_json(const SolveReport& r);
nlohmann::json to_json(const MultiStartReport& r);
nlohmann::json to_json(const VertexSet& v);
nlohmann::json to_json(const LatticeOptima& o);
nlohmann::json to_json(const ExactnessReport& r);
nlohmann::json to_json(const CertificationRecord& r);
nlohmann::json to_json(const ProbeRow& r);

/// Shortest decimal that round-trips the double.
std::string format_number(double x);

/// Columns: epsilon, p_value, dist_upper, ratio, predicted_p, predicted_dist.
std::string probe_csv(const std::vector<ProbeRow>& rows);
/// One row per grid beta.
std::string certify_csv(const ExactnessReport& report);
/// Dense grid, one matrix row per line.
std::string matrix_csv(const Matrixd& m);

/// Command-line entry point. Exit codes: 0 success, 1 model error, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mpgcc
