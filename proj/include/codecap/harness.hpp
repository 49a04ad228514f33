#pragma once

#include <cstdint>
#include <string>

#include "codecap/bipartite.hpp"
#include "codecap/graph_io.hpp"
#include "json.hpp"

namespace codecap {

/// One experiment request. The command decides which fields matter:
///   codes-sample      model(n, epsilon, p), seed, matrix_out?
///   codes-verify      matrix_path, constraint?
///   codes-search      model, constraint, seed, max_attempts
///   codes-montecarlo  model, event, constraint?, trials, seed
///   capacity-bounds   graph_path, cap_gamma, theta?, r_max?
///   capacity-certify  graph_path, cap_gamma, r_max
///   capacity-mis      graph_path, r?, k?
///   capacity-recursion graph_path, r, d
struct RunConfig {
  std::string command;

  ModelParams model;
  ConstraintSpec constraint;
  bool constraint_given = false;

  std::string graph_path;
  GraphFileFormat graph_format = GraphFileFormat::auto_detect;
  std::string matrix_path;  // codes-verify: biadjacency text file
  std::string matrix_out;   // codes-sample: also save the biadjacency here

  double cap_gamma = 1.0;
  std::size_t r_max = 0;
  std::size_t r = 1;
  std::size_t k = 0;
  bool k_given = false;
  std::size_t d = 1;

  double theta_value = 0.0;
  bool theta_given = false;
  std::string theta_source = "user";

  std::string event = "constraint";  // codes-montecarlo
  std::size_t trials = 1000;
  std::size_t max_attempts = 1000;

  std::uint64_t seed = 0;
  std::string emit = "table";  // table | record | csv
  std::string out_path;        // also write the emitted text here
  std::string log_path = "runs.log.jsonl";  // "" or "none" disables
};

struct RunRecord {
  nlohmann::ordered_json config;   // echo of what was run
  nlohmann::ordered_json outcome;  // command-specific payload
  double wall_seconds = 0.0;
  std::string tool_version;
  std::string timestamp;  // UTC, ISO 8601
};

nlohmann::ordered_json record_to_json(const RunRecord& rec);

/// Dispatches the command, appends the record to the run log, writes
/// out_path when set, and returns the record. Identical configs (seed
/// included) produce identical outcome payloads.
RunRecord run(const RunConfig& cfg);

/// Renders the outcome in the selected format. "record" is the outcome as
/// a single JSON line with full-precision numbers; "table" is key: value
/// lines; "csv" is a header line plus one value line. Reals in table/csv
/// print with 9 significant digits.
std::string emit_text(const RunRecord& rec, const std::string& emit);

}  // namespace codecap
