#pragma once

#include "l1adm/protocols.hpp"
#include "l1adm/solver.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace l1adm {

using Json = nlohmann::json;

// Operator description: a dense matrix file, or a partial transform given
// by explicit rows or by a seed for random rows.
struct OperatorConfig {
  OperatorKind kind = OperatorKind::Dense;
  Index rows = 0;
  Index cols = 0;
  std::string file;                // dense only
  std::vector<Index> row_indices;  // transforms; empty: random rows from seed
  std::optional<std::uint64_t> sign_seed;
  std::uint64_t seed = 1;
};

// Either b (and optionally x_true) from files, or synthetic data with k
// spikes and the given noise.
struct DataConfig {
  std::string b_file;
  std::string x_true_file;
  Index k = 0;  // > 0: synthetic
  NoiseSpec noise;
  std::uint64_t seed = 1;
};

struct SolverSettings {
  std::string name = "dadm";  // padm, dadm, fista, ist
  std::optional<double> beta;
  std::optional<double> gamma;
  std::optional<double> tau;
  double eps = 1e-6;
  int max_iter = 1000;
  StopRule stop = StopRule::RelChg;
  bool enforce_step_guard = true;
};

struct SolveConfig {
  OperatorConfig op;
  DataConfig data;
  ModelSpec model;
  std::string weights_file;
  SolverSettings solver;
};

Json to_json(const SolveConfig& config);
SolveConfig solve_config_from_json(const Json& j);

Json to_json(const ExperimentConfig& config);
ExperimentConfig experiment_config_from_json(const Json& j);

// Deterministic text form (sorted keys, round-trip doubles).
std::string canonical_dump(const Json& j);
// 64-bit FNV-1a of canonical_dump(j), as 16 hex digits.
std::string config_hash(const Json& j);

Json load_json_file(const std::filesystem::path& path);

// Result summary; the per-iteration history is included on request.
Json to_json(const RunRecord& run, bool with_history);

}  // namespace l1adm
