#pragma once

#include "l1adm/protocols.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace l1adm {

inline constexpr std::string_view kVersion = "0.1.0";

// Process exit codes.
inline constexpr int kExitConverged = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNotConverged = 2;  // max_iter reached or diverged

// Command-line values that replace the corresponding config entries.
struct SolveOverrides {
  std::optional<std::string> model;
  std::optional<double> mu;
  std::optional<double> delta;
  std::optional<double> nu;
  bool nonneg = false;
  std::optional<std::string> weights;
  std::optional<std::string> solver;
  std::optional<double> beta;
  std::optional<double> gamma;
  std::optional<double> tau;
  std::optional<double> eps;
  std::optional<int> max_iter;
  std::optional<std::string> stop;
  std::optional<std::uint64_t> seed;
  bool no_step_guard = false;
};

/// Solves the problem described by the JSON config at `config_path` and
/// writes x.bin, x.csv and result.json into `out_dir`. Relative file names
/// in the config resolve against the config's directory.
int cmd_solve(const std::filesystem::path& config_path, const SolveOverrides& overrides,
              const std::filesystem::path& out_dir, std::ostream& out, std::ostream& err);

struct ExperimentOptions {
  Scale scale = Scale::Desk;
  std::optional<std::filesystem::path> config;  // JSON experiment config
  std::optional<Index> n;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  bool timing = false;  // fill the seconds columns
  bool force = false;   // overwrite an out_dir holding a different config
};

/// Runs a harness protocol and writes summary.csv, trials.csv, curves.csv
/// and manifest.json into `out_dir`.
int cmd_experiment(const std::string& protocol, const ExperimentOptions& options,
                   const std::filesystem::path& out_dir, std::ostream& out, std::ostream& err);

}  // namespace l1adm
