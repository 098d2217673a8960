#pragma once

#include <cstdint>
#include <string>

namespace l1lab {

inline constexpr const char* kToolVersion = "0.1.0";

enum class ReportFormat { csv, jsonl };

// One experiment run. Numeric parameters are validated against the module
// preconditions before any sieve or grid is allocated.
struct ExperimentConfig {
  std::string command;
  std::string fn_spec = "one";
  uint64_t n = 0;
  uint64_t q = 0;
  double t_max = 0.0;
  double delta = 0.0;
  double eps = 0.0;
  double a_param = 0.0;
  int oversample = 8;
  uint64_t seed = 0;
  std::string out_path;
  ReportFormat format = ReportFormat::csv;
};

ReportFormat parse_format(const std::string& s);

// throws DomainError (config) or ResourceError (budget); never allocates
void validate_config(const ExperimentConfig& config);

// Runs the subcommand and writes the report to config.out_path. Reports
// embed the config and tool version; wall-clock lines are marked volatile
// ("#!" in CSV, {"volatile":...} in JSONL) and excluded from determinism.
void run_experiment(const ExperimentConfig& config);

// maps exceptions to the documented exit codes: 0 ok, 2 config, 3 resource
int run_experiment_cli(const ExperimentConfig& config);

}  // namespace l1lab
