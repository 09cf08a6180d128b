#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "ffexpand/cli/config.hpp"

namespace ffexpand::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 2;
inline constexpr int kExitInvalid = 3;

struct RunResult {
  int exit_code = kExitOk;
  nlohmann::json summary;
  /// One payload per result record.
  std::vector<nlohmann::json> payloads;
  /// Long format: q,kernel,trial,metric,value.
  std::string csv;
  std::vector<std::string> diagnostics;
};

/// Runs one experiment without touching the filesystem. Validation errors
/// propagate as ffexpand::Error unless the config names several fields, in
/// which case each failing field is recorded and the sweep continues.
RunResult run(const ExperimentConfig& config);

/// run() plus persistence: appends JSONL records to config.out, writes the
/// CSV and summary files when requested, prints the summary to `out` and
/// diagnostics to `err`. Returns the process exit code.
int execute(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// The JSONL line for one payload.
nlohmann::json make_record(const ExperimentConfig& config, const nlohmann::json& payload);

}  // namespace ffexpand::cli
