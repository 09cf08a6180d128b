#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace ffexpand::cli {

/// Everything that determines an experiment's output. Output paths and the
/// thread count are carried along but excluded from the hash.
struct ExperimentConfig {
  std::string kind;                 // spectrum, cube-audit, curve-sweep, incidence, expand, verify, composition
  std::vector<std::string> fields;  // "p^n" specs; a sweep when more than one
  std::string kernel = "(a+x)^2";
  std::string method = "exact";     // spectrum: exact | iter
  std::uint64_t trials = 0;         // 0 selects the experiment's default
  std::optional<std::uint64_t> sample;
  std::vector<std::uint64_t> sizes;
  std::vector<double> densities;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  int theorem = 1;
  unsigned n = 2;
  unsigned degree_cap = 12;
  std::string preset;  // expand: "erdos:k=2"
  std::string f, g, h, j;
  bool crosscheck = true;
  bool inject_fault = false;  // cube-audit testing aid
  std::string out;            // JSONL records (appended)
  std::string csv;            // long-format CSV
  std::string summary;        // summary JSON

  nlohmann::json to_json(bool include_outputs = true) const;
  static ExperimentConfig from_json(const nlohmann::json& j);
  /// 16 hex digits of FNV-1a over the canonical JSON of the hashed fields.
  std::string hash() const;
};

/// Round to 12 significant digits, recursively through objects and arrays.
nlohmann::json round_floats(const nlohmann::json& j);

/// Float formatted with 12 significant digits.
std::string format_float(double v);

}  // namespace ffexpand::cli
