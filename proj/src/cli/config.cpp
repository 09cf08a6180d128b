#include "ffexpand/cli/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "ffexpand/errors.hpp"

namespace ffexpand::cli {

nlohmann::json ExperimentConfig::to_json(bool include_outputs) const {
  nlohmann::json j = nlohmann::json::object();
  j["kind"] = kind;
  j["fields"] = fields;
  j["kernel"] = kernel;
  j["method"] = method;
  j["trials"] = trials;
  j["sizes"] = sizes;
  j["densities"] = densities;
  j["seed"] = seed;
  j["theorem"] = theorem;
  j["n"] = n;
  j["degree_cap"] = degree_cap;
  j["preset"] = preset;
  j["F"] = f;
  j["G"] = g;
  j["H"] = h;
  j["J"] = this->j;
  j["crosscheck"] = crosscheck;
  j["inject_fault"] = inject_fault;
  j["sample"] = sample ? nlohmann::json(*sample) : nlohmann::json(nullptr);
  if (include_outputs) {
    j["threads"] = threads;
    j["out"] = out;
    j["csv"] = csv;
    j["summary"] = summary;
  }
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& src) {
  if (!src.is_object()) throw Error(ErrorKind::Parse, "config must be a JSON object");
  static const char* known[] = {"kind",   "fields",  "field",   "kernel", "method",     "trials",     "sample",
                                "sizes",  "densities", "seed",  "threads", "theorem",   "n",          "degree_cap",
                                "preset", "F",       "G",       "H",      "J",          "crosscheck", "inject_fault",
                                "out",    "csv",     "summary"};
  for (const auto& [key, value] : src.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw Error(ErrorKind::Parse, "unknown config key '" + key + "'");
  }
  ExperimentConfig c;
  try {
    c.kind = src.value("kind", c.kind);
    if (src.contains("fields")) c.fields = src.at("fields").get<std::vector<std::string>>();
    if (src.contains("field")) c.fields = {src.at("field").get<std::string>()};
    c.kernel = src.value("kernel", c.kernel);
    c.method = src.value("method", c.method);
    c.trials = src.value("trials", c.trials);
    if (src.contains("sample") && !src.at("sample").is_null()) c.sample = src.at("sample").get<std::uint64_t>();
    if (src.contains("sizes")) c.sizes = src.at("sizes").get<std::vector<std::uint64_t>>();
    if (src.contains("densities")) c.densities = src.at("densities").get<std::vector<double>>();
    c.seed = src.value("seed", c.seed);
    c.threads = src.value("threads", c.threads);
    c.theorem = src.value("theorem", c.theorem);
    c.n = src.value("n", c.n);
    c.degree_cap = src.value("degree_cap", c.degree_cap);
    c.preset = src.value("preset", c.preset);
    c.f = src.value("F", c.f);
    c.g = src.value("G", c.g);
    c.h = src.value("H", c.h);
    c.j = src.value("J", c.j);
    c.crosscheck = src.value("crosscheck", c.crosscheck);
    c.inject_fault = src.value("inject_fault", c.inject_fault);
    c.out = src.value("out", c.out);
    c.csv = src.value("csv", c.csv);
    c.summary = src.value("summary", c.summary);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("bad config value: ") + e.what());
  }
  return c;
}

std::string ExperimentConfig::hash() const {
  const std::string text = to_json(false).dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_float(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

nlohmann::json round_floats(const nlohmann::json& j) {
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (!std::isfinite(v)) return nullptr;
    return std::strtod(format_float(v).c_str(), nullptr);
  }
  if (j.is_object()) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [k, v] : j.items()) out[k] = round_floats(v);
    return out;
  }
  if (j.is_array()) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& v : j) out.push_back(round_floats(v));
    return out;
  }
  return j;
}

}  // namespace ffexpand::cli
