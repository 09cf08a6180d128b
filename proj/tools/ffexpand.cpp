// ffexpand: command-line front end for the experiment runner.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ffexpand/cli/config.hpp"
#include "ffexpand/cli/runner.hpp"
#include "ffexpand/errors.hpp"

namespace {

using ffexpand::cli::ExperimentConfig;

struct Flags {
  std::string config_path;
  std::vector<std::string> fields;
  std::string kernel, method, preset, f, g, h, j, out, csv, summary;
  std::uint64_t trials = 0, sample = 0, seed = 0;
  unsigned threads = 0, n = 0, degree_cap = 0;
  int theorem = 0;
  std::vector<std::uint64_t> sizes;
  std::vector<double> densities;
  bool no_crosscheck = false, inject_fault = false;
};

void add_common(CLI::App* sub, Flags& fl) {
  sub->add_option("--config", fl.config_path, "JSON config file; explicit flags override its values");
  sub->add_option("--field", fl.fields, "field spec p^n (repeatable or comma separated)")->delimiter(',');
  sub->add_option("--kernel", fl.kernel, "symmetric kernel F(a,x), e.g. \"(a+x)^2\"");
  sub->add_option("--trials", fl.trials, "number of random trials");
  sub->add_option("--sample", fl.sample, "sample size instead of an exhaustive scan");
  sub->add_option("--seed", fl.seed, "master seed");
  sub->add_option("--threads", fl.threads, "worker threads (0 = all cores)");
  sub->add_option("--out", fl.out, "append JSONL records to this file");
  sub->add_option("--csv", fl.csv, "write the long-format CSV here");
  sub->add_option("--summary", fl.summary, "write the summary JSON here");
}

ExperimentConfig merge(const std::string& kind, CLI::App* sub, const Flags& fl) {
  ExperimentConfig c;
  if (!fl.config_path.empty()) {
    std::ifstream in(fl.config_path);
    if (!in) throw ffexpand::Error(ffexpand::ErrorKind::InvalidArgument, "cannot read config '" + fl.config_path + "'");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ffexpand::Error(ffexpand::ErrorKind::Parse, std::string("config is not valid JSON: ") + e.what());
    }
    c = ExperimentConfig::from_json(j);
  }
  c.kind = kind;
  auto given = [&](const char* name) { return sub->get_option_no_throw(name) && sub->count(name) > 0; };
  if (given("--field")) c.fields = fl.fields;
  if (given("--kernel")) c.kernel = fl.kernel;
  if (given("--method")) c.method = fl.method;
  if (given("--trials")) c.trials = fl.trials;
  if (given("--sample")) c.sample = fl.sample;
  if (given("--sizes")) c.sizes = fl.sizes;
  if (given("--densities")) c.densities = fl.densities;
  if (given("--seed")) c.seed = fl.seed;
  if (given("--threads")) c.threads = fl.threads;
  if (given("--theorem")) c.theorem = fl.theorem;
  if (given("--n")) c.n = fl.n;
  if (given("--degree-cap")) c.degree_cap = fl.degree_cap;
  if (given("--preset")) c.preset = fl.preset;
  if (given("--F")) c.f = fl.f;
  if (given("--G")) c.g = fl.g;
  if (given("--H")) c.h = fl.h;
  if (given("--J")) c.j = fl.j;
  if (given("--no-crosscheck")) c.crosscheck = false;
  if (given("--inject-fault")) c.inject_fault = true;
  if (given("--out")) c.out = fl.out;
  if (given("--csv")) c.csv = fl.csv;
  if (given("--summary")) c.summary = fl.summary;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-field expansion experiments"};
  app.set_version_flag("--version", FFEXPAND_VERSION);
  app.require_subcommand(1);

  Flags fl;
  std::vector<std::pair<std::string, CLI::App*>> subs;
  auto make = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, fl);
    subs.emplace_back(name, sub);
    return sub;
  };

  CLI::App* spectrum = make("spectrum", "principal and second eigenvalues of the incidence graph");
  spectrum->add_option("--method", fl.method, "exact | iter");

  CLI::App* cube = make("cube-audit", "compare A^3 entries with curve point counts");
  cube->add_flag("--inject-fault", fl.inject_fault, "corrupt one adjacency entry (testing aid)")->group("");

  CLI::App* curves = make("curve-sweep", "reducibility locus and Weil interval sweep");
  curves->add_option("--degree-cap", fl.degree_cap, "total-degree cap for the factorizer");

  CLI::App* inc = make("incidence", "randomized point-curve incidence sweeps");
  inc->add_option("--theorem", fl.theorem, "1 lines, 2 polynomial graphs, 3 kernel curves");
  inc->add_option("--n", fl.n, "polynomial degree for family 2");
  inc->add_option("--sizes", fl.sizes, "point and curve set sizes")->delimiter(',');
  inc->add_flag("--no-crosscheck", fl.no_crosscheck, "skip the spectral mixing cross-check");

  CLI::App* expand = make("expand", "value-set expansion of P(x,y,z) = F(x,G) + H + J");
  expand->add_option("--preset", fl.preset, "erdos:k=<k>");
  expand->add_option("--F", fl.f, "symmetric kernel F(a,x)");
  expand->add_option("--G", fl.g, "G(y,z)");
  expand->add_option("--H", fl.h, "H(y,z)");
  expand->add_option("--J", fl.j, "J(x)");
  expand->add_option("--sizes", fl.sizes, "|X|,|Y|,|Z|")->delimiter(',');
  expand->add_option("--densities", fl.densities, "set densities for the preset sweep")->delimiter(',');
  expand->add_flag("--no-crosscheck", fl.no_crosscheck, "skip the zero-incidence cross-check");

  make("verify", "full invariant suite per field");
  make("composition", "composition lemma harness");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ffexpand::cli::kExitInvalid;
  }

  for (const auto& [name, sub] : subs) {
    if (!sub->parsed()) continue;
    try {
      return ffexpand::cli::execute(merge(name, sub, fl), std::cout, std::cerr);
    } catch (const ffexpand::Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return ffexpand::cli::kExitInvalid;
    }
  }
  return ffexpand::cli::kExitInvalid;
}
