#include "ffexpand/graph.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "ffexpand/parallel.hpp"
#include "ffexpand/poly_io.hpp"
#include "ffexpand/random.hpp"

namespace ffexpand {

IncidenceGraph build_graph(const SymmetricKernel& kernel, const GraphOptions& options) {
  const FieldCtx& k = *kernel.ctx();
  const std::uint32_t q = k.size();
  if (q > options.max_q) {
    throw Error(ErrorKind::SizeCapExceeded,
                "graph on F_" + std::to_string(q) + "^2 exceeds the cap q <= " + std::to_string(options.max_q));
  }
  IncidenceGraph g(kernel);
  g.q_ = q;
  g.adjacency_.resize(static_cast<std::size_t>(q) * q * q);
  // F(a, x) table, then neighbour of (a, b) at x is (x, -F(a,x) - b).
  std::vector<FieldElement> table(static_cast<std::size_t>(q) * q);
  for (std::uint32_t a = 0; a < q; ++a) {
    for (std::uint32_t x = 0; x < q; ++x) table[a * q + x] = kernel.evaluate({a}, {x});
  }
  for (std::uint32_t a = 0; a < q; ++a) {
    for (std::uint32_t b = 0; b < q; ++b) {
      std::uint32_t* row = g.adjacency_.data() + (static_cast<std::size_t>(a) * q + b) * q;
      for (std::uint32_t x = 0; x < q; ++x) {
        const FieldElement y = k.neg(k.add(table[a * q + x], {b}));
        row[x] = x * q + y.index;
      }
    }
  }
  if (!g.is_symmetric()) {
    throw Error(ErrorKind::SymmetryViolation, "adjacency is not symmetric; the kernel must satisfy F(a,x) = F(x,a)");
  }
  return g;
}

bool IncidenceGraph::is_symmetric() const {
  for (std::uint32_t v = 0; v < vertex_count(); ++v) {
    for (std::uint32_t w : neighbors(v)) {
      if (!adjacent(v, w)) return false;
    }
  }
  return true;
}

std::uint64_t IncidenceGraph::loop_count() const {
  std::uint64_t loops = 0;
  for (std::uint32_t v = 0; v < vertex_count(); ++v) loops += neighbors(v)[v / q_] == v ? 1 : 0;
  return loops;
}

void IncidenceGraph::inject_fault(std::uint32_t v, std::uint32_t slot, std::uint32_t new_neighbor) {
  if (v >= vertex_count() || slot >= q_ || new_neighbor >= vertex_count()) {
    throw Error(ErrorKind::InvalidArgument, "fault injection target out of range");
  }
  adjacency_[static_cast<std::size_t>(v) * q_ + slot] = new_neighbor;
}

std::uint64_t cube_entry(const IncidenceGraph& g, std::uint32_t v, std::uint32_t w) {
  std::uint64_t paths = 0;
  for (std::uint32_t u : g.neighbors(v)) {
    for (std::uint32_t t : g.neighbors(u)) paths += g.neighbors(t)[w / g.q()] == w ? 1 : 0;
  }
  return paths;
}

std::string to_string(SpectrumMethod m) { return m == SpectrumMethod::Exact ? "exact" : "iterative"; }

SpectrumMethod parse_spectrum_method(const std::string& s) {
  if (s == "exact") return SpectrumMethod::Exact;
  if (s == "iter" || s == "iterative") return SpectrumMethod::Iterative;
  throw Error(ErrorKind::InvalidArgument, "unknown spectrum method '" + s + "' (expected exact or iter)");
}

namespace {

void multiply(const IncidenceGraph& g, const std::vector<double>& x, std::vector<double>& out) {
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    double acc = 0;
    for (std::uint32_t w : g.neighbors(v)) acc += x[w];
    out[v] = acc;
  }
}

void remove_mean(std::vector<double>& x) {
  double mean = 0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  for (double& v : x) v -= mean;
}

double norm(const std::vector<double>& x) {
  double s = 0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

void exact_spectrum(const IncidenceGraph& g, SpectralReport& report, bool keep) {
  const Eigen::Index n = g.vertex_count();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    for (std::uint32_t w : g.neighbors(v)) a(v, w) += 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::ConvergenceFailure, "dense eigensolver did not converge");
  }
  std::vector<double> values(solver.eigenvalues().data(), solver.eigenvalues().data() + n);  // ascending
  report.lambda1 = values.back();
  double second = 0;
  for (Eigen::Index i = 0; i + 1 < n; ++i) second = std::max(second, std::fabs(values[i]));
  report.lambda2_abs = second;
  double sum = 0, sq = 0;
  for (double v : values) {
    sum += v;
    sq += v * v;
  }
  report.eigen_sum = sum;
  report.eigen_square_sum = sq;
  if (keep) report.eigenvalues = std::move(values);
}

void iterative_spectrum(const IncidenceGraph& g, const SpectrumOptions& options, SpectralReport& report) {
  const std::size_t n = g.vertex_count();
  Rng rng(options.seed);
  std::vector<double> x(n), ax(n), a2x(n);
  for (double& v : x) v = static_cast<double>(rng.below(1u << 30)) / (1u << 30) - 0.5;
  remove_mean(x);
  double nx = norm(x);
  for (double& v : x) v /= nx;

  double theta = 0, residual = 1;
  std::uint64_t it = 0;
  while (it < options.max_iterations) {
    ++it;
    multiply(g, x, ax);
    multiply(g, ax, a2x);
    remove_mean(a2x);
    theta = 0;
    for (std::size_t i = 0; i < n; ++i) theta += x[i] * a2x[i];
    const double na2x = norm(a2x);
    if (na2x == 0) {
      theta = 0;
      residual = 0;
      break;
    }
    double r = 0;
    for (std::size_t i = 0; i < n; ++i) r += (a2x[i] - theta * x[i]) * (a2x[i] - theta * x[i]);
    residual = std::sqrt(r) / std::max(theta, 1e-300);
    for (std::size_t i = 0; i < n; ++i) x[i] = a2x[i] / na2x;
    if (residual <= options.tolerance) break;
  }
  report.iterations = it;
  report.residual = residual;
  if (residual > options.tolerance) {
    throw Error(ErrorKind::ConvergenceFailure, "power iteration stopped after " + std::to_string(it) +
                                                   " iterations with relative residual " + std::to_string(residual));
  }
  report.lambda1 = static_cast<double>(g.q());
  report.lambda2_abs = std::sqrt(std::max(theta, 0.0));
}

}  // namespace

SpectralReport spectrum(const IncidenceGraph& g, const SpectrumOptions& options) {
  SpectralReport report;
  report.q = g.q();
  report.kernel = to_string(g.kernel().poly());
  report.method = options.method;
  if (options.method == SpectrumMethod::Exact) {
    if (g.vertex_count() > options.dense_cap) {
      throw Error(ErrorKind::SizeCapExceeded, "dense spectrum needs q^2 <= " + std::to_string(options.dense_cap));
    }
    exact_spectrum(g, report, options.keep_eigenvalues);
  } else {
    iterative_spectrum(g, options, report);
  }
  report.ratio_q56 = report.lambda2_abs / std::pow(static_cast<double>(g.q()), 5.0 / 6.0);
  return report;
}

CubeAuditReport cube_identity_audit(const IncidenceGraph& g, std::optional<std::uint64_t> sample, std::uint64_t seed,
                                    unsigned threads) {
  const std::uint64_t q = g.q();
  const std::uint64_t total = q * q * q * q;
  CubeAuditReport report;
  report.q = q;
  report.seed = seed;
  std::vector<std::uint64_t> indices;
  std::uint64_t count = total;
  if (sample && *sample < total) {
    report.exhaustive = false;
    Rng rng(derive_seed(seed, {q}));
    indices = rng.sample(total, *sample);
    count = *sample;
  }
  report.checked = count;

  std::vector<std::optional<CubeMismatch>> found(count);
  parallel_for(count, threads, [&](std::size_t i) {
    const CurveParams p = CurveParams::from_index(report.exhaustive ? i : indices[i], q);
    const std::uint64_t paths = cube_entry(g, g.vertex(p.a, p.b), g.vertex(p.c, p.d));
    const std::uint64_t points = count_points(build_curve(g.kernel(), p));
    if (paths != points) found[i] = CubeMismatch{p, paths, points};
  });
  for (auto& m : found) {
    if (m) report.mismatches.push_back(*m);
  }
  return report;
}

std::uint64_t edge_count(const IncidenceGraph& g, std::span<const std::uint32_t> s, std::span<const std::uint32_t> t) {
  std::vector<char> in_t(g.vertex_count(), 0);
  for (std::uint32_t v : t) in_t[v] = 1;
  std::uint64_t edges = 0;
  for (std::uint32_t u : s) {
    for (std::uint32_t w : g.neighbors(u)) edges += in_t[w];
  }
  return edges;
}

MixingReport mixing_check(const IncidenceGraph& g, double lambda2_abs, std::uint64_t trials, std::uint64_t seed,
                          unsigned threads) {
  const std::uint64_t n = g.vertex_count();
  const double q = g.q();
  MixingReport report;
  report.q = g.q();
  report.lambda2_abs = lambda2_abs;
  report.trials = trials;
  report.seed = seed;

  struct Outcome {
    std::uint64_t s_size, t_size, edges;
    double deviation, bound;
  };
  std::vector<Outcome> outcomes(trials);
  parallel_for(trials, threads, [&](std::size_t trial) {
    std::vector<std::uint64_t> s, t;
    if (trial == 0 || trial == 1) {
      t.resize(n);
      for (std::uint64_t i = 0; i < n; ++i) t[i] = i;
      if (trial == 0) s = t;
    } else {
      Rng rng(derive_seed(seed, {report.q, trial}));
      s = rng.sample(n, rng.between(0, n));
      t = rng.sample(n, rng.between(0, n));
    }
    std::vector<std::uint32_t> s32(s.begin(), s.end()), t32(t.begin(), t.end());
    const std::uint64_t e = edge_count(g, s32, t32);
    const double main = q * static_cast<double>(s.size()) * static_cast<double>(t.size()) / static_cast<double>(n);
    const double deviation = std::fabs(static_cast<double>(e) - main);
    const double bound = lambda2_abs * std::sqrt(static_cast<double>(s.size()) * static_cast<double>(t.size()));
    outcomes[trial] = {s.size(), t.size(), e, deviation, bound};
  });
  for (std::uint64_t i = 0; i < trials; ++i) {
    const Outcome& o = outcomes[i];
    if (o.deviation > o.bound + 1e-6) report.violations.push_back({i, o.s_size, o.t_size, o.edges, o.deviation, o.bound});
    if (o.bound > 0) report.max_ratio = std::max(report.max_ratio, o.deviation / o.bound);
  }
  return report;
}

TraceIdentities trace_identities(const IncidenceGraph& g) {
  const FieldCtx& k = *g.ctx();
  TraceIdentities out;
  const std::uint32_t q = g.q();
  for (std::uint32_t a = 0; a < q; ++a) {
    const FieldElement faa = g.kernel().evaluate({a}, {a});
    for (std::uint32_t b = 0; b < q; ++b) {
      if (k.add(faa, k.add({b}, {b})).index == 0) ++out.loops_from_formula;
    }
  }
  out.trace_a = g.loop_count();
  // (A^2)_{vv} = sum_w A_vw^2 = number of list entries of v (0/1 entries).
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    for (std::uint32_t w : g.neighbors(v)) out.trace_a2 += g.adjacent(v, w) ? 1 : 0;
  }
  out.q_cubed = static_cast<std::uint64_t>(q) * q * q;
  return out;
}

nlohmann::json to_json(const SpectralReport& r) {
  nlohmann::json j{{"q", r.q},
                   {"kernel", r.kernel},
                   {"method", to_string(r.method)},
                   {"lambda1", r.lambda1},
                   {"lambda2_abs", r.lambda2_abs},
                   {"ratio_q56", r.ratio_q56},
                   {"iterations", r.iterations},
                   {"residual", r.residual}};
  if (r.eigen_sum) j["eigen_sum"] = *r.eigen_sum;
  if (r.eigen_square_sum) j["eigen_square_sum"] = *r.eigen_square_sum;
  return j;
}

nlohmann::json to_json(const CubeAuditReport& r) {
  nlohmann::json mismatches = nlohmann::json::array();
  for (const auto& m : r.mismatches) {
    mismatches.push_back({{"params", {m.params.a.index, m.params.b.index, m.params.c.index, m.params.d.index}},
                          {"paths", m.paths},
                          {"points", m.points}});
  }
  return {{"q", r.q},
          {"checked", r.checked},
          {"exhaustive", r.exhaustive},
          {"seed", r.seed},
          {"mismatch_count", r.mismatches.size()},
          {"mismatches", mismatches}};
}

nlohmann::json to_json(const MixingReport& r) {
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"trial", v.trial},
                          {"s_size", v.s_size},
                          {"t_size", v.t_size},
                          {"edges", v.edges},
                          {"deviation", v.deviation},
                          {"bound", v.bound}});
  }
  return {{"q", r.q},
          {"lambda2_abs", r.lambda2_abs},
          {"trials", r.trials},
          {"seed", r.seed},
          {"max_ratio", r.max_ratio},
          {"violation_count", r.violations.size()},
          {"violations", violations}};
}

}  // namespace ffexpand
