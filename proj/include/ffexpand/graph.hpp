#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ffexpand/curves.hpp"
#include "ffexpand/poly.hpp"

namespace ffexpand {

struct GraphOptions {
  /// Largest q for which the adjacency lists are built.
  std::uint64_t max_q = 128;
};

/// The q-regular graph on F_q^2 with (a,b) ~ (x,y) iff F(a,x) + b + y = 0.
/// Vertex (u, v) has index q * idx(u) + idx(v). Row v of the adjacency
/// lists stores, at position x, the unique neighbour with first coordinate x,
/// namely (x, -F(a,x) - b); rows are therefore sorted.
class IncidenceGraph {
 public:
  std::uint32_t q() const noexcept { return q_; }
  std::uint32_t vertex_count() const noexcept { return q_ * q_; }
  const SymmetricKernel& kernel() const noexcept { return kernel_; }
  const FieldPtr& ctx() const noexcept { return kernel_.ctx(); }

  std::uint32_t vertex(FieldElement first, FieldElement second) const { return first.index * q_ + second.index; }
  std::pair<FieldElement, FieldElement> coords(std::uint32_t v) const { return {{v / q_}, {v % q_}}; }

  std::span<const std::uint32_t> neighbors(std::uint32_t v) const {
    return {adjacency_.data() + static_cast<std::size_t>(v) * q_, q_};
  }
  bool adjacent(std::uint32_t v, std::uint32_t w) const { return neighbors(w)[v / q_] == v; }
  /// Number of vertices carrying a loop (the trace of A).
  std::uint64_t loop_count() const;

  /// Symmetry of the stored lists (every edge seen from both ends).
  bool is_symmetric() const;

  /// Testing aid: overwrite one adjacency entry, deliberately breaking the
  /// graph so downstream audits can be shown to catch it.
  void inject_fault(std::uint32_t v, std::uint32_t slot, std::uint32_t new_neighbor);

 private:
  friend IncidenceGraph build_graph(const SymmetricKernel& kernel, const GraphOptions& options);
  explicit IncidenceGraph(SymmetricKernel kernel) : kernel_(std::move(kernel)) {}

  SymmetricKernel kernel_;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> adjacency_;
};

/// Throws SizeCapExceeded above options.max_q and SymmetryViolation if the
/// constructed lists are not symmetric.
IncidenceGraph build_graph(const SymmetricKernel& kernel, const GraphOptions& options = {});

/// (A^3)_{v,w}: walks v -> u -> t -> w.
std::uint64_t cube_entry(const IncidenceGraph& g, std::uint32_t v, std::uint32_t w);

enum class SpectrumMethod { Exact, Iterative };
std::string to_string(SpectrumMethod m);
SpectrumMethod parse_spectrum_method(const std::string& s);

struct SpectrumOptions {
  SpectrumMethod method = SpectrumMethod::Exact;
  /// Largest vertex count for the dense solver (q <= 64).
  std::uint64_t dense_cap = 4096;
  std::uint64_t max_iterations = 100000;
  double tolerance = 1e-8;
  std::uint64_t seed = 1;
  bool keep_eigenvalues = false;
};

struct SpectralReport {
  std::uint64_t q = 0;
  std::string kernel;
  SpectrumMethod method = SpectrumMethod::Exact;
  double lambda1 = 0;
  double lambda2_abs = 0;
  double ratio_q56 = 0;
  std::uint64_t iterations = 0;
  double residual = 0;
  /// Exact method only: sum of eigenvalues and of their squares.
  std::optional<double> eigen_sum;
  std::optional<double> eigen_square_sum;
  std::vector<double> eigenvalues;
};

/// Exact: dense self-adjoint eigendecomposition. Iterative: power iteration
/// with A^2 on the complement of the all-ones vector, which converges to
/// |lambda_2| even when +lambda_2 and -lambda_2 are both eigenvalues; lambda_1
/// is q by regularity. Throws SizeCapExceeded or ConvergenceFailure.
SpectralReport spectrum(const IncidenceGraph& g, const SpectrumOptions& options = {});

struct CubeMismatch {
  CurveParams params;
  std::uint64_t paths;
  std::uint64_t points;
};

struct CubeAuditReport {
  std::uint64_t q = 0;
  std::uint64_t checked = 0;
  bool exhaustive = true;
  std::uint64_t seed = 0;
  std::vector<CubeMismatch> mismatches;
};

/// Compares (A^3)_{(a,b),(c,d)} with the point count of the curve C_(a,b,c,d)
/// for every tuple (sample unset) or for `sample` distinct random tuples.
CubeAuditReport cube_identity_audit(const IncidenceGraph& g, std::optional<std::uint64_t> sample = std::nullopt,
                                    std::uint64_t seed = 0, unsigned threads = 0);

struct MixingViolation {
  std::uint64_t trial;
  std::uint64_t s_size, t_size, edges;
  double deviation, bound;
};

struct MixingReport {
  std::uint64_t q = 0;
  double lambda2_abs = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  /// Largest deviation / (lambda2 sqrt(|S||T|)) seen (pairs with a zero
  /// bound are excluded).
  double max_ratio = 0;
  std::vector<MixingViolation> violations;
};

/// Ordered pairs (u, v) in S x T with u ~ v.
std::uint64_t edge_count(const IncidenceGraph& g, std::span<const std::uint32_t> s, std::span<const std::uint32_t> t);

/// Random (S, T) pairs; sizes uniform in [0, q^2]. The first two trials are
/// the extreme cases (all, all) and (empty, all).
MixingReport mixing_check(const IncidenceGraph& g, double lambda2_abs, std::uint64_t trials, std::uint64_t seed,
                          unsigned threads = 0);

struct TraceIdentities {
  std::uint64_t loops_from_formula = 0;  // #{(a,b): F(a,a) + 2b = 0}
  std::uint64_t trace_a = 0;             // from the adjacency lists
  std::uint64_t trace_a2 = 0;            // sum of row sums of A entrywise squared
  std::uint64_t q_cubed = 0;
};

TraceIdentities trace_identities(const IncidenceGraph& g);

nlohmann::json to_json(const SpectralReport& r);
nlohmann::json to_json(const CubeAuditReport& r);
nlohmann::json to_json(const MixingReport& r);

}  // namespace ffexpand
