#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "ffexpand/poly.hpp"

namespace ffexpand {

/// Distinct points of F_q^2, stored as q * idx(x) + idx(y) in ascending order.
class PointSet {
 public:
  PointSet(FieldPtr ctx, std::vector<std::pair<FieldElement, FieldElement>> points);
  static PointSet from_indices(FieldPtr ctx, std::vector<std::uint64_t> indices);
  static PointSet whole_plane(FieldPtr ctx);

  const FieldPtr& ctx() const noexcept { return ctx_; }
  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<std::uint32_t>& indices() const noexcept { return points_; }
  bool contains(FieldElement x, FieldElement y) const { return mask_[x.index * ctx_->size() + y.index] != 0; }

 private:
  FieldPtr ctx_;
  std::vector<std::uint32_t> points_;
  std::vector<char> mask_;
};

/// y = slope * x + intercept.
struct LineCurve {
  FieldElement slope, intercept;
};

/// y = a_0 + a_1 x + ... + a_n x^n (ascending coefficients, length n + 1).
struct PolyGraphCurve {
  std::vector<FieldElement> coeffs;
};

/// F(a, x) + b + y = 0.
struct KernelCurve {
  std::shared_ptr<const SymmetricKernel> kernel;
  FieldElement a, b;
};

using CurveFamilySpec = std::variant<LineCurve, PolyGraphCurve, KernelCurve>;

enum class Theorem { Lines = 1, PolyGraphs = 2, KernelCurves = 3 };

/// Each family member is the graph of a function of x; this returns it.
FieldElement curve_y(const FieldCtx& k, const CurveFamilySpec& curve, FieldElement x);
bool member(const FieldCtx& k, const CurveFamilySpec& curve, FieldElement x, FieldElement y);

/// A homogeneous list of curves of one family.
class CurveSet {
 public:
  static CurveSet lines(FieldPtr ctx, std::vector<LineCurve> members);
  /// Throws InvalidArgument unless q > n and every member has n + 1 coefficients.
  static CurveSet poly_graphs(FieldPtr ctx, unsigned n, std::vector<PolyGraphCurve> members);
  static CurveSet kernel_curves(std::shared_ptr<const SymmetricKernel> kernel,
                                std::vector<std::pair<FieldElement, FieldElement>> params);

  Theorem family() const noexcept { return family_; }
  unsigned degree() const noexcept { return degree_; }
  const FieldPtr& ctx() const noexcept { return ctx_; }
  const std::vector<CurveFamilySpec>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }

  /// Number of unordered member pairs that define the same point set.
  std::uint64_t duplicate_point_sets() const;

 private:
  CurveSet(FieldPtr ctx, Theorem family, unsigned degree) : ctx_(std::move(ctx)), family_(family), degree_(degree) {}

  FieldPtr ctx_;
  Theorem family_;
  unsigned degree_;
  std::vector<CurveFamilySpec> members_;
};

struct IncidenceReport {
  Theorem theorem = Theorem::Lines;
  std::uint64_t q = 0;
  std::uint64_t points = 0;
  std::uint64_t curves = 0;
  std::uint64_t incidences = 0;
  double main = 0;         // |P||Q| / q
  double deviation = 0;    // |I - main|
  double error_scale = 0;  // q^{1/2}, q^{n/2} or q^{5/6}, times sqrt(|P||Q|)
  double ratio = 0;        // deviation / error_scale (0 when both vanish)
};

/// Throws MixedFields when the sets live over different fields.
IncidenceReport incidences(const PointSet& points, const CurveSet& curves);

struct SweepRecord {
  std::uint64_t trial = 0;
  IncidenceReport report;
  /// Kernel curves only: lambda_2 sqrt(|P||Q|) from the measured spectrum.
  std::optional<double> mixing_bound;
  bool mixing_ok = true;
  std::uint64_t duplicate_point_sets = 0;
};

struct SweepQSummary {
  std::uint64_t q = 0;
  std::uint64_t instances = 0;
  double max_ratio = 0;
  std::optional<double> lambda2_abs;
  std::uint64_t constant_one_violations = 0;  // lines and polynomial-graph families
  std::uint64_t mixing_violations = 0;        // kernel-curve family
  std::string error;                          // non-empty when this q failed
};

struct TheoremSweepConfig {
  Theorem theorem = Theorem::Lines;
  std::vector<std::string> fields;  // "p^n" specs
  unsigned n = 2;                   // polynomial degree for the polynomial-graph family
  std::string kernel = "(a+x)^2";   // kernel-curve family
  std::uint64_t trials = 200;
  /// Set sizes used for both P and Q; empty means {q, q^{3/2}, q^2/4}.
  std::vector<std::uint64_t> sizes;
  std::uint64_t seed = 0;
  bool mixing_crosscheck = true;
  unsigned threads = 0;
};

struct TheoremSweepResult {
  std::vector<SweepRecord> records;
  std::vector<SweepQSummary> summaries;
};

/// Reproducible randomized sweep; each (q, trial) cell draws from its own seed.
/// A field that fails validation is reported in its summary and skipped.
TheoremSweepResult theorem_sweep(const TheoremSweepConfig& config);

/// Tolerance for the constant-one bounds of theorems 1 and 2.
inline constexpr double kConstantOneSlack = 1e-9;

std::string sweep_csv(const TheoremSweepResult& result);
nlohmann::json to_json(const IncidenceReport& r);
nlohmann::json to_json(const TheoremSweepResult& r);

}  // namespace ffexpand
