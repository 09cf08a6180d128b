#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ffexpand/factor.hpp"
#include "ffexpand/poly.hpp"

namespace ffexpand {

/// The tuple (a, b, c, d) selecting one curve of the family.
struct CurveParams {
  FieldElement a, b, c, d;

  /// Canonical index ((a q + b) q + c) q + d.
  std::uint64_t index(std::uint64_t q) const { return ((a.index * q + b.index) * q + c.index) * q + d.index; }
  static CurveParams from_index(std::uint64_t index, std::uint64_t q);
};

/// Affine plane curve F(a, x1) + F(x2, c) - F(x1, x2) + b + d = 0.
class PlaneCurve {
 public:
  const MultiPoly& eq() const noexcept { return eq_; }
  const FieldPtr& ctx() const noexcept { return eq_.ctx(); }
  int degree() const noexcept { return eq_.total_degree(); }
  const CurveParams& params() const noexcept { return params_; }

 private:
  friend PlaneCurve build_curve(const SymmetricKernel& kernel, const CurveParams& params);
  PlaneCurve(MultiPoly eq, CurveParams params) : eq_(std::move(eq)), params_(params) {}

  MultiPoly eq_;
  CurveParams params_;
};

/// Throws DegenerateCurve if the equation vanishes identically (impossible
/// for a validated kernel) and MixedFields for parameters outside the field.
PlaneCurve build_curve(const SymmetricKernel& kernel, const CurveParams& params);

/// Number of (x1, x2) in F_{q^m}^2 on the curve, by exhaustive scan.
/// Throws SizeCapExceeded when q^m exceeds the field cap.
std::uint64_t count_points(const PlaneCurve& curve, unsigned m = 1);

/// Zero count of any bivariate polynomial over its own field.
std::uint64_t count_zeros(const MultiPoly& f);

struct WeilReport {
  std::uint64_t n_points = 0;
  std::uint64_t q = 0;
  int degree = 0;
  double deviation = 0;  // |N - q|
  double bound = 0;      // (D-1)(D-2) sqrt(q) + D + 1
  bool within_interval = false;
};

/// Throws NotAbsolutelyIrreducible for curves that split over an extension.
WeilReport weil_check(const PlaneCurve& curve, unsigned degree_cap = kDefaultFactorDegreeCap);

/// Weil interval for a known point count; no irreducibility test.
WeilReport weil_interval(std::uint64_t n_points, std::uint64_t q, int degree);

struct LocusSweepOptions {
  /// Sample this many distinct parameter tuples instead of all q^4. When
  /// unset, the sweep is exhaustive up to `exhaustive_cap` tuples and falls
  /// back to `default_sample` above it.
  std::optional<std::uint64_t> sample;
  std::uint64_t exhaustive_cap = 13ull * 13 * 13 * 13;
  std::uint64_t default_sample = 20000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  unsigned degree_cap = kDefaultFactorDegreeCap;
  /// Also count points and check the Weil interval on irreducible curves.
  bool weil = true;
  bool keep_rows = false;
};

struct LocusRow {
  std::uint32_t a, b, c, d;
  std::uint64_t n_points;
  int degree;
  bool abs_irreducible;
  bool weil_ok;  // true for reducible curves (not applicable)
};

struct LocusSweepReport {
  std::uint64_t q = 0;
  std::string kernel;
  std::uint64_t total = 0;  // q^4
  std::uint64_t examined = 0;
  bool exhaustive = true;
  std::uint64_t seed = 0;
  std::uint64_t reducible_count = 0;
  double fraction = 0;
  double q_times_fraction = 0;
  std::uint64_t weil_checked = 0;
  std::uint64_t weil_violations = 0;
  /// Largest |N - q| / bound among irreducible curves.
  double weil_max_ratio = 0;
  std::vector<LocusRow> rows;
};

LocusSweepReport reducibility_locus_sweep(const SymmetricKernel& kernel, const LocusSweepOptions& options = {});

/// "a,b,c,d,N,D,abs_irred,weil_ok" rows.
std::string locus_rows_csv(const LocusSweepReport& report);
nlohmann::json to_json(const LocusSweepReport& report);
nlohmann::json to_json(const WeilReport& report);

}  // namespace ffexpand
