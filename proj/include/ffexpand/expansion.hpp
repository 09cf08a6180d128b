#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ffexpand/poly.hpp"

namespace ffexpand {

using ElementSet = std::vector<FieldElement>;

struct IndependenceResult {
  bool independent = false;
  unsigned cap = 0;
  /// The cap is below deg(G) deg(H), so "independent" is not a proof.
  bool cap_below_default = false;
};

/// Decides whether some nonzero R with deg R <= cap has R(G, H) = 0, by the
/// rank of the products G^i H^j (i + j <= cap) as coefficient vectors.
/// The default cap is max(1, deg G * deg H).
IndependenceResult algebraically_independent(const MultiPoly& g, const MultiPoly& h,
                                             std::optional<unsigned> cap = std::nullopt);

/// P(x, y, z) = F(x, G(y, z)) + H(y, z) + J(x). G and H use the variables
/// y and z, J uses x.
struct TernaryPolySpec {
  SymmetricKernel f;
  MultiPoly g, h, j;
  MultiPoly assembled;
  IndependenceResult independence;

  FieldElement evaluate(FieldElement x, FieldElement y, FieldElement z) const;
};

/// Throws DependentGH when (G, H) fails the independence test, MissingVariable
/// when G, H or J use other variables, MixedFields for mismatched fields.
TernaryPolySpec build_ternary(const SymmetricKernel& f, const MultiPoly& g, const MultiPoly& h, const MultiPoly& j,
                              std::optional<unsigned> independence_cap = std::nullopt);

struct PhiImageStats {
  std::uint64_t image_size = 0;
  double ratio = 0;  // image_size / (|Y||Z|)
};

PhiImageStats phi_image_stats(const MultiPoly& g, const MultiPoly& h, const ElementSet& ys, const ElementSet& zs);

/// Pointwise-evaluation cap for image_size.
inline constexpr std::uint64_t kDefaultEvaluationCap = 100'000'000;

/// |P(X, Y, Z)|. Throws SizeCapExceeded when |X||Y||Z| exceeds the cap.
std::uint64_t image_size(const TernaryPolySpec& p, const ElementSet& xs, const ElementSet& ys, const ElementSet& zs,
                         std::uint64_t evaluation_cap = kDefaultEvaluationCap);

/// The value set itself, ascending by canonical index.
ElementSet image_values(const TernaryPolySpec& p, const ElementSet& xs, const ElementSet& ys, const ElementSet& zs,
                        std::uint64_t evaluation_cap = kDefaultEvaluationCap);

struct ZeroIncidenceCheck {
  std::uint64_t points = 0;     // |{(x, J(x) - w)}|
  std::uint64_t curves = 0;     // distinct (G, H) values
  std::uint64_t incidences = 0;  // must be 0
  double lambda2_abs = 0;
  double product = 0;  // |points| * |curves|
  double bound = 0;    // lambda2^2 q^2
  bool bound_holds = true;
};

struct ExpansionReport {
  std::uint64_t q = 0;
  std::uint64_t size_x = 0, size_y = 0, size_z = 0;
  std::uint64_t image_size = 0;
  std::uint64_t missing = 0;
  double predicted_missing_scale = 0;  // q^{11/3} / (|X||Y||Z|)
  double ratio = 0;
  std::uint64_t phi_image = 0;
  double phi_ratio = 0;
  std::optional<ZeroIncidenceCheck> crosscheck;
};

/// With a cross-check, the point set {(x, J(x) - w) : x in X, w missing} and
/// the curves F(a,x) + b + y = 0 for (a, b) in phi(Y x Z) are built and
/// their incidences counted. lambda2 is computed from the graph when absent.
ExpansionReport expansion_report(const TernaryPolySpec& p, const ElementSet& xs, const ElementSet& ys,
                                 const ElementSet& zs, bool with_graph_crosscheck,
                                 std::optional<double> lambda2_abs = std::nullopt);

/// P = (x - y)^k + z: F(u, v) = (u + v)^k, G = -y, H = z, J = 0.
/// Throws CharTooSmall unless char(F_q) > k.
TernaryPolySpec erdos_polynomial(const FieldPtr& ctx, unsigned k);

struct ErdosTrial {
  std::uint64_t trial = 0;
  double density = 0;
  ExpansionReport report;
};

struct ErdosSweep {
  std::uint64_t q = 0;
  unsigned k = 2;
  std::vector<ErdosTrial> trials;
  /// Mean missing count per density (densities ascending).
  std::vector<std::pair<double, double>> mean_missing_by_density;
  bool missing_nonincreasing_in_density = true;
  std::uint64_t zero_incidence_failures = 0;
  std::uint64_t bound_failures = 0;
};

/// Random X, Y, Z of size max(1, round(density q)) per density and trial,
/// each drawn from the seed of its (q, density index, trial) cell.
ErdosSweep erdos_preset(const FieldPtr& ctx, unsigned k, const std::vector<double>& densities, std::uint64_t trials,
                        std::uint64_t seed, bool with_graph_crosscheck = true, unsigned threads = 0);

/// Distinct random elements of F_q.
ElementSet random_subset(const FieldCtx& k, std::uint64_t size, std::uint64_t seed);
ElementSet whole_field(const FieldCtx& k);

nlohmann::json to_json(const ExpansionReport& r);
nlohmann::json to_json(const ErdosSweep& s);

}  // namespace ffexpand
