#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"

#include "ffexpand/unipoly.hpp"

namespace ffexpand {

/// P(Q(x)).
UniPoly compose(const UniPoly& outer, const UniPoly& inner);

struct LinearRelation {
  FieldElement alpha;  // nonzero
  FieldElement beta;
};

/// (alpha, beta) with S = alpha*Q + beta when one exists. Throws ConstantQ.
std::optional<LinearRelation> find_linear_relation(const UniPoly& q, const UniPoly& s);

/// Outcome of testing the composition lemma on one instance: when
/// P∘Q = R∘S and 0 < deg P = deg R < char, S must be a linear image of Q.
struct CompositionVerdict {
  bool hypotheses_hold = false;
  bool conclusion_holds = false;

  bool counterexample() const noexcept { return hypotheses_hold && !conclusion_holds; }
};

CompositionVerdict check_composition_lemma(const UniPoly& p, const UniPoly& q, const UniPoly& r, const UniPoly& s);

/// P(x+y) - P(x) - P(y) vanishes as a formal bivariate polynomial.
bool is_additive(const UniPoly& p);

/// Coefficients a_0..a_K with P = sum a_j x^(p^j); empty for the zero
/// polynomial. Throws NotAdditiveShape naming the first exponent that is not a
/// power of the characteristic.
std::vector<FieldElement> additive_decompose(const UniPoly& p);

/// Inverse of `additive_decompose`.
UniPoly additive_recompose(const FieldPtr& ctx, const std::vector<FieldElement>& coeffs);

struct CompositionHarnessReport {
  std::string field;
  std::uint64_t constructed_trials = 0;
  std::uint64_t constructed_hypotheses_true = 0;
  std::uint64_t constructed_counterexamples = 0;
  bool exhaustive_ran = false;
  std::uint64_t exhaustive_pairs = 0;
  std::uint64_t exhaustive_hypotheses_true = 0;
  std::uint64_t exhaustive_counterexamples = 0;
  bool additive_ran = false;
  std::uint64_t additive_polynomials = 0;
  std::uint64_t additive_true = 0;
  std::uint64_t additive_disagreements = 0;

  bool ok() const noexcept {
    return constructed_counterexamples == 0 && exhaustive_counterexamples == 0 && additive_disagreements == 0;
  }
};

/// Randomised constructed instances (hypotheses forced true) plus, for small
/// fields, an exhaustive scan of all (P, Q) with deg <= `max_degree` grouped
/// by their composition, plus, over prime fields p <= `additive_prime_cap`,
/// the exhaustive additive-polynomial cross-check up to degree p^2.
CompositionHarnessReport run_composition_harness(const FieldPtr& ctx, std::uint64_t trials, std::uint64_t seed,
                                                 unsigned max_degree = 2, std::uint32_t exhaustive_size_cap = 3,
                                                 std::uint32_t additive_prime_cap = 3);

nlohmann::json to_json(const CompositionHarnessReport& r);

}  // namespace ffexpand
