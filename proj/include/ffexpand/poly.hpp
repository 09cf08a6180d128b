#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ffexpand/field.hpp"

namespace ffexpand {

using Exponents = std::vector<std::uint32_t>;

/// Sparse multivariate polynomial over a finite field with explicitly named
/// variables. Terms are keyed by exponent vectors aligned with `variables()`;
/// no stored coefficient is zero.
///
/// Binary operations accept operands over different variable lists: the
/// result lives over the union (left operand's variables first).
class MultiPoly {
 public:
  using Terms = std::map<Exponents, FieldElement>;

  MultiPoly(FieldPtr ctx, std::vector<std::string> variables);

  static MultiPoly constant(FieldPtr ctx, FieldElement c, std::vector<std::string> variables = {});
  static MultiPoly variable(FieldPtr ctx, const std::string& name);

  const FieldPtr& ctx() const noexcept { return ctx_; }
  const std::vector<std::string>& variables() const noexcept { return variables_; }
  const Terms& terms() const noexcept { return terms_; }
  std::optional<std::size_t> variable_index(const std::string& name) const;

  /// Adds c * monomial(exponents) in place.
  void add_term(const Exponents& exponents, FieldElement c);

  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }
  /// Total degree; -1 for the zero polynomial.
  int total_degree() const noexcept;
  /// Degree in one variable; -1 for the zero polynomial, 0 for unknown names.
  int degree_in(const std::string& name) const;
  FieldElement coefficient(const Exponents& exponents) const;
  FieldElement constant_term() const;

  /// Same polynomial over a different variable list. Throws MissingVariable if
  /// a variable that actually occurs is absent from `variables`.
  MultiPoly with_variables(const std::vector<std::string>& variables) const;
  /// Removes variables that occur in no term.
  MultiPoly without_unused_variables() const;
  MultiPoly renamed(const std::map<std::string, std::string>& mapping) const;

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly scaled(FieldElement c) const;
  MultiPoly pow(unsigned e) const;
  /// Equality as polynomials (variable lists are aligned first).
  bool operator==(const MultiPoly& o) const;

  /// Throws MissingVariable unless every listed variable is assigned.
  FieldElement evaluate(const std::map<std::string, FieldElement>& assignment) const;
  /// Values given in `variables()` order.
  FieldElement evaluate_ordered(std::span<const FieldElement> values) const;

  MultiPoly substitute(const std::string& name, FieldElement value) const;
  MultiPoly substitute(const std::string& name, const MultiPoly& value) const;
  /// Simultaneous substitution of several variables.
  MultiPoly substitute(const std::map<std::string, MultiPoly>& values) const;

 private:
  void check_same_field(const MultiPoly& o) const;

  FieldPtr ctx_;
  std::vector<std::string> variables_;
  Terms terms_;
};

/// Symmetric under the swap of its two variables, coefficient by coefficient.
/// Throws NotBivariate unless the polynomial has exactly two variables.
bool is_symmetric(const MultiPoly& f);

/// True when no monomial involves both variables. Throws NotBivariate.
bool is_diagonal(const MultiPoly& f);

/// A bivariate polynomial that passed `validate_kernel`: symmetric,
/// non-diagonal and of degree below the characteristic.
class SymmetricKernel {
 public:
  const MultiPoly& poly() const noexcept { return f_; }
  int degree() const noexcept { return degree_; }
  const FieldPtr& ctx() const noexcept { return f_.ctx(); }
  /// F(a, x) with the first variable set to `a`.
  FieldElement evaluate(FieldElement a, FieldElement x) const {
    const FieldElement values[2] = {a, x};
    return f_.evaluate_ordered(values);
  }

 private:
  friend SymmetricKernel validate_kernel(const MultiPoly& f);
  SymmetricKernel(MultiPoly f, int degree) : f_(std::move(f)), degree_(degree) {}

  MultiPoly f_;
  int degree_;
};

/// Gate for every downstream construction. Throws DegreeTooLarge,
/// NotSymmetric or Diagonal naming the failed hypothesis.
SymmetricKernel validate_kernel(const MultiPoly& f);

/// Coefficient-wise image of `f` under `embedding`; throws MixedFields when
/// the embedding does not start at f's field.
MultiPoly lift(const MultiPoly& f, const Embedding& embedding);

}  // namespace ffexpand
