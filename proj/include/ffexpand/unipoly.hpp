#pragma once

#include <utility>
#include <vector>

#include "ffexpand/field.hpp"

namespace ffexpand {

/// Raw dense univariate arithmetic on ascending coefficient vectors. The zero
/// polynomial is the empty vector; every routine returns trimmed vectors.
namespace upoly {

using Coeffs = std::vector<FieldElement>;

void trim(Coeffs& f);
int degree(const Coeffs& f);
Coeffs add(const FieldCtx& k, const Coeffs& f, const Coeffs& g);
Coeffs sub(const FieldCtx& k, const Coeffs& f, const Coeffs& g);
Coeffs mul(const FieldCtx& k, const Coeffs& f, const Coeffs& g);
Coeffs scale(const FieldCtx& k, const Coeffs& f, FieldElement c);
/// Quotient and remainder; throws DivisionByZero when g is zero.
std::pair<Coeffs, Coeffs> divmod(const FieldCtx& k, const Coeffs& f, const Coeffs& g);
Coeffs rem(const FieldCtx& k, const Coeffs& f, const Coeffs& g);
/// Monic gcd (zero when both inputs are zero).
Coeffs gcd(const FieldCtx& k, Coeffs f, Coeffs g);
/// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
struct ExtendedGcd {
  Coeffs g, s, t;
};
ExtendedGcd extended_gcd(const FieldCtx& k, const Coeffs& a, const Coeffs& b);
Coeffs monic(const FieldCtx& k, const Coeffs& f);
Coeffs derivative(const FieldCtx& k, const Coeffs& f);
FieldElement evaluate(const FieldCtx& k, const Coeffs& f, FieldElement x);
Coeffs compose(const FieldCtx& k, const Coeffs& outer, const Coeffs& inner);
/// base^e mod m.
Coeffs powmod(const FieldCtx& k, Coeffs base, std::uint64_t e, const Coeffs& m);

}  // namespace upoly

/// Dense univariate polynomial over a finite field.
class UniPoly {
 public:
  explicit UniPoly(FieldPtr ctx, upoly::Coeffs coeffs = {});

  static UniPoly constant(FieldPtr ctx, FieldElement c);
  static UniPoly monomial(FieldPtr ctx, FieldElement c, unsigned exponent);
  static UniPoly x(FieldPtr ctx);

  const FieldPtr& ctx() const noexcept { return ctx_; }
  const upoly::Coeffs& coeffs() const noexcept { return coeffs_; }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return upoly::degree(coeffs_); }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  FieldElement coeff(unsigned i) const noexcept;
  FieldElement lead() const noexcept { return coeffs_.empty() ? FieldElement{} : coeffs_.back(); }
  FieldElement evaluate(FieldElement x) const { return upoly::evaluate(*ctx_, coeffs_, x); }

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly scaled(FieldElement c) const;
  bool operator==(const UniPoly& o) const;

 private:
  void check_same_field(const UniPoly& o) const;

  FieldPtr ctx_;
  upoly::Coeffs coeffs_;
};

}  // namespace ffexpand
