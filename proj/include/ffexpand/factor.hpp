#pragma once

#include <utility>
#include <vector>

#include "ffexpand/poly.hpp"
#include "ffexpand/unipoly.hpp"

namespace ffexpand {

struct UnivariateFactorization {
  FieldElement unit;
  /// Monic irreducible factors with multiplicities, sorted by coefficients.
  std::vector<std::pair<upoly::Coeffs, unsigned>> factors;
};

/// Squarefree decomposition, distinct-degree and equal-degree
/// (Cantor-Zassenhaus) factorization. Deterministic. Throws ZeroPolynomial.
UnivariateFactorization factor_univariate(const FieldCtx& k, const upoly::Coeffs& f);

struct BivariateFactor {
  MultiPoly factor;
  unsigned multiplicity;
};

inline constexpr unsigned kDefaultFactorDegreeCap = 12;

/// Irreducible factors over f's own field, each normalised to leading
/// coefficient one; their product with multiplicities equals f up to a
/// nonzero constant. Factors use f's variable list. f may have at most two
/// variables that actually occur.
///
/// Fibre evaluation plus Hensel lifting of the fibre's factorization,
/// followed by subset recombination. Repeated factors and p-th powers are
/// split off first; when the field has no usable fibre, the factorization is
/// done over an extension and descended by Frobenius orbits.
///
/// Throws ZeroPolynomial, NotBivariate or DegreeCapExceeded.
std::vector<BivariateFactor> factor_bivariate(const MultiPoly& f, unsigned degree_cap = kDefaultFactorDegreeCap);

/// Irreducible over f's own field (units are not irreducible).
bool is_irreducible(const MultiPoly& f, unsigned degree_cap = kDefaultFactorDegreeCap);

/// Irreducible over F_{q^m} for every m = 1..deg f. A polynomial that is
/// irreducible over F_q but not absolutely splits into conjugate factors
/// defined over F_{q^r} with r <= deg f, so this is a complete test.
bool is_absolutely_irreducible(const MultiPoly& f, unsigned degree_cap = kDefaultFactorDegreeCap);

}  // namespace ffexpand
