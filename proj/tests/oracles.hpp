#pragma once

// Brute-force reference implementations used by the tests. Nothing here calls
// into the library's algorithms except for plain data access and the field
// tables (which are themselves checked against NaiveField).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "ffexpand/field.hpp"
#include "ffexpand/graph.hpp"
#include "ffexpand/poly.hpp"

namespace oracle {

using ffexpand::FieldCtx;
using ffexpand::FieldElement;
using ffexpand::FieldPtr;
using ffexpand::MultiPoly;

/// F_p[t]/(m(t)) with schoolbook multiplication on digit vectors.
struct NaiveField {
  std::uint32_t p;
  unsigned n;
  std::vector<std::uint32_t> modulus;  // monic, ascending

  std::vector<std::uint32_t> digits(std::uint32_t index) const {
    std::vector<std::uint32_t> d(n);
    for (unsigned i = 0; i < n; ++i, index /= p) d[i] = index % p;
    return d;
  }
  std::uint32_t index(const std::vector<std::uint32_t>& d) const {
    std::uint32_t v = 0;
    for (unsigned i = n; i-- > 0;) v = v * p + d[i];
    return v;
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    auto x = digits(a), y = digits(b);
    for (unsigned i = 0; i < n; ++i) x[i] = (x[i] + y[i]) % p;
    return index(x);
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    auto x = digits(a), y = digits(b);
    std::vector<std::uint64_t> prod(2 * n, 0);
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + std::uint64_t(x[i]) * y[j]) % p;
    for (unsigned k = 2 * n - 1; k >= n; --k) {
      const std::uint64_t c = prod[k];
      if (c == 0) continue;
      prod[k] = 0;
      for (unsigned i = 0; i < n; ++i) prod[k - n + i] = (prod[k - n + i] + (p - modulus[i]) * c) % p;
    }
    std::vector<std::uint32_t> out(n);
    for (unsigned i = 0; i < n; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
    return index(out);
  }
};

/// Irreducibility of a monic polynomial over F_p by trial division against
/// every monic polynomial of degree <= n/2.
inline bool naive_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& f) {
  const unsigned n = static_cast<unsigned>(f.size()) - 1;
  for (unsigned d = 1; d <= n / 2; ++d) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (std::uint64_t c = 0; c < count; ++c) {
      std::vector<std::uint32_t> g(d + 1);
      std::uint64_t t = c;
      for (unsigned i = 0; i < d; ++i, t /= p) g[i] = static_cast<std::uint32_t>(t % p);
      g[d] = 1;
      std::vector<std::uint32_t> r = f;
      for (unsigned k = n; k >= d && k <= n; --k) {
        const std::uint32_t lc = r[k];
        if (lc == 0) continue;
        for (unsigned i = 0; i <= d; ++i) r[k - d + i] = (r[k - d + i] + (p - lc) * g[i] % p) % p;
      }
      if (std::all_of(r.begin(), r.end(), [](std::uint32_t v) { return v == 0; })) return false;
    }
  }
  return true;
}

/// First monic irreducible of degree n over F_p, enumerating the lower
/// coefficients as base-p digits.
inline std::vector<std::uint32_t> first_irreducible(std::uint32_t p, unsigned n) {
  std::uint64_t count = 1;
  for (unsigned i = 0; i < n; ++i) count *= p;
  for (std::uint64_t c = 0; c < count; ++c) {
    std::vector<std::uint32_t> f(n + 1);
    std::uint64_t t = c;
    for (unsigned i = 0; i < n; ++i, t /= p) f[i] = static_cast<std::uint32_t>(t % p);
    f[n] = 1;
    if (naive_irreducible(p, f)) return f;
  }
  return {};
}

/// F(a, x) by the generic map-based evaluator.
inline FieldElement kernel_value(const MultiPoly& f, FieldElement a, FieldElement x) {
  return f.evaluate({{f.variables()[0], a}, {f.variables()[1], x}});
}

/// Dense 0/1 adjacency of the graph straight from its defining relation.
inline std::vector<std::vector<int>> dense_adjacency(const MultiPoly& f) {
  const FieldCtx& k = *f.ctx();
  const std::uint32_t q = k.size();
  std::vector<std::vector<int>> a(q * q, std::vector<int>(q * q, 0));
  for (std::uint32_t v = 0; v < q * q; ++v)
    for (std::uint32_t w = 0; w < q * q; ++w) {
      const FieldElement fa{v / q}, fb{v % q}, fx{w / q}, fy{w % q};
      a[v][w] = k.add(k.add(kernel_value(f, fa, fx), fb), fy) == k.zero() ? 1 : 0;
    }
  return a;
}

inline std::vector<std::vector<std::int64_t>> matmul(const std::vector<std::vector<std::int64_t>>& x,
                                                      const std::vector<std::vector<std::int64_t>>& y) {
  const std::size_t n = x.size();
  std::vector<std::vector<std::int64_t>> z(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (x[i][k])
        for (std::size_t j = 0; j < n; ++j) z[i][j] += x[i][k] * y[k][j];
  return z;
}

/// #{(x1, x2) : F(a,x1) + F(x2,c) - F(x1,x2) + b + d = 0}.
inline std::uint64_t curve_points(const MultiPoly& f, FieldElement a, FieldElement b, FieldElement c, FieldElement d) {
  const FieldCtx& k = *f.ctx();
  std::uint64_t n = 0;
  for (std::uint32_t i = 0; i < k.size(); ++i)
    for (std::uint32_t j = 0; j < k.size(); ++j) {
      const FieldElement x1{i}, x2{j};
      FieldElement v = k.add(kernel_value(f, a, x1), kernel_value(f, x2, c));
      v = k.sub(v, kernel_value(f, x1, x2));
      v = k.add(v, k.add(b, d));
      if (v == k.zero()) ++n;
    }
  return n;
}

// --- bivariate polynomials as dense coefficient maps -----------------------

using Bivariate = std::map<std::pair<unsigned, unsigned>, FieldElement>;  // (i, j) -> coeff of u^i v^j

inline Bivariate to_bivariate(const MultiPoly& f) {
  Bivariate out;
  for (const auto& [e, c] : f.terms()) {
    const unsigned i = e.size() > 0 ? e[0] : 0, j = e.size() > 1 ? e[1] : 0;
    out[{i, j}] = c;
  }
  return out;
}

inline int total_degree(const Bivariate& f) {
  int d = -1;
  for (const auto& [e, c] : f) d = std::max<int>(d, static_cast<int>(e.first + e.second));
  return d;
}

inline FieldElement eval(const FieldCtx& k, const Bivariate& f, FieldElement u, FieldElement v) {
  FieldElement s = k.zero();
  for (const auto& [e, c] : f) s = k.add(s, k.mul(c, k.mul(k.pow(u, e.first), k.pow(v, e.second))));
  return s;
}

/// Gaussian elimination: does A h = b have a solution over k?
inline bool solvable(const FieldCtx& k, std::vector<std::vector<FieldElement>> a, std::vector<FieldElement> b) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == k.zero()) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    std::swap(b[piv], b[r]);
    const FieldElement inv = k.inv(a[r][c]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == k.zero()) continue;
      const FieldElement m = k.mul(a[i][c], inv);
      for (std::size_t j = c; j < cols; ++j) a[i][j] = k.sub(a[i][j], k.mul(m, a[r][j]));
      b[i] = k.sub(b[i], k.mul(m, b[r]));
    }
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (b[i] != k.zero()) return false;
  return true;
}

/// g | f over k, by solving g * h = f for the coefficients of h.
inline bool divides(const FieldCtx& k, const Bivariate& g, const Bivariate& f) {
  const int dg = total_degree(g), df = total_degree(f);
  if (dg > df) return false;
  const int dh = df - dg;
  std::vector<std::pair<unsigned, unsigned>> hmon, fmon;
  for (int i = 0; i <= dh; ++i)
    for (int j = 0; i + j <= dh; ++j) hmon.emplace_back(i, j);
  for (int i = 0; i <= df; ++i)
    for (int j = 0; i + j <= df; ++j) fmon.emplace_back(i, j);
  std::map<std::pair<unsigned, unsigned>, std::size_t> row_of;
  for (std::size_t r = 0; r < fmon.size(); ++r) row_of[fmon[r]] = r;
  std::vector<std::vector<FieldElement>> a(fmon.size(), std::vector<FieldElement>(hmon.size(), k.zero()));
  for (std::size_t c = 0; c < hmon.size(); ++c)
    for (const auto& [e, coeff] : g) {
      const std::size_t r = row_of.at({e.first + hmon[c].first, e.second + hmon[c].second});
      a[r][c] = k.add(a[r][c], coeff);
    }
  std::vector<FieldElement> b(fmon.size(), k.zero());
  for (const auto& [e, coeff] : f) b[row_of.at(e)] = coeff;
  return solvable(k, a, b);
}

/// Calls fn on every polynomial of total degree exactly d with leading
/// coefficient one in the first monomial of degree d that is nonzero.
template <class Fn>
void for_each_normalized(const FieldCtx& k, int d, Fn&& fn) {
  std::vector<std::pair<unsigned, unsigned>> mons;
  for (int s = 0; s <= d; ++s)
    for (int i = s; i >= 0; --i) mons.emplace_back(i, s - i);
  const std::size_t top = static_cast<std::size_t>(d) + 1;  // monomials of degree d, last in `mons`
  const std::size_t low = mons.size() - top;
  for (std::size_t lead = 0; lead < top; ++lead) {
    // monomials of degree d before `lead` are zero, `lead` is one, the rest free
    const std::size_t free = low + (top - lead - 1);
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < free; ++i) count *= k.size();
    for (std::uint64_t c = 0; c < count; ++c) {
      Bivariate g;
      std::uint64_t t = c;
      for (std::size_t i = 0; i < low; ++i, t /= k.size())
        if (t % k.size()) g[mons[i]] = FieldElement{static_cast<std::uint32_t>(t % k.size())};
      g[mons[low + lead]] = k.one();
      for (std::size_t i = low + lead + 1; i < mons.size(); ++i, t /= k.size())
        if (t % k.size()) g[mons[i]] = FieldElement{static_cast<std::uint32_t>(t % k.size())};
      fn(g);
    }
  }
}

/// Reducible over k: some factor of degree 1..D/2 divides f.
inline bool reducible_by_enumeration(const FieldCtx& k, const Bivariate& f) {
  const int d = total_degree(f);
  for (int e = 1; e <= d / 2; ++e) {
    bool found = false;
    for_each_normalized(k, e, [&](const Bivariate& g) {
      if (!found && divides(k, g, f)) found = true;
    });
    if (found) return true;
  }
  return false;
}

/// Absolute irreducibility of a nonzero polynomial over k = F_q.
///
/// Reducibility over F_q is decided by factor enumeration. A polynomial that is
/// irreducible over F_q yet splits over the closure splits into r conjugate
/// components with r | D, which Frobenius permutes cyclically. Over F_{q^m}
/// with gcd(m, D) = 1 every rational point then lies on two components, so
/// there are at most D^2 of them, whereas an absolutely irreducible curve has
/// at least q^m - (D-1)(D-2) q^{m/2} - D - 1. m is chosen to separate the two.
inline bool absolutely_irreducible(const FieldPtr& kp, const Bivariate& f) {
  const FieldCtx& k = *kp;
  const int d = total_degree(f);
  if (d <= 0) return false;
  if (d == 1) return true;
  if (reducible_by_enumeration(k, f)) return false;
  unsigned m = 1;
  for (;; ++m) {
    if (std::gcd(m, static_cast<unsigned>(d)) != 1) continue;
    const double qm = std::pow(double(k.size()), m);
    if (qm - (d - 1) * (d - 2) * std::sqrt(qm) - d - 1 > double(d * d)) break;
  }
  const auto ext = ffexpand::extend(kp, m);
  const FieldCtx& big = *ext.field;
  Bivariate lifted;
  for (const auto& [e, c] : f) lifted[e] = ext.embedding(c);
  const std::uint64_t threshold = static_cast<std::uint64_t>(d * d);
  std::uint64_t n = 0;
  for (std::uint32_t u = 0; u < big.size(); ++u)
    for (std::uint32_t v = 0; v < big.size(); ++v)
      if (eval(big, lifted, {u}, {v}) == big.zero() && ++n > threshold) return true;
  return false;
}

inline MultiPoly from_bivariate(const FieldPtr& k, const Bivariate& f, const std::vector<std::string>& vars) {
  MultiPoly out(k, vars);
  for (const auto& [e, c] : f) out.add_term({e.first, e.second}, c);
  return out;
}

}  // namespace oracle
