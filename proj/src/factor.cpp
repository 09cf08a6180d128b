#include "ffexpand/factor.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "ffexpand/random.hpp"

namespace ffexpand {

namespace {

using upoly::Coeffs;

// ---------------------------------------------------------------------------
// Univariate

Coeffs pth_root_uni(const FieldCtx& k, const Coeffs& f) {
  const std::uint32_t p = k.characteristic();
  const std::uint64_t root_exp = k.size() / p;  // Frobenius inverse
  Coeffs out(f.empty() ? 0 : (f.size() - 1) / p + 1, k.zero());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].index == 0) continue;
    out[i / p] = k.pow(f[i], root_exp);
  }
  upoly::trim(out);
  return out;
}

bool is_one(const Coeffs& f) { return f.size() == 1 && f[0].index == 1; }

// Monic squarefree input; returns (factor, multiplicity) with squarefree
// factors (not necessarily irreducible).
void squarefree_parts(const FieldCtx& k, const Coeffs& f, unsigned mult,
                      std::vector<std::pair<Coeffs, unsigned>>& out) {
  if (upoly::degree(f) < 1) return;
  const Coeffs df = upoly::derivative(k, f);
  if (df.empty()) {
    squarefree_parts(k, pth_root_uni(k, f), mult * k.characteristic(), out);
    return;
  }
  Coeffs c = upoly::gcd(k, f, df);
  Coeffs w = upoly::divmod(k, f, c).first;
  unsigned i = 1;
  while (!is_one(w)) {
    Coeffs y = upoly::gcd(k, w, c);
    Coeffs fac = upoly::divmod(k, w, y).first;
    if (upoly::degree(fac) > 0) out.emplace_back(upoly::monic(k, fac), i * mult);
    w = y;
    c = upoly::divmod(k, c, y).first;
    ++i;
  }
  if (upoly::degree(c) > 0) squarefree_parts(k, pth_root_uni(k, c), mult * k.characteristic(), out);
}

// Frobenius x -> x^q modulo f by repeated powering.
Coeffs frobenius_power(const FieldCtx& k, const Coeffs& a, const Coeffs& modulus) {
  return upoly::powmod(k, a, k.size(), modulus);
}

Coeffs random_poly(const FieldCtx& k, Rng& rng, std::size_t degree_below) {
  Coeffs a(degree_below);
  for (auto& c : a) c = FieldElement{static_cast<std::uint32_t>(rng.below(k.size()))};
  upoly::trim(a);
  return a;
}

void equal_degree(const FieldCtx& k, const Coeffs& g, unsigned d, Rng& rng, std::vector<Coeffs>& out) {
  const int n = upoly::degree(g);
  if (n <= static_cast<int>(d)) {
    out.push_back(g);
    return;
  }
  const Coeffs one{k.one()};
  for (;;) {
    Coeffs a = random_poly(k, rng, static_cast<std::size_t>(n));
    if (upoly::degree(a) < 1) continue;
    Coeffs b;
    if (k.characteristic() == 2) {
      // Trace from F_{q^d} down to F_2: a + a^2 + ... + a^(2^(e d - 1)).
      const unsigned steps = k.degree() * d;
      Coeffs term = a;
      b = a;
      for (unsigned j = 1; j < steps; ++j) {
        term = upoly::rem(k, upoly::mul(k, term, term), g);
        b = upoly::add(k, b, term);
      }
    } else {
      // a^((q^d - 1)/2) = (a * a^q * ... * a^(q^(d-1)))^((q-1)/2).
      Coeffs norm = upoly::rem(k, a, g);
      Coeffs conj = norm;
      for (unsigned j = 1; j < d; ++j) {
        conj = frobenius_power(k, conj, g);
        norm = upoly::rem(k, upoly::mul(k, norm, conj), g);
      }
      b = upoly::sub(k, upoly::powmod(k, norm, (k.size() - 1) / 2, g), one);
    }
    Coeffs u = upoly::gcd(k, g, b);
    const int du = upoly::degree(u);
    if (du > 0 && du < n) {
      equal_degree(k, u, d, rng, out);
      equal_degree(k, upoly::divmod(k, g, u).first, d, rng, out);
      return;
    }
  }
}

std::uint64_t poly_seed(const Coeffs& f) {
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  for (auto c : f) h = derive_seed(h, {c.index});
  return h;
}

// Monic squarefree f: all monic irreducible factors.
std::vector<Coeffs> irreducible_factors(const FieldCtx& k, const Coeffs& f) {
  std::vector<Coeffs> out;
  Coeffs rest = f;
  const Coeffs x{k.zero(), k.one()};
  Coeffs h = upoly::rem(k, x, rest);
  Rng rng(poly_seed(f));
  for (unsigned i = 1; upoly::degree(rest) >= 2 * static_cast<int>(i); ++i) {
    h = frobenius_power(k, h, rest);
    Coeffs g = upoly::gcd(k, rest, upoly::sub(k, h, x));
    if (upoly::degree(g) > 0) {
      equal_degree(k, g, i, rng, out);
      rest = upoly::divmod(k, rest, g).first;
      h = upoly::rem(k, h, rest);
    }
  }
  if (upoly::degree(rest) > 0) out.push_back(upoly::monic(k, rest));
  return out;
}

bool coeffs_less(const Coeffs& a, const Coeffs& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

// ---------------------------------------------------------------------------
// Bivariate polynomials as K[x][y]: index = degree in y.

using Bi = std::vector<Coeffs>;

void trim(Bi& f) {
  for (auto& c : f) upoly::trim(c);
  while (!f.empty() && f.back().empty()) f.pop_back();
}

int deg_y(const Bi& f) { return static_cast<int>(f.size()) - 1; }

int deg_x(const Bi& f) {
  int d = -1;
  for (const auto& c : f) d = std::max(d, upoly::degree(c));
  return d;
}

bool is_constant(const Bi& f) { return f.size() == 1 && f[0].size() == 1; }

Bi bi_mul(const FieldCtx& k, const Bi& f, const Bi& g) {
  if (f.empty() || g.empty()) return {};
  Bi out(f.size() + g.size() - 1);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].empty()) continue;
    for (std::size_t j = 0; j < g.size(); ++j) {
      out[i + j] = upoly::add(k, out[i + j], upoly::mul(k, f[i], g[j]));
    }
  }
  trim(out);
  return out;
}

Bi bi_scale_x(const FieldCtx& k, const Bi& f, const Coeffs& c) {
  Bi out(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) out[j] = upoly::mul(k, f[j], c);
  trim(out);
  return out;
}

Coeffs content(const FieldCtx& k, const Bi& f) {
  Coeffs g;
  for (const auto& c : f) {
    if (c.empty()) continue;
    g = upoly::gcd(k, g, c);
    if (upoly::degree(g) == 0) break;
  }
  return g;
}

Bi divide_x(const FieldCtx& k, const Bi& f, const Coeffs& c) {
  Bi out(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) out[j] = upoly::divmod(k, f[j], c).first;
  trim(out);
  return out;
}

Bi primitive_part(const FieldCtx& k, const Bi& f) {
  if (f.empty()) return f;
  return divide_x(k, f, content(k, f));
}

std::optional<Bi> exact_div(const FieldCtx& k, const Bi& f, const Bi& g) {
  if (g.empty()) throw Error(ErrorKind::DivisionByZero, "bivariate division by zero");
  Bi r = f;
  trim(r);
  if (r.empty()) return Bi{};
  if (deg_y(r) < deg_y(g)) return std::nullopt;
  Bi quot(r.size() - g.size() + 1);
  const Coeffs& lc = g.back();
  while (!r.empty() && deg_y(r) >= deg_y(g)) {
    auto [qx, rx] = upoly::divmod(k, r.back(), lc);
    if (!rx.empty()) return std::nullopt;
    const std::size_t shift = r.size() - g.size();
    quot[shift] = qx;
    for (std::size_t j = 0; j < g.size(); ++j) r[shift + j] = upoly::sub(k, r[shift + j], upoly::mul(k, qx, g[j]));
    trim(r);
  }
  if (!r.empty()) return std::nullopt;
  trim(quot);
  return quot;
}

Bi pseudo_rem(const FieldCtx& k, const Bi& a, const Bi& b) {
  Bi r = a;
  const Coeffs& lc = b.back();
  while (!r.empty() && deg_y(r) >= deg_y(b)) {
    const std::size_t shift = r.size() - b.size();
    const Coeffs lead = r.back();
    for (auto& c : r) c = upoly::mul(k, c, lc);
    for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] = upoly::sub(k, r[shift + j], upoly::mul(k, lead, b[j]));
    trim(r);
  }
  return r;
}

Bi normalize(const FieldCtx& k, const Bi& f) {
  if (f.empty()) return f;
  const FieldElement inv = k.inv(f.back().back());
  Bi out(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) out[j] = upoly::scale(k, f[j], inv);
  return out;
}

Bi bi_gcd(const FieldCtx& k, const Bi& f, const Bi& g) {
  if (f.empty()) return normalize(k, g);
  if (g.empty()) return normalize(k, f);
  const Coeffs c = upoly::gcd(k, content(k, f), content(k, g));
  Bi a = primitive_part(k, f);
  Bi b = primitive_part(k, g);
  if (deg_y(a) < deg_y(b)) std::swap(a, b);
  while (!b.empty() && deg_y(b) > 0) {
    Bi r = pseudo_rem(k, a, b);
    a = std::move(b);
    b = r.empty() ? r : primitive_part(k, r);
  }
  Bi core = b.empty() ? a : Bi{Coeffs{k.one()}};
  return normalize(k, bi_scale_x(k, core, c));
}

Bi d_dx(const FieldCtx& k, const Bi& f) {
  Bi out(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) out[j] = upoly::derivative(k, f[j]);
  trim(out);
  return out;
}

Bi d_dy(const FieldCtx& k, const Bi& f) {
  if (f.size() <= 1) return {};
  Bi out(f.size() - 1);
  for (std::size_t j = 1; j < f.size(); ++j) out[j - 1] = upoly::scale(k, f[j], k.from_int(static_cast<std::int64_t>(j)));
  trim(out);
  return out;
}

Bi swap_xy(const Bi& f) {
  const int dx = deg_x(f);
  if (dx < 0) return {};
  Bi out(static_cast<std::size_t>(dx) + 1, Coeffs(f.size()));
  for (std::size_t j = 0; j < f.size(); ++j) {
    for (std::size_t i = 0; i < f[j].size(); ++i) out[i][j] = f[j][i];
  }
  trim(out);
  return out;
}

Coeffs eval_x(const FieldCtx& k, const Bi& f, FieldElement x0) {
  Coeffs out(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) out[j] = upoly::evaluate(k, f[j], x0);
  upoly::trim(out);
  return out;
}

Bi shift_x(const FieldCtx& k, const Bi& f, FieldElement t) {
  const Coeffs lin{t, k.one()};
  Bi out(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) out[j] = upoly::compose(k, f[j], lin);
  trim(out);
  return out;
}

// f = S^p (every exponent divisible by p): returns S.
Bi pth_root_bi(const FieldCtx& k, const Bi& f) {
  const std::uint32_t p = k.characteristic();
  Bi out((f.size() - 1) / p + 1);
  for (std::size_t j = 0; j < f.size(); j += p) out[j / p] = pth_root_uni(k, f[j]);
  trim(out);
  return out;
}

Bi map_coeffs(const Bi& f, const auto& fn) {
  Bi out(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    out[j].resize(f[j].size());
    for (std::size_t i = 0; i < f[j].size(); ++i) out[j][i] = fn(f[j][i]);
  }
  trim(out);
  return out;
}

// ---------------------------------------------------------------------------
// Hensel lifting. Truncated series in x: Series2[j][i] = coefficient of x^i y^j.

using Series2 = std::vector<std::vector<FieldElement>>;

Series2 series_mul(const FieldCtx& k, const Series2& a, const Series2& b, std::size_t prec) {
  Series2 out(a.size() + b.size() - 1, std::vector<FieldElement>(prec, k.zero()));
  for (std::size_t ja = 0; ja < a.size(); ++ja) {
    for (std::size_t jb = 0; jb < b.size(); ++jb) {
      auto& dst = out[ja + jb];
      for (std::size_t ia = 0; ia < prec && ia < a[ja].size(); ++ia) {
        if (a[ja][ia].index == 0) continue;
        for (std::size_t ib = 0; ia + ib < prec && ib < b[jb].size(); ++ib) {
          dst[ia + ib] = k.add(dst[ia + ib], k.mul(a[ja][ia], b[jb][ib]));
        }
      }
    }
  }
  return out;
}

Coeffs series_inverse(const FieldCtx& k, const Coeffs& c, std::size_t prec) {
  Coeffs inv(prec, k.zero());
  const FieldElement c0inv = k.inv(c[0]);
  inv[0] = c0inv;
  for (std::size_t n = 1; n < prec; ++n) {
    FieldElement acc = k.zero();
    for (std::size_t i = 1; i <= n && i < c.size(); ++i) acc = k.add(acc, k.mul(c[i], inv[n - i]));
    inv[n] = k.neg(k.mul(acc, c0inv));
  }
  return inv;
}

Series2 to_series(const Bi& f, std::size_t prec, FieldElement zero) {
  Series2 out(f.size(), std::vector<FieldElement>(prec, zero));
  for (std::size_t j = 0; j < f.size(); ++j) {
    for (std::size_t i = 0; i < f[j].size() && i < prec; ++i) out[j][i] = f[j][i];
  }
  return out;
}

Bi from_series(const Series2& s) {
  Bi out(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) out[j] = Coeffs(s[j].begin(), s[j].end());
  trim(out);
  return out;
}

std::vector<Bi> hensel_factor(const FieldPtr& kp, const Bi& h);

// No usable fibre over K: factor over an extension with enough points and
// descend by grouping Frobenius orbits.
std::vector<Bi> factor_via_extension(const FieldPtr& kp, const Bi& h, std::uint64_t bad_bound) {
  const FieldCtx& k = *kp;
  unsigned m = 2;
  for (std::uint64_t order = static_cast<std::uint64_t>(k.size()) * k.size(); order <= bad_bound; order *= k.size()) ++m;
  const Extension ext = extend(kp, m);
  const FieldCtx& big = *ext.field;
  const Bi lifted = map_coeffs(h, [&](FieldElement c) { return ext.embedding(c); });
  std::vector<Bi> pieces = hensel_factor(ext.field, lifted);

  const auto frob = [&](const Bi& g) { return map_coeffs(g, [&](FieldElement c) { return big.pow(c, k.size()); }); };
  std::vector<bool> used(pieces.size(), false);
  std::vector<Bi> out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    Bi product = pieces[i];
    for (Bi conj = frob(pieces[i]); conj != pieces[i]; conj = frob(conj)) {
      auto it = std::find(pieces.begin(), pieces.end(), conj);
      if (it == pieces.end()) throw Error(ErrorKind::InvalidArgument, "internal: Frobenius orbit left the factor set");
      used[static_cast<std::size_t>(it - pieces.begin())] = true;
      product = bi_mul(big, product, conj);
    }
    product = normalize(big, product);
    out.push_back(map_coeffs(product, [&](FieldElement c) {
      auto pre = ext.embedding.preimage(c);
      if (!pre) throw Error(ErrorKind::InvalidArgument, "internal: orbit product not defined over the base field");
      return *pre;
    }));
  }
  return out;
}

// h primitive in y, squarefree and separable in y, deg_y >= 1.
std::vector<Bi> hensel_factor(const FieldPtr& kp, const Bi& h) {
  const FieldCtx& k = *kp;
  const int d = deg_y(h);
  if (d == 1) return {normalize(k, h)};
  const Coeffs& lc = h.back();
  const int dx = std::max(deg_x(h), 0);
  const std::uint64_t bad_bound =
      static_cast<std::uint64_t>(2 * d - 1) * static_cast<std::uint64_t>(dx) + std::max(upoly::degree(lc), 0);
  const std::uint64_t tries = std::min<std::uint64_t>(k.size(), bad_bound + 1);

  std::optional<FieldElement> x0;
  for (std::uint64_t i = 0; i < tries && !x0; ++i) {
    const FieldElement t = k.element(i);
    if (upoly::evaluate(k, lc, t).index == 0) continue;
    const Coeffs u = eval_x(k, h, t);
    if (upoly::degree(upoly::gcd(k, u, upoly::derivative(k, u))) == 0) x0 = t;
  }
  if (!x0) return factor_via_extension(kp, h, bad_bound);

  const Bi hs = shift_x(k, h, *x0);
  const Coeffs fibre = upoly::monic(k, eval_x(k, hs, k.zero()));
  std::vector<Coeffs> u = irreducible_factors(k, fibre);
  if (u.size() == 1) return {normalize(k, h)};
  std::sort(u.begin(), u.end(), coeffs_less);
  const std::size_t r = u.size();

  const std::size_t prec = static_cast<std::size_t>(dx + std::max(upoly::degree(lc), 0) + 1);
  const Coeffs lc_inv = series_inverse(k, hs.back(), prec);
  Series2 target(hs.size());
  for (std::size_t j = 0; j < hs.size(); ++j) {
    Coeffs prod = upoly::mul(k, hs[j], lc_inv);
    prod.resize(prec, k.zero());
    target[j] = prod;
  }

  // Cofactor inverses: sum_i s_i * prod_{j != i} u_j = 1.
  std::vector<Coeffs> s(r);
  for (std::size_t i = 0; i < r; ++i) {
    Coeffs others{k.one()};
    for (std::size_t j = 0; j < r; ++j) {
      if (j != i) others = upoly::mul(k, others, u[j]);
    }
    s[i] = upoly::rem(k, upoly::extended_gcd(k, others, u[i]).s, u[i]);
  }

  std::vector<Series2> lifted(r);
  for (std::size_t i = 0; i < r; ++i) {
    lifted[i].assign(u[i].size(), std::vector<FieldElement>(prec, k.zero()));
    for (std::size_t j = 0; j < u[i].size(); ++j) lifted[i][j][0] = u[i][j];
  }
  for (std::size_t t = 1; t < prec; ++t) {
    Series2 prod = lifted[0];
    for (std::size_t i = 1; i < r; ++i) prod = series_mul(k, prod, lifted[i], t + 1);
    Coeffs err(static_cast<std::size_t>(d), k.zero());
    for (std::size_t j = 0; j < err.size(); ++j) err[j] = k.sub(target[j][t], prod[j][t]);
    upoly::trim(err);
    if (err.empty()) continue;
    for (std::size_t i = 0; i < r; ++i) {
      const Coeffs delta = upoly::rem(k, upoly::mul(k, s[i], err), u[i]);
      for (std::size_t j = 0; j < delta.size(); ++j) lifted[i][j][t] = k.add(lifted[i][j][t], delta[j]);
    }
  }

  // Recombination by subsets of increasing size.
  std::vector<std::size_t> remaining(r);
  std::iota(remaining.begin(), remaining.end(), 0);
  Bi current = hs;
  std::vector<Bi> found;
  std::size_t size = 1;
  while (2 * size <= remaining.size()) {
    bool progress = false;
    std::vector<std::size_t> pick(size);
    std::iota(pick.begin(), pick.end(), 0);
    for (;;) {
      Series2 cand = to_series(Bi{current.back()}, prec, k.zero());
      for (std::size_t p : pick) cand = series_mul(k, cand, lifted[remaining[p]], prec);
      Bi g = primitive_part(k, from_series(cand));
      if (deg_y(g) >= 1) {
        if (auto quot = exact_div(k, current, g)) {
          found.push_back(g);
          current = *quot;
          for (std::size_t p = pick.size(); p-- > 0;) remaining.erase(remaining.begin() + static_cast<long>(pick[p]));
          progress = true;
          break;
        }
      }
      // Next combination of `size` indices out of remaining.size().
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == remaining.size() - size + (i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
    if (!progress) ++size;
  }
  if (deg_y(current) >= 1) found.push_back(current);

  for (auto& g : found) g = normalize(k, shift_x(k, g, k.neg(*x0)));
  return found;
}

// Squarefree, primitive in y: irreducible factors.
std::vector<Bi> factor_squarefree(const FieldPtr& kp, const Bi& s) {
  const FieldCtx& k = *kp;
  if (deg_y(s) < 1) return {};
  const Bi sy = d_dy(k, s);
  const Bi a = sy.empty() ? normalize(k, s) : bi_gcd(k, s, sy);
  std::vector<Bi> out;
  const Bi separable = *exact_div(k, s, a);
  if (deg_y(separable) >= 1) out = hensel_factor(kp, separable);
  if (!is_constant(a)) {
    // Factors of `a` have zero y-derivative, hence are separable in x.
    for (const Bi& g : hensel_factor(kp, swap_xy(a))) out.push_back(normalize(k, swap_xy(g)));
  }
  return out;
}

void factor_primitive(const FieldPtr& kp, Bi f, unsigned mult, std::vector<std::pair<Bi, unsigned>>& out) {
  const FieldCtx& k = *kp;
  if (deg_y(f) < 1) return;
  const Bi g = bi_gcd(k, bi_gcd(k, f, d_dx(k, f)), d_dy(k, f));
  const Bi s = *exact_div(k, f, g);
  for (const Bi& piece : factor_squarefree(kp, s)) {
    unsigned e = 0;
    while (auto quot = exact_div(k, f, piece)) {
      f = *quot;
      ++e;
    }
    out.emplace_back(piece, e * mult);
  }
  if (!f.empty() && !is_constant(f)) factor_primitive(kp, pth_root_bi(k, f), mult * k.characteristic(), out);
}

}  // namespace

UnivariateFactorization factor_univariate(const FieldCtx& k, const upoly::Coeffs& f_in) {
  Coeffs f = f_in;
  upoly::trim(f);
  if (f.empty()) throw Error(ErrorKind::ZeroPolynomial, "cannot factor the zero polynomial");
  UnivariateFactorization out{f.back(), {}};
  std::vector<std::pair<Coeffs, unsigned>> parts;
  squarefree_parts(k, upoly::monic(k, f), 1, parts);
  for (const auto& [part, mult] : parts) {
    for (auto& g : irreducible_factors(k, part)) out.factors.emplace_back(std::move(g), mult);
  }
  // Squarefree parts at different p-power levels can share a factor.
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) { return coeffs_less(a.first, b.first); });
  std::vector<std::pair<Coeffs, unsigned>> merged;
  for (auto& entry : out.factors) {
    if (!merged.empty() && merged.back().first == entry.first) {
      merged.back().second += entry.second;
    } else {
      merged.push_back(std::move(entry));
    }
  }
  out.factors = std::move(merged);
  return out;
}

std::vector<BivariateFactor> factor_bivariate(const MultiPoly& f, unsigned degree_cap) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "cannot factor the zero polynomial");
  const MultiPoly used = f.without_unused_variables();
  if (used.variables().size() > 2) {
    throw Error(ErrorKind::NotBivariate, "factorization needs at most two variables, got " +
                                             std::to_string(used.variables().size()));
  }
  const int total = f.total_degree();
  if (total > static_cast<int>(degree_cap)) {
    throw Error(ErrorKind::DegreeCapExceeded,
                "degree " + std::to_string(total) + " exceeds factorization cap " + std::to_string(degree_cap));
  }
  const FieldPtr& kp = f.ctx();
  const FieldCtx& k = *kp;
  const auto& names = used.variables();
  const std::size_t nvars = names.size();

  Bi bi;
  for (const auto& [e, c] : used.terms()) {
    const std::size_t i = nvars >= 1 ? e[0] : 0;
    const std::size_t j = nvars >= 2 ? e[1] : 0;
    if (bi.size() <= j) bi.resize(j + 1);
    if (bi[j].size() <= i) bi[j].resize(i + 1, k.zero());
    bi[j][i] = c;
  }
  trim(bi);

  std::vector<std::pair<Bi, unsigned>> pieces;
  const Coeffs cont = content(k, bi);
  for (const auto& [g, e] : factor_univariate(k, cont).factors) {
    if (upoly::degree(g) > 0) pieces.emplace_back(Bi{g}, e);
  }
  factor_primitive(kp, divide_x(k, bi, cont), 1, pieces);

  std::vector<std::size_t> where(nvars);
  for (std::size_t v = 0; v < nvars; ++v) where[v] = *f.variable_index(names[v]);
  std::vector<BivariateFactor> out;
  for (const auto& [g, e] : pieces) {
    MultiPoly poly(kp, f.variables());
    for (std::size_t j = 0; j < g.size(); ++j) {
      for (std::size_t i = 0; i < g[j].size(); ++i) {
        if (g[j][i].index == 0) continue;
        Exponents ex(f.variables().size(), 0);
        if (nvars >= 1) ex[where[0]] = static_cast<std::uint32_t>(i);
        if (nvars >= 2) ex[where[1]] = static_cast<std::uint32_t>(j);
        poly.add_term(ex, g[j][i]);
      }
    }
    out.push_back({std::move(poly), e});
  }
  return out;
}

bool is_irreducible(const MultiPoly& f, unsigned degree_cap) {
  if (f.total_degree() < 1) return false;
  const auto factors = factor_bivariate(f, degree_cap);
  return factors.size() == 1 && factors[0].multiplicity == 1;
}

bool is_absolutely_irreducible(const MultiPoly& f, unsigned degree_cap) {
  const int deg = f.total_degree();
  if (deg < 1) return false;
  if (!is_irreducible(f, degree_cap)) return false;
  for (int m = 2; m <= deg; ++m) {
    const Extension ext = extend(f.ctx(), static_cast<unsigned>(m));
    if (!is_irreducible(lift(f, ext.embedding), degree_cap)) return false;
  }
  return true;
}

}  // namespace ffexpand
