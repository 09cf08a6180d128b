#include "ffexpand/unipoly.hpp"

#include <algorithm>

namespace ffexpand {
namespace upoly {

void trim(Coeffs& f) {
  while (!f.empty() && f.back().index == 0) f.pop_back();
}

int degree(const Coeffs& f) { return static_cast<int>(f.size()) - 1; }

Coeffs add(const FieldCtx& k, const Coeffs& f, const Coeffs& g) {
  Coeffs out(std::max(f.size(), g.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    const FieldElement a = i < f.size() ? f[i] : k.zero();
    const FieldElement b = i < g.size() ? g[i] : k.zero();
    out[i] = k.add(a, b);
  }
  trim(out);
  return out;
}

Coeffs sub(const FieldCtx& k, const Coeffs& f, const Coeffs& g) {
  Coeffs out(std::max(f.size(), g.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    const FieldElement a = i < f.size() ? f[i] : k.zero();
    const FieldElement b = i < g.size() ? g[i] : k.zero();
    out[i] = k.sub(a, b);
  }
  trim(out);
  return out;
}

Coeffs mul(const FieldCtx& k, const Coeffs& f, const Coeffs& g) {
  if (f.empty() || g.empty()) return {};
  Coeffs out(f.size() + g.size() - 1, k.zero());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].index == 0) continue;
    for (std::size_t j = 0; j < g.size(); ++j) out[i + j] = k.add(out[i + j], k.mul(f[i], g[j]));
  }
  trim(out);
  return out;
}

Coeffs scale(const FieldCtx& k, const Coeffs& f, FieldElement c) {
  if (c.index == 0) return {};
  Coeffs out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = k.mul(f[i], c);
  return out;
}

std::pair<Coeffs, Coeffs> divmod(const FieldCtx& k, const Coeffs& f, const Coeffs& g) {
  if (g.empty()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  Coeffs r = f;
  trim(r);
  if (r.size() < g.size()) return {{}, r};
  Coeffs quot(r.size() - g.size() + 1, k.zero());
  const FieldElement inv_lead = k.inv(g.back());
  for (std::size_t shift = quot.size(); shift-- > 0;) {
    const FieldElement c = k.mul(r[shift + g.size() - 1], inv_lead);
    quot[shift] = c;
    if (c.index == 0) continue;
    for (std::size_t j = 0; j < g.size(); ++j) r[shift + j] = k.sub(r[shift + j], k.mul(c, g[j]));
  }
  r.resize(g.size() - 1);
  trim(r);
  trim(quot);
  return {quot, r};
}

Coeffs rem(const FieldCtx& k, const Coeffs& f, const Coeffs& g) { return divmod(k, f, g).second; }

Coeffs monic(const FieldCtx& k, const Coeffs& f) {
  if (f.empty()) return {};
  return scale(k, f, k.inv(f.back()));
}

Coeffs gcd(const FieldCtx& k, Coeffs f, Coeffs g) {
  trim(f);
  trim(g);
  while (!g.empty()) {
    Coeffs r = rem(k, f, g);
    f = std::move(g);
    g = std::move(r);
  }
  return monic(k, f);
}

ExtendedGcd extended_gcd(const FieldCtx& k, const Coeffs& a, const Coeffs& b) {
  Coeffs r0 = a, r1 = b;
  trim(r0);
  trim(r1);
  Coeffs s0{k.one()}, s1{}, t0{}, t1{k.one()};
  while (!r1.empty()) {
    auto [quot, r] = divmod(k, r0, r1);
    Coeffs s = sub(k, s0, mul(k, quot, s1));
    Coeffs t = sub(k, t0, mul(k, quot, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
    t0 = std::move(t1);
    t1 = std::move(t);
  }
  if (r0.empty()) return {{}, {}, {}};
  const FieldElement inv_lead = k.inv(r0.back());
  return {scale(k, r0, inv_lead), scale(k, s0, inv_lead), scale(k, t0, inv_lead)};
}

Coeffs derivative(const FieldCtx& k, const Coeffs& f) {
  if (f.size() <= 1) return {};
  Coeffs out(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) out[i - 1] = k.mul(f[i], k.from_int(static_cast<std::int64_t>(i)));
  trim(out);
  return out;
}

FieldElement evaluate(const FieldCtx& k, const Coeffs& f, FieldElement x) {
  FieldElement acc = k.zero();
  for (std::size_t i = f.size(); i-- > 0;) acc = k.add(k.mul(acc, x), f[i]);
  return acc;
}

Coeffs compose(const FieldCtx& k, const Coeffs& outer, const Coeffs& inner) {
  Coeffs acc;
  for (std::size_t i = outer.size(); i-- > 0;) {
    acc = mul(k, acc, inner);
    acc = add(k, acc, Coeffs{outer[i]});
  }
  return acc;
}

Coeffs powmod(const FieldCtx& k, Coeffs base, std::uint64_t e, const Coeffs& m) {
  Coeffs result = rem(k, Coeffs{k.one()}, m);
  base = rem(k, base, m);
  while (e > 0) {
    if (e & 1) result = rem(k, mul(k, result, base), m);
    e >>= 1;
    if (e > 0) base = rem(k, mul(k, base, base), m);
  }
  return result;
}

}  // namespace upoly

UniPoly::UniPoly(FieldPtr ctx, upoly::Coeffs coeffs) : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
  for (auto c : coeffs_) {
    if (!ctx_->contains(c)) throw Error(ErrorKind::MixedFields, "coefficient outside " + ctx_->spec());
  }
  upoly::trim(coeffs_);
}

UniPoly UniPoly::constant(FieldPtr ctx, FieldElement c) { return UniPoly(std::move(ctx), {c}); }

UniPoly UniPoly::monomial(FieldPtr ctx, FieldElement c, unsigned exponent) {
  upoly::Coeffs v(exponent + 1, FieldElement{});
  v[exponent] = c;
  return UniPoly(std::move(ctx), std::move(v));
}

UniPoly UniPoly::x(FieldPtr ctx) {
  const auto one = ctx->one();
  return monomial(std::move(ctx), one, 1);
}

FieldElement UniPoly::coeff(unsigned i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : FieldElement{}; }

void UniPoly::check_same_field(const UniPoly& o) const {
  if (ctx_.get() != o.ctx_.get()) {
    throw Error(ErrorKind::MixedFields, ctx_->spec() + " vs " + o.ctx_->spec());
  }
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  check_same_field(o);
  return UniPoly(ctx_, upoly::add(*ctx_, coeffs_, o.coeffs_));
}

UniPoly UniPoly::operator-(const UniPoly& o) const {
  check_same_field(o);
  return UniPoly(ctx_, upoly::sub(*ctx_, coeffs_, o.coeffs_));
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
  check_same_field(o);
  return UniPoly(ctx_, upoly::mul(*ctx_, coeffs_, o.coeffs_));
}

UniPoly UniPoly::scaled(FieldElement c) const { return UniPoly(ctx_, upoly::scale(*ctx_, coeffs_, c)); }

bool UniPoly::operator==(const UniPoly& o) const { return ctx_.get() == o.ctx_.get() && coeffs_ == o.coeffs_; }

}  // namespace ffexpand
