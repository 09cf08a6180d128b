#include "ffexpand/composition.hpp"

#include <map>

#include "ffexpand/poly.hpp"
#include "ffexpand/random.hpp"

namespace ffexpand {

namespace {

void require_same_field(const UniPoly& a, const UniPoly& b) {
  if (a.ctx().get() != b.ctx().get()) throw Error(ErrorKind::MixedFields, a.ctx()->spec() + " vs " + b.ctx()->spec());
}

bool is_power_of(std::uint64_t e, std::uint64_t p) {
  if (e == 0) return false;
  while (e % p == 0) e /= p;
  return e == 1;
}

UniPoly random_poly(const FieldPtr& k, Rng& rng, unsigned degree) {
  upoly::Coeffs c(degree + 1);
  for (unsigned i = 0; i < degree; ++i) c[i] = FieldElement{static_cast<std::uint32_t>(rng.below(k->size()))};
  c[degree] = FieldElement{static_cast<std::uint32_t>(1 + rng.below(k->size() - 1))};
  return UniPoly(k, std::move(c));
}

}  // namespace

UniPoly compose(const UniPoly& outer, const UniPoly& inner) {
  require_same_field(outer, inner);
  return UniPoly(outer.ctx(), upoly::compose(*outer.ctx(), outer.coeffs(), inner.coeffs()));
}

std::optional<LinearRelation> find_linear_relation(const UniPoly& q, const UniPoly& s) {
  require_same_field(q, s);
  if (q.degree() < 1) throw Error(ErrorKind::ConstantQ, "Q must be nonconstant");
  if (s.degree() != q.degree()) return std::nullopt;
  const FieldCtx& k = *q.ctx();
  const FieldElement alpha = k.div(s.lead(), q.lead());
  const UniPoly rest = s - q.scaled(alpha);
  if (rest.degree() > 0) return std::nullopt;
  return LinearRelation{alpha, rest.coeff(0)};
}

CompositionVerdict check_composition_lemma(const UniPoly& p, const UniPoly& q, const UniPoly& r, const UniPoly& s) {
  require_same_field(p, q);
  require_same_field(p, r);
  require_same_field(p, s);
  const auto chr = static_cast<int>(std::min<std::uint32_t>(p.ctx()->characteristic(), 1u << 30));
  CompositionVerdict v;
  v.hypotheses_hold = p.degree() > 0 && p.degree() == r.degree() && p.degree() < chr && compose(p, q) == compose(r, s);
  if (q.degree() < 1) {
    // Constant Q: S = Q + (S - Q) whenever S is constant too.
    v.conclusion_holds = s.degree() < 1;
  } else {
    v.conclusion_holds = find_linear_relation(q, s).has_value();
  }
  return v;
}

bool is_additive(const UniPoly& p) {
  const FieldPtr& k = p.ctx();
  MultiPoly px(k, {"x"});
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) px.add_term({static_cast<std::uint32_t>(i)}, p.coeffs()[i]);
  const MultiPoly x = MultiPoly::variable(k, "x");
  const MultiPoly y = MultiPoly::variable(k, "y");
  const MultiPoly shifted = px.substitute("x", x + y);
  const MultiPoly residual = shifted - px - px.renamed({{"x", "y"}});
  return residual.is_zero();
}

std::vector<FieldElement> additive_decompose(const UniPoly& p) {
  const std::uint64_t chr = p.ctx()->characteristic();
  std::vector<FieldElement> out;
  for (std::size_t e = 0; e < p.coeffs().size(); ++e) {
    if (p.coeffs()[e].index == 0) continue;
    if (!is_power_of(e, chr)) {
      throw Error(ErrorKind::NotAdditiveShape, "exponent " + std::to_string(e) + " is not a power of " + std::to_string(chr));
    }
    std::size_t j = 0;
    for (std::uint64_t t = e; t > 1; t /= chr) ++j;
    if (out.size() <= j) out.resize(j + 1, p.ctx()->zero());
    out[j] = p.coeffs()[e];
  }
  return out;
}

UniPoly additive_recompose(const FieldPtr& ctx, const std::vector<FieldElement>& coeffs) {
  upoly::Coeffs c;
  std::uint64_t e = 1;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (c.size() <= e) c.resize(e + 1, ctx->zero());
    c[e] = coeffs[j];
    if (j + 1 < coeffs.size()) e *= ctx->characteristic();
  }
  return UniPoly(ctx, std::move(c));
}

CompositionHarnessReport run_composition_harness(const FieldPtr& ctx, std::uint64_t trials, std::uint64_t seed,
                                                 unsigned max_degree, std::uint32_t exhaustive_size_cap,
                                                 std::uint32_t additive_prime_cap) {
  const FieldCtx& k = *ctx;
  CompositionHarnessReport report;
  report.field = k.spec();
  const std::uint32_t chr = k.characteristic();
  const unsigned max_outer = static_cast<unsigned>(std::min<std::uint32_t>(chr - 1, 6));

  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, {k.size(), t}));
    const UniPoly q = random_poly(ctx, rng, static_cast<unsigned>(rng.between(2, 5)));
    const FieldElement alpha{static_cast<std::uint32_t>(1 + rng.below(k.size() - 1))};
    const FieldElement beta{static_cast<std::uint32_t>(rng.below(k.size()))};
    const UniPoly l(ctx, {beta, alpha});
    // L^{-1}(x) = alpha^{-1} (x - beta)
    const FieldElement ainv = k.inv(alpha);
    const UniPoly l_inv(ctx, {k.neg(k.mul(ainv, beta)), ainv});
    const UniPoly s = compose(l, q);
    const UniPoly p = random_poly(ctx, rng, static_cast<unsigned>(rng.between(1, max_outer)));
    const UniPoly r = compose(p, l_inv);
    const auto v = check_composition_lemma(p, q, r, s);
    ++report.constructed_trials;
    if (v.hypotheses_hold) ++report.constructed_hypotheses_true;
    if (v.counterexample()) ++report.constructed_counterexamples;
  }

  if (k.size() <= exhaustive_size_cap) {
    report.exhaustive_ran = true;
    // All polynomials of degree <= max_degree, grouped by P∘Q.
    std::vector<UniPoly> polys;
    std::uint64_t count = 1;
    for (unsigned i = 0; i <= max_degree; ++i) count *= k.size();
    for (std::uint64_t code = 0; code < count; ++code) {
      upoly::Coeffs c(max_degree + 1);
      std::uint64_t x = code;
      for (unsigned i = 0; i <= max_degree; ++i) {
        c[i] = FieldElement{static_cast<std::uint32_t>(x % k.size())};
        x /= k.size();
      }
      polys.emplace_back(ctx, std::move(c));
    }
    std::map<upoly::Coeffs, std::vector<std::pair<std::size_t, std::size_t>>> groups;
    for (std::size_t i = 0; i < polys.size(); ++i) {
      for (std::size_t j = 0; j < polys.size(); ++j) groups[compose(polys[i], polys[j]).coeffs()].emplace_back(i, j);
    }
    for (const auto& [comp, members] : groups) {
      for (const auto& [pi, qi] : members) {
        for (const auto& [ri, si] : members) {
          ++report.exhaustive_pairs;
          const auto v = check_composition_lemma(polys[pi], polys[qi], polys[ri], polys[si]);
          if (v.hypotheses_hold) ++report.exhaustive_hypotheses_true;
          if (v.counterexample()) ++report.exhaustive_counterexamples;
        }
      }
    }
  }

  if (k.is_prime_field() && chr <= additive_prime_cap) {
    report.additive_ran = true;
    const unsigned max_deg = chr * chr;
    std::uint64_t count = 1;
    for (unsigned i = 0; i <= max_deg; ++i) count *= chr;
    for (std::uint64_t code = 0; code < count; ++code) {
      upoly::Coeffs c(max_deg + 1);
      std::uint64_t x = code;
      for (unsigned i = 0; i <= max_deg; ++i) {
        c[i] = FieldElement{static_cast<std::uint32_t>(x % chr)};
        x /= chr;
      }
      const UniPoly p(ctx, std::move(c));
      const bool additive = is_additive(p);
      bool decomposes = true;
      try {
        const auto a = additive_decompose(p);
        if (additive_recompose(ctx, a) != p) ++report.additive_disagreements;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotAdditiveShape) throw;
        decomposes = false;
      }
      ++report.additive_polynomials;
      if (additive) ++report.additive_true;
      if (additive != decomposes) ++report.additive_disagreements;
    }
  }
  return report;
}

nlohmann::json to_json(const CompositionHarnessReport& r) {
  return {{"field", r.field},
          {"constructed_trials", r.constructed_trials},
          {"constructed_hypotheses_true", r.constructed_hypotheses_true},
          {"constructed_counterexamples", r.constructed_counterexamples},
          {"exhaustive_ran", r.exhaustive_ran},
          {"exhaustive_pairs", r.exhaustive_pairs},
          {"exhaustive_hypotheses_true", r.exhaustive_hypotheses_true},
          {"exhaustive_counterexamples", r.exhaustive_counterexamples},
          {"additive_ran", r.additive_ran},
          {"additive_polynomials", r.additive_polynomials},
          {"additive_true", r.additive_true},
          {"additive_disagreements", r.additive_disagreements},
          {"ok", r.ok()}};
}

}  // namespace ffexpand
