#include "ffexpand/poly.hpp"

#include <algorithm>
#include <numeric>

namespace ffexpand {

namespace {

std::vector<std::string> union_variables(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  for (const auto& v : b) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

}  // namespace

MultiPoly::MultiPoly(FieldPtr ctx, std::vector<std::string> variables)
    : ctx_(std::move(ctx)), variables_(std::move(variables)) {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    for (std::size_t j = i + 1; j < variables_.size(); ++j) {
      if (variables_[i] == variables_[j]) {
        throw Error(ErrorKind::InvalidArgument, "duplicate variable '" + variables_[i] + "'");
      }
    }
  }
}

MultiPoly MultiPoly::constant(FieldPtr ctx, FieldElement c, std::vector<std::string> variables) {
  MultiPoly out(std::move(ctx), std::move(variables));
  out.add_term(Exponents(out.variables_.size(), 0), c);
  return out;
}

MultiPoly MultiPoly::variable(FieldPtr ctx, const std::string& name) {
  MultiPoly out(std::move(ctx), {name});
  out.add_term({1}, out.ctx_->one());
  return out;
}

std::optional<std::size_t> MultiPoly::variable_index(const std::string& name) const {
  auto it = std::find(variables_.begin(), variables_.end(), name);
  if (it == variables_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - variables_.begin());
}

void MultiPoly::add_term(const Exponents& exponents, FieldElement c) {
  if (exponents.size() != variables_.size()) {
    throw Error(ErrorKind::InvalidArgument, "exponent vector does not match variable count");
  }
  if (!ctx_->contains(c)) throw Error(ErrorKind::MixedFields, "coefficient outside " + ctx_->spec());
  if (c.index == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponents, c);
  if (!inserted) {
    it->second = ctx_->add(it->second, c);
    if (it->second.index == 0) terms_.erase(it);
  }
}

int MultiPoly::total_degree() const noexcept {
  int best = -1;
  for (const auto& [e, c] : terms_) {
    best = std::max(best, static_cast<int>(std::accumulate(e.begin(), e.end(), 0u)));
  }
  return best;
}

int MultiPoly::degree_in(const std::string& name) const {
  if (terms_.empty()) return -1;
  auto idx = variable_index(name);
  if (!idx) return 0;
  int best = 0;
  for (const auto& [e, c] : terms_) best = std::max(best, static_cast<int>(e[*idx]));
  return best;
}

FieldElement MultiPoly::coefficient(const Exponents& exponents) const {
  auto it = terms_.find(exponents);
  return it == terms_.end() ? ctx_->zero() : it->second;
}

FieldElement MultiPoly::constant_term() const { return coefficient(Exponents(variables_.size(), 0)); }

MultiPoly MultiPoly::with_variables(const std::vector<std::string>& variables) const {
  MultiPoly out(ctx_, variables);
  std::vector<std::optional<std::size_t>> where(variables_.size());
  for (std::size_t i = 0; i < variables_.size(); ++i) where[i] = out.variable_index(variables_[i]);
  for (const auto& [e, c] : terms_) {
    Exponents mapped(variables.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!where[i]) throw Error(ErrorKind::MissingVariable, "variable '" + variables_[i] + "' is in use");
      mapped[*where[i]] = e[i];
    }
    out.add_term(mapped, c);
  }
  return out;
}

MultiPoly MultiPoly::without_unused_variables() const {
  std::vector<std::string> used;
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    const bool occurs = std::any_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.first[i] > 0; });
    if (occurs) used.push_back(variables_[i]);
  }
  return with_variables(used);
}

MultiPoly MultiPoly::renamed(const std::map<std::string, std::string>& mapping) const {
  std::vector<std::string> names = variables_;
  for (auto& n : names) {
    auto it = mapping.find(n);
    if (it != mapping.end()) n = it->second;
  }
  MultiPoly out(ctx_, names);
  out.terms_ = terms_;
  return out;
}

void MultiPoly::check_same_field(const MultiPoly& o) const {
  if (ctx_.get() != o.ctx_.get()) {
    throw Error(ErrorKind::MixedFields, ctx_->spec() + " vs " + o.ctx_->spec());
  }
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  check_same_field(o);
  const auto vars = union_variables(variables_, o.variables_);
  MultiPoly out = with_variables(vars);
  const MultiPoly rhs = o.with_variables(vars);
  for (const auto& [e, c] : rhs.terms_) out.add_term(e, c);
  return out;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out(ctx_, variables_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, ctx_->neg(c));
  return out;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  check_same_field(o);
  const auto vars = union_variables(variables_, o.variables_);
  const MultiPoly lhs = with_variables(vars);
  const MultiPoly rhs = o.with_variables(vars);
  MultiPoly out(ctx_, vars);
  Exponents e(vars.size());
  for (const auto& [ea, ca] : lhs.terms_) {
    for (const auto& [eb, cb] : rhs.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ctx_->mul(ca, cb));
    }
  }
  return out;
}

MultiPoly MultiPoly::scaled(FieldElement c) const {
  MultiPoly out(ctx_, variables_);
  if (c.index == 0) return out;
  for (const auto& [e, v] : terms_) out.terms_.emplace(e, ctx_->mul(v, c));
  return out;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result = constant(ctx_, ctx_->one(), variables_);
  MultiPoly base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  if (ctx_.get() != o.ctx_.get()) return false;
  const auto vars = union_variables(variables_, o.variables_);
  return with_variables(vars).terms_ == o.with_variables(vars).terms_;
}

FieldElement MultiPoly::evaluate(const std::map<std::string, FieldElement>& assignment) const {
  std::vector<FieldElement> values(variables_.size());
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    auto it = assignment.find(variables_[i]);
    if (it == assignment.end()) {
      throw Error(ErrorKind::MissingVariable, "no value for variable '" + variables_[i] + "'");
    }
    if (!ctx_->contains(it->second)) throw Error(ErrorKind::MixedFields, "value outside " + ctx_->spec());
    values[i] = it->second;
  }
  return evaluate_ordered(values);
}

FieldElement MultiPoly::evaluate_ordered(std::span<const FieldElement> values) const {
  const FieldCtx& k = *ctx_;
  FieldElement acc = k.zero();
  for (const auto& [e, c] : terms_) {
    FieldElement term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) term = k.mul(term, k.pow(values[i], e[i]));
    }
    acc = k.add(acc, term);
  }
  return acc;
}

MultiPoly MultiPoly::substitute(const std::string& name, FieldElement value) const {
  return substitute(std::map<std::string, MultiPoly>{{name, constant(ctx_, value)}});
}

MultiPoly MultiPoly::substitute(const std::string& name, const MultiPoly& value) const {
  return substitute(std::map<std::string, MultiPoly>{{name, value}});
}

MultiPoly MultiPoly::substitute(const std::map<std::string, MultiPoly>& values) const {
  std::vector<std::string> kept;
  std::vector<int> replaced(variables_.size(), -1);
  std::vector<const MultiPoly*> replacement;
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    auto it = values.find(variables_[i]);
    if (it == values.end()) {
      kept.push_back(variables_[i]);
    } else {
      check_same_field(it->second);
      replaced[i] = static_cast<int>(replacement.size());
      replacement.push_back(&it->second);
    }
  }
  std::vector<std::string> result_vars = kept;
  for (const auto* r : replacement) result_vars = union_variables(result_vars, r->variables());

  // Powers of each replacement, computed on demand.
  std::vector<std::vector<MultiPoly>> powers(replacement.size());
  auto power_of = [&](std::size_t r, std::uint32_t e) -> const MultiPoly& {
    auto& cache = powers[r];
    if (cache.empty()) cache.push_back(constant(ctx_, ctx_->one(), result_vars));
    while (cache.size() <= e) cache.push_back((cache.back() * *replacement[r]).with_variables(result_vars));
    return cache[e];
  };

  MultiPoly out(ctx_, result_vars);
  for (const auto& [e, c] : terms_) {
    MultiPoly term(ctx_, result_vars);
    Exponents mono(result_vars.size(), 0);
    std::size_t k = 0;
    for (std::size_t i = 0; i < variables_.size(); ++i) {
      if (replaced[i] < 0) mono[k++] = e[i];
    }
    term.add_term(mono, c);
    for (std::size_t i = 0; i < variables_.size(); ++i) {
      if (replaced[i] >= 0 && e[i] > 0) term = (term * power_of(replaced[i], e[i])).with_variables(result_vars);
    }
    for (const auto& [te, tc] : term.terms_) out.add_term(te, tc);
  }
  return out;
}

bool is_symmetric(const MultiPoly& f) {
  if (f.variables().size() != 2) throw Error(ErrorKind::NotBivariate, "expected exactly two variables");
  for (const auto& [e, c] : f.terms()) {
    if (f.coefficient({e[1], e[0]}) != c) return false;
  }
  return true;
}

bool is_diagonal(const MultiPoly& f) {
  if (f.variables().size() != 2) throw Error(ErrorKind::NotBivariate, "expected exactly two variables");
  for (const auto& [e, c] : f.terms()) {
    if (e[0] > 0 && e[1] > 0) return false;
  }
  return true;
}

SymmetricKernel validate_kernel(const MultiPoly& f) {
  if (f.variables().size() != 2) throw Error(ErrorKind::NotBivariate, "kernel must have exactly two variables");
  const int deg = f.total_degree();
  const auto p = f.ctx()->characteristic();
  if (deg >= 0 && static_cast<std::uint64_t>(deg) >= p) {
    throw Error(ErrorKind::DegreeTooLarge, "requires deg(F) < char(F_q), got deg " + std::to_string(deg) +
                                               " and char " + std::to_string(p));
  }
  if (!is_symmetric(f)) throw Error(ErrorKind::NotSymmetric, "requires F(a,x) = F(x,a)");
  if (is_diagonal(f)) throw Error(ErrorKind::Diagonal, "requires a non-diagonal F (some mixed monomial)");
  return SymmetricKernel(f, deg);
}

MultiPoly lift(const MultiPoly& f, const Embedding& embedding) {
  if (embedding.source().get() != f.ctx().get()) {
    throw Error(ErrorKind::MixedFields, "embedding starts at " + embedding.source()->spec() + ", polynomial is over " +
                                            f.ctx()->spec());
  }
  MultiPoly out(embedding.target(), f.variables());
  for (const auto& [e, c] : f.terms()) out.add_term(e, embedding(c));
  return out;
}

}  // namespace ffexpand
