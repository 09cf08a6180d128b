#include "ffexpand/poly_io.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace ffexpand {

namespace {

constexpr std::uint64_t kMaxExponent = 1u << 20;

class Parser {
 public:
  Parser(std::string_view text, const FieldPtr& ctx, const std::optional<std::vector<std::string>>& vars)
      : text_(text), ctx_(ctx), fixed_(vars.has_value()) {
    if (vars) known_ = *vars;
  }

  MultiPoly run() {
    MultiPoly result = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return result.with_variables(known_);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::Parse, what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::uint64_t integer() {
    skip_space();
    const std::size_t start = pos_;
    std::uint64_t value = 0;
    const std::uint64_t p = ctx_->characteristic();
    std::uint64_t reduced = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const unsigned d = static_cast<unsigned>(text_[pos_] - '0');
      value = value > (UINT64_MAX - 9) / 10 ? UINT64_MAX : value * 10 + d;
      reduced = (reduced * 10 + d) % p;
      ++pos_;
    }
    if (start == pos_) fail("expected an integer");
    last_reduced_ = reduced;
    return value;
  }

  MultiPoly constant(FieldElement c) const { return MultiPoly::constant(ctx_, c); }

  MultiPoly expr() {
    MultiPoly acc = constant(ctx_->zero());
    bool negate = false;
    if (accept('+')) {
    } else if (accept('-')) {
      negate = true;
    }
    MultiPoly t = term();
    acc = negate ? acc - t : acc + t;
    for (;;) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        break;
      }
    }
    return acc;
  }

  bool starts_factor() {
    const char c = peek();
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(' || c == '[';
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    for (;;) {
      if (accept('*')) {
        acc = acc * factor();
      } else if (starts_factor()) {
        acc = acc * factor();
      } else {
        break;
      }
    }
    return acc;
  }

  MultiPoly factor() {
    if (accept('-')) return -factor();
    MultiPoly base = primary();
    if (accept('^')) {
      const std::uint64_t e = integer();
      if (e > kMaxExponent) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  MultiPoly primary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == '[') {
      ++pos_;
      const std::uint64_t idx = integer();
      if (!accept(']')) fail("expected ']'");
      if (idx >= ctx_->size()) fail("element index out of range");
      return constant(ctx_->element(idx));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      integer();
      return constant(ctx_->from_int(static_cast<std::int64_t>(last_reduced_)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      if (std::find(known_.begin(), known_.end(), name) == known_.end()) {
        if (fixed_) fail("unknown variable '" + name + "'");
        known_.push_back(name);
      }
      return MultiPoly::variable(ctx_, name);
    }
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const FieldPtr& ctx_;
  bool fixed_;
  std::vector<std::string> known_;
  std::size_t pos_ = 0;
  std::uint64_t last_reduced_ = 0;
};

std::string coefficient_text(const FieldCtx& k, FieldElement c) {
  if (k.is_prime_field()) return std::to_string(c.index);
  return "[" + std::to_string(c.index) + "]";
}

}  // namespace

MultiPoly parse_poly(std::string_view text, const FieldPtr& ctx, const std::optional<std::vector<std::string>>& variables) {
  return Parser(text, ctx, variables).run();
}

std::string to_string(const MultiPoly& f) {
  if (f.is_zero()) return "0";
  std::vector<std::pair<Exponents, FieldElement>> terms(f.terms().begin(), f.terms().end());
  auto total = [](const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0u); };
  std::stable_sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) {
    const auto ta = total(a.first), tb = total(b.first);
    if (ta != tb) return ta > tb;
    return a.first > b.first;
  });
  const FieldCtx& k = *f.ctx();
  std::string out;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const auto& [e, c] = terms[t];
    if (t > 0) out += " + ";
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += f.variables()[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += coefficient_text(k, c);
    } else if (c == k.one()) {
      out += mono;
    } else {
      out += coefficient_text(k, c) + "*" + mono;
    }
  }
  return out;
}

nlohmann::json to_json(const MultiPoly& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : f.terms()) {
    terms.push_back({{"exponents", e}, {"coefficient", c.index}});
  }
  return {{"field", f.ctx()->spec()}, {"variables", f.variables()}, {"terms", terms}};
}

MultiPoly poly_from_json(const nlohmann::json& j, const FieldPtr& ctx) {
  try {
    if (j.contains("field") && j.at("field").get<std::string>() != ctx->spec()) {
      throw Error(ErrorKind::MixedFields, "polynomial is over " + j.at("field").get<std::string>());
    }
    MultiPoly out(ctx, j.at("variables").get<std::vector<std::string>>());
    for (const auto& t : j.at("terms")) {
      out.add_term(t.at("exponents").get<Exponents>(), ctx->element(t.at("coefficient").get<std::uint64_t>()));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed polynomial JSON: ") + e.what());
  }
}

}  // namespace ffexpand
