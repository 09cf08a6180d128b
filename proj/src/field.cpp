#include "ffexpand/field.hpp"

#include <charconv>
#include <cstdlib>
#include <map>
#include <mutex>
#include <sstream>

namespace ffexpand {

namespace {

using Digits = std::vector<std::uint32_t>;

// Polynomials over F_p as ascending coefficient vectors, used only while
// building a field (before the fast tables exist).
void trim(Digits& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Digits poly_mod(Digits f, const Digits& g, std::uint32_t p) {
  // g monic
  trim(f);
  const std::size_t dg = g.size() - 1;
  while (f.size() > dg) {
    const std::uint64_t lead = f.back();
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) {
      const std::uint64_t sub = lead * g[i] % p;
      f[shift + i] = static_cast<std::uint32_t>((f[shift + i] + p - sub) % p);
    }
    trim(f);
  }
  return f;
}

bool irreducible_by_trial_division(const Digits& f, std::uint32_t p) {
  const unsigned n = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; d <= n / 2; ++d) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Digits g(d + 1, 0);
      std::uint64_t c = code;
      for (unsigned i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

Digits first_irreducible(std::uint32_t p, unsigned n) {
  std::uint64_t count = 1;
  for (unsigned i = 0; i < n; ++i) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    Digits f(n + 1, 0);
    std::uint64_t c = code;
    for (unsigned i = 0; i < n; ++i) {
      f[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    f[n] = 1;
    if (irreducible_by_trial_division(f, p)) return f;
  }
  throw Error(ErrorKind::InvalidArgument, "no irreducible polynomial found");
}

std::uint64_t checked_power(std::uint64_t p, unsigned n, std::uint64_t limit) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (q > limit / p) return limit + 1;
    q *= p;
  }
  return q;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

std::uint64_t default_size_cap() {
  if (const char* env = std::getenv("FFEXPAND_CAP_OVERRIDE")) {
    std::uint64_t value = 0;
    const std::string_view s(env);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec == std::errc() && ptr == s.data() + s.size() && value > 0) return value;
  }
  return 3'000'000;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldCtx::FieldCtx(std::uint32_t p, unsigned n) : p_(p), n_(n) {
  if (!is_prime(p)) throw Error(ErrorKind::NonPrime, std::to_string(p) + " is not prime");
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "extension degree must be >= 1");
  const std::uint64_t q = checked_power(p, n, 0x7fffffffu);
  if (q > 0x7fffffffu) throw Error(ErrorKind::SizeCapExceeded, "field order does not fit 31 bits");
  q_ = static_cast<std::uint32_t>(q);
  order_ = q_ - 1;
  modulus_ = first_irreducible(p, n);
  if (n_ > 1) build_tables();
}

void FieldCtx::build_tables() {
  const Digits& m = modulus_;
  auto to_digits = [&](std::uint32_t idx) {
    Digits d(n_, 0);
    for (unsigned i = 0; i < n_; ++i) {
      d[i] = idx % p_;
      idx /= p_;
    }
    return d;
  };
  auto from_digits = [&](const Digits& d) {
    std::uint32_t idx = 0;
    for (unsigned i = n_; i-- > 0;) idx = idx * p_ + (i < d.size() ? d[i] : 0);
    return idx;
  };
  auto slow_mul = [&](std::uint32_t a, std::uint32_t b) {
    const Digits da = to_digits(a);
    const Digits db = to_digits(b);
    Digits prod(2 * n_ - 1, 0);
    for (unsigned i = 0; i < n_; ++i) {
      if (da[i] == 0) continue;
      for (unsigned j = 0; j < n_; ++j) {
        prod[i + j] = static_cast<std::uint32_t>(
            (prod[i + j] + static_cast<std::uint64_t>(da[i]) * db[j]) % p_);
      }
    }
    return from_digits(poly_mod(prod, m, p_));
  };
  auto slow_pow = [&](std::uint32_t a, std::uint64_t e) {
    std::uint32_t result = 1;
    while (e > 0) {
      if (e & 1) result = slow_mul(result, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return result;
  };

  const auto factors = prime_factors(order_);
  std::uint32_t generator = 0;
  for (std::uint32_t g = 2; g < q_; ++g) {
    bool primitive = true;
    for (auto r : factors) {
      if (slow_pow(g, order_ / r) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      generator = g;
      break;
    }
  }

  exp_.assign(2 * static_cast<std::size_t>(order_), 0);
  log_.assign(q_, kNoLog);
  std::uint32_t cur = 1;
  for (std::uint32_t k = 0; k < order_; ++k) {
    exp_[k] = cur;
    exp_[k + order_] = cur;
    log_[cur] = k;
    cur = slow_mul(cur, generator);
  }

  zech_.assign(order_, kNoLog);
  for (std::uint32_t d = 0; d < order_; ++d) {
    // 1 + g^d: bump the constant digit
    std::uint32_t idx = exp_[d];
    const std::uint32_t c0 = idx % p_;
    idx = (c0 + 1 == p_) ? idx - c0 : idx + 1;
    zech_[d] = idx == 0 ? kNoLog : log_[idx];
  }

  neg_.assign(q_, 0);
  for (std::uint32_t idx = 0; idx < q_; ++idx) {
    Digits d = to_digits(idx);
    for (auto& c : d) c = c == 0 ? 0 : p_ - c;
    neg_[idx] = from_digits(d);
  }
}

std::string FieldCtx::modulus_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = modulus_.size(); i-- > 0;) {
    const std::uint32_t c = modulus_[i];
    if (c == 0) continue;
    if (!first) out << " + ";
    first = false;
    if (i == 0) {
      out << c;
      continue;
    }
    if (c != 1) out << c << "*";
    out << "x";
    if (i > 1) out << "^" << i;
  }
  return out.str();
}

std::string FieldCtx::spec() const { return std::to_string(p_) + "^" + std::to_string(n_); }

FieldElement FieldCtx::element(std::uint64_t index) const {
  if (index >= q_) {
    throw Error(ErrorKind::InvalidArgument,
                "element index " + std::to_string(index) + " out of range for " + spec());
  }
  return {static_cast<std::uint32_t>(index)};
}

FieldElement FieldCtx::from_int(std::int64_t value) const noexcept {
  std::int64_t r = value % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return {static_cast<std::uint32_t>(r)};
}

std::vector<std::uint32_t> FieldCtx::coefficients(FieldElement x) const {
  std::vector<std::uint32_t> out(n_, 0);
  std::uint32_t idx = x.index;
  for (unsigned i = 0; i < n_; ++i) {
    out[i] = idx % p_;
    idx /= p_;
  }
  return out;
}

FieldElement FieldCtx::from_coefficients(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > n_) throw Error(ErrorKind::InvalidArgument, "too many coefficients");
  std::uint32_t idx = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i] >= p_) throw Error(ErrorKind::InvalidArgument, "coefficient out of range");
    idx = idx * p_ + coeffs[i];
  }
  return {idx};
}

FieldElement FieldCtx::inv(FieldElement a) const {
  if (a.index == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero in " + spec());
  if (n_ == 1) {
    std::int64_t r0 = p_, r1 = a.index, s0 = 0, s1 = 1;
    while (r1 != 0) {
      const std::int64_t t = r0 / r1;
      std::int64_t tmp = r0 - t * r1;
      r0 = r1;
      r1 = tmp;
      tmp = s0 - t * s1;
      s0 = s1;
      s1 = tmp;
    }
    return from_int(s0);
  }
  const std::uint32_t l = log_[a.index];
  return {exp_[l == 0 ? 0 : order_ - l]};
}

FieldElement FieldCtx::pow(FieldElement a, std::uint64_t e) const noexcept {
  FieldElement result = one();
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

std::vector<FieldElement> FieldCtx::enumerate() const {
  std::vector<FieldElement> out(q_);
  for (std::uint32_t i = 0; i < q_; ++i) out[i] = {i};
  return out;
}

FieldPtr make_field(std::uint32_t p, unsigned n, std::uint64_t cap) {
  if (!is_prime(p)) throw Error(ErrorKind::NonPrime, std::to_string(p) + " is not prime");
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "extension degree must be >= 1");
  const std::uint64_t q = checked_power(p, n, cap);
  if (q > cap) {
    throw Error(ErrorKind::SizeCapExceeded, std::to_string(p) + "^" + std::to_string(n) +
                                                " exceeds the field size cap " + std::to_string(cap));
  }
  static std::mutex mutex;
  static std::map<std::pair<std::uint32_t, unsigned>, FieldPtr> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{p, n}];
  if (!slot) slot = std::make_shared<const FieldCtx>(p, n);
  return slot;
}

FieldPtr parse_field_spec(std::string_view spec, std::uint64_t cap) {
  auto parse_uint = [&](std::string_view s) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw Error(ErrorKind::Parse, "malformed field spec '" + std::string(spec) + "'");
    }
    return value;
  };
  const auto caret = spec.find('^');
  if (caret != std::string_view::npos) {
    const auto p = parse_uint(spec.substr(0, caret));
    const auto n = parse_uint(spec.substr(caret + 1));
    if (p > 0x7fffffffu || n > 64) throw Error(ErrorKind::SizeCapExceeded, std::string(spec));
    return make_field(static_cast<std::uint32_t>(p), static_cast<unsigned>(n), cap);
  }
  const auto q = parse_uint(spec);
  if (q < 2) throw Error(ErrorKind::NonPrime, std::string(spec) + " is not a prime power");
  const auto factors = prime_factors(q);
  if (factors.size() != 1) throw Error(ErrorKind::NonPrime, std::string(spec) + " is not a prime power");
  unsigned n = 0;
  for (std::uint64_t r = q; r > 1; r /= factors[0]) ++n;
  if (factors[0] > 0x7fffffffu) throw Error(ErrorKind::SizeCapExceeded, std::string(spec));
  return make_field(static_cast<std::uint32_t>(factors[0]), n, cap);
}

Embedding::Embedding(FieldPtr source, FieldPtr target, std::vector<FieldElement> image)
    : source_(std::move(source)), target_(std::move(target)), image_(std::move(image)) {
  inverse_.reserve(image_.size());
  for (std::uint32_t i = 0; i < image_.size(); ++i) inverse_.emplace(image_[i].index, i);
}

std::optional<FieldElement> Embedding::preimage(FieldElement y) const {
  auto it = inverse_.find(y.index);
  if (it == inverse_.end()) return std::nullopt;
  return FieldElement{it->second};
}

Embedding Embedding::followed_by(const Embedding& then) const {
  if (then.source_.get() != target_.get()) {
    throw Error(ErrorKind::MixedFields, "embeddings do not compose");
  }
  std::vector<FieldElement> image(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) image[i] = then(image_[i]);
  return Embedding(source_, then.target_, std::move(image));
}

Extension extend(const FieldPtr& base, unsigned m, std::uint64_t cap) {
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "extension degree must be >= 1");
  const std::uint32_t p = base->characteristic();
  const unsigned n = base->degree();
  FieldPtr big = make_field(p, n * m, cap);

  static std::mutex mutex;
  static std::map<std::tuple<std::uint32_t, unsigned, unsigned>, std::shared_ptr<const Extension>> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find({p, n, m});
    if (it != cache.end() && it->second->embedding.source().get() == base.get()) return *it->second;
  }

  const auto& mod = base->modulus();
  auto eval_modulus = [&](FieldElement r) {
    FieldElement acc = big->zero();
    for (std::size_t i = mod.size(); i-- > 0;) acc = big->add(big->mul(acc, r), big->from_int(mod[i]));
    return acc;
  };
  std::optional<FieldElement> root;
  for (std::uint32_t i = 0; i < big->size(); ++i) {
    if (eval_modulus({i}).index == 0) {
      root = FieldElement{i};
      break;
    }
  }
  if (!root) throw Error(ErrorKind::InvalidArgument, "modulus has no root in the extension");

  std::vector<FieldElement> image(base->size());
  for (std::uint32_t i = 0; i < base->size(); ++i) {
    const auto coeffs = base->coefficients({i});
    FieldElement acc = big->zero();
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = big->add(big->mul(acc, *root), big->from_int(coeffs[k]));
    image[i] = acc;
  }
  auto ext = std::make_shared<const Extension>(Extension{big, Embedding(base, big, std::move(image))});
  std::lock_guard lock(mutex);
  cache.try_emplace(std::make_tuple(p, n, m), ext);
  return *ext;
}

}  // namespace ffexpand
