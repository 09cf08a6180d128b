#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ffexpand/errors.hpp"

namespace ffexpand {

/// An element of F_{p^n}, stored by its canonical index: the coefficient
/// vector (c_0, ..., c_{n-1}) in the power basis of the modulus, read as
/// base-p digits. Index 0 is zero, index 1 is one.
struct FieldElement {
  std::uint32_t index = 0;

  friend constexpr bool operator==(FieldElement, FieldElement) = default;
  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

/// Largest field order `make_field` and `extend` will build. Reads
/// FFEXPAND_CAP_OVERRIDE when set, otherwise 3,000,000.
std::uint64_t default_size_cap();

bool is_prime(std::uint64_t n);

/// Immutable description of F_{p^n} together with the lookup tables that make
/// its arithmetic O(1). Share it through `FieldPtr`.
class FieldCtx {
 public:
  /// Builds F_{p^n} using the first monic irreducible of degree n in canonical
  /// order. Prefer `make_field`, which validates and caches.
  FieldCtx(std::uint32_t p, unsigned n);

  std::uint32_t characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return n_; }
  std::uint32_t size() const noexcept { return q_; }
  bool is_prime_field() const noexcept { return n_ == 1; }

  /// Monic modulus, ascending coefficients (length n + 1).
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  std::string modulus_string() const;
  /// "p^n".
  std::string spec() const;

  FieldElement zero() const noexcept { return {0}; }
  FieldElement one() const noexcept { return {1}; }
  FieldElement element(std::uint64_t index) const;
  /// Image of an integer in the prime subfield.
  FieldElement from_int(std::int64_t value) const noexcept;
  std::vector<std::uint32_t> coefficients(FieldElement x) const;
  FieldElement from_coefficients(std::span<const std::uint32_t> coeffs) const;

  bool contains(FieldElement x) const noexcept { return x.index < q_; }

  FieldElement add(FieldElement a, FieldElement b) const noexcept {
    if (n_ == 1) {
      std::uint32_t s = a.index + b.index;
      return {s >= p_ ? s - p_ : s};
    }
    if (a.index == 0) return b;
    if (b.index == 0) return a;
    const std::uint32_t la = log_[a.index];
    std::uint32_t d = log_[b.index] + order_ - la;
    if (d >= order_) d -= order_;
    const std::uint32_t z = zech_[d];
    if (z == kNoLog) return {0};
    return {exp_[la + z]};
  }

  FieldElement neg(FieldElement a) const noexcept {
    if (n_ == 1) return {a.index == 0 ? 0 : p_ - a.index};
    return {neg_[a.index]};
  }

  FieldElement sub(FieldElement a, FieldElement b) const noexcept { return add(a, neg(b)); }

  FieldElement mul(FieldElement a, FieldElement b) const noexcept {
    if (n_ == 1) {
      return {static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.index) * b.index % p_)};
    }
    if (a.index == 0 || b.index == 0) return {0};
    return {exp_[log_[a.index] + log_[b.index]]};
  }

  /// Throws DivisionByZero for zero.
  FieldElement inv(FieldElement a) const;
  FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }
  /// Square-and-multiply; pow(0, 0) = 1.
  FieldElement pow(FieldElement a, std::uint64_t e) const noexcept;

  /// All q elements in canonical order.
  std::vector<FieldElement> enumerate() const;

 private:
  static constexpr std::uint32_t kNoLog = 0xffffffffu;

  void build_tables();

  std::uint32_t p_;
  unsigned n_;
  std::uint32_t q_;
  std::uint32_t order_;  // q - 1
  std::vector<std::uint32_t> modulus_;
  // Multiplicative structure for n > 1: exp_ has length 2(q-1) so that a
  // sum of two logs never needs reducing.
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> zech_;
  std::vector<std::uint32_t> neg_;
};

using FieldPtr = std::shared_ptr<const FieldCtx>;

/// Cached, validated construction of F_{p^n}.
FieldPtr make_field(std::uint32_t p, unsigned n, std::uint64_t cap = default_size_cap());

/// Accepts "p^n", "p" or a prime power such as "9".
FieldPtr parse_field_spec(std::string_view spec, std::uint64_t cap = default_size_cap());

/// Injective ring homomorphism between two finite fields of the same
/// characteristic, stored as a lookup table.
class Embedding {
 public:
  Embedding(FieldPtr source, FieldPtr target, std::vector<FieldElement> image);

  const FieldPtr& source() const noexcept { return source_; }
  const FieldPtr& target() const noexcept { return target_; }
  FieldElement operator()(FieldElement x) const { return image_.at(x.index); }
  std::optional<FieldElement> preimage(FieldElement y) const;

  /// `then` after `*this`.
  Embedding followed_by(const Embedding& then) const;

 private:
  FieldPtr source_;
  FieldPtr target_;
  std::vector<FieldElement> image_;
  std::unordered_map<std::uint32_t, std::uint32_t> inverse_;
};

struct Extension {
  FieldPtr field;
  Embedding embedding;
};

/// F_{q^m} with the embedding of F_q sending the generator of F_q to the
/// first root of its modulus in canonical order. Cached per (p, n, m).
Extension extend(const FieldPtr& base, unsigned m, std::uint64_t cap = default_size_cap());

}  // namespace ffexpand
