#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace ffexpand {

/// Seed for one work cell, derived from the master seed and the cell's
/// coordinates (q, trial index, ...). Independent of scheduling order.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> cell);

/// mt19937_64 with bounded draws implemented here, so streams are identical
/// across standard libraries (std distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

  /// k distinct values from [0, population), ascending.
  std::vector<std::uint64_t> sample(std::uint64_t population, std::uint64_t k);

 private:
  std::mt19937_64 engine_;
};

}  // namespace ffexpand
