#include "ffexpand/random.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "ffexpand/errors.hpp"

namespace ffexpand {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> cell) {
  std::uint64_t h = splitmix64(master);
  for (auto c : cell) h = splitmix64(h ^ splitmix64(c + 0x632be59bd9b4e019ull));
  return h;
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "empty range");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  for (;;) {
    const std::uint64_t x = engine_();
    if (x < limit) return x % n;
  }
}

std::vector<std::uint64_t> Rng::sample(std::uint64_t population, std::uint64_t k) {
  if (k > population) throw Error(ErrorKind::InvalidArgument, "sample larger than population");
  std::vector<std::uint64_t> out;
  if (k * 3 >= population) {
    // Dense case: partial Fisher-Yates.
    std::vector<std::uint64_t> all(population);
    std::iota(all.begin(), all.end(), 0);
    for (std::uint64_t i = 0; i < k; ++i) std::swap(all[i], all[i + below(population - i)]);
    out.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
  } else {
    // Floyd's algorithm.
    std::unordered_set<std::uint64_t> chosen;
    for (std::uint64_t j = population - k; j < population; ++j) {
      const std::uint64_t t = below(j + 1);
      if (!chosen.insert(t).second) chosen.insert(j);
    }
    out.assign(chosen.begin(), chosen.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ffexpand
