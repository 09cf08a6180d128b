#include "doctest.h"

#include <set>

#include "ffexpand/expansion.hpp"
#include "ffexpand/graph.hpp"
#include "ffexpand/poly_io.hpp"
#include "ffexpand/random.hpp"

using namespace ffexpand;

namespace {

const std::vector<std::string> kYZ{"y", "z"};

MultiPoly YZ(const std::string& s, const FieldPtr& k) { return parse_poly(s, k, kYZ); }
MultiPoly X(const std::string& s, const FieldPtr& k) { return parse_poly(s, k, std::vector<std::string>{"x"}); }
SymmetricKernel F(const std::string& s, const FieldPtr& k) { return validate_kernel(parse_poly(s, k)); }

/// Is there a nonzero R(s, t) of degree <= 2 with R(G, H) = 0? Tries every
/// coefficient vector over the (small) field symbolically.
bool brute_dependent_deg2(const MultiPoly& g, const MultiPoly& h) {
  const FieldPtr& k = g.ctx();
  const std::pair<unsigned, unsigned> mons[] = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  std::vector<MultiPoly> products;
  for (const auto& [i, j] : mons) products.push_back(g.pow(i) * h.pow(j));
  std::uint64_t count = 1;
  for (int i = 0; i < 6; ++i) count *= k->size();
  for (std::uint64_t c = 1; c < count; ++c) {
    MultiPoly r(k, kYZ);
    std::uint64_t t = c;
    for (const MultiPoly& m : products) {
      r = r + m.scaled({static_cast<std::uint32_t>(t % k->size())});
      t /= k->size();
    }
    if (r.is_zero()) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("algebraic independence") {
  const FieldPtr k = make_field(3, 1);
  CHECK(algebraically_independent(YZ("y", k), YZ("z", k)).independent);
  const auto dep = algebraically_independent(YZ("y+z", k), YZ("(y+z)^2 + 1", k));
  CHECK_FALSE(dep.independent);
  CHECK(dep.cap == 2);
  CHECK(algebraically_independent(YZ("y*z", k), YZ("y+z", k), 2).independent);
  CHECK_FALSE(brute_dependent_deg2(YZ("y*z", k), YZ("y+z", k)));
  CHECK(brute_dependent_deg2(YZ("y+z", k), YZ("(y+z)^2 + 1", k)));
  CHECK(algebraically_independent(YZ("y", k), YZ("z", k), 0).cap_below_default);
}

TEST_CASE("building P") {
  const FieldPtr k = make_field(5, 1);
  try {
    build_ternary(F("(a+x)^2", k), YZ("y+z", k), YZ("(y+z)^2", k), X("0", k));
    FAIL("expected DependentGH");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DependentGH);
  }
  const TernaryPolySpec e = erdos_polynomial(k, 2);
  CHECK(e.assembled == parse_poly("(x-y)^2 + z", k, std::vector<std::string>{"x", "y", "z"}));
  CHECK(e.independence.independent);
}

TEST_CASE("assembled polynomial matches the pointwise definition") {
  const FieldPtr k = make_field(7, 1);
  const TernaryPolySpec p = build_ternary(F("a*x + a^2*x^2", k), YZ("y*z + 1", k), YZ("y + 3*z^2", k), X("x^3 + 2", k));
  Rng rng(12);
  for (int t = 0; t < 200; ++t) {
    const FieldElement x{static_cast<std::uint32_t>(rng.below(7))};
    const FieldElement y{static_cast<std::uint32_t>(rng.below(7))};
    const FieldElement z{static_cast<std::uint32_t>(rng.below(7))};
    const FieldElement gv = p.g.evaluate({{"y", y}, {"z", z}});
    const FieldElement hv = p.h.evaluate({{"y", y}, {"z", z}});
    const FieldElement expected = k->add(k->add(p.f.evaluate(x, gv), hv), p.j.evaluate({{"x", x}}));
    REQUIRE(p.assembled.evaluate({{"x", x}, {"y", y}, {"z", z}}) == expected);
    REQUIRE(p.evaluate(x, y, z) == expected);
  }
}

TEST_CASE("image of phi") {
  for (std::uint32_t q : {5u, 7u, 9u}) {
    const FieldPtr k = parse_field_spec(std::to_string(q));
    const ElementSet all = whole_field(*k);
    CHECK(phi_image_stats(YZ("y", k), YZ("z", k), all, all).image_size == q * q);
    CHECK(phi_image_stats(YZ("-y", k), YZ("z", k), all, all).ratio == doctest::Approx(1.0));
    // (yz, y+z) hits (s1, s2) iff t^2 - s2 t + s1 has a root
    std::set<std::pair<std::uint32_t, std::uint32_t>> splittable;
    for (const FieldElement s1 : k->enumerate())
      for (const FieldElement s2 : k->enumerate())
        for (const FieldElement t : k->enumerate())
          if (k->add(k->sub(k->mul(t, t), k->mul(s2, t)), s1) == k->zero()) splittable.insert({s1.index, s2.index});
    const auto stats = phi_image_stats(YZ("y*z", k), YZ("y+z", k), all, all);
    CHECK(stats.image_size == splittable.size());
    CHECK(stats.image_size == q * (q + 1) / 2);
  }
}

TEST_CASE("image sizes") {
  const FieldPtr k = make_field(7, 1);
  const TernaryPolySpec p = erdos_polynomial(k, 2);
  const ElementSet all = whole_field(*k), zero{{0}};
  CHECK(image_size(p, zero, zero, all) == 7);
  CHECK(image_size(p, all, all, all) == 7);
  CHECK(image_size(p, {{3}}, {{2}}, {{5}}) == 1);
  CHECK(image_values(p, zero, zero, all) == all);
  CHECK_THROWS_AS(image_size(p, all, all, all, 100), Error);
}

TEST_CASE("shrinking X never lowers the missing count") {
  const FieldPtr k = make_field(5, 2);
  const TernaryPolySpec p = erdos_polynomial(k, 2);
  const ElementSet y = random_subset(*k, 5, 1), z = random_subset(*k, 3, 2);
  ElementSet x = random_subset(*k, 12, 3);
  std::uint64_t prev = image_size(p, x, y, z);
  while (x.size() > 1) {
    x.pop_back();
    const std::uint64_t now = image_size(p, x, y, z);
    REQUIRE(now <= prev);
    prev = now;
  }
}

TEST_CASE("expansion report and zero-incidence cross-check") {
  const FieldPtr k = make_field(5, 2);
  const TernaryPolySpec p = erdos_polynomial(k, 2);
  const ElementSet all = whole_field(*k);
  const ExpansionReport full = expansion_report(p, all, all, all, true);
  CHECK(full.missing == 0);
  CHECK(full.image_size == 25);

  const SpectralReport s = spectrum(build_graph(p.f));
  for (std::uint64_t t = 0; t < 20; ++t) {
    const ElementSet x = random_subset(*k, 6, 10 * t), y = random_subset(*k, 4, 10 * t + 1),
                     z = random_subset(*k, 3, 10 * t + 2);
    const ExpansionReport r = expansion_report(p, x, y, z, true, s.lambda2_abs);
    REQUIRE(r.crosscheck);
    CHECK(r.crosscheck->incidences == 0);
    CHECK(r.crosscheck->bound_holds);
    CHECK(r.missing == 25 - image_size(p, x, y, z));
    CHECK(r.crosscheck->points == x.size() * r.missing);
  }
}

TEST_CASE("the preset requires the characteristic to exceed k") {
  CHECK_NOTHROW(erdos_polynomial(make_field(3, 2), 2));
  try {
    erdos_polynomial(make_field(3, 2), 3);
    FAIL("expected CharTooSmall");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CharTooSmall);
  }
}

TEST_CASE("preset sweep") {
  const ErdosSweep s = erdos_preset(make_field(5, 2), 2, {0.25, 0.5, 1.0}, 5, 3);
  CHECK(s.trials.size() == 15);
  CHECK(s.zero_incidence_failures == 0);
  CHECK(s.bound_failures == 0);
  REQUIRE(s.mean_missing_by_density.size() == 3);
  CHECK(s.mean_missing_by_density.back().second == 0.0);
  const ErdosSweep again = erdos_preset(make_field(5, 2), 2, {0.25, 0.5, 1.0}, 5, 3, true, 1);
  CHECK(to_json(s).dump() == to_json(again).dump());
}

TEST_CASE("random subsets") {
  const FieldPtr k = make_field(7, 2);
  const ElementSet s = random_subset(*k, 20, 4);
  CHECK(s.size() == 20);
  CHECK(std::set<FieldElement>(s.begin(), s.end()).size() == 20);
  CHECK(random_subset(*k, 20, 4) == s);
}
