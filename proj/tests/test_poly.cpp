#include "doctest.h"
#include "oracles.hpp"

#include "ffexpand/poly.hpp"
#include "ffexpand/poly_io.hpp"
#include "ffexpand/random.hpp"

using namespace ffexpand;

namespace {

MultiPoly P(const std::string& s, const FieldPtr& k) { return parse_poly(s, k); }

MultiPoly random_poly(const FieldPtr& k, const std::vector<std::string>& vars, unsigned max_deg, Rng& rng) {
  MultiPoly f(k, vars);
  const unsigned terms = 1 + static_cast<unsigned>(rng.below(6));
  for (unsigned t = 0; t < terms; ++t) {
    Exponents e(vars.size(), 0);
    unsigned budget = static_cast<unsigned>(rng.below(max_deg + 1));
    for (auto& x : e) {
      x = static_cast<std::uint32_t>(rng.below(budget + 1));
      budget -= x;
    }
    f.add_term(e, {static_cast<std::uint32_t>(rng.below(k->size()))});
  }
  return f;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("substitution") {
  const FieldPtr f7 = make_field(7, 1);
  CHECK(P("(a+x)^2", f7).substitute("a", FieldElement{0}) == P("x^2", f7));

  const FieldPtr f5 = make_field(5, 1), f2 = make_field(2, 1);
  const MultiPoly s5 = P("x^2+y^2", f5).substitute("x", MultiPoly::variable(f5, "y"));
  CHECK(s5 == P("2*y^2", f5));
  CHECK(P("x^2+y^2", f2).substitute("x", MultiPoly::variable(f2, "y")).is_zero());
}

TEST_CASE("multiplication by zero") {
  const FieldPtr k = make_field(5, 1);
  CHECK((P("x*y + 3", k) * MultiPoly(k, {})).is_zero());
}

TEST_CASE("evaluation") {
  const FieldPtr f7 = make_field(7, 1);
  CHECK(P("(a+x)^2", f7).evaluate({{"a", {1}}, {"x", {2}}}) == FieldElement{2});
  CHECK(MultiPoly::constant(f7, {4}).evaluate({}) == FieldElement{4});
  CHECK_THROWS_AS(P("a+x", f7).evaluate({{"a", {1}}}), Error);
}

TEST_CASE("evaluate agrees with a substitution chain on random points") {
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, unsigned>>{{5, 1}, {3, 2}, {2, 3}, {7, 1}}) {
    const FieldPtr k = make_field(p, n);
    Rng rng(derive_seed(11, {k->size()}));
    const MultiPoly f = random_poly(k, {"x", "y", "z"}, 5, rng);
    for (int t = 0; t < 100; ++t) {
      const FieldElement x{static_cast<std::uint32_t>(rng.below(k->size()))};
      const FieldElement y{static_cast<std::uint32_t>(rng.below(k->size()))};
      const FieldElement z{static_cast<std::uint32_t>(rng.below(k->size()))};
      const MultiPoly chain = f.substitute("x", x).substitute("y", y).substitute("z", z);
      REQUIRE(chain.term_count() <= 1);
      REQUIRE(f.evaluate({{"x", x}, {"y", y}, {"z", z}}) == chain.constant_term());
    }
  }
}

TEST_CASE("ring identities on random polynomials") {
  const FieldPtr k = make_field(3, 2);
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const MultiPoly a = random_poly(k, {"x", "y"}, 3, rng);
    const MultiPoly b = random_poly(k, {"y", "z"}, 3, rng);
    const MultiPoly c = random_poly(k, {"x", "z"}, 2, rng);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
    CHECK(a * b == b * a);
    CHECK(a.pow(3) == a * a * a);
  }
}

TEST_CASE("symmetry predicate") {
  const FieldPtr k = make_field(11, 1);
  CHECK(is_symmetric(P("(u+v)^2", k)));
  CHECK(is_symmetric(P("u^2*v + u*v^2", k)));
  CHECK_FALSE(is_symmetric(P("u^2*v", k)));
  CHECK(is_symmetric(P("u*v + 3*u + 3*v + 7", k)));
  CHECK(kind_of([&] { is_symmetric(P("u+v+w", k)); }) == ErrorKind::NotBivariate);
}

TEST_CASE("diagonal predicate") {
  const FieldPtr f7 = make_field(7, 1), f2 = make_field(2, 1);
  CHECK(is_diagonal(P("u^3 + v^3 + 5", f7)));
  CHECK_FALSE(is_diagonal(P("(u+v)^2", f7)));
  CHECK(is_diagonal(P("(u+v)^2", f2)));
}

TEST_CASE("kernel validation") {
  const FieldPtr f7 = make_field(7, 1);
  CHECK(validate_kernel(P("(a+x)^2", f7)).degree() == 2);
  CHECK(kind_of([] { validate_kernel(P("(a+x)^2", make_field(2, 1))); }) == ErrorKind::DegreeTooLarge);
  CHECK(kind_of([&] { validate_kernel(P("a^3 + x^3", f7)); }) == ErrorKind::Diagonal);
  CHECK(kind_of([&] { validate_kernel(P("a^2*x", f7)); }) == ErrorKind::NotSymmetric);
}

TEST_CASE("symmetric kernel evaluation matches the generic evaluator") {
  const FieldPtr k = make_field(5, 2);
  const SymmetricKernel f = validate_kernel(P("a*x + a^2*x^2", k));
  for (std::uint32_t a = 0; a < k->size(); a += 3)
    for (std::uint32_t x = 0; x < k->size(); ++x)
      REQUIRE(f.evaluate({a}, {x}) == oracle::kernel_value(f.poly(), {a}, {x}));
}

TEST_CASE("lifting along an embedding") {
  const FieldPtr f3 = make_field(3, 1);
  const Extension ext = extend(f3, 2);
  CHECK(lift(MultiPoly(f3, {"x"}), ext.embedding).is_zero());

  const MultiPoly lifted = lift(P("x^2+1", f3), ext.embedding);
  int roots = 0;
  for (const FieldElement t : ext.field->enumerate())
    if (lifted.evaluate({{"x", t}}) == ext.field->zero()) ++roots;
  CHECK(roots == 2);

  Rng rng(9);
  for (int t = 0; t < 50; ++t) {
    const MultiPoly f = random_poly(f3, {"x", "y"}, 4, rng);
    CHECK(lift(f, ext.embedding).total_degree() == f.total_degree());
  }
  CHECK_THROWS_AS(lift(P("x", make_field(5, 1)), ext.embedding), Error);
}

TEST_CASE("mixed fields are rejected") {
  CHECK_THROWS_AS(P("x", make_field(5, 1)) + P("x", make_field(7, 1)), Error);
}
