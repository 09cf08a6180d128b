#include "doctest.h"
#include "oracles.hpp"

#include <cstdlib>

#include "ffexpand/field.hpp"

using namespace ffexpand;

namespace {

const std::pair<std::uint32_t, unsigned> kFields[] = {{2, 1}, {3, 1}, {5, 1}, {7, 1}, {2, 2}, {2, 3}, {2, 4},
                                                      {3, 2}, {3, 3}, {5, 2}, {7, 2}, {2, 5}, {3, 4}};

}  // namespace

TEST_CASE("prime fields have modulus x") {
  const FieldPtr k = make_field(3, 1);
  CHECK(k->size() == 3);
  CHECK(k->modulus() == std::vector<std::uint32_t>{0, 1});
}

TEST_CASE("modulus is the first irreducible in digit order") {
  for (auto [p, n] : kFields) {
    CAPTURE(p);
    CAPTURE(n);
    if (n == 1) continue;
    CHECK(make_field(p, n)->modulus() == oracle::first_irreducible(p, n));
  }
  CHECK(make_field(3, 2)->modulus() == std::vector<std::uint32_t>{1, 0, 1});
}

TEST_CASE("non-prime characteristic is rejected") {
  CHECK_THROWS_AS(make_field(4, 1), Error);
  try {
    make_field(4, 1);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonPrime);
  }
}

TEST_CASE("size cap and its environment override") {
  try {
    make_field(3, 20, 1000);
    FAIL("expected SizeCapExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SizeCapExceeded);
  }
  ::setenv("FFEXPAND_CAP_OVERRIDE", "100", 1);
  CHECK(default_size_cap() == 100);
  CHECK_THROWS(make_field(11, 2));
  ::unsetenv("FFEXPAND_CAP_OVERRIDE");
  CHECK(default_size_cap() == 3000000);
}

TEST_CASE("table arithmetic agrees with schoolbook arithmetic") {
  for (auto [p, n] : kFields) {
    CAPTURE(p);
    CAPTURE(n);
    const FieldPtr k = make_field(p, n);
    const oracle::NaiveField naive{p, n, k->modulus()};
    for (std::uint32_t a = 0; a < k->size(); ++a)
      for (std::uint32_t b = 0; b < k->size(); ++b) {
        REQUIRE(k->add({a}, {b}).index == naive.add(a, b));
        REQUIRE(k->mul({a}, {b}).index == naive.mul(a, b));
      }
  }
}

TEST_CASE("t * t = 2 in F_9") {
  const FieldPtr k = make_field(3, 2);
  const FieldElement t{3};
  CHECK(k->mul(t, t) == FieldElement{2});
}

TEST_CASE("inverses, negation and Frobenius") {
  for (auto [p, n] : kFields) {
    const FieldPtr k = make_field(p, n);
    CHECK(k->inv(k->one()) == k->one());
    for (const FieldElement x : k->enumerate()) {
      REQUIRE(k->pow(x, k->size()) == x);
      REQUIRE(k->add(x, k->neg(x)) == k->zero());
      if (x != k->zero()) REQUIRE(k->mul(x, k->inv(x)) == k->one());
    }
  }
  try {
    make_field(5, 1)->inv({0});
    FAIL("expected DivisionByZero");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DivisionByZero);
  }
}

TEST_CASE("enumeration order") {
  CHECK(make_field(3, 1)->enumerate() == std::vector<FieldElement>{{0}, {1}, {2}});
  const auto e9 = make_field(3, 2)->enumerate();
  REQUIRE(e9.size() == 9);
  CHECK(e9[0] == FieldElement{0});
  CHECK(e9[1] == FieldElement{1});
  CHECK(e9[2] == FieldElement{2});
  CHECK(make_field(2, 5)->enumerate().size() == 32);
}

TEST_CASE("field specs") {
  CHECK(parse_field_spec("3^2")->size() == 9);
  CHECK(parse_field_spec("9")->size() == 9);
  CHECK(parse_field_spec("7")->size() == 7);
  CHECK(parse_field_spec("2^4")->spec() == "2^4");
  CHECK_THROWS_AS(parse_field_spec("6"), Error);
  CHECK_THROWS_AS(parse_field_spec("3^x"), Error);
}

TEST_CASE("extension embeddings are homomorphisms") {
  const std::pair<std::uint32_t, unsigned> bases[] = {{3, 1}, {2, 2}, {5, 1}, {3, 2}, {5, 2}};
  for (auto [p, n] : bases) {
    const FieldPtr k = make_field(p, n);
    for (unsigned m : {2u, 3u}) {
      if (std::pow(double(k->size()), m) > 20000) continue;
      const Extension ext = extend(k, m);
      CHECK(ext.field->size() == static_cast<std::uint32_t>(std::pow(double(k->size()), m) + 0.5));
      for (const FieldElement x : k->enumerate())
        for (const FieldElement y : k->enumerate()) {
          REQUIRE(ext.embedding(k->mul(x, y)) == ext.field->mul(ext.embedding(x), ext.embedding(y)));
          REQUIRE(ext.embedding(k->add(x, y)) == ext.field->add(ext.embedding(x), ext.embedding(y)));
        }
      for (const FieldElement x : k->enumerate()) CHECK(ext.embedding.preimage(ext.embedding(x)) == x);
    }
  }
}

TEST_CASE("prime subfield is fixed by F_3 -> F_9") {
  const Extension ext = extend(make_field(3, 1), 2);
  CHECK(ext.field->size() == 9);
  for (std::uint32_t i = 0; i < 3; ++i) CHECK(ext.embedding({i}) == FieldElement{i});
}

TEST_CASE("towers commute: F_3 -> F_9 -> F_729 equals F_3 -> F_729") {
  const FieldPtr f3 = make_field(3, 1);
  const Extension to9 = extend(f3, 2);
  const Extension to729 = extend(to9.field, 3);
  const Extension direct = extend(f3, 6);
  CHECK(to729.field->size() == 729);
  const Embedding composite = to9.embedding.followed_by(to729.embedding);
  for (std::uint32_t i = 0; i < 3; ++i) CHECK(composite({i}) == direct.embedding({i}));
}

TEST_CASE("extend of an extension keeps the image inside the target subfield") {
  const FieldPtr f4 = make_field(2, 2);
  const Extension to16 = extend(f4, 2);
  const FieldCtx& big = *to16.field;
  for (const FieldElement x : f4->enumerate()) {
    const FieldElement y = to16.embedding(x);
    CHECK(big.pow(y, 4) == y);
  }
}
