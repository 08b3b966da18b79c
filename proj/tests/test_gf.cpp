#include "doctest.h"

#include "polarx/errors.hpp"
#include "polarx/gf.hpp"

using namespace polarx;
using namespace polarx::gf;

TEST_CASE("field axioms, exhaustive for q <= 9") {
  for (auto [p, e] : {std::pair<int, int>{2, 1}, {3, 1}, {2, 2}, {5, 1},
                      {7, 1}, {2, 3}, {3, 2}}) {
    const FieldSpec f = field_make(p, e);
    const auto all = enumerate_scalars(f);
    REQUIRE(all.size() == static_cast<std::size_t>(f.q()));
    for (Scalar a : all) {
      CHECK(f.add(a, 0) == a);
      CHECK(f.mul(a, 1) == a);
      CHECK(f.add(a, f.neg(a)) == 0);
      if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
      for (Scalar b : all) {
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        for (Scalar c : all) {
          CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
          CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
          CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("Frobenius endomorphism") {
  for (auto [p, e] : {std::pair<int, int>{2, 2}, {2, 3}, {3, 2}}) {
    const FieldSpec f = field_make(p, e);
    auto pow = [&](Scalar a, int n) {
      Scalar r = 1;
      for (int i = 0; i < n; ++i) r = f.mul(r, a);
      return r;
    };
    for (Scalar a = 0; a < f.q(); ++a)
      for (Scalar b = 0; b < f.q(); ++b)
        CHECK(pow(f.add(a, b), p) == f.add(pow(a, p), pow(b, p)));
  }
}

TEST_CASE("modulus selection") {
  CHECK(field_make(2, 1).modulus() == std::vector<Scalar>{0, 1});
  CHECK(field_make(2, 2).modulus() == std::vector<Scalar>{1, 1, 1});  // x^2+x+1
  CHECK(field_make(3, 2).modulus() == std::vector<Scalar>{1, 0, 1});  // x^2+1
  // No roots: direct check for F_9's modulus.
  for (int x = 0; x < 3; ++x) CHECK((x * x + 1) % 3 != 0);
}

TEST_CASE("arithmetic spot values") {
  const FieldSpec f4 = field_make(2, 2);
  CHECK(f4.mul(2, 2) == 3);  // x * x = x + 1 under x^2+x+1
  const FieldSpec f5 = field_make(5, 1);
  CHECK(f5.inv(2) == 3);
  CHECK_THROWS_AS(f5.inv(0), DomainError);
}

TEST_CASE("enumerate_scalars order and multiplicative structure") {
  CHECK(enumerate_scalars(field_make(2, 1)) == std::vector<Scalar>{0, 1});
  CHECK(enumerate_scalars(field_make(3, 1)) == std::vector<Scalar>{0, 1, 2});
  const FieldSpec f4 = field_make(2, 2);
  const auto all = enumerate_scalars(f4);
  CHECK(all.size() == 4);
  CHECK(all.front() == 0);
  for (Scalar a : all) {
    if (a == 0) continue;
    const Scalar cube = f4.mul(a, f4.mul(a, a));
    CHECK(cube == 1);  // every nonzero element has order dividing 3
  }
}

TEST_CASE("construction determinism") {
  for (auto [p, e] : {std::pair<int, int>{2, 2}, {3, 2}, {2, 4}, {5, 1}}) {
    const FieldSpec a = field_make(p, e);
    const FieldSpec b = field_make(p, e);
    CHECK(a == b);
    CHECK(a.serialize() == b.serialize());
  }
}

TEST_CASE("coefficient encoding round trip") {
  const FieldSpec f9 = field_make(3, 2);
  for (Scalar a = 0; a < 9; ++a) {
    const auto c = f9.coeffs(a);
    CHECK(c.size() == 2);
    CHECK(f9.from_coeffs(c) == a);
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(field_make(4, 1), ParameterError);
  CHECK_THROWS_AS(field_make(2, 0), ParameterError);
  CHECK_THROWS_AS(field_make(2, 5), ParameterError);
  CHECK_THROWS_AS(field_from_order(6), ParameterError);
  CHECK(field_from_order(9).p() == 3);
  CHECK(field_from_order(8).e() == 3);
}
