#include <doctest.h>

#include <random>

#include "supergrade/cyclotomic.hpp"

using namespace supergrade;

namespace {

Cyclo random_scalar(std::mt19937_64& rng, long order) {
  std::vector<Rational> coeffs;
  for (long i = 0; i < euler_phi(order); ++i) {
    long num = static_cast<long>(rng() % 7) - 3;
    long den = 1 + static_cast<long>(rng() % 3);
    coeffs.push_back(Rational(num, den));
  }
  return Cyclo::from_coeffs(order, coeffs);
}

}  // namespace

TEST_CASE("root of unity basics") {
  Cyclo i = Cyclo::zeta(4, 1);
  CHECK(i * i == Cyclo(-1));
  // inverse of a root of unity is the complementary power
  for (long n : {3L, 4L, 8L, 12L})
    for (long k = 1; k < n; ++k)
      CHECK(Cyclo::zeta(n, k).inverse() == Cyclo::zeta(n, n - k));
}

TEST_CASE("zeta_3 + zeta_3^2 = -1 via the defining relation") {
  // independent route: (z - 1)(1 + z + z^2) = z^3 - 1 = 0 and z != 1,
  // so 1 + z + z^2 must vanish
  Cyclo z = Cyclo::zeta(3, 1);
  Cyclo s = Cyclo(1) + z + z * z;
  CHECK((z - Cyclo(1)) * s == Cyclo(0));
  CHECK(z != Cyclo(1));
  CHECK(s == Cyclo(0));
  CHECK(z + z * z == Cyclo(-1));
}

TEST_CASE("primitivity: zeta_N^k != 1 for 0 < k < N") {
  for (long n = 1; n <= 12; ++n)
    for (long k = 1; k < n; ++k) CHECK(Cyclo::zeta(n, k) != Cyclo(1));
}

TEST_CASE("field axioms on random scalars") {
  std::mt19937_64 rng(7);
  for (long order : {4L, 8L, 12L}) {
    for (int trial = 0; trial < 25; ++trial) {
      Cyclo a = random_scalar(rng, order);
      Cyclo b = random_scalar(rng, order);
      Cyclo c = random_scalar(rng, order);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      if (!a.is_zero()) CHECK(a * a.inverse() == Cyclo(1));
    }
  }
}

TEST_CASE("errors: zero inversion and incompatible orders") {
  CHECK_THROWS_AS(Cyclo(0).inverse(), DivisionByZeroError);
  CHECK_THROWS_AS(Cyclo::zeta(3, 1) + Cyclo::zeta(4, 1), FieldMismatchError);
  CHECK_THROWS_AS(Cyclo::zeta(3, 1) * Cyclo::zeta(4, 1), FieldMismatchError);
}

TEST_CASE("promotion along divisible orders") {
  CHECK(Cyclo::zeta(2, 1) == Cyclo::zeta(4, 2));      // -1
  CHECK(Cyclo::zeta(4, 1) == Cyclo::zeta(8, 2));      // i
  CHECK(Cyclo::zeta(2, 1).promoted(8) == Cyclo(-1));  // rational value survives
  CHECK(Cyclo(1) + Cyclo::zeta(8, 1) == Cyclo::zeta(8, 1) + Cyclo(1));
}

TEST_CASE("string round trip is canonical") {
  std::mt19937_64 rng(11);
  for (long order : {1L, 4L, 8L, 12L})
    for (int trial = 0; trial < 20; ++trial) {
      Cyclo a = random_scalar(rng, order);
      Cyclo back = Cyclo::parse(a.str(), order);
      CHECK(back == a);
      CHECK(back.str() == a.str());
    }
  CHECK(Cyclo::parse("1/2 + -3*z8^2").order() == 8);
  CHECK(Cyclo::parse("5") == Cyclo(5));
}

TEST_CASE("roots in the field") {
  auto sq = nth_roots_in_field(Cyclo(-1), 2, 4);
  REQUIRE(sq.size() == 2);
  CHECK(sq[0] * sq[0] == Cyclo(-1));
  CHECK(sq[1] == -sq[0]);

  auto quartic = nth_roots_in_field(Cyclo(1), 4, 4);
  CHECK(quartic.size() == 4);

  // sqrt(zeta_4) needs the bigger field
  CHECK(nth_roots_in_field(Cyclo::zeta(4, 1), 2, 4).empty());
  auto lifted = nth_root_enlarging(Cyclo::zeta(4, 1), 2);
  REQUIRE(lifted.has_value());
  CHECK(lifted->order % 8 == 0);
  CHECK(lifted->root * lifted->root == Cyclo::zeta(4, 1).promoted(lifted->order));
}

TEST_CASE("monomial detection") {
  auto m = monomial_form(Cyclo::zeta(8, 3) * Cyclo(Rational(2, 3)));
  REQUIRE(m.has_value());
  CHECK(m->first == Rational(2, 3));
  CHECK(m->second == 3);
  CHECK(!monomial_form(Cyclo(1) + Cyclo::zeta(8, 1)).has_value());
}
