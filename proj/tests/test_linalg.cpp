#include <doctest.h>

#include <random>

#include "supergrade/linalg.hpp"

using namespace supergrade;

namespace {

Vec make_vec(std::initializer_list<long> vals) {
  Vec v(static_cast<long>(vals.size()));
  long i = 0;
  for (long x : vals) v(i++) = Cyclo(x);
  return v;
}

Vec random_vec(std::mt19937_64& rng, long n) {
  Vec v(n);
  for (long i = 0; i < n; ++i) v(i) = Cyclo(static_cast<long>(rng() % 7) - 3);
  return v;
}

}  // namespace

TEST_CASE("span basics") {
  Subspace s = Subspace::span_of({make_vec({1, 0}), make_vec({2, 0})}, 2);
  CHECK(s.dim() == 1);
  CHECK(s.contains(make_vec({1, 0})));
  CHECK(!s.contains(make_vec({0, 1})));
  CHECK(Subspace::span_of({}, 3).dim() == 0);
  CHECK_THROWS_AS(Subspace::span_of({make_vec({1, 0})}, 3), DimensionMismatchError);
}

TEST_CASE("span of random vectors: rank bound and membership") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Vec> vs;
    for (int i = 0; i < 4; ++i) vs.push_back(random_vec(rng, 3));
    Subspace s = Subspace::span_of(vs, 3);
    CHECK(s.dim() <= 3);
    for (const auto& v : vs) CHECK(s.contains(v));
  }
}

TEST_CASE("coordinates in a subspace basis") {
  Subspace s = Subspace::span_of({make_vec({1, 0, 1}), make_vec({0, 1, 0})}, 3);
  Vec v = make_vec({2, 3, 2});
  auto coords = s.coordinates_of(v);
  REQUIRE(coords.has_value());
  CHECK(mat_equal(Mat(Vec(s.basis().transpose() * *coords)), Mat(v)));
  CHECK(!s.coordinates_of(make_vec({0, 0, 1})).has_value());
}

TEST_CASE("canonical representation is basis independent") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    Vec a = random_vec(rng, 4), b = random_vec(rng, 4);
    Subspace s1 = Subspace::span_of({a, b}, 4);
    Subspace s2 = Subspace::span_of({b, a + b * Cyclo(3), a}, 4);
    CHECK(s1 == s2);
    CHECK(mat_equal(s1.basis(), s2.basis()));
  }
}

TEST_CASE("kernel as eigenspace") {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = Cyclo(1);
  m(1, 1) = Cyclo(-1);
  Mat shifted = m - Mat::Identity(2, 2);
  Subspace ker = Subspace::span(kernel_basis(shifted), 2);
  CHECK(ker == Subspace::span_of({make_vec({1, 0})}, 2));
}

TEST_CASE("intersections") {
  Subspace s = Subspace::span_of({make_vec({1, 0, 0}), make_vec({0, 1, 0})}, 3);
  Subspace t = Subspace::span_of({make_vec({0, 1, 0}), make_vec({0, 0, 1})}, 3);
  CHECK(s.intersect(s) == s);
  CHECK(s.intersect(t) == Subspace::span_of({make_vec({0, 1, 0})}, 3));
}

TEST_CASE("dimension formula on random subspaces") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<Vec> va, vb;
    for (int i = 0; i < 2 + static_cast<int>(rng() % 3); ++i) va.push_back(random_vec(rng, 5));
    for (int i = 0; i < 2 + static_cast<int>(rng() % 3); ++i) vb.push_back(random_vec(rng, 5));
    Subspace a = Subspace::span_of(va, 5), b = Subspace::span_of(vb, 5);
    CHECK(a.intersect(b).dim() + a.sum(b).dim() == a.dim() + b.dim());
  }
}

TEST_CASE("inverse and determinant") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    Mat m(3, 3);
    for (long i = 0; i < 3; ++i) m.row(i) = random_vec(rng, 3).transpose();
    if (det(m).is_zero()) continue;
    CHECK(mat_equal(inverse(m) * m, Mat(Mat::Identity(3, 3))));
  }
  Mat singular = Mat::Zero(2, 2);
  singular(0, 0) = Cyclo(1);
  CHECK(det(singular).is_zero());
  CHECK_THROWS(inverse(singular));
}

TEST_CASE("rational and monomial roots") {
  // (x - 2)(x + 3) x = x^3 + x^2 - 6x
  auto rs = rational_roots({Rational(0), Rational(-6), Rational(1), Rational(1)});
  CHECK(rs == std::vector<Rational>({Rational(-3), Rational(0), Rational(2)}));
  auto ms = monomial_roots({Rational(1), Rational(0), Rational(1)}, 4);  // x^2 + 1
  REQUIRE(ms.size() == 2);
  CHECK(ms[0] * ms[0] == Cyclo(-1));
}

TEST_CASE("eigen split of a finite-order matrix") {
  // cyclic shift on F^4 has order 4; eigenvalues are the fourth roots of 1
  Mat p = Mat::Zero(4, 4);
  for (long i = 0; i < 4; ++i) p((i + 1) % 4, i) = Cyclo(1);
  auto es = eigen_split(p, 4);
  REQUIRE(es.has_value());
  CHECK(es->pairs.size() == 4);
  for (const auto& [lam, space] : es->pairs) {
    CHECK(space.dim() == 1);
    Vec v = space.basis_vector(0);
    CHECK(mat_equal(Mat(p * v), Mat(v * lam)));
  }
}

TEST_CASE("minimal polynomial of an idempotent-like matrix") {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = Cyclo(1);
  auto mp = minimal_polynomial(m);  // x^2 - x
  REQUIRE(mp.size() == 3);
  CHECK(mp[0] == Cyclo(0));
  CHECK(mp[1] == Cyclo(-1));
  CHECK(mp[2] == Cyclo(1));
}

TEST_CASE("kron shape and values") {
  Mat a = Mat::Identity(2, 2);
  Mat b(1, 1);
  b(0, 0) = Cyclo(3);
  Mat k = kron(a, b);
  CHECK(k.rows() == 2);
  CHECK(k(0, 0) == Cyclo(3));
  CHECK(k(0, 1).is_zero());
}
