#include <doctest.h>

#include "supergrade/json_io.hpp"

using namespace supergrade;

TEST_CASE("scalar and matrix json round trips") {
  Cyclo c = Cyclo::zeta(8, 3) * Cyclo(Rational(1, 2)) + Cyclo(2);
  CHECK(scalar_from_json(scalar_to_json(c)) == c);

  Mat m(2, 2);
  m(0, 0) = Cyclo(1);
  m(0, 1) = Cyclo::zeta(4, 1);
  m(1, 0) = Cyclo(Rational(-2, 3));
  m(1, 1) = Cyclo(0);
  CHECK(mat_equal(matrix_from_json(matrix_to_json(m)), m));
}

TEST_CASE("algebra descriptors") {
  SuperAlgebra pair = SuperAlgebra::pair_sop(SuperAlgebra::q_type(2));
  SuperAlgebra back = algebra_from_json(algebra_to_json(pair));
  CHECK(back.same_structure(pair));
  CHECK_THROWS_AS(algebra_from_json(json{{"type", "nonsense"}}), ParseError);
  CHECK_THROWS_AS(algebra_from_json(json{{"type", "matrix_super"}, {"n", 1}}),
                  ParseError);
}

TEST_CASE("element json in structural form") {
  SuperAlgebra q1 = SuperAlgebra::q_type(1);
  SuperAlgebra pair = SuperAlgebra::pair_sop(q1);
  Vec v = pair.basis_element(1) * Cyclo::zeta(4, 1) + pair.basis_element(2) * Cyclo(3);
  json j = element_to_json(pair, v);
  CHECK(j.contains("first"));
  CHECK(j["first"].contains("x"));
  Vec back = element_from_json(pair, j);
  CHECK(mat_equal(Mat(back), Mat(v)));
}

TEST_CASE("grading round trip") {
  SuperAlgebra m2 = SuperAlgebra::matrix_super(2, 0);
  AbGroup z2({2});
  Grading g = elementary_grading(m2, z2, {z2.identity(), z2.gen(0)});
  Grading back = grading_from_json(grading_to_json(g), m2.dim());
  CHECK(back == g);
}

TEST_CASE("semigroup-indexed grading round trip") {
  SuperAlgebra m2 = SuperAlgebra::matrix_super(2, 0);
  AbGroup z2({2});
  SemigroupTable table = SemigroupTable::from_group(z2);
  Grading g = Grading::over_semigroup(table, 4);
  g.set_component_at(0, Subspace::span_of({m2.basis_element(0), m2.basis_element(3)}, 4));
  g.set_component_at(1, Subspace::span_of({m2.basis_element(1), m2.basis_element(2)}, 4));
  Grading back = grading_from_json(grading_to_json(g), 4);
  CHECK(back == g);
  CHECK(!back.is_group_indexed());
}

TEST_CASE("semigroup and supermap json") {
  SemigroupTable s3 = SemigroupTable::symmetric_group(3);
  SemigroupTable back = semigroup_from_json(semigroup_to_json(s3));
  CHECK(back.table == s3.table);
  CHECK(back.identity == s3.identity);

  SuperAlgebra m11 = SuperAlgebra::matrix_super(1, 1);
  SuperMap tau = apply_canonical_map_builder(m11, CanonicalMapKind::Tau);
  SuperMap back_map = supermap_from_json(supermap_to_json(tau));
  CHECK(mat_equal(back_map.action, tau.action));
  SuperMap named = supermap_from_json(json("tau"), m11);
  CHECK(mat_equal(named.action, tau.action));
  CHECK_THROWS_AS(supermap_from_json(json("weird"), m11), ParseError);
}

TEST_CASE("typed grading serializes with its parameters") {
  SuperAlgebra a = SuperAlgebra::matrix_super(1, 1);
  SuperAlgebra pair = SuperAlgebra::pair_sop(a);
  AbGroup z2({2});
  SuperMap trp = apply_canonical_map_builder(a, CanonicalMapKind::Trp);
  TypedGrading t = build_type_II(pair, trivial_grading(a, z2), trp, GroupElem{{1}});
  json j = typed_grading_to_json(t);
  CHECK(j["type"] == "II");
  CHECK(j["h"] == json::array({1}));
  CHECK(j.contains("dagger"));
}
