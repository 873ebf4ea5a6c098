#include <doctest.h>

#include <random>

#include "supergrade/gradings.hpp"

using namespace supergrade;

namespace {

Subspace span_indices(const SuperAlgebra& alg, std::initializer_list<long> idx) {
  std::vector<Vec> rows;
  for (long i : idx) rows.push_back(alg.basis_element(i));
  return Subspace::span_of(rows, alg.dim());
}

}  // namespace

TEST_CASE("elementary gradings") {
  SuperAlgebra m2 = SuperAlgebra::matrix_super(2, 0);
  AbGroup z2({2});
  Grading g = elementary_grading(m2, z2, {z2.identity(), z2.gen(0)});
  CHECK(g.component(z2.identity()) == span_indices(m2, {0, 3}));
  CHECK(g.component(z2.gen(0)) == span_indices(m2, {1, 2}));
  CHECK(verify_grading(m2, g).ok);

  // constant tuple: everything in degree e
  Grading trivial = elementary_grading(m2, z2, {z2.gen(0), z2.gen(0)});
  CHECK(trivial.component(z2.identity()).dim() == 4);

  // M3 with (e, g, g^2) over Z3: full support, dims (3,3,3)
  SuperAlgebra m3 = SuperAlgebra::matrix_super(3, 0);
  AbGroup z3({3});
  Grading g3 = elementary_grading(
      m3, z3, {z3.identity(), z3.gen(0), z3.pow(z3.gen(0), 2)});
  CHECK(g3.support().size() == 3);
  for (long i = 0; i < 3; ++i) CHECK(g3.component_at(i).dim() == 3);
  CHECK(verify_grading(m3, g3).ok);

  CHECK_THROWS(elementary_grading(m2, z2, {z2.identity()}));
}

TEST_CASE("pauli fine grading") {
  SuperAlgebra m2 = SuperAlgebra::matrix_super(2, 0);
  Grading g = pauli_fine_grading(m2);
  AbGroup zz = g.group();
  CHECK(zz.factors() == std::vector<long>({2, 2}));
  CHECK(g.component(GroupElem{{0, 0}}) == Subspace::span_of({m2.unit()}, 4));
  // the four components: I, diag(1,-1), E12+E21, E12-E21
  Vec d = m2.basis_element(0) - m2.basis_element(3);
  Vec p = m2.basis_element(1) + m2.basis_element(2);
  Vec dp = m2.basis_element(1) - m2.basis_element(2);
  CHECK(g.component(GroupElem{{1, 0}}) == Subspace::span_of({d}, 4));
  CHECK(g.component(GroupElem{{0, 1}}) == Subspace::span_of({p}, 4));
  CHECK(g.component(GroupElem{{1, 1}}) == Subspace::span_of({dp}, 4));
  for (long i = 0; i < g.index_size(); ++i) CHECK(g.component_at(i).dim() == 1);
  CHECK(verify_grading(m2, g).ok);

  SuperAlgebra m3 = SuperAlgebra::matrix_super(3, 0);
  Grading g3 = pauli_fine_grading(m3);
  for (long i = 0; i < g3.index_size(); ++i) CHECK(g3.component_at(i).dim() == 1);
  CHECK(verify_grading(m3, g3).ok);

  // needs matrix size >= 2
  CHECK_THROWS_AS(pauli_fine_grading(SuperAlgebra::matrix_super(1, 0)),
                  std::invalid_argument);
}

TEST_CASE("tensor grading") {
  // elementary factor on the first Z2, Pauli factor embedded into the last
  // two coordinates of G = Z2 x (Z2 x Z2), so the two supports are disjoint
  AbGroup g({2, 2, 2});
  SuperAlgebra c = SuperAlgebra::matrix_super(2, 0);
  Grading elem = elementary_grading(c, g, {g.identity(), GroupElem{{1, 0, 0}}});
  SuperAlgebra d = SuperAlgebra::matrix_super(2, 0);
  Grading fine = embed_grading(pauli_fine_grading(d), g, {1, 2});
  auto result = tensor_grading(c, elem, d, fine);
  CHECK(result.algebra.dim() == 16);
  CHECK(verify_grading(result.algebra, result.grading).ok);
  // identity component is C_e tensor I, dimension 2
  CHECK(result.grading.component(g.identity()).dim() == 2);
  Mat e11 = Mat::Zero(2, 2), e22 = Mat::Zero(2, 2);
  e11(0, 0) = Cyclo(1);
  e22(1, 1) = Cyclo(1);
  Subspace expected = Subspace::span_of(
      {result.algebra.from_matrix(kron(e11, Mat(Mat::Identity(2, 2)))),
       result.algebra.from_matrix(kron(e22, Mat(Mat::Identity(2, 2))))},
      16);
  CHECK(result.grading.component(g.identity()) == expected);

  // support is productwise
  for (long i = 0; i < g.order(); ++i)
    for (long j = 0; j < g.order(); ++j) {
      if (elem.component_at(i).is_zero() || fine.component_at(j).is_zero()) continue;
      long target = g.index_of(g.mul(g.element_at(i), g.element_at(j)));
      CHECK(!result.grading.component_at(target).is_zero());
    }

  // trivial tensor trivial is trivial
  Grading triv_c = trivial_grading(c, g), triv_d = trivial_grading(d, g);
  auto triv = tensor_grading(c, triv_c, d, triv_d);
  CHECK(triv.grading.component(g.identity()).dim() == 16);

  // factors must share the grading group
  AbGroup z2({2});
  CHECK_THROWS_AS(tensor_grading(c, trivial_grading(c, z2), d, fine),
                  std::invalid_argument);
}

TEST_CASE("duality between gradings and actions") {
  SuperAlgebra m2 = SuperAlgebra::matrix_super(2, 0);
  AbGroup z2({2});
  // conjugation by diag(1,-1) cuts diagonal and antidiagonal
  Mat t = Mat::Zero(2, 2);
  t(0, 0) = Cyclo(1);
  t(1, 1) = Cyclo(-1);
  ActionHom alpha{z2, {conjugation_map(m2, t)}};
  Grading g = grading_of_action(m2, alpha);
  CHECK(g.component(z2.identity()) == span_indices(m2, {0, 3}));
  CHECK(g.component(z2.gen(0)) == span_indices(m2, {1, 2}));

  // trivial action gives the trivial grading, and back again
  ActionHom triv{z2, {identity_map(m2)}};
  Grading trivial_from_action = grading_of_action(m2, triv);
  CHECK(trivial_from_action.component(z2.identity()).dim() == 4);
  ActionHom triv_back = action_of_grading(m2, trivial_from_action);
  CHECK(mat_equal(triv_back.gen_images[0].action, Mat(Mat::Identity(4, 4))));

  // elementary (e, g): alpha(chi) = conjugation by diag(1, chi(g))
  Grading elem = elementary_grading(m2, z2, {z2.identity(), z2.gen(0)});
  ActionHom from = action_of_grading(m2, elem);
  CHECK(mat_equal(from.gen_images[0].action, conjugation_map(m2, t).action));

  // spot check beyond the generators: alpha(chi) scales R_g by chi(g) for
  // every character of a non-cyclic group
  AbGroup z22({2, 2});
  SuperAlgebra m3 = SuperAlgebra::matrix_super(3, 0);
  Grading g22 = elementary_grading(
      m3, z22, {z22.identity(), GroupElem{{1, 0}}, GroupElem{{1, 1}}});
  ActionHom hom22 = action_of_grading(m3, g22);
  for (const auto& chi : z22.characters()) {
    Mat act = hom22.character_action(chi);
    for (const auto& e : z22.elements()) {
      const Subspace& comp = g22.component(e);
      for (long i = 0; i < comp.dim(); ++i) {
        Vec v = comp.basis_vector(i);
        CHECK(mat_equal(Mat(act * v), Mat(v * char_eval(z22, chi, e))));
      }
    }
  }

  // round trips on seeded random elementary gradings
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 20; ++trial) {
    long n = 1 + static_cast<long>(rng() % 3);
    AbGroup g4({4});
    SuperAlgebra mn = SuperAlgebra::matrix_super(n, 0);
    std::vector<GroupElem> tuple;
    for (long i = 0; i < n; ++i)
      tuple.push_back(g4.element_at(static_cast<long>(rng() % 4)));
    Grading gr = elementary_grading(mn, g4, tuple);
    ActionHom hom = action_of_grading(mn, gr);
    CHECK(grading_of_action(mn, hom) == gr);
    // and action -> grading -> action on generators
    ActionHom hom2 = action_of_grading(mn, grading_of_action(mn, hom));
    for (size_t i = 0; i < hom.gen_images.size(); ++i)
      CHECK(mat_equal(hom.gen_images[i].action, hom2.gen_images[i].action));
  }
}

TEST_CASE("verify_grading catches product violations") {
  SuperAlgebra m2 = SuperAlgebra::matrix_super(2, 0);
  AbGroup z2({2});
  Grading bad = Grading::over_group(z2, 4);
  Vec mixed = m2.basis_element(0) + m2.basis_element(1);  // E11 + E12
  bad.set_component(z2.identity(), Subspace::span_of({mixed}, 4));
  bad.set_component(z2.gen(0),
                    Subspace::span_of({m2.basis_element(1) - m2.basis_element(0),
                                       m2.basis_element(2), m2.basis_element(3)},
                                      4));
  auto rep = verify_grading(m2, bad);
  CHECK(!rep.ok);
  bool product_violation = false;
  for (const auto& v : rep.violations)
    if (v.find("product") != std::string::npos) product_violation = true;
  CHECK(product_violation);
}

TEST_CASE("validate_action rejects bad homomorphisms") {
  SuperAlgebra m2 = SuperAlgebra::matrix_super(2, 0);
  AbGroup z2({2});
  // wrong order: conj by diag(1, i) has order 4, not 2
  Mat t = Mat::Zero(2, 2);
  t(0, 0) = Cyclo(1);
  t(1, 1) = Cyclo::zeta(4, 1);
  CHECK_THROWS(validate_action(m2, ActionHom{z2, {conjugation_map(m2, t)}}));
  // non-commuting images: conjugations by diag(1,-1) and by the Hadamard-like
  // matrix [[1,1],[1,-1]] do not commute even projectively
  AbGroup z22({2, 2});
  Mat h(2, 2);
  h(0, 0) = Cyclo(1);
  h(0, 1) = Cyclo(1);
  h(1, 0) = Cyclo(1);
  h(1, 1) = Cyclo(-1);
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = Cyclo(1);
  d(1, 1) = Cyclo(-1);
  CHECK_THROWS(validate_action(
      m2, ActionHom{z22, {conjugation_map(m2, h), conjugation_map(m2, d)}}));
}

TEST_CASE("support properties") {
  SuperAlgebra m2 = SuperAlgebra::matrix_super(2, 0);
  AbGroup z2({2});
  Grading g = elementary_grading(m2, z2, {z2.identity(), z2.gen(0)});
  SuperMap transpose = plain_transpose_map(m2);  // ordinary involution on M_2
  auto rep = support_properties(m2, g, transpose);
  CHECK(rep.commutes);
  REQUIRE(rep.all_invertible.has_value());
  CHECK(*rep.all_invertible);

  // semigroup-indexed check through a group table
  SemigroupTable table = SemigroupTable::from_group(z2);
  Grading sg = Grading::over_semigroup(table, 4);
  sg.set_component_at(0, g.component(z2.identity()));
  sg.set_component_at(1, g.component(z2.gen(0)));
  auto rep2 = support_properties(m2, sg, transpose);
  CHECK(rep2.commutes);
  REQUIRE(rep2.all_invertible.has_value());
  CHECK(*rep2.all_invertible);

  // preconditions enforced
  Grading bad = Grading::over_group(z2, 4);
  bad.set_component(z2.identity(), Subspace::span_of({m2.basis_element(1)}, 4));
  bad.set_component(z2.gen(0),
                    Subspace::span_of({m2.basis_element(0), m2.basis_element(2),
                                       m2.basis_element(3)},
                                      4));
  CHECK_THROWS_AS(support_properties(m2, bad, transpose), std::invalid_argument);
}
