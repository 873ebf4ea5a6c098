#include <doctest.h>

#include "supergrade/abgroup.hpp"

using namespace supergrade;

TEST_CASE("character evaluation") {
  AbGroup z4({4});
  // generator pairing: chi = (1), g = (1) evaluates to i
  CHECK(char_eval(z4, Character{{1}}, GroupElem{{1}}) == Cyclo::zeta(4, 1));
  // identity element evaluates to 1 under every character
  for (const auto& chi : z4.characters())
    CHECK(char_eval(z4, chi, z4.identity()) == Cyclo(1));
  // multiplicativity in both arguments
  AbGroup g({2, 4});
  for (const auto& chi : g.characters())
    for (const auto& a : g.elements())
      for (const auto& b : g.elements())
        CHECK(char_eval(g, chi, g.mul(a, b)) ==
              char_eval(g, chi, a) * char_eval(g, chi, b));
}

TEST_CASE("character orthogonality by enumeration on Z2xZ2") {
  AbGroup g({2, 2});
  for (const auto& chi : g.characters()) {
    Cyclo sum(0);
    for (const auto& e : g.elements()) sum += char_eval(g, chi, e);
    if (chi == g.trivial_character())
      CHECK(sum == Cyclo(4));
    else
      CHECK(sum == Cyclo(0));
  }
}

TEST_CASE("orthogonal complements") {
  AbGroup z4({4});
  // Lambda = <chi^2> for the generator chi = (1)
  auto h = orth_complement(z4, {Character{{2}}});
  CHECK(h == std::vector<GroupElem>({GroupElem{{0}}, GroupElem{{2}}}));
  // full dual -> identity only
  CHECK(orth_complement(z4, {Character{{1}}}).size() == 1);
  // trivial character -> everything
  CHECK(orth_complement(z4, {z4.trivial_character()}).size() == 4);
  // |Lambda| * |complement| = |G|
  AbGroup g({2, 4});
  for (const auto& chi : g.characters()) {
    auto closed = character_subgroup_closure(g, {chi});
    auto perp = orth_complement(g, {chi});
    CHECK(static_cast<long>(closed.size() * perp.size()) == g.order());
  }
}

TEST_CASE("subgroup index") {
  AbGroup z4({4});
  CHECK(subgroup_index(z4, {Character{{2}}}) == 2);
  CHECK(subgroup_index(z4, z4.characters()) == 1);
  CHECK(subgroup_index(z4, {z4.trivial_character()}) == 4);
  CHECK_THROWS(subgroup_index(z4, {Character{{1}}}));  // {e, chi} not closed
}

TEST_CASE("Pontryagin pairing is nondegenerate for |G| <= 16") {
  for (const auto& factors :
       std::vector<std::vector<long>>{{2}, {3}, {4}, {2, 2}, {2, 4}, {16}, {2, 2, 2, 2}}) {
    AbGroup g(factors);
    for (const auto& e : g.elements()) {
      if (e == g.identity()) continue;
      bool separated = false;
      for (const auto& chi : g.characters())
        if (char_eval(g, chi, e) != Cyclo(1)) separated = true;
      CHECK(separated);
    }
  }
}

TEST_CASE("complement is antitone and double complement recovers the subgroup") {
  AbGroup g({2, 4});
  std::vector<std::vector<Character>> subgroup_gens = {
      {g.trivial_character()}, {Character{{1, 0}}}, {Character{{0, 1}}},
      {Character{{0, 2}}},     {Character{{1, 2}}}, {Character{{1, 0}}, {Character{{0, 1}}}}};
  for (const auto& gens1 : subgroup_gens)
    for (const auto& gens2 : subgroup_gens) {
      auto l1 = character_subgroup_closure(g, gens1);
      auto l2 = character_subgroup_closure(g, gens2);
      bool contained = std::includes(l2.begin(), l2.end(), l1.begin(), l1.end());
      if (!contained) continue;
      auto p1 = orth_complement(g, l1);
      auto p2 = orth_complement(g, l2);
      for (const auto& e : p2)
        CHECK(std::find(p1.begin(), p1.end(), e) != p1.end());
    }
  // double complement under the G^ <-> G identification
  for (const auto& gens : subgroup_gens) {
    auto lambda = character_subgroup_closure(g, gens);
    auto perp = orth_complement(g, lambda);
    // treat perp as characters and complement again
    std::vector<Character> perp_chars;
    for (const auto& e : perp) perp_chars.push_back(Character{e.coords});
    auto back = orth_complement(g, perp_chars);
    std::vector<GroupElem> lambda_elems;
    for (const auto& c : lambda) lambda_elems.push_back(GroupElem{c.coords});
    std::sort(lambda_elems.begin(), lambda_elems.end());
    std::sort(back.begin(), back.end());
    CHECK(back == lambda_elems);
  }
}

TEST_CASE("semigroup tables") {
  SemigroupTable s3 = SemigroupTable::symmetric_group(3);
  CHECK(s3.size == 6);
  REQUIRE(s3.identity.has_value());
  CHECK_NOTHROW(s3.validate());
  bool noncommutative = false;
  for (long a = 0; a < 6; ++a)
    for (long b = 0; b < 6; ++b)
      if (!s3.commutes(a, b)) noncommutative = true;
  CHECK(noncommutative);
  for (long a = 0; a < 6; ++a) CHECK(s3.is_invertible(a));

  AbGroup z4({4});
  SemigroupTable t = SemigroupTable::from_group(z4);
  CHECK_NOTHROW(t.validate());
  CHECK(t.mul(1, 3) == 0);

  SemigroupTable bad;
  bad.size = 2;
  bad.table = {{0, 1}, {1, 7}};
  CHECK_THROWS(bad.validate());
}
