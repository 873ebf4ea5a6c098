#pragma once

#include <optional>
#include <string>
#include <vector>

#include "supergrade/cyclotomic.hpp"

namespace supergrade {

struct GroupMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Element of Z_{n1} x ... x Z_{nk}, one residue per factor.
struct GroupElem {
  std::vector<long> coords;
  friend bool operator==(const GroupElem&, const GroupElem&) = default;
  friend auto operator<=>(const GroupElem&, const GroupElem&) = default;
};

/// Character of the same group, identified with a group element through the
/// fixed coordinates (the dual pairing below makes this identification).
struct Character {
  std::vector<long> coords;
  friend bool operator==(const Character&, const Character&) = default;
  friend auto operator<=>(const Character&, const Character&) = default;
};

class AbGroup {
 public:
  AbGroup() = default;
  explicit AbGroup(std::vector<long> invariant_factors);

  const std::vector<long>& factors() const { return factors_; }
  long order() const { return order_; }
  size_t ngens() const { return factors_.size(); }

  GroupElem identity() const;
  Character trivial_character() const;
  /// Total, duplicate-free enumeration in lexicographic coordinate order.
  std::vector<GroupElem> elements() const;
  std::vector<Character> characters() const;

  GroupElem mul(const GroupElem& a, const GroupElem& b) const;
  GroupElem inv(const GroupElem& a) const;
  GroupElem pow(const GroupElem& a, long k) const;
  long elem_order(const GroupElem& a) const;
  Character mul(const Character& a, const Character& b) const;
  Character pow(const Character& a, long k) const;
  long char_order(const Character& a) const;
  /// Generator of the i-th cyclic factor (as element / as character).
  GroupElem gen(size_t i) const;
  Character char_gen(size_t i) const;

  long index_of(const GroupElem& g) const;  // position in elements()
  long index_of(const Character& c) const;
  GroupElem element_at(long index) const;
  Character character_at(long index) const;

  void validate(const GroupElem& g) const;
  void validate(const Character& c) const;

  /// Ambient cyclotomic order used for character values: lcm(|G|, 4).
  long ambient_order() const;

  friend bool operator==(const AbGroup&, const AbGroup&) = default;

 private:
  std::vector<long> factors_;
  long order_ = 1;
};

/// chi(g) = zeta_N ^ { sum_i (N/n_i) chi_i g_i },  N = group.ambient_order().
Cyclo char_eval(const AbGroup& group, const Character& chi, const GroupElem& g);

/// Closure of a character set under product (subgroup generated).
std::vector<Character> character_subgroup_closure(const AbGroup& group,
                                                  const std::vector<Character>& gens);

/// Lambda^perp = { g : lambda(g) = 1 for all lambda in Lambda }.
/// Closes Lambda under products first.
std::vector<GroupElem> orth_complement(const AbGroup& group,
                                       const std::vector<Character>& lambda);

/// [G^ : Lambda]; requires Lambda closed under product (throws otherwise).
long subgroup_index(const AbGroup& group, const std::vector<Character>& lambda);

/// Finite semigroup given by its multiplication table (indices 0..size-1).
struct SemigroupTable {
  long size = 0;
  std::vector<std::vector<long>> table;  // table[a][b] = a*b
  std::optional<long> identity;

  void validate() const;  // closure + two-sided identity when declared
  long mul(long a, long b) const { return table.at(a).at(b); }
  bool commutes(long a, long b) const { return mul(a, b) == mul(b, a); }
  /// Two-sided invertibility against the declared identity.
  bool is_invertible(long a) const;

  static SemigroupTable from_group(const AbGroup& g);
  /// Multiplication table of the symmetric group S_n (n! elements, products
  /// of permutations in lexicographic order).
  static SemigroupTable symmetric_group(long n);
};

std::string to_string(const GroupElem& g);

}  // namespace supergrade
