#include "supergrade/abgroup.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace supergrade {

AbGroup::AbGroup(std::vector<long> invariant_factors)
    : factors_(std::move(invariant_factors)) {
  for (long n : factors_)
    if (n < 1) throw std::invalid_argument("invariant factors must be >= 1");
  order_ = 1;
  for (long n : factors_) order_ *= n;
}

GroupElem AbGroup::identity() const { return GroupElem{std::vector<long>(ngens(), 0)}; }
Character AbGroup::trivial_character() const {
  return Character{std::vector<long>(ngens(), 0)};
}

std::vector<GroupElem> AbGroup::elements() const {
  std::vector<GroupElem> out;
  out.reserve(order_);
  for (long idx = 0; idx < order_; ++idx) out.push_back(element_at(idx));
  return out;
}

std::vector<Character> AbGroup::characters() const {
  std::vector<Character> out;
  out.reserve(order_);
  for (long idx = 0; idx < order_; ++idx) out.push_back(character_at(idx));
  return out;
}

void AbGroup::validate(const GroupElem& g) const {
  if (g.coords.size() != ngens())
    throw GroupMismatchError("group element has wrong number of coordinates");
  for (size_t i = 0; i < ngens(); ++i)
    if (g.coords[i] < 0 || g.coords[i] >= factors_[i])
      throw GroupMismatchError("group element coordinate out of range");
}

void AbGroup::validate(const Character& c) const {
  if (c.coords.size() != ngens())
    throw GroupMismatchError("character has wrong number of coordinates");
  for (size_t i = 0; i < ngens(); ++i)
    if (c.coords[i] < 0 || c.coords[i] >= factors_[i])
      throw GroupMismatchError("character coordinate out of range");
}

GroupElem AbGroup::mul(const GroupElem& a, const GroupElem& b) const {
  validate(a);
  validate(b);
  GroupElem r = a;
  for (size_t i = 0; i < ngens(); ++i) r.coords[i] = (a.coords[i] + b.coords[i]) % factors_[i];
  return r;
}

GroupElem AbGroup::inv(const GroupElem& a) const {
  validate(a);
  GroupElem r = a;
  for (size_t i = 0; i < ngens(); ++i) r.coords[i] = (factors_[i] - a.coords[i]) % factors_[i];
  return r;
}

GroupElem AbGroup::pow(const GroupElem& a, long k) const {
  validate(a);
  GroupElem r = a;
  for (size_t i = 0; i < ngens(); ++i) {
    long m = ((a.coords[i] * k) % factors_[i] + factors_[i]) % factors_[i];
    r.coords[i] = m;
  }
  return r;
}

long AbGroup::elem_order(const GroupElem& a) const {
  validate(a);
  long o = 1;
  for (size_t i = 0; i < ngens(); ++i) {
    long n = factors_[i], c = a.coords[i];
    o = lcm_long(o, n / std::gcd(n, c == 0 ? n : c));
  }
  return o;
}

Character AbGroup::mul(const Character& a, const Character& b) const {
  validate(a);
  validate(b);
  Character r = a;
  for (size_t i = 0; i < ngens(); ++i) r.coords[i] = (a.coords[i] + b.coords[i]) % factors_[i];
  return r;
}

Character AbGroup::pow(const Character& a, long k) const {
  GroupElem g{a.coords};
  return Character{pow(g, k).coords};
}

long AbGroup::char_order(const Character& a) const { return elem_order(GroupElem{a.coords}); }

GroupElem AbGroup::gen(size_t i) const {
  GroupElem g = identity();
  if (factors_[i] > 1) g.coords[i] = 1;
  return g;
}

Character AbGroup::char_gen(size_t i) const { return Character{gen(i).coords}; }

long AbGroup::index_of(const GroupElem& g) const {
  validate(g);
  long idx = 0;
  for (size_t i = 0; i < ngens(); ++i) idx = idx * factors_[i] + g.coords[i];
  return idx;
}

long AbGroup::index_of(const Character& c) const { return index_of(GroupElem{c.coords}); }

GroupElem AbGroup::element_at(long index) const {
  if (index < 0 || index >= order_) throw std::out_of_range("element index out of range");
  GroupElem g = identity();
  for (size_t i = ngens(); i-- > 0;) {
    g.coords[i] = index % factors_[i];
    index /= factors_[i];
  }
  return g;
}

Character AbGroup::character_at(long index) const {
  return Character{element_at(index).coords};
}

long AbGroup::ambient_order() const { return lcm_long(order_, 4); }

Cyclo char_eval(const AbGroup& group, const Character& chi, const GroupElem& g) {
  group.validate(chi);
  group.validate(g);
  const long N = group.ambient_order();
  long e = 0;
  for (size_t i = 0; i < group.ngens(); ++i) {
    long ni = group.factors()[i];
    e = (e + (N / ni) * ((chi.coords[i] * g.coords[i]) % ni)) % N;
  }
  return Cyclo::zeta(N, e);
}

std::vector<Character> character_subgroup_closure(const AbGroup& group,
                                                  const std::vector<Character>& gens) {
  std::set<std::vector<long>> seen;
  std::vector<Character> out{group.trivial_character()};
  seen.insert(out[0].coords);
  std::vector<Character> frontier = out;
  while (!frontier.empty()) {
    std::vector<Character> next;
    for (const auto& a : frontier)
      for (const auto& g : gens) {
        Character p = group.mul(a, g);
        if (seen.insert(p.coords).second) {
          out.push_back(p);
          next.push_back(p);
        }
      }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GroupElem> orth_complement(const AbGroup& group,
                                       const std::vector<Character>& lambda) {
  auto closed = character_subgroup_closure(group, lambda);
  std::vector<GroupElem> out;
  for (const auto& g : group.elements()) {
    bool all_one = true;
    for (const auto& chi : closed)
      if (char_eval(group, chi, g) != Cyclo(1)) {
        all_one = false;
        break;
      }
    if (all_one) out.push_back(g);
  }
  return out;
}

long subgroup_index(const AbGroup& group, const std::vector<Character>& lambda) {
  std::set<std::vector<long>> set;
  set.insert(group.trivial_character().coords);
  for (const auto& c : lambda) {
    group.validate(c);
    set.insert(c.coords);
  }
  for (const auto& a : set)
    for (const auto& b : set)
      if (!set.count(group.mul(Character{a}, Character{b}).coords))
        throw std::invalid_argument("character set is not closed under product");
  return group.order() / static_cast<long>(set.size());
}

void SemigroupTable::validate() const {
  if (static_cast<long>(table.size()) != size)
    throw std::invalid_argument("semigroup table has wrong number of rows");
  for (const auto& row : table) {
    if (static_cast<long>(row.size()) != size)
      throw std::invalid_argument("semigroup table has wrong number of columns");
    for (long v : row)
      if (v < 0 || v >= size) throw std::invalid_argument("semigroup table not closed");
  }
  if (identity) {
    long e = *identity;
    if (e < 0 || e >= size) throw std::invalid_argument("identity index out of range");
    for (long a = 0; a < size; ++a)
      if (mul(e, a) != a || mul(a, e) != a)
        throw std::invalid_argument("declared identity is not two-sided");
  }
}

bool SemigroupTable::is_invertible(long a) const {
  if (!identity) return false;
  for (long x = 0; x < size; ++x)
    if (mul(a, x) == *identity && mul(x, a) == *identity) return true;
  return false;
}

SemigroupTable SemigroupTable::from_group(const AbGroup& g) {
  SemigroupTable t;
  t.size = g.order();
  t.table.assign(t.size, std::vector<long>(t.size, 0));
  auto elems = g.elements();
  for (long a = 0; a < t.size; ++a)
    for (long b = 0; b < t.size; ++b)
      t.table[a][b] = g.index_of(g.mul(elems[a], elems[b]));
  t.identity = g.index_of(g.identity());
  return t;
}

SemigroupTable SemigroupTable::symmetric_group(long n) {
  std::vector<long> base(n);
  std::iota(base.begin(), base.end(), 0);
  std::vector<std::vector<long>> perms;
  std::vector<long> p = base;
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  SemigroupTable t;
  t.size = static_cast<long>(perms.size());
  t.table.assign(t.size, std::vector<long>(t.size, 0));
  auto find = [&](const std::vector<long>& q) {
    return static_cast<long>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
  };
  for (long a = 0; a < t.size; ++a)
    for (long b = 0; b < t.size; ++b) {
      // composition: (a*b)(i) = a(b(i))
      std::vector<long> q(n);
      for (long i = 0; i < n; ++i) q[i] = perms[a][perms[b][i]];
      t.table[a][b] = find(q);
    }
  t.identity = find(base);
  return t;
}

std::string to_string(const GroupElem& g) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < g.coords.size(); ++i) os << (i ? "," : "") << g.coords[i];
  os << ")";
  return os.str();
}

}  // namespace supergrade
